#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>

#include "ehi/bailey.hpp"
#include "ehi/quadrature.hpp"
#include "ehi/specfun.hpp"
#include "ehi/types.hpp"

namespace ehi::ybe {

// Two-variable functions of the additive coordinates (z1, z2); the matching
// multiplicative points are x_j = e^{2 pi i z_j}.
using Fn2 = std::function<cplx(cplx, cplx)>;

// Ordered spectral 4-tuple with the three adjacent transpositions used by the
// braid-word bookkeeping: s1 swaps the first pair, s2 the middle pair, s3 the
// last pair.
struct SpectralAssignment {
  cplx u1, u2, v1, v2;

  SpectralAssignment s1() const { return {u2, u1, v1, v2}; }
  SpectralAssignment s2() const { return {u1, v1, u2, v2}; }
  SpectralAssignment s3() const { return {u1, u2, v2, v1}; }
};

// (u, ell1, v, ell2) -> (u/2 +- eta(ell1 + 1/2), v/2 +- eta(ell2 + 1/2)).
SpectralAssignment split_spectral(cplx u, cplx ell1, cplx v, cplx ell2,
                                  cplx eta);

// Shared evaluation context for the integral operators.  `eta` must be
// consistent with the engine: q = e^{4 pi i eta} (and p = e^{2 pi i tau} for
// whatever tau the difference operators use).
struct SOperatorContext {
  const specfun::GammaEngine* eng = nullptr;
  cplx eta;
  double rel_tol = 1e-9;
  int n_max = 1 << 10;
  std::shared_ptr<bailey::EvalBudget> budget;  // optional cost cap
};

// Gamma multiplier of the middle braid letter at tuple w:
//   Gamma(sqrt(pq) e^{2 pi i (w.u2 - w.v1)} x1^{+-1} x2^{+-1}).
cplx s2_factor(const SOperatorContext& ctx, const SpectralAssignment& w,
               cplx z1, cplx z2);

// Pointwise letter: multiply by s2_factor.
Fn2 apply_s2(const SOperatorContext& ctx, const SpectralAssignment& w,
             Fn2 phi);

// Integral letter in slot 1 with Gaussian dressing,
//   [S1 phi](z1, z2) = e^{-i pi z1^2 / eta} (p;p)(q;q) / (2 Gamma(t^2)) *
//     Int_0^1 Gamma(t x1^{+-1} X^{+-1}) / (Gamma(X^2) Gamma(X^-2))
//            e^{i pi zeta^2 / eta} phi(zeta, z2) dzeta,
// with t = e^{2 pi i (w.u2 - w.u1)} and X = e^{2 pi i zeta}.  The integrand
// is single-valued on the contour only for inputs of the dressed form
// e^{-i pi z^2/eta} * (function of e^{2 pi i z}); callers must stay in that
// class (see gaussian_wrap).
Fn2 apply_s1(const SOperatorContext& ctx, const SpectralAssignment& w,
             Fn2 phi);

// Same letter acting in slot 2, with t = e^{2 pi i (w.v2 - w.v1)}.
Fn2 apply_s3(const SOperatorContext& ctx, const SpectralAssignment& w,
             Fn2 phi);

// Braid word S2 S1 S3 S2 with tuple-tracked letter parameters: the rightmost
// letter acts first at tuple w, each following letter at the permuted tuple.
Fn2 r12_braid(const SOperatorContext& ctx, const SpectralAssignment& w,
              Fn2 phi);

// e^{-i pi (z1^2 + z2^2)/eta} f(e^{2 pi i z1}, e^{2 pi i z2}).
Fn2 gaussian_wrap(cplx eta, std::function<cplx(cplx, cplx)> f);

// Quadratic braid relation S1 S3 = S3 S1 (disjoint slots): max relative
// difference over additive probe pairs.
double coxeter_s1s3_residual(const SOperatorContext& ctx,
                             const SpectralAssignment& w, const Fn2& phi,
                             std::span<const std::array<cplx, 2>> probes);

// Cubic braid relation S1 S2 S1 = S2 S1 S2 with tuple tracking.
double coxeter_cubic_residual(const SOperatorContext& ctx,
                              const SpectralAssignment& w, const Fn2& phi,
                              std::span<const std::array<cplx, 2>> probes);

// Closed-form integral kernel of the composed braid word, with the crossed
// slot pairing (output x2 couples to contour x, output x1 to contour y):
//   Gamma(m_out x1^{+-1} x2^{+-1}) *
//   Gamma(t_B x2^{+-1} x^{+-1}) Gamma(t_A x1^{+-1} y^{+-1})
//   Gamma(m_in x^{+-1} y^{+-1}) /
//   (Gamma(t_B^2) Gamma(t_A^2) Gamma(x^{+-2}) Gamma(y^{+-2}))
// times (p;p)^2 (q;q)^2 / (4 pi i)^2, where t_B = e^{2 pi i (v1 - u1)},
// t_A = e^{2 pi i (v2 - u2)}, m_out = sqrt(pq) e^{2 pi i (u1 - v2)},
// m_in = sqrt(pq) e^{2 pi i (u2 - v1)}.
cplx r_kernel(const SOperatorContext& ctx, const SpectralAssignment& w,
              cplx x1, cplx x2, cplx x, cplx y);

// Two-variable contour transform with the r_kernel weight:
//   [R f](x1, x2) = Int Int r_kernel(x1, x2, x, y) f(x, y) dx/x dy/y
// over the product of unit circles (adaptive).  `f` takes multiplicative
// arguments.
quadrature::QuadratureResult r_apply(const SOperatorContext& ctx,
                                     const SpectralAssignment& w,
                                     const std::function<cplx(cplx, cplx)>& f,
                                     cplx x1, cplx x2);

// Entry (i, j) of L1(a1, b1) sigma3 L2(a2, b2) applied to phi at (z1, z2),
// where L1 acts by theta-coefficient difference operators in slot 1 and L2 in
// slot 2 (spins read off from (a - b)/eta as in the difference-operator
// module).
cplx l_sandwich_entry(int i, int j, cplx a1, cplx b1, cplx a2, cplx b2,
                      cplx tau, cplx eta, const Fn2& phi, cplx z1, cplx z2);

// Max-normalized entrywise residual of
//   R12 . (L1(u1,u2) sigma3 L2(v1,v2)) = (L1(v1,v2) sigma3 L2(u1,u2)) . R12
// applied to phi at the probes, with R12 the braid word at the split
// spectral tuple.  phi must be Gaussian-wrapped and even in each slot so the
// contour integrands stay single-valued and pole-free.
double rll_residual(const SOperatorContext& ctx, cplx tau, cplx u, cplx v,
                    cplx ell1, cplx ell2, const Fn2& phi,
                    std::span<const std::array<cplx, 2>> probes);

}  // namespace ehi::ybe
