#pragma once

#include <span>

#include "ehi/quadrature.hpp"
#include "ehi/report.hpp"
#include "ehi/specfun.hpp"
#include "ehi/types.hpp"

namespace ehi::identities {

// Verification knobs shared by the integral-identity checks.  The quadrature
// runs one decade tighter than the reported tolerance so discretization error
// never masquerades as identity error.
struct VerifyOptions {
  double tol = 1e-9;
  int n_max_1d = 1 << 14;
  int n_max_2d = 1 << 9;
  TruncationPolicy policy{};

  double quad_tol() const { return tol / 10.0; }
};

// --- one-dimensional beta-type evaluation -------------------------------

// prod_{j<k} Gamma(t_j t_k) over six parameters.
cplx elliptic_beta_rhs(std::span<const cplx> t, const specfun::GammaEngine& eng);

// (p;p)(q;q)/(4 pi i) * contour integral over |z|=1 of
//   prod_j Gamma(t_j z^{+-1}) / Gamma(z^{+-2})  dz/z,   prod_j t_j = pq.
quadrature::QuadratureResult elliptic_beta_lhs(std::span<const cplx> t,
                                               const specfun::GammaEngine& eng,
                                               double rel_tol, int n_max);

// lhs == rhs for a sampled admissible parameter set.
VerificationReport verify_elliptic_beta(std::span<const cplx> t,
                                        const NomePair& nomes,
                                        const VerifyOptions& opts = {});

// --- the higher beta-type function and its reflection -------------------

// V(t) for eight parameters with prod t = (pq)^2, all |t_j| < 1: same contour
// integral with eight Gamma(t_j z^{+-1}) factors in the numerator.
quadrature::QuadratureResult v_function(std::span<const cplx> t,
                                        const specfun::GammaEngine& eng,
                                        double rel_tol, int n_max);

// V(t) = prod_{j<k<=4} Gamma(t_j t_k) Gamma(t_{j+4} t_{k+4}) * V(s) with
// s_j = eps t_j, s_{j+4} = t_{j+4}/eps (j = 1..4), eps^2 = pq/(t1 t2 t3 t4).
VerificationReport verify_v_reflection(std::span<const cplx> t,
                                       const NomePair& nomes,
                                       const VerifyOptions& opts = {});

// Three-term difference equation for U(t) = V(t) / (Gamma(t1 t3^{+-1})
// Gamma(t2 t3^{+-1})): U + A(t) (U(q t1, t2/q) - U) + A(t|1<->2)
// (U(t1/q, q t2) - U) = 0.  Residual is normalized by the largest term.
VerificationReport verify_v_difference_equation(std::span<const cplx> t,
                                                const NomePair& nomes,
                                                const VerifyOptions& opts = {});

// --- multiple beta-type integral (rank 1 and 2) -------------------------

// RHS: prod_{j=1}^n [ Gamma(t^j)/Gamma(t) * prod_{m<s} Gamma(t^{j-1} t_m t_s) ]
// with six single-variable parameters and t^{2n-2} prod_m t_m = pq.
cplx selberg_rhs(int n, cplx t, std::span<const cplx> tm,
                 const specfun::GammaEngine& eng);
quadrature::QuadratureResult selberg_lhs(int n, cplx t,
                                         std::span<const cplx> tm,
                                         const specfun::GammaEngine& eng,
                                         double rel_tol, int n_max);
VerificationReport verify_selberg(int n, cplx t, std::span<const cplx> tm,
                                  const NomePair& nomes,
                                  const VerifyOptions& opts = {});

// --- additive-variable form of the kernel identity ----------------------

// Parameters of the three-fold kernel composition identity with real nomes:
// 0 < alpha, 0 < gamma, alpha + gamma < xi where e^{-xi} = sqrt(pq).
struct StrFunctionalParams {
  double alpha;
  double gamma;
  double x;  // external additive variables
  double y;
  double w;
};

VerificationReport verify_str_functional(const StrFunctionalParams& sp,
                                         const NomePair& nomes,
                                         const VerifyOptions& opts = {});

}  // namespace ehi::identities
