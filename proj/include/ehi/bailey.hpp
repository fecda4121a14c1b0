#pragma once

#include <functional>
#include <memory>
#include <span>

#include "ehi/quadrature.hpp"
#include "ehi/report.hpp"
#include "ehi/specfun.hpp"
#include "ehi/types.hpp"

namespace ehi::bailey {

// Kernel-evaluation budget shared along a lazy operator chain.  Every
// integrand evaluation anywhere in the chain counts once.
struct EvalBudget {
  long long limit = 10'000'000;
  long long used = 0;

  void tick() {
    if (++used > limit)
      throw BudgetExceededError(
          "operator chain exceeded its kernel-evaluation budget");
  }
};

// One-variable function handle the operators act on and produce.
using AnalyticFn = std::function<cplx(cplx)>;

// Evaluation context for a chain of operators: the gamma evaluator, the
// quadrature settings for every nested contour integral, and the shared
// budget.
struct OperatorContext {
  const specfun::GammaEngine* eng = nullptr;
  double rel_tol = 1e-10;
  int n_max = 1 << 12;
  std::shared_ptr<EvalBudget> budget = std::make_shared<EvalBudget>();
};

// D(s; u, w) = Gamma(sqrt(pq) s^{-1} u^{+-1} w^{+-1}).  Reflection makes
// D(s)D(s^{-1}) = 1 pointwise.
cplx d_factor(cplx s, cplx u, cplx w, const specfun::GammaEngine& eng);

// [M(t) f](w) = (p;p)(q;q)/(4 pi i Gamma(t^2)) * contour integral of
//   Gamma(t w^{+-1} z^{+-1}) / Gamma(z^{+-2}) f(z) dz/z over |z| = 1.
// Requires |t w^{+-1}| < 1 (kernel poles off the contour).
cplx m_apply(cplx t, const AnalyticFn& f, cplx w, const OperatorContext& ctx);

// Lazy composition: the result evaluates quadratures on demand.
AnalyticFn m_operator(cplx t, AnalyticFn f, const OperatorContext& ctx);
AnalyticFn d_multiplied(cplx s, cplx u, AnalyticFn f,
                        const OperatorContext& ctx);

// Residual of the operator identity
//   M(s) D(st; u, .) M(t) = D(t; u, .) M(st) D(s; u, .)
// applied to f and compared at the probe points; normalized by the larger
// side.  Requires sqrt|pq| max(|u|,1/|u|) < |st| (and |s|,|t|,|st| < 1) so
// every multiplier stays contour-separated.
VerificationReport star_triangle_residual(cplx s, cplx t, cplx u,
                                          const AnalyticFn& f,
                                          std::span<const cplx> probes,
                                          const OperatorContext& ctx,
                                          double tol);

// With beta = M(t) alpha, checks that
//   beta'(w) = D(t^{-1}; u, w) [M(s) (D(st; u, .) beta)](w)
// equals M(st) applied to alpha' = D(s; u, .) alpha.
VerificationReport bailey_lemma_check(const AnalyticFn& alpha, cplx s, cplx t,
                                      cplx u, std::span<const cplx> probes,
                                      const OperatorContext& ctx, double tol);

// Closed form of M(t) applied to f(z) = prod_{j=3}^{6} Gamma(t_j z^{+-1})
// with t3 t4 t5 t6 = pq/t^2: the six-parameter beta evaluation gives
//   [M(t) f](w) = prod_{j<k} Gamma(T_j T_k) / Gamma(t^2),
//   T = (t w, t/w, t3, t4, t5, t6).
cplx m_apply_beta_closed_form(cplx t, std::span<const cplx> t_rest, cplx w,
                              const specfun::GammaEngine& eng);

}  // namespace ehi::bailey
