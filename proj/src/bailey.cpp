#include "ehi/bailey.hpp"

#include <cmath>
#include <utility>

namespace ehi::bailey {

using specfun::GammaEngine;

cplx d_factor(cplx s, cplx u, cplx w, const GammaEngine& eng) {
  if (s == cplx(0.0) || u == cplx(0.0) || w == cplx(0.0))
    throw DomainError("d_factor: arguments must be nonzero");
  return eng.gamma_pm2(eng.sqrt_pq() / s, u, w);
}

cplx m_apply(cplx t, const AnalyticFn& f, cplx w, const OperatorContext& ctx) {
  if (ctx.eng == nullptr) throw DomainError("m_apply: context has no engine");
  const GammaEngine& eng = *ctx.eng;
  if (!(std::abs(t * w) < 1.0 - kPoleGuard) ||
      !(std::abs(t / w) < 1.0 - kPoleGuard))
    throw DomainError("m_apply: |t w^{+-1}| must stay below 1");
  const cplx t2 = t * t;
  if (std::abs(1.0 - t2) < kPoleGuard)
    throw DomainError("m_apply: t^2 at the gamma pole (degenerate operator)");

  const auto budget = ctx.budget;
  auto integrand = [&eng, &f, budget, t, w](cplx z) {
    budget->tick();
    return eng.gamma_pm2(t, w, z) * eng.inv_gamma_pair(z * z) * f(z);
  };
  const auto res =
      quadrature::circle_integrate_adaptive(integrand, ctx.rel_tol, ctx.n_max);
  return eng.phase_factor() / (4.0 * kPi * kI) * res.value / eng.gamma(t2);
}

AnalyticFn m_operator(cplx t, AnalyticFn f, const OperatorContext& ctx) {
  return [t, f = std::move(f), ctx](cplx w) { return m_apply(t, f, w, ctx); };
}

AnalyticFn d_multiplied(cplx s, cplx u, AnalyticFn f,
                        const OperatorContext& ctx) {
  const GammaEngine* eng = ctx.eng;
  return [s, u, eng, f = std::move(f)](cplx w) {
    return d_factor(s, u, w, *eng) * f(w);
  };
}

namespace {

// Multipliers D(a; u, .) evaluated on the unit circle need the gamma
// arguments off the pole ladder: sqrt|pq| max(|u|, 1/|u|) / |a| < 1.
void check_multiplier_separation(cplx a, cplx u, const GammaEngine& eng,
                                 const char* what) {
  const double spq = std::sqrt(std::abs(eng.p() * eng.q()));
  const double umax = std::max(std::abs(u), 1.0 / std::abs(u));
  if (!(spq * umax / std::abs(a) < 1.0 - kPoleGuard))
    throw DomainError(std::string(what) +
                      ": multiplier parameter too small for the contour");
}

double probe_comparison(const AnalyticFn& lhs, const AnalyticFn& rhs,
                        std::span<const cplx> probes, cplx& worst_l,
                        cplx& worst_r) {
  double worst = 0.0;
  for (const cplx& w : probes) {
    const cplx a = lhs(w), b = rhs(w);
    const double r = relative_error(a, b);
    if (r >= worst) {
      worst = r;
      worst_l = a;
      worst_r = b;
    }
  }
  return worst;
}

}  // namespace

VerificationReport star_triangle_residual(cplx s, cplx t, cplx u,
                                          const AnalyticFn& f,
                                          std::span<const cplx> probes,
                                          const OperatorContext& ctx,
                                          double tol) {
  if (ctx.eng == nullptr)
    throw DomainError("star_triangle_residual: context has no engine");
  const GammaEngine& eng = *ctx.eng;
  Stopwatch sw;
  const cplx st = s * t;
  for (cplx a : {s, t, st})
    if (!(std::abs(a) < 1.0 - kPoleGuard) || a == cplx(0.0))
      throw DomainError("star_triangle_residual: parameters must sit in the "
                        "punctured unit disk");
  check_multiplier_separation(st, u, eng, "star_triangle_residual");
  check_multiplier_separation(s, u, eng, "star_triangle_residual");
  check_multiplier_separation(t, u, eng, "star_triangle_residual");

  AnalyticFn lhs = m_operator(
      s, d_multiplied(st, u, m_operator(t, f, ctx), ctx), ctx);
  AnalyticFn rhs =
      d_multiplied(t, u, m_operator(st, d_multiplied(s, u, f, ctx), ctx), ctx);

  VerificationReport rep;
  rep.identity_id = "operator_star_triangle";
  rep.params["s"] = json_cplx(s);
  rep.params["t"] = json_cplx(t);
  rep.params["u"] = json_cplx(u);
  rep.params["p"] = json_cplx(eng.p());
  rep.params["q"] = json_cplx(eng.q());
  cplx wl(0.0), wr(0.0);
  const double worst = probe_comparison(lhs, rhs, probes, wl, wr);
  rep.finish(wl, wr, tol);
  rep.rel_err = worst;
  rep.passed = worst <= tol;
  rep.n_used = ctx.budget->used;
  rep.elapsed_ms = sw.ms();
  return rep;
}

VerificationReport bailey_lemma_check(const AnalyticFn& alpha, cplx s, cplx t,
                                      cplx u, std::span<const cplx> probes,
                                      const OperatorContext& ctx, double tol) {
  if (ctx.eng == nullptr)
    throw DomainError("bailey_lemma_check: context has no engine");
  const GammaEngine& eng = *ctx.eng;
  Stopwatch sw;
  const cplx st = s * t;
  for (cplx a : {s, t, st})
    if (!(std::abs(a) < 1.0 - kPoleGuard) || a == cplx(0.0))
      throw DomainError(
          "bailey_lemma_check: parameters must sit in the punctured unit disk");
  check_multiplier_separation(st, u, eng, "bailey_lemma_check");
  check_multiplier_separation(s, u, eng, "bailey_lemma_check");

  // beta = M(t) alpha is the seed pair; the lemma transports it with M(s).
  AnalyticFn beta = m_operator(t, alpha, ctx);
  AnalyticFn lhs = [&, st](cplx w) {
    return d_factor(1.0 / t, u, w, eng) *
           m_apply(s, d_multiplied(st, u, beta, ctx), w, ctx);
  };
  AnalyticFn rhs = m_operator(st, d_multiplied(s, u, alpha, ctx), ctx);

  VerificationReport rep;
  rep.identity_id = "bailey_pair_transport";
  rep.params["s"] = json_cplx(s);
  rep.params["t"] = json_cplx(t);
  rep.params["u"] = json_cplx(u);
  rep.params["p"] = json_cplx(eng.p());
  rep.params["q"] = json_cplx(eng.q());
  cplx wl(0.0), wr(0.0);
  const double worst = probe_comparison(lhs, rhs, probes, wl, wr);
  rep.finish(wl, wr, tol);
  rep.rel_err = worst;
  rep.passed = worst <= tol;
  rep.n_used = ctx.budget->used;
  rep.elapsed_ms = sw.ms();
  return rep;
}

cplx m_apply_beta_closed_form(cplx t, std::span<const cplx> t_rest, cplx w,
                              const GammaEngine& eng) {
  if (t_rest.size() != 4)
    throw DomainError("m_apply_beta_closed_form: four parameters required");
  cplx prod(1.0);
  for (const cplx& a : t_rest) prod *= a;
  const cplx pq = eng.p() * eng.q();
  const cplx t2 = t * t;
  if (std::abs(prod * t2 - pq) > 1e-10 * std::max(std::abs(pq), 1.0))
    throw BalanceError("m_apply_beta_closed_form: t^2 t3 t4 t5 t6 != pq");
  std::array<cplx, 6> T = {t * w,       t / w,       t_rest[0],
                           t_rest[1],   t_rest[2],   t_rest[3]};
  cplx rhs(1.0);
  for (std::size_t j = 0; j < T.size(); ++j)
    for (std::size_t k = j + 1; k < T.size(); ++k) rhs *= eng.gamma(T[j] * T[k]);
  return rhs / eng.gamma(t2);
}

}  // namespace ehi::bailey
