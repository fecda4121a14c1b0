#include "ehi/identities.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace ehi::identities {

using specfun::GammaEngine;
using quadrature::QuadratureResult;

namespace {

void check_balance(cplx prod, cplx target, const char* what) {
  const double scale = std::max({std::abs(prod), std::abs(target), 1.0});
  if (std::abs(prod - target) > 1e-10 * scale)
    throw BalanceError(std::string(what) + ": balancing product violated");
}

void check_inside_disk(std::span<const cplx> t, const char* what) {
  for (const cplx& tj : t)
    if (!(std::abs(tj) < 1.0 - kPoleGuard))
      throw DomainError(std::string(what) +
                        ": parameter modulus must stay below 1");
}

nlohmann::ordered_json json_list(std::span<const cplx> t) {
  auto a = nlohmann::ordered_json::array();
  for (const cplx& x : t) a.push_back(json_cplx(x));
  return a;
}

void stamp_nomes(VerificationReport& rep, const NomePair& nomes) {
  rep.params["p"] = json_cplx(nomes.p);
  rep.params["q"] = json_cplx(nomes.q);
}

// contour integral of prod_j Gamma(t_j z^{+-1}) / Gamma(z^{+-2}) dz/z,
// scaled by (p;p)(q;q)/(4 pi i); shared by the beta-type evaluations.
QuadratureResult beta_type_integral(std::span<const cplx> t,
                                    const GammaEngine& eng, double rel_tol,
                                    int n_max) {
  auto f = [&](cplx z) {
    cplx v = eng.inv_gamma_pair(z * z);
    for (const cplx& tj : t) v *= eng.gamma_pm(tj, z);
    return v;
  };
  QuadratureResult res =
      quadrature::circle_integrate_adaptive(f, rel_tol, n_max);
  const cplx scale = eng.phase_factor() / (4.0 * kPi * kI);
  res.value *= scale;
  res.err_estimate *= std::abs(scale);
  return res;
}

}  // namespace

cplx elliptic_beta_rhs(std::span<const cplx> t, const GammaEngine& eng) {
  cplx prod(1.0);
  for (std::size_t j = 0; j < t.size(); ++j)
    for (std::size_t k = j + 1; k < t.size(); ++k) prod *= eng.gamma(t[j] * t[k]);
  return prod;
}

QuadratureResult elliptic_beta_lhs(std::span<const cplx> t,
                                   const GammaEngine& eng, double rel_tol,
                                   int n_max) {
  return beta_type_integral(t, eng, rel_tol, n_max);
}

VerificationReport verify_elliptic_beta(std::span<const cplx> t,
                                        const NomePair& nomes,
                                        const VerifyOptions& opts) {
  if (t.size() != 6)
    throw DomainError("verify_elliptic_beta: six parameters required");
  Stopwatch sw;
  const GammaEngine eng(nomes, opts.policy);
  cplx prod(1.0);
  for (const cplx& tj : t) prod *= tj;
  check_balance(prod, nomes.p * nomes.q, "elliptic beta");
  check_inside_disk(t, "elliptic beta");

  const QuadratureResult lhs =
      elliptic_beta_lhs(t, eng, opts.quad_tol(), opts.n_max_1d);
  const cplx rhs = elliptic_beta_rhs(t, eng);

  VerificationReport rep;
  rep.identity_id = "elliptic_beta";
  stamp_nomes(rep, nomes);
  rep.params["t"] = json_list(t);
  rep.n_used = lhs.n_used;
  rep.finish(lhs.value, rhs, opts.tol);
  rep.elapsed_ms = sw.ms();
  return rep;
}

QuadratureResult v_function(std::span<const cplx> t, const GammaEngine& eng,
                            double rel_tol, int n_max) {
  if (t.size() != 8) throw DomainError("v_function: eight parameters required");
  cplx prod(1.0);
  for (const cplx& tj : t) prod *= tj;
  const cplx pq = eng.p() * eng.q();
  check_balance(prod, pq * pq, "v_function");
  check_inside_disk(t, "v_function");
  return beta_type_integral(t, eng, rel_tol, n_max);
}

VerificationReport verify_v_reflection(std::span<const cplx> t,
                                       const NomePair& nomes,
                                       const VerifyOptions& opts) {
  if (t.size() != 8)
    throw DomainError("verify_v_reflection: eight parameters required");
  Stopwatch sw;
  const GammaEngine eng(nomes, opts.policy);

  const cplx pq = nomes.p * nomes.q;
  const cplx eps = std::sqrt(pq / (t[0] * t[1] * t[2] * t[3]));
  std::array<cplx, 8> s;
  for (int j = 0; j < 4; ++j) s[j] = eps * t[j];
  for (int j = 4; j < 8; ++j) s[j] = t[j] / eps;
  check_inside_disk(s, "verify_v_reflection (reflected parameters)");

  cplx pref(1.0);
  for (int j = 0; j < 4; ++j)
    for (int k = j + 1; k < 4; ++k)
      pref *= eng.gamma(t[j] * t[k]) * eng.gamma(t[j + 4] * t[k + 4]);

  const QuadratureResult lhs =
      v_function(t, eng, opts.quad_tol(), opts.n_max_1d);
  const QuadratureResult vs = v_function(s, eng, opts.quad_tol(), opts.n_max_1d);

  VerificationReport rep;
  rep.identity_id = "v_reflection";
  stamp_nomes(rep, nomes);
  rep.params["t"] = json_list(t);
  rep.n_used = lhs.n_used + vs.n_used;
  rep.finish(lhs.value, pref * vs.value, opts.tol);
  rep.elapsed_ms = sw.ms();
  return rep;
}

namespace {

// Coefficient of the forward shift in the three-term difference equation;
// the backward coefficient is the same expression with t1 <-> t2.
cplx shift_coefficient(const GammaEngine& eng, std::span<const cplx> t) {
  const cplx q = eng.q();
  auto th = [&](cplx x) { return eng.theta_p(x); };
  cplx c = th(t[0] / (q * t[2])) * th(t[2] * t[0]) * th(t[2] / t[0]) /
           (th(t[0] / t[1]) * th(t[1] / (q * t[0])) * th(t[0] * t[1] / q));
  for (int k = 3; k < 8; ++k) c *= th(t[1] * t[k] / q) / th(t[2] * t[k]);
  return c;
}

}  // namespace

VerificationReport verify_v_difference_equation(std::span<const cplx> t,
                                                const NomePair& nomes,
                                                const VerifyOptions& opts) {
  if (t.size() != 8)
    throw DomainError("verify_v_difference_equation: eight parameters required");
  Stopwatch sw;
  const GammaEngine eng(nomes, opts.policy);
  const cplx q = nomes.q;
  if (!(std::abs(t[0]) < std::abs(q)) || !(std::abs(t[1]) < std::abs(q)))
    throw DomainError(
        "verify_v_difference_equation: |t1|, |t2| must be below |q| so the "
        "shifted parameter sets stay admissible");

  long n_used = 0;
  auto u_value = [&](std::span<const cplx> tt) {
    const QuadratureResult v =
        v_function(tt, eng, opts.quad_tol(), opts.n_max_1d);
    n_used += v.n_used;
    const cplx den = eng.gamma_pm(tt[0], tt[2]) * eng.gamma_pm(tt[1], tt[2]);
    return v.value / den;
  };

  std::array<cplx, 8> ta, tb;
  std::copy(t.begin(), t.end(), ta.begin());
  std::copy(t.begin(), t.end(), tb.begin());
  ta[0] *= q;
  ta[1] /= q;
  tb[0] /= q;
  tb[1] *= q;

  std::array<cplx, 8> tswap;
  std::copy(t.begin(), t.end(), tswap.begin());
  std::swap(tswap[0], tswap[1]);

  const cplx u0 = u_value(t);
  const cplx ua = u_value(ta);
  const cplx ub = u_value(tb);
  const cplx a1 = shift_coefficient(eng, t);
  const cplx a2 = shift_coefficient(eng, tswap);

  const cplx term_a = a1 * (ua - u0);
  const cplx term_b = a2 * (ub - u0);
  const cplx sum = u0 + term_a + term_b;
  const double scale =
      std::max({std::abs(u0), std::abs(term_a), std::abs(term_b), 1e-300});

  VerificationReport rep;
  rep.identity_id = "v_difference_equation";
  stamp_nomes(rep, nomes);
  rep.params["t"] = json_list(t);
  rep.n_used = n_used;
  rep.finish_residual(std::abs(sum) / scale, opts.tol, sum, cplx(scale));
  rep.elapsed_ms = sw.ms();
  return rep;
}

cplx selberg_rhs(int n, cplx t, std::span<const cplx> tm,
                 const GammaEngine& eng) {
  if (tm.size() != 6)
    throw DomainError("selberg_rhs: six single-variable parameters required");
  cplx prod(1.0);
  cplx tpow(1.0);  // t^{j-1}
  for (int j = 1; j <= n; ++j) {
    // Gamma(t^j)/Gamma(t) is exactly 1 at j = 1 (and t never enters at rank
    // 1), so skip it rather than evaluate at a potential pole.
    if (j > 1) prod *= eng.gamma(tpow * t) / eng.gamma(t);
    for (std::size_t m = 0; m < tm.size(); ++m)
      for (std::size_t s = m + 1; s < tm.size(); ++s)
        prod *= eng.gamma(tpow * tm[m] * tm[s]);
    tpow *= t;
  }
  return prod;
}

QuadratureResult selberg_lhs(int n, cplx t, std::span<const cplx> tm,
                             const GammaEngine& eng, double rel_tol,
                             int n_max) {
  if (tm.size() != 6)
    throw DomainError("selberg_lhs: six single-variable parameters required");
  const cplx pref = eng.phase_factor();

  if (n == 1) {
    auto f = [&](cplx z) {
      cplx v = eng.inv_gamma_pair(z * z);
      for (const cplx& a : tm) v *= eng.gamma_pm(a, z);
      return v;
    };
    QuadratureResult res =
        quadrature::circle_integrate_adaptive(f, rel_tol, n_max);
    const cplx scale = pref / (2.0 * kTwoPiI);
    res.value *= scale;
    res.err_estimate *= std::abs(scale);
    return res;
  }
  if (n == 2) {
    auto f = [&](cplx z1, cplx z2) {
      cplx v = eng.gamma_pm2(t, z1, z2) * eng.inv_gamma_pair(z1 * z2) *
               eng.inv_gamma_pair(z1 / z2) * eng.inv_gamma_pair(z1 * z1) *
               eng.inv_gamma_pair(z2 * z2);
      for (const cplx& a : tm) v *= eng.gamma_pm(a, z1) * eng.gamma_pm(a, z2);
      return v;
    };
    QuadratureResult res =
        quadrature::circle_integrate_2d_adaptive(f, rel_tol, n_max);
    const cplx scale = pref * pref / (8.0 * kTwoPiI * kTwoPiI);
    res.value *= scale;
    res.err_estimate *= std::abs(scale);
    return res;
  }
  throw DomainError("selberg_lhs: only ranks 1 and 2 are implemented");
}

VerificationReport verify_selberg(int n, cplx t, std::span<const cplx> tm,
                                  const NomePair& nomes,
                                  const VerifyOptions& opts) {
  Stopwatch sw;
  const GammaEngine eng(nomes, opts.policy);
  cplx prod(1.0);
  for (const cplx& a : tm) prod *= a;
  cplx tpow(1.0);
  for (int j = 0; j < 2 * n - 2; ++j) tpow *= t;
  check_balance(tpow * prod, nomes.p * nomes.q, "selberg");
  check_inside_disk(tm, "selberg");
  if (n == 2 && !(std::abs(t) < 1.0 - kPoleGuard))
    throw DomainError("selberg: |t| must stay below 1");

  const QuadratureResult lhs = selberg_lhs(
      n, t, tm, eng, opts.quad_tol(), n == 2 ? opts.n_max_2d : opts.n_max_1d);
  const cplx rhs = selberg_rhs(n, t, tm, eng);

  VerificationReport rep;
  rep.identity_id = n == 1 ? "elliptic_selberg_n1" : "elliptic_selberg_n2";
  stamp_nomes(rep, nomes);
  rep.params["t"] = json_cplx(t);
  rep.params["tm"] = json_list(tm);
  rep.n_used = lhs.n_used;
  rep.finish(lhs.value, rhs, opts.tol);
  rep.elapsed_ms = sw.ms();
  return rep;
}

VerificationReport verify_str_functional(const StrFunctionalParams& sp,
                                         const NomePair& nomes,
                                         const VerifyOptions& opts) {
  if (nomes.p.imag() != 0.0 || nomes.q.imag() != 0.0 ||
      !(nomes.p.real() > 0.0) || !(nomes.q.real() > 0.0))
    throw DomainError("verify_str_functional: nomes must be real in (0,1)");
  Stopwatch sw;
  const GammaEngine eng(nomes, opts.policy);
  const double xi = -0.5 * std::log((nomes.p * nomes.q).real());
  if (!(sp.alpha > 0.0) || !(sp.gamma > 0.0) || !(sp.alpha + sp.gamma < xi))
    throw DomainError(
        "verify_str_functional: need 0 < alpha, 0 < gamma, alpha+gamma < xi");

  const cplx spq = eng.sqrt_pq();
  auto d_factor = [&](double a, cplx zx, cplx zy) {
    return eng.gamma_pm2(spq * std::exp(a), zx, zy);
  };
  const cplx zx = std::polar(1.0, sp.x);
  const cplx zy = std::polar(1.0, sp.y);
  const cplx zw = std::polar(1.0, sp.w);

  auto g = [&](double u) {
    const cplx zu = std::polar(1.0, u);
    const cplx measure =
        eng.phase_factor() / (4.0 * kPi) * eng.inv_gamma_pair(zu * zu);
    return measure * d_factor(xi - sp.alpha, zx, zu) *
           d_factor(sp.alpha + sp.gamma, zy, zu) *
           d_factor(xi - sp.gamma, zw, zu);
  };
  const QuadratureResult lhs =
      quadrature::interval_integrate_adaptive(g, opts.quad_tol(), opts.n_max_1d);

  const cplx chi = eng.gamma(std::exp(cplx(-2.0 * sp.alpha))) *
                   eng.gamma(std::exp(cplx(-2.0 * sp.gamma))) *
                   eng.gamma(std::exp(cplx(2.0 * (sp.alpha + sp.gamma - xi))));
  const cplx rhs = chi * d_factor(sp.alpha, zy, zw) *
                   d_factor(xi - sp.alpha - sp.gamma, zx, zw) *
                   d_factor(sp.gamma, zx, zy);

  VerificationReport rep;
  rep.identity_id = "str_functional";
  stamp_nomes(rep, nomes);
  rep.params["alpha"] = sp.alpha;
  rep.params["gamma"] = sp.gamma;
  rep.params["x"] = sp.x;
  rep.params["y"] = sp.y;
  rep.params["w"] = sp.w;
  rep.n_used = lhs.n_used;
  rep.finish(lhs.value, rhs, opts.tol);
  rep.elapsed_ms = sw.ms();
  return rep;
}

}  // namespace ehi::identities
