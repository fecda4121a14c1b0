#include "ehi/specfun.hpp"

#include <algorithm>
#include <cmath>

#include "ehi/quadrature.hpp"
#include "ehi/summation.hpp"

namespace ehi::specfun {

cplx qpoch_inf(cplx z, cplx p, const TruncationPolicy& policy) {
  policy.validate();
  const double ap = std::abs(p);
  if (!(ap < 1.0)) throw DomainError("qpoch_inf: |p| must be < 1");
  if (z == cplx(0.0)) return cplx(1.0);

  std::vector<cplx> logs;
  cplx zp = z;
  for (int j = 0; j < policy.max_terms; ++j) {
    const double azp = std::abs(zp);
    if (azp < 1.0) {
      // remaining tail: sum_{i>=j} |z p^i| / (1 - |z p^i|)
      const double tail = azp / ((1.0 - ap) * (1.0 - azp));
      if (tail <= policy.target_eps) return std::exp(pairwise_sum(logs));
    }
    const cplx factor = 1.0 - zp;
    if (factor == cplx(0.0)) return cplx(0.0);  // z = p^{-j}: exact zero
    logs.push_back(std::log(factor));
    zp *= p;
  }
  throw NonConvergentError("qpoch_inf: tail bound not met within max_terms");
}

cplx theta_mult(cplx z, cplx p, const TruncationPolicy& policy) {
  policy.validate();
  if (z == cplx(0.0)) throw DomainError("theta_mult: z must be nonzero");
  // split the tail budget across the two factors
  const TruncationPolicy half(policy.target_eps * 0.5, policy.max_terms);
  return qpoch_inf(z, p, half) * qpoch_inf(p / z, p, half);
}

namespace {

// Log-space double product along diagonals j+k = d, pairing (j,k) with (k,j)
// before accumulation.  The pair sums are single commutative additions, so
// swapping (p,q) permutes nothing: the result is bit-identical.
cplx elliptic_gamma_product(cplx z, cplx p, cplx q,
                            const TruncationPolicy& policy) {
  if (z == cplx(0.0)) throw DomainError("elliptic_gamma: z must be nonzero");
  const double ap = std::abs(p), aq = std::abs(q);
  const double r = std::max(ap, aq);
  const cplx pq_over_z = p * q / z;
  const double scale = std::abs(z) + std::abs(pq_over_z);
  const double denom = (1.0 - r) * (1.0 - r);

  std::vector<cplx> pj{cplx(1.0)}, qk{cplx(1.0)};
  std::vector<cplx> sums;
  long terms_used = 0;
  bool zero_hit = false;

  auto term = [&](int j, int k) -> cplx {
    const cplx w = pj[j] * qk[k];
    const cplx den_factor = 1.0 - z * w;
    if (std::abs(den_factor) < kPoleGuard)
      throw PoleError("elliptic_gamma: z within guard band of a pole", z);
    const cplx num_factor = 1.0 - pq_over_z * w;
    if (num_factor == cplx(0.0)) {
      zero_hit = true;  // z = p^{j+1} q^{k+1}: exact zero of Gamma
      return cplx(0.0);
    }
    return std::log(num_factor) - std::log(den_factor);
  };

  for (int d = 0;; ++d) {
    // diagonal d holds d+1 lattice points with term magnitude <= scale*r^d;
    // factor 4 covers the log1p linearization of the omitted region
    const double tail = 4.0 * scale * (d + 1.0) * std::pow(r, d) / denom;
    if (tail <= policy.target_eps) break;
    if (d > 0) {
      pj.push_back(pj.back() * p);
      qk.push_back(qk.back() * q);
    }
    for (int m = 0; 2 * m <= d; ++m) {
      const int j = m, k = d - m;
      const cplx s = (j == k) ? term(j, j) : term(j, k) + term(k, j);
      if (zero_hit) return cplx(0.0);
      sums.push_back(s);
      terms_used += (j == k) ? 1 : 2;
      if (terms_used > policy.max_terms)
        throw NonConvergentError("elliptic_gamma: max_terms exceeded");
    }
  }
  return std::exp(pairwise_sum(sums));
}

}  // namespace

cplx elliptic_gamma(cplx z, const NomePair& nomes,
                    const TruncationPolicy& policy) {
  policy.validate();
  return elliptic_gamma_product(z, nomes.p, nomes.q, policy);
}

cplx jacobi_theta(const JacobiParams& jp, cplx u,
                  const TruncationPolicy& policy) {
  policy.validate();
  const cplx ipitau = kI * kPi * jp.tau;
  const int a = jp.index;
  const int kMaxN = 2000;

  cplx acc = (a >= 3) ? cplx(1.0) : cplx(0.0);
  double running_max = std::abs(acc);
  int below = 0;
  for (int n = (a >= 3) ? 1 : 0; n < kMaxN; ++n) {
    cplx term;
    if (a <= 2) {
      const cplx gauss = std::exp(ipitau * ((n + 0.5) * (n + 0.5)));
      const cplx arg = (2.0 * n + 1.0) * kPi * u;
      const double sign = (a == 1 && (n & 1)) ? -1.0 : 1.0;
      term = 2.0 * sign * gauss * (a == 1 ? std::sin(arg) : std::cos(arg));
    } else {
      const cplx gauss = std::exp(ipitau * (double(n) * double(n)));
      const double sign = (a == 4 && (n & 1)) ? -1.0 : 1.0;
      term = 2.0 * sign * gauss * std::cos(2.0 * n * kPi * u);
    }
    acc += term;
    running_max = std::max(running_max, std::abs(term));
    if (std::abs(term) < policy.target_eps * std::max(running_max, 1e-300)) {
      if (++below >= 2) return acc;
    } else {
      below = 0;
    }
  }
  throw NonConvergentError("jacobi_theta: series did not settle");
}

cplx jacobi_theta(int a, cplx u, cplx tau, const TruncationPolicy& policy) {
  return jacobi_theta(JacobiParams(tau, a), u, policy);
}

std::vector<cplx> expand_pm(cplx t, std::initializer_list<cplx> vars) {
  const std::vector<cplx> vs(vars);
  std::vector<cplx> out;
  out.reserve(std::size_t{1} << vs.size());
  for (unsigned mask = 0; mask < (1u << vs.size()); ++mask) {
    cplx a = t;
    for (std::size_t i = 0; i < vs.size(); ++i)
      a = ((mask >> i) & 1u) ? a * vs[i] : a / vs[i];
    out.push_back(a);
  }
  return out;
}

GammaEngine::GammaEngine(const NomePair& nomes, const TruncationPolicy& policy)
    : nomes_(nomes), policy_(policy) {
  policy_.validate();
  const cplx p = nomes_.p, q = nomes_.q;
  const double ap = std::abs(p), aq = std::abs(q);
  r_ = std::max(ap, aq);
  pq_ = p * q;
  abs_pq_ = std::abs(pq_);
  sqrt_pq_ = std::sqrt(pq_);
  qp_p_ = qpoch_inf(p, p, policy_);
  qp_q_ = qpoch_inf(q, q, policy_);
  rho_cut_ = std::max(0.92, 0.5 * (1.0 + r_));

  const double c0 = 1.0 / ((1.0 - ap) * (1.0 - aq));
  const double target =
      std::max(policy_.target_eps * (1.0 - rho_cut_) / (3.0 * c0), 1e-300);
  int n_max =
      static_cast<int>(std::ceil(std::log(target) / std::log(rho_cut_))) + 2;
  n_max = std::clamp(n_max, 8, 40000);

  cn_.assign(n_max + 1, cplx(0.0));
  cn_m1_.assign(n_max + 1, cplx(0.0));
  en_p_.assign(n_max + 1, cplx(0.0));
  en_q_.assign(n_max + 1, cplx(0.0));
  cplx pn(1.0), qn(1.0);
  for (int n = 1; n <= n_max; ++n) {
    pn *= p;
    qn *= q;
    const cplx den = (1.0 - pn) * (1.0 - qn);
    cn_[n] = 1.0 / den;
    cn_m1_[n] = (pn + qn - pn * qn) / den;
    en_p_[n] = pn / (double(n) * (1.0 - pn));
    en_q_[n] = qn / (double(n) * (1.0 - qn));
  }
}

cplx GammaEngine::gamma_series(cplx z, double rho) const {
  const cplx one_m_z = 1.0 - z;
  if (std::abs(one_m_z) < kPoleGuard)
    throw PoleError("elliptic_gamma: z within guard band of the pole at 1", z);
  const double c0 =
      1.0 / ((1.0 - std::abs(nomes_.p)) * (1.0 - std::abs(nomes_.q)));
  const cplx w = pq_ / z;
  cplx S(0.0), zn(1.0), wn(1.0);
  double rn = rho;
  for (std::size_t n = 1; n < cn_.size(); ++n) {
    zn *= z;
    wn *= w;
    S += (zn * cn_m1_[n] - wn * cn_[n]) / double(n);
    rn *= rho;  // rn = rho^{n+1}
    const double tail = 3.0 * c0 * rn / ((n + 2.0) * (1.0 - rho));
    if (tail <= policy_.target_eps) return std::exp(S) / one_m_z;
  }
  // table exhausted (shouldn't happen inside the admitted annulus)
  return elliptic_gamma_product(z, nomes_.p, nomes_.q, policy_);
}

cplx GammaEngine::gamma(cplx z) const {
  if (z == cplx(0.0)) throw DomainError("elliptic_gamma: z must be nonzero");
  const double az = std::abs(z);
  if (az > 0.0 && abs_pq_ < az) {
    const double rho = std::max(az * r_, abs_pq_ / az);
    if (rho <= rho_cut_) return gamma_series(z, rho);
  }
  return elliptic_gamma_product(z, nomes_.p, nomes_.q, policy_);
}

cplx GammaEngine::gamma_pm(cplx t, cplx z) const {
  return gamma(t * z) * gamma(t / z);
}

cplx GammaEngine::gamma_pm2(cplx t, cplx x, cplx z) const {
  return gamma(t * x * z) * gamma(t * x / z) * gamma(t / x * z) *
         gamma(t / (x * z));
}

cplx GammaEngine::gamma_prod(std::span<const cplx> args) const {
  cplx prod(1.0);
  for (const cplx& a : args) prod *= gamma(a);
  return prod;
}

cplx GammaEngine::theta_fast(cplx x, cplx nome, double abs_nome,
                             const std::vector<cplx>& table) const {
  // (x;nome)_inf = (1-x) exp(-sum_{n>=1} x^n nome^n / (n (1-nome^n)))
  const double rate = std::abs(x) * abs_nome;
  if (rate > rho_cut_) return qpoch_inf(x, nome, policy_);
  cplx S(0.0), xn(1.0);
  double rn = rate;
  for (std::size_t n = 1; n < table.size(); ++n) {
    xn *= x;
    S -= xn * table[n];
    rn *= rate;  // rn = rate^{n+1}
    const double tail = rn / ((n + 2.0) * (1.0 - abs_nome) * (1.0 - rate));
    if (tail <= policy_.target_eps) return (1.0 - x) * std::exp(S);
  }
  return qpoch_inf(x, nome, policy_);
}

cplx GammaEngine::theta_p(cplx z) const {
  if (z == cplx(0.0)) throw DomainError("theta: z must be nonzero");
  const double ap = std::abs(nomes_.p);
  return theta_fast(z, nomes_.p, ap, en_p_) *
         theta_fast(nomes_.p / z, nomes_.p, ap, en_p_);
}

cplx GammaEngine::theta_q(cplx z) const {
  if (z == cplx(0.0)) throw DomainError("theta: z must be nonzero");
  const double aq = std::abs(nomes_.q);
  return theta_fast(z, nomes_.q, aq, en_q_) *
         theta_fast(nomes_.q / z, nomes_.q, aq, en_q_);
}

cplx GammaEngine::inv_gamma_pair(cplx w) const {
  // 1/(Gamma(w) Gamma(1/w)) = -theta(w;p) theta(w;q) / w
  return -theta_p(w) * theta_q(w) / w;
}

cplx general_ehi_eval(std::span<const cplx> t, std::span<const cplx> w,
                      const NomePair& nomes, double rel_tol, int n_max,
                      const TruncationPolicy& policy) {
  cplx tprod(1.0), wprod(1.0);
  for (const cplx& tk : t) tprod *= tk;
  for (const cplx& wk : w) wprod *= wk;
  const double scale = std::max({std::abs(tprod), std::abs(wprod), 1.0});
  if (std::abs(tprod - wprod) > 1e-10 * scale)
    throw BalanceError("general_ehi_eval: prod t must equal prod w");

  const double apq = std::abs(nomes.p * nomes.q);
  for (const cplx& tk : t)
    if (!(std::abs(tk) < 1.0 - kPoleGuard))
      throw PoleOnContourError("general_ehi_eval: |t_k| too close to 1");
  for (const cplx& wk : w)
    if (!(std::abs(wk) * (1.0 - kPoleGuard) > apq))
      throw PoleOnContourError("general_ehi_eval: |w_k| too close to |pq|");

  const GammaEngine eng(nomes, policy);
  const cplx pq = nomes.p * nomes.q;
  // 1/Gamma(w z) = Gamma(pq/(w z)) by reflection; the reflected arguments sit
  // inside the zero lattice, so denominator poles on or near the contour
  // become plain zeros instead of guard-band failures.
  auto f = [&](cplx z) {
    cplx v(1.0);
    for (const cplx& tk : t) v *= eng.gamma(tk * z);
    for (const cplx& wk : w) v *= eng.gamma(pq / (wk * z));
    return v;
  };
  return quadrature::circle_integrate_adaptive(f, rel_tol, n_max).value;
}

}  // namespace ehi::specfun
