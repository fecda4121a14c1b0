#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "ehi/types.hpp"

namespace ehi::specfun {

// (z;p)_inf = prod_{j>=0} (1 - z p^j), |p| < 1.
// Truncation J satisfies |z||p|^J / ((1-|p|)(1-|z||p|^J)) <= target_eps.
// Returns exact 0 when some factor vanishes exactly (z = p^{-j}).
cplx qpoch_inf(cplx z, cplx p, const TruncationPolicy& policy = {});

// theta(z;p) = (z;p)_inf (p/z;p)_inf, z != 0.
cplx theta_mult(cplx z, cplx p, const TruncationPolicy& policy = {});

// Gamma(z;p,q) = prod_{j,k>=0} (1 - p^{j+1}q^{k+1}/z) / (1 - z p^j q^k).
// Reference evaluation via the log-space double product, summed in an order
// symmetric under (p,j) <-> (q,k), so swapping the nomes is bit-identical.
cplx elliptic_gamma(cplx z, const NomePair& nomes,
                    const TruncationPolicy& policy = {});

// Jacobi theta_a(u|tau), a = 1..4, classical nome exp(i pi tau), Im tau > 0.
// theta_1(u|tau) = i e^{i pi tau/4} e^{-i pi u} (p;p)_inf theta(e^{2 pi i u};p)
// with p = e^{2 pi i tau}; theta_{2,3,4} are its half-period shifts.
cplx jacobi_theta(int a, cplx u, cplx tau, const TruncationPolicy& policy = {});
cplx jacobi_theta(const JacobiParams& jp, cplx u,
                  const TruncationPolicy& policy = {});

// All arguments t * v1^{s1} * ... * vk^{sk} over sign choices s in {+1,-1}^k,
// in binary-mask order (mask bit set => positive exponent... bit clear =>
// inverse).  Used to spell out +-1 symmetrized gamma products.
std::vector<cplx> expand_pm(cplx t, std::initializer_list<cplx> vars);

// Evaluator bound to one nome pair.  Immutable after construction and safe to
// share across threads.  Inside the annulus |pq| < |z| < 1/max(|p|,|q|) it
// uses the logarithmic series
//   log Gamma(z) = -log(1-z) + sum_{n>=1} [z^n (c_n - 1) - (pq/z)^n c_n]/n,
//   c_n = 1/((1-p^n)(1-q^n)),
// which costs O(log eps / log rho) per call; elsewhere it falls back to the
// double product.  Both paths are p<->q bit-symmetric.
class GammaEngine {
 public:
  explicit GammaEngine(const NomePair& nomes,
                       const TruncationPolicy& policy = {});

  const NomePair& nomes() const { return nomes_; }
  const TruncationPolicy& policy() const { return policy_; }
  cplx p() const { return nomes_.p; }
  cplx q() const { return nomes_.q; }
  cplx sqrt_pq() const { return sqrt_pq_; }  // principal branch
  cplx qp_p() const { return qp_p_; }        // (p;p)_inf
  cplx qp_q() const { return qp_q_; }        // (q;q)_inf
  cplx phase_factor() const { return qp_p_ * qp_q_; }

  cplx gamma(cplx z) const;
  cplx gamma_pm(cplx t, cplx z) const;           // Gamma(t z^{+-1})
  cplx gamma_pm2(cplx t, cplx x, cplx z) const;  // Gamma(t x^{+-1} z^{+-1})
  cplx gamma_prod(std::span<const cplx> args) const;

  // 1/(Gamma(w) Gamma(1/w)) = -theta(w;p) theta(w;q) / w.  Finite (zero) at
  // w = 1, which is what integrands over the unit circle need at z = +-1.
  cplx inv_gamma_pair(cplx w) const;

  cplx theta_p(cplx z) const;  // theta(z;p)
  cplx theta_q(cplx z) const;  // theta(z;q)

 private:
  cplx gamma_series(cplx z, double rho) const;
  cplx theta_fast(cplx z, cplx nome, double abs_nome,
                  const std::vector<cplx>& table) const;

  NomePair nomes_;
  TruncationPolicy policy_;
  double r_;        // max(|p|,|q|)
  double abs_pq_;   // |pq|
  double rho_cut_;  // fast-path decay-rate ceiling
  cplx pq_;
  cplx sqrt_pq_;
  cplx qp_p_, qp_q_;
  std::vector<cplx> cn_;        // c_n
  std::vector<cplx> cn_m1_;     // c_n - 1
  std::vector<cplx> en_p_;      // p^n/(n(1-p^n)), for (x;p)_inf
  std::vector<cplx> en_q_;
};

// I(t;w) = contour integral over the unit circle of
//   prod_k Gamma(t_k z) / prod_k Gamma(w_k z) dz/z
// for a balanced pair of parameter lists (prod t = prod w).  Preconditions:
// all |t_k| < 1 and all |w_k| > |pq| so the pole ladders stay off the
// contour.
cplx general_ehi_eval(std::span<const cplx> t, std::span<const cplx> w,
                      const NomePair& nomes, double rel_tol = 1e-11,
                      int n_max = 1 << 14,
                      const TruncationPolicy& policy = {});

}  // namespace ehi::specfun
