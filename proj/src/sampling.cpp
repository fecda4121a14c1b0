#include "ehi/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace ehi::sampling {

namespace {

// n moduli with prod = target, each within [target^{1/n}/spread_cap,
// target^{1/n}*spread_cap] and below `cap`: log-space jitter with the mean
// removed, then clamped so the largest stays under cap.
std::vector<double> balanced_moduli(Rng& rng, int n, double target,
                                    double cap) {
  const double center = std::log(target) / n;
  std::vector<double> u(n);
  double mean = 0.0;
  for (double& x : u) {
    x = rng.uniform(-1.0, 1.0);
    mean += x;
  }
  mean /= n;
  double umax = 1e-12;
  for (double& x : u) {
    x -= mean;
    umax = std::max(umax, std::abs(x));
  }
  const double kappa =
      std::min(0.5, 0.9 * (std::log(cap) - center) / umax);  // keep under cap
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = std::exp(center + kappa * u[j]);
  return out;
}

std::vector<cplx> balanced_list(Rng& rng, int n, cplx target, double cap) {
  const auto mods = balanced_moduli(rng, n, std::abs(target), cap);
  std::vector<cplx> t(n);
  cplx partial(1.0);
  for (int j = 0; j + 1 < n; ++j) {
    t[j] = std::polar(mods[j], rng.angle());
    partial *= t[j];
  }
  t[n - 1] = target / partial;  // exact balance; modulus equals mods-implied
  return t;
}

}  // namespace

NomePair random_nomes(Rng& rng, double lo, double hi, bool real) {
  if (real) {
    return NomePair(cplx(rng.uniform(lo, hi)), cplx(rng.uniform(lo, hi)));
  }
  return NomePair(rng.annulus(lo, hi), rng.annulus(lo, hi));
}

std::vector<cplx> beta_params(Rng& rng, const NomePair& nomes, double cap) {
  return balanced_list(rng, 6, nomes.p * nomes.q, cap);
}

std::vector<cplx> v_params(Rng& rng, const NomePair& nomes, double cap) {
  const cplx pq = nomes.p * nomes.q;
  for (int tries = 0; tries < 100; ++tries) {
    auto t = balanced_list(rng, 8, pq * pq, cap);
    // keep the reflected set admissible too
    const cplx eps = std::sqrt(pq / (t[0] * t[1] * t[2] * t[3]));
    bool ok = true;
    for (int j = 0; j < 4 && ok; ++j) ok = std::abs(eps * t[j]) < 0.9;
    for (int j = 4; j < 8 && ok; ++j) ok = std::abs(t[j] / eps) < 0.9;
    if (ok) return t;
  }
  throw DomainError("v_params: no admissible sample found");
}

NomePair difference_equation_nomes(Rng& rng) {
  return NomePair(rng.annulus(0.05, 0.1),
                  std::polar(rng.uniform(0.4, 0.5), rng.angle()));
}

std::vector<cplx> difference_equation_params(Rng& rng, const NomePair& nomes) {
  const cplx pq = nomes.p * nomes.q;
  const double aq = std::abs(nomes.q);
  for (int tries = 0; tries < 100; ++tries) {
    std::vector<cplx> t(8);
    // |t1|, |t2| in [0.4, 0.75]|q| so both q-shifted sets stay inside the disk
    t[0] = std::polar(aq * rng.uniform(0.4, 0.75), rng.angle());
    t[1] = std::polar(aq * rng.uniform(0.4, 0.75), rng.angle());
    const cplx rest = pq * pq / (t[0] * t[1]);
    auto tail = balanced_list(rng, 6, rest, 0.8);
    std::copy(tail.begin(), tail.end(), t.begin() + 2);
    bool ok = true;
    for (const cplx& tj : t) ok = ok && std::abs(tj) < 0.85;
    // shifted sets must also stay clear of 1
    ok = ok && std::abs(t[0] * nomes.q) < 0.85 && std::abs(t[1] * nomes.q) < 0.85;
    ok = ok && std::abs(t[0] / nomes.q) < 0.85 && std::abs(t[1] / nomes.q) < 0.85;
    if (ok) return t;
  }
  throw DomainError("difference_equation_params: no admissible sample found");
}

SelbergParams selberg_params(Rng& rng, const NomePair& nomes, int n) {
  if (n != 1 && n != 2)
    throw DomainError("selberg_params: only ranks 1 and 2 are supported");
  SelbergParams sp;
  const cplx pq = nomes.p * nomes.q;
  if (n == 1) {
    sp.t = cplx(1.0);  // drops out of both sides at rank 1
    sp.tm = balanced_list(rng, 6, pq, 0.85);
    return sp;
  }
  sp.t = std::polar(rng.uniform(0.3, 0.5), rng.angle());
  sp.tm = balanced_list(rng, 6, pq / (sp.t * sp.t), 0.8);
  return sp;
}

identities::StrFunctionalParams str_functional_params(Rng& rng,
                                                      const NomePair& nomes) {
  const double xi = -0.5 * std::log((nomes.p * nomes.q).real());
  identities::StrFunctionalParams sp;
  sp.alpha = xi * rng.uniform(0.15, 0.45);
  sp.gamma = xi * rng.uniform(0.15, 0.45);
  sp.x = rng.angle();
  sp.y = rng.angle();
  sp.w = rng.angle();
  return sp;
}

}  // namespace ehi::sampling
