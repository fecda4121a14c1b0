#pragma once

#include <cfloat>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "ehi/errors.hpp"

namespace ehi {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline const cplx kI{0.0, 1.0};
inline const cplx kTwoPiI{0.0, 2.0 * kPi};

// Relative distance used by pole guards throughout the library.
inline constexpr double kPoleGuard = 1e-8;

// Controls every truncated infinite product / series in the special-function
// layer.  target_eps is the absolute tail bound the truncation must honor.
struct TruncationPolicy {
  double target_eps = 1e-14;
  int max_terms = 20000;

  TruncationPolicy() = default;
  TruncationPolicy(double eps, int max_terms_in)
      : target_eps(eps), max_terms(max_terms_in) {
    validate();
  }
  void validate() const {
    if (!(target_eps >= 4.0 * DBL_EPSILON))
      throw DomainError("TruncationPolicy: target_eps below 4*machine eps");
    if (max_terms < 8)
      throw DomainError("TruncationPolicy: max_terms must be >= 8");
  }
};

// A pair of multiplicative nomes, both strictly inside the unit disk.
struct NomePair {
  cplx p, q;

  NomePair(cplx p_in, cplx q_in) : p(p_in), q(q_in) {
    if (!(std::abs(p) < 1.0) || !(std::abs(q) < 1.0))
      throw DomainError("NomePair: |p| and |q| must be < 1");
  }
  NomePair swapped() const { return NomePair(q, p); }
};

// Argument bundle for the additive-variable Jacobi theta functions.
struct JacobiParams {
  cplx tau;
  int index;  // 1..4

  JacobiParams(cplx tau_in, int index_in) : tau(tau_in), index(index_in) {
    if (!(tau.imag() > 0.0))
      throw DomainError("JacobiParams: Im(tau) must be > 0");
    if (index < 1 || index > 4)
      throw DomainError("JacobiParams: index must be in 1..4");
  }
};

// Deterministic, platform-independent uniform sampler.  mt19937_64 has a
// pinned algorithm; the [0,1) mapping below avoids the libstdc++/libc++
// distribution differences.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  double uniform01() {
    return static_cast<double>(state_() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }
  double angle() { return 2.0 * kPi * uniform01(); }
  // Modulus log-uniform in [r_lo, r_hi], phase uniform.
  cplx annulus(double r_lo, double r_hi) {
    double r = r_lo * std::exp(uniform01() * std::log(r_hi / r_lo));
    return std::polar(r, angle());
  }
  cplx unit_circle() { return std::polar(1.0, angle()); }
  std::uint64_t raw() { return state_(); }

 private:
  std::mt19937_64 state_;
};

}  // namespace ehi
