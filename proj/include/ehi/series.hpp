#pragma once

#include <compare>
#include <functional>
#include <map>
#include <vector>

#include "ehi/types.hpp"

namespace ehi::series {

// Laurent polynomial in the single gauge fugacity z: exponent -> coefficient.
using GaugeLaurent = std::map<int, cplx>;

// Exponents of p and q in integer multiples of 1/lattice.
struct ExpKey {
  int a = 0;
  int b = 0;
  auto operator<=>(const ExpKey&) const = default;
};

// Truncated double series in (p, q) on a fixed rational exponent lattice,
// with Laurent-in-z coefficients.  Terms beyond the total-degree cap (in
// lattice units) are dropped by every operation, so products never leak
// half-computed orders.
class GradedSeries {
 public:
  GradedSeries(int lattice, int max_units);
  static GradedSeries one(int lattice, int max_units);

  int lattice() const { return lattice_; }
  int max_units() const { return max_units_; }
  const std::map<ExpKey, GaugeLaurent>& terms() const { return terms_; }

  // += c * p^{a/L} q^{b/L} z^zpow (ignored beyond the cap)
  void add_term(int a, int b, int zpow, cplx c);

  GradedSeries& operator+=(const GradedSeries& o);
  GradedSeries operator+(const GradedSeries& o) const;
  GradedSeries operator*(const GradedSeries& o) const;
  GradedSeries& scale(cplx c);

  // p -> p^n, q -> q^n, z -> z^n with coefficients untouched; suits letters
  // without hidden fugacity dependence.
  GradedSeries raised(int n) const;

  void prune(double eps = 1e-15);

  bool has_constant_term() const;  // any surviving degree-(0,0) entry
  // minimal total degree in lattice units; max_units()+1 when empty
  int min_unit_degree() const;
  bool gauge_free() const;  // every coefficient supported on z^0 only

  // (1/2) * CT_z[(2 - z^2 - z^{-2}) * .] applied per term
  GradedSeries haar_project_su2() const;

  // numeric evaluation via principal fractional powers; requires gauge_free
  cplx eval(cplx p0, cplx q0) const;

  // sum of |coefficient| * |p0|^{a/L} |q0|^{b/L} grouped by total degree
  // a+b (lattice units); feeds truncation-remainder estimates
  std::vector<double> shell_magnitudes(cplx p0, cplx q0) const;

 private:
  int lattice_;
  int max_units_;
  std::map<ExpKey, GaugeLaurent> terms_;
};

// exp(sum_{n>=1} letter(n)/n) truncated at the series cap; letter(n) must be
// the single-letter series with every fugacity raised to the n-th power.
// Throws ConstantTermError when letter(1) has a degree-(0,0) term.
GradedSeries plethystic_exponential(
    const std::function<GradedSeries(int)>& letter_at_power, int lattice,
    int max_units);

// Convenience overload for letters without hidden fugacities: substitutes
// mechanically via raised(n).
GradedSeries plethystic_exponential(const GradedSeries& letter);

}  // namespace ehi::series
