#pragma once

#include <array>
#include <string>
#include <vector>

#include "ehi/report.hpp"
#include "ehi/series.hpp"
#include "ehi/types.hpp"

namespace ehi::sci {

// Exact rational charge; stored reduced with a positive denominator.
struct Rational {
  long num = 0;
  long den = 1;
  Rational() = default;
  Rational(long n, long d);
  double value() const { return double(num) / double(den); }
};

enum class GaugeGroup { trivial, su2 };
enum class FlavorRep { trivial, su6_fund, su6_antifund, su6_antisym, su6_antisym_bar };
enum class GaugeRep { trivial, su2_fund, su2_adjoint };

// Label parsers for the JSON theory schema; unknown labels throw
// UnknownRepError.  Accepted labels:
//   gauge group: "trivial", "SU(2)"
//   gauge rep:   "trivial", "SU(2) fund", "SU(2) adjoint"
//   flavor rep:  "trivial", "SU(6) fund", "SU(6) antifund",
//                "SU(6) T_A", "SU(6) T_A bar"
GaugeGroup parse_gauge_group(const std::string& label);
GaugeRep parse_gauge_rep(const std::string& label);
FlavorRep parse_flavor_rep(const std::string& label);

FlavorRep conjugate(FlavorRep rep);
GaugeRep conjugate(GaugeRep rep);  // SU(2) irreps are self-conjugate

// Six flavor fugacities, constrained to product 1 by validate_theory.
using Fugacities = std::array<cplx, 6>;

// chi_rep evaluated at the componentwise n-th powers of y.
cplx flavor_character(FlavorRep rep, const Fugacities& y, int power = 1);
// chi_rep(z^n) as Laurent data in the gauge fugacity.
series::GaugeLaurent gauge_character(GaugeRep rep, int power = 1);

struct ChiralField {
  FlavorRep flavor = FlavorRep::trivial;
  GaugeRep gauge = GaugeRep::trivial;
  Rational r_charge{1, 3};
};

struct TheoryModel {
  GaugeGroup gauge = GaugeGroup::trivial;
  std::vector<ChiralField> fields;
  Fugacities y{};
};

// Smallest exponent denominator L such that every L*R_j/2 and L*(1 - R_j/2)
// is an integer.
int derive_lattice(const TheoryModel& theory);

// Checks the fugacity balance (product 1 within 1e-12, else BalanceError),
// that every R-charge lies strictly inside (0, 2) and lands on the lattice,
// and that gauge representation labels match the gauge group.
void validate_theory(const TheoryModel& theory, int lattice);

// SU(2) gauge theory with six fundamental quarks of R-charge r (the physical
// value is 1/3; other values serve as negative controls).
TheoryModel electric_su2_theory(const Fugacities& y, Rational r = {1, 3});
// Its confined description: fifteen gauge singlets in the rank-2
// antisymmetric tensor of the SU(6) flavor group, R-charge 2/3.
TheoryModel magnetic_theory(const Fugacities& y);

// One-letter state count over (p, q, z, y): the gauge-multiplet piece
// (2pq - p - q)/((1-p)(1-q)) * chi_adj(z) when the group is SU(2), plus for
// each chiral field
//   [(pq)^{R/2} chi_F(y) chi_G(z) - (pq)^{1-R/2} chi_Fbar(y) chi_Gbar(z)]
//     / ((1-p)(1-q)),
// with the geometric factors expanded to the cap.  `power` = n replaces
// every fugacity and nome by its n-th power (the substitution the plethystic
// exponential needs).
series::GradedSeries single_letter_index(const TheoryModel& theory,
                                         int lattice, int max_units,
                                         int power = 1);

// Full index: plethystic exponential of the one-letter series, projected
// onto gauge invariants for SU(2).  `order` caps the total degree in plain
// (p, q) exponents; `lattice_override` forces a common denominator (must be
// a multiple of the derived one; 0 = derived).
series::GradedSeries index_series(const TheoryModel& theory, int order,
                                  int lattice_override = 0);

// Coefficient-by-coefficient comparison of the gauge theory index against
// its confined description on a common exponent lattice; rel_err reports the
// largest absolute coefficient gap.  `electric_r` perturbs the gauge-theory
// R-charge (negative control).
VerificationReport duality_check(const Fugacities& y, int order, double tol,
                                 Rational electric_r = {1, 3});

// Evaluates the gauge-theory index series at real nonnegative nomes
// (p0, q0) and compares against the gamma-function product it resums to,
//   prod_{j<k} Gamma((p0 q0)^{1/6} y_j y_k),
// The pass threshold is 10x the self-estimated truncation remainder
// (geometric extrapolation of the last two retained degree shells); a
// remainder above the requested tolerance throws RemainderTooLargeError.
VerificationReport index_numeric_crosscheck(const Fugacities& y, cplx p0,
                                            cplx q0, int order, double tol);

// Parses {gauge, fields: [{flavor_rep, gauge_rep, R: [num, den]}],
// y: [[re, im] x 6], L?, D?}; see the README for the schema.  L and D are
// optional and reported through the out-parameters (L = 0 means "derive").
TheoryModel theory_from_json(const std::string& text, int* order_out = nullptr,
                             int* lattice_out = nullptr);

}  // namespace ehi::sci
