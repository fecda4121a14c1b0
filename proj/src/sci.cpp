#include "ehi/sci.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <json.hpp>

#include "ehi/errors.hpp"
#include "ehi/specfun.hpp"

namespace ehi::sci {

namespace {

// Exact integer powers (binary exponentiation); the exponents here are the
// small substitution powers of the plethystic exponential.
cplx ipow(cplx z, long n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  cplx acc = 1.0, base = z;
  for (; n > 0; n >>= 1) {
    if (n & 1) acc *= base;
    base *= base;
  }
  return acc;
}

cplx fugacity_product(const Fugacities& y) {
  cplx prod = 1.0;
  for (const cplx& v : y) prod *= v;
  return prod;
}

}  // namespace

Rational::Rational(long n, long d) : num(n), den(d) {
  if (den == 0) throw DomainError("rational charge: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long g = std::gcd(std::abs(num), den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

GaugeGroup parse_gauge_group(const std::string& label) {
  if (label == "trivial") return GaugeGroup::trivial;
  if (label == "SU(2)") return GaugeGroup::su2;
  throw UnknownRepError("unknown gauge group label: " + label);
}

GaugeRep parse_gauge_rep(const std::string& label) {
  if (label == "trivial") return GaugeRep::trivial;
  if (label == "SU(2) fund") return GaugeRep::su2_fund;
  if (label == "SU(2) adjoint") return GaugeRep::su2_adjoint;
  throw UnknownRepError("unknown gauge representation label: " + label);
}

FlavorRep parse_flavor_rep(const std::string& label) {
  if (label == "trivial") return FlavorRep::trivial;
  if (label == "SU(6) fund") return FlavorRep::su6_fund;
  if (label == "SU(6) antifund") return FlavorRep::su6_antifund;
  if (label == "SU(6) T_A") return FlavorRep::su6_antisym;
  if (label == "SU(6) T_A bar") return FlavorRep::su6_antisym_bar;
  throw UnknownRepError("unknown flavor representation label: " + label);
}

FlavorRep conjugate(FlavorRep rep) {
  switch (rep) {
    case FlavorRep::trivial: return FlavorRep::trivial;
    case FlavorRep::su6_fund: return FlavorRep::su6_antifund;
    case FlavorRep::su6_antifund: return FlavorRep::su6_fund;
    case FlavorRep::su6_antisym: return FlavorRep::su6_antisym_bar;
    case FlavorRep::su6_antisym_bar: return FlavorRep::su6_antisym;
  }
  throw UnknownRepError("unhandled flavor representation");
}

GaugeRep conjugate(GaugeRep rep) { return rep; }

cplx flavor_character(FlavorRep rep, const Fugacities& y, int power) {
  switch (rep) {
    case FlavorRep::trivial:
      return 1.0;
    case FlavorRep::su6_fund: {
      cplx s = 0.0;
      for (const cplx& v : y) s += ipow(v, power);
      return s;
    }
    case FlavorRep::su6_antifund: {
      cplx s = 0.0;
      for (const cplx& v : y) s += ipow(v, -power);
      return s;
    }
    case FlavorRep::su6_antisym: {
      cplx s = 0.0;
      for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) s += ipow(y[i] * y[j], power);
      return s;
    }
    case FlavorRep::su6_antisym_bar: {
      cplx s = 0.0;
      for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) s += ipow(y[i] * y[j], -power);
      return s;
    }
  }
  throw UnknownRepError("unhandled flavor representation");
}

series::GaugeLaurent gauge_character(GaugeRep rep, int power) {
  switch (rep) {
    case GaugeRep::trivial:
      return {{0, 1.0}};
    case GaugeRep::su2_fund:
      return {{power, 1.0}, {-power, 1.0}};
    case GaugeRep::su2_adjoint:
      return {{2 * power, 1.0}, {0, 1.0}, {-2 * power, 1.0}};
  }
  throw UnknownRepError("unhandled gauge representation");
}

int derive_lattice(const TheoryModel& theory) {
  long lattice = 1;
  for (const ChiralField& f : theory.fields)
    lattice = std::lcm(lattice, 2 * f.r_charge.den);
  if (lattice > 1'000'000)
    throw DomainError("exponent lattice denominator too large");
  return static_cast<int>(lattice);
}

void validate_theory(const TheoryModel& theory, int lattice) {
  if (lattice < 1) throw DomainError("exponent lattice must be >= 1");
  if (std::abs(fugacity_product(theory.y) - 1.0) > 1e-12)
    throw BalanceError("flavor fugacities must multiply to 1");
  for (const ChiralField& f : theory.fields) {
    const Rational& r = f.r_charge;
    if (!(0 < r.num && r.num < 2 * r.den))
      throw DomainError("R-charge must lie strictly inside (0, 2)");
    if ((static_cast<long>(lattice) * r.num) % (2 * r.den) != 0)
      throw DomainError("R-charge exponents do not land on the lattice");
    if (theory.gauge == GaugeGroup::trivial && f.gauge != GaugeRep::trivial)
      throw DomainError("charged field in a theory without a gauge group");
  }
}

TheoryModel electric_su2_theory(const Fugacities& y, Rational r) {
  TheoryModel th;
  th.gauge = GaugeGroup::su2;
  th.fields.push_back({FlavorRep::su6_fund, GaugeRep::su2_fund, r});
  th.y = y;
  return th;
}

TheoryModel magnetic_theory(const Fugacities& y) {
  TheoryModel th;
  th.gauge = GaugeGroup::trivial;
  th.fields.push_back({FlavorRep::su6_antisym, GaugeRep::trivial, {2, 3}});
  th.y = y;
  return th;
}

series::GradedSeries single_letter_index(const TheoryModel& theory,
                                         int lattice, int max_units,
                                         int power) {
  if (power < 1) throw DomainError("one-letter index: power must be >= 1");
  validate_theory(theory, lattice);

  series::GradedSeries out(lattice, max_units);
  const long step = static_cast<long>(power) * lattice;  // exponent of p^n

  // 1/((1-p^n)(1-q^n)) expanded to the cap
  series::GradedSeries geo(lattice, max_units);
  for (long a = 0; a <= max_units; a += step)
    for (long b = 0; a + b <= max_units; b += step)
      geo.add_term(static_cast<int>(a), static_cast<int>(b), 0, 1.0);

  if (theory.gauge == GaugeGroup::su2 && step <= max_units) {
    series::GradedSeries num(lattice, max_units);
    const int s = static_cast<int>(step);
    for (const auto& [zp, c] : gauge_character(GaugeRep::su2_adjoint, power)) {
      num.add_term(s, s, zp, 2.0 * c);
      num.add_term(s, 0, zp, -c);
      num.add_term(0, s, zp, -c);
    }
    out += num * geo;
  }

  for (const ChiralField& f : theory.fields) {
    const long ra = step * f.r_charge.num / (2 * f.r_charge.den);
    const long rb = step - ra;  // exponent of (p^n q^n)^{1 - R/2}
    series::GradedSeries num(lattice, max_units);
    if (2 * ra <= max_units) {
      const cplx chi = flavor_character(f.flavor, theory.y, power);
      for (const auto& [zp, c] : gauge_character(f.gauge, power))
        num.add_term(static_cast<int>(ra), static_cast<int>(ra), zp, chi * c);
    }
    if (2 * rb <= max_units) {
      const cplx chi = flavor_character(conjugate(f.flavor), theory.y, power);
      for (const auto& [zp, c] : gauge_character(conjugate(f.gauge), power))
        num.add_term(static_cast<int>(rb), static_cast<int>(rb), zp, -chi * c);
    }
    out += num * geo;
  }
  return out;
}

series::GradedSeries index_series(const TheoryModel& theory, int order,
                                  int lattice_override) {
  const int derived = derive_lattice(theory);
  const int lattice = lattice_override == 0 ? derived : lattice_override;
  if (lattice < 1 || lattice % derived != 0)
    throw DomainError(
        "index series: lattice override must be a positive multiple of the "
        "derived denominator");
  validate_theory(theory, lattice);
  if (order < 0) throw DomainError("index series: negative truncation order");
  const long cap = static_cast<long>(order) * lattice;
  if (cap > 200'000) throw DomainError("index series: truncation cap too large");

  const auto letter = [&theory, lattice, cap](int n) {
    return single_letter_index(theory, lattice, static_cast<int>(cap), n);
  };
  series::GradedSeries index =
      series::plethystic_exponential(letter, lattice, static_cast<int>(cap));
  if (theory.gauge == GaugeGroup::su2) {
    index = index.haar_project_su2();
    index.prune();
  }
  return index;
}

VerificationReport duality_check(const Fugacities& y, int order, double tol,
                                 Rational electric_r) {
  VerificationReport rep;
  rep.identity_id = "index_duality";
  Stopwatch sw;

  const TheoryModel electric = electric_su2_theory(y, electric_r);
  const TheoryModel magnetic = magnetic_theory(y);
  const long common =
      std::lcm<long>(derive_lattice(electric), derive_lattice(magnetic));
  if (common > 1'000'000)
    throw DomainError("index duality: common exponent lattice too large");
  const int lattice = static_cast<int>(common);

  const series::GradedSeries se = index_series(electric, order, lattice);
  const series::GradedSeries sm = index_series(magnetic, order, lattice);

  const auto coefficient = [](const series::GradedSeries& s,
                              series::ExpKey key) -> cplx {
    const auto it = s.terms().find(key);
    if (it == s.terms().end()) return 0.0;
    const auto jt = it->second.find(0);
    return jt == it->second.end() ? cplx(0.0) : jt->second;
  };

  std::set<series::ExpKey> keys;
  for (const auto& [key, gl] : se.terms()) keys.insert(key);
  for (const auto& [key, gl] : sm.terms()) keys.insert(key);

  double worst = 0.0;
  cplx worst_gap = 0.0;
  series::ExpKey worst_key{};
  for (const series::ExpKey& key : keys) {
    const cplx gap = coefficient(se, key) - coefficient(sm, key);
    if (std::abs(gap) > worst) {
      worst = std::abs(gap);
      worst_gap = gap;
      worst_key = key;
    }
  }

  nlohmann::ordered_json yj = nlohmann::ordered_json::array();
  for (const cplx& v : y) yj.push_back(json_cplx(v));
  rep.params["y"] = yj;
  rep.params["order"] = order;
  rep.params["lattice"] = lattice;
  rep.params["r_charge"] = {electric_r.num, electric_r.den};
  rep.params["worst_exponent"] = {worst_key.a, worst_key.b};
  rep.n_used = static_cast<long>(keys.size());
  rep.finish_residual(worst, tol, worst_gap, cplx(1.0));
  rep.elapsed_ms = sw.ms();
  return rep;
}

VerificationReport index_numeric_crosscheck(const Fugacities& y, cplx p0,
                                            cplx q0, int order, double tol) {
  VerificationReport rep;
  rep.identity_id = "index_crosscheck";
  Stopwatch sw;
  if (!(tol > 0.0)) throw DomainError("index crosscheck: tolerance must be > 0");
  if (p0.imag() != 0.0 || q0.imag() != 0.0 || p0.real() < 0.0 ||
      q0.real() < 0.0)
    throw DomainError("index crosscheck: nomes must be real and nonnegative");

  nlohmann::ordered_json yj = nlohmann::ordered_json::array();
  for (const cplx& v : y) yj.push_back(json_cplx(v));
  rep.params["y"] = yj;
  rep.params["p"] = json_cplx(p0);
  rep.params["q"] = json_cplx(q0);
  rep.params["order"] = order;

  const series::GradedSeries index =
      index_series(electric_su2_theory(y), order);

  if (p0 == 0.0 && q0 == 0.0) {
    // Every state carries a positive power of a nome, so only the vacuum
    // survives; the gamma product degenerates to 1 factor by factor.
    rep.params["estimated_remainder"] = 0.0;
    rep.n_used = static_cast<long>(index.terms().size());
    rep.finish(index.eval(0.0, 0.0), cplx(1.0), tol);
    rep.elapsed_ms = sw.ms();
    return rep;
  }

  // Geometric continuation of the retained total-degree shells.  Individual
  // shells fluctuate with the flavor point, so the per-unit decay rate is
  // the worst one observed between consecutive populated shells, and the
  // continuation is anchored at whichever of the last two shells projects
  // the larger tail.
  const std::vector<double> shells = index.shell_magnitudes(p0, q0);
  std::vector<std::pair<int, double>> live;  // (unit degree, magnitude)
  for (size_t d = 1; d < shells.size(); ++d)
    if (shells[d] > 0.0) live.emplace_back(static_cast<int>(d), shells[d]);
  if (live.size() < 2)
    throw DomainError(
        "index crosscheck: need two populated degree shells to estimate the "
        "truncation remainder");
  double rate = 0.0;
  for (size_t i = 0; i + 1 < live.size(); ++i)
    rate = std::max(rate, std::pow(live[i + 1].second / live[i].second,
                                   1.0 / (live[i + 1].first - live[i].first)));
  const int cap = index.max_units();
  double remainder = 0.0;
  if (rate >= 0.95) {
    // not yet decaying: assume an order-one continuation, widely padded
    for (const auto& [d, s] : live) remainder = std::max(remainder, 10.0 * s);
  } else {
    for (size_t i = live.size() - std::min<size_t>(2, live.size());
         i < live.size(); ++i)
      remainder = std::max(remainder, live[i].second *
                                          std::pow(rate, cap + 1 - live[i].first) /
                                          (1.0 - rate));
  }
  rep.params["estimated_remainder"] = remainder;
  if (remainder > tol)
    throw RemainderTooLargeError(
        "index crosscheck: estimated truncation remainder " +
        std::to_string(remainder) + " exceeds the requested tolerance");

  const cplx lhs = index.eval(p0, q0);

  const specfun::GammaEngine engine(NomePair{p0, q0});
  const cplx t_scale = std::pow(p0 * q0, 1.0 / 6.0);
  cplx rhs = 1.0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      rhs *= engine.gamma(t_scale * t_scale * y[i] * y[j]);

  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  rep.n_used = static_cast<long>(index.terms().size());
  rep.finish(lhs, rhs, 10.0 * remainder / scale);
  rep.elapsed_ms = sw.ms();
  return rep;
}

TheoryModel theory_from_json(const std::string& text, int* order_out,
                             int* lattice_out) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("theory description: ") + e.what());
  }
  try {
    TheoryModel th;
    th.gauge = parse_gauge_group(doc.at("gauge").get<std::string>());
    for (const auto& f : doc.at("fields")) {
      ChiralField field;
      field.flavor = parse_flavor_rep(f.at("flavor_rep").get<std::string>());
      field.gauge = parse_gauge_rep(f.at("gauge_rep").get<std::string>());
      const auto& r = f.at("R");
      field.r_charge = Rational(r.at(0).get<long>(), r.at(1).get<long>());
      th.fields.push_back(field);
    }
    const auto& yj = doc.at("y");
    if (yj.size() != th.y.size())
      throw DomainError("theory description: y must list 6 fugacities");
    for (size_t k = 0; k < th.y.size(); ++k)
      th.y[k] = cplx(yj.at(k).at(0).get<double>(), yj.at(k).at(1).get<double>());
    if (order_out) *order_out = doc.value("D", 2);
    if (lattice_out) *lattice_out = doc.value("L", 0);
    return th;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("theory description: ") + e.what());
  }
}

}  // namespace ehi::sci
