#include "ehi/series.hpp"

#include <cmath>

#include "ehi/errors.hpp"

namespace ehi::series {

GradedSeries::GradedSeries(int lattice, int max_units)
    : lattice_(lattice), max_units_(max_units) {
  if (lattice < 1) throw DomainError("graded series: lattice must be >= 1");
  if (max_units < 0) throw DomainError("graded series: negative degree cap");
}

GradedSeries GradedSeries::one(int lattice, int max_units) {
  GradedSeries s(lattice, max_units);
  s.add_term(0, 0, 0, 1.0);
  return s;
}

void GradedSeries::add_term(int a, int b, int zpow, cplx c) {
  if (a < 0 || b < 0)
    throw DomainError("graded series: negative exponents are not modeled");
  if (a + b > max_units_) return;
  terms_[ExpKey{a, b}][zpow] += c;
}

GradedSeries& GradedSeries::operator+=(const GradedSeries& o) {
  if (o.lattice_ != lattice_ || o.max_units_ != max_units_)
    throw DomainError("graded series: mismatched lattice or degree cap");
  for (const auto& [key, gl] : o.terms_)
    for (const auto& [zp, c] : gl) terms_[key][zp] += c;
  return *this;
}

GradedSeries GradedSeries::operator+(const GradedSeries& o) const {
  GradedSeries out = *this;
  out += o;
  return out;
}

GradedSeries GradedSeries::operator*(const GradedSeries& o) const {
  if (o.lattice_ != lattice_ || o.max_units_ != max_units_)
    throw DomainError("graded series: mismatched lattice or degree cap");
  GradedSeries out(lattice_, max_units_);
  for (const auto& [k1, gl1] : terms_) {
    for (const auto& [k2, gl2] : o.terms_) {
      const int a = k1.a + k2.a, b = k1.b + k2.b;
      if (a + b > max_units_) continue;
      GaugeLaurent& dst = out.terms_[ExpKey{a, b}];
      for (const auto& [z1, c1] : gl1)
        for (const auto& [z2, c2] : gl2) dst[z1 + z2] += c1 * c2;
    }
  }
  return out;
}

GradedSeries& GradedSeries::scale(cplx c) {
  for (auto& [key, gl] : terms_)
    for (auto& [zp, coeff] : gl) coeff *= c;
  return *this;
}

GradedSeries GradedSeries::raised(int n) const {
  if (n < 1) throw DomainError("graded series: substitution power must be >= 1");
  GradedSeries out(lattice_, max_units_);
  for (const auto& [key, gl] : terms_) {
    if ((key.a + key.b) * static_cast<long>(n) > max_units_) continue;
    for (const auto& [zp, c] : gl) out.add_term(key.a * n, key.b * n, zp * n, c);
  }
  return out;
}

void GradedSeries::prune(double eps) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    GaugeLaurent& gl = it->second;
    for (auto jt = gl.begin(); jt != gl.end();)
      jt = std::abs(jt->second) < eps ? gl.erase(jt) : std::next(jt);
    it = gl.empty() ? terms_.erase(it) : std::next(it);
  }
}

bool GradedSeries::has_constant_term() const {
  const auto it = terms_.find(ExpKey{0, 0});
  if (it == terms_.end()) return false;
  for (const auto& [zp, c] : it->second)
    if (std::abs(c) >= 1e-15) return true;
  return false;
}

int GradedSeries::min_unit_degree() const {
  int best = max_units_ + 1;
  for (const auto& [key, gl] : terms_) {
    bool live = false;
    for (const auto& [zp, c] : gl) live = live || std::abs(c) >= 1e-15;
    if (live) best = std::min(best, key.a + key.b);
  }
  return best;
}

bool GradedSeries::gauge_free() const {
  for (const auto& [key, gl] : terms_)
    for (const auto& [zp, c] : gl)
      if (zp != 0 && std::abs(c) >= 1e-15) return false;
  return true;
}

GradedSeries GradedSeries::haar_project_su2() const {
  GradedSeries out(lattice_, max_units_);
  for (const auto& [key, gl] : terms_) {
    cplx c = 0.0;
    if (auto it = gl.find(0); it != gl.end()) c += it->second;
    if (auto it = gl.find(2); it != gl.end()) c -= 0.5 * it->second;
    if (auto it = gl.find(-2); it != gl.end()) c -= 0.5 * it->second;
    if (std::abs(c) >= 1e-18) out.terms_[key][0] = c;
  }
  return out;
}

cplx GradedSeries::eval(cplx p0, cplx q0) const {
  if (!gauge_free())
    throw DomainError("graded series: numeric evaluation needs a gauge-free series");
  cplx total = 0.0;
  const double inv_l = 1.0 / lattice_;
  for (const auto& [key, gl] : terms_) {
    const auto it = gl.find(0);
    if (it == gl.end()) continue;
    // 0^0 = 1 for the constant term when evaluating at the origin
    const cplx pa = key.a == 0 ? cplx(1.0) : std::pow(p0, key.a * inv_l);
    const cplx qb = key.b == 0 ? cplx(1.0) : std::pow(q0, key.b * inv_l);
    total += it->second * pa * qb;
  }
  return total;
}

std::vector<double> GradedSeries::shell_magnitudes(cplx p0, cplx q0) const {
  std::vector<double> shells(static_cast<size_t>(max_units_) + 1, 0.0);
  const double ap = std::abs(p0), aq = std::abs(q0);
  const double inv_l = 1.0 / lattice_;
  for (const auto& [key, gl] : terms_) {
    const double mag = (key.a == 0 ? 1.0 : std::pow(ap, key.a * inv_l)) *
                       (key.b == 0 ? 1.0 : std::pow(aq, key.b * inv_l));
    double csum = 0.0;
    for (const auto& [zp, c] : gl) csum += std::abs(c);
    shells[static_cast<size_t>(key.a + key.b)] += csum * mag;
  }
  return shells;
}

GradedSeries plethystic_exponential(
    const std::function<GradedSeries(int)>& letter_at_power, int lattice,
    int max_units) {
  GradedSeries first = letter_at_power(1);
  if (first.lattice() != lattice || first.max_units() != max_units)
    throw DomainError("plethystic exponential: letter on the wrong lattice");
  if (first.has_constant_term())
    throw ConstantTermError(
        "plethystic exponential needs a strictly positive minimum degree");
  const int d = first.min_unit_degree();
  GradedSeries acc = GradedSeries::one(lattice, max_units);
  if (d > max_units) return acc;  // empty letter: exp(0) = 1

  GradedSeries log_sum(lattice, max_units);
  log_sum += first;
  for (int n = 2; n * d <= max_units; ++n) {
    GradedSeries fn = letter_at_power(n);
    if (fn.has_constant_term())
      throw ConstantTermError(
          "plethystic exponential: substituted letter grew a constant term");
    fn.scale(1.0 / n);
    log_sum += fn;
  }

  GradedSeries power = GradedSeries::one(lattice, max_units);
  for (int m = 1; m * d <= max_units; ++m) {
    power = power * log_sum;
    power.scale(1.0 / m);
    acc += power;
  }
  acc.prune();
  return acc;
}

GradedSeries plethystic_exponential(const GradedSeries& letter) {
  return plethystic_exponential(
      [&letter](int n) { return letter.raised(n); }, letter.lattice(),
      letter.max_units());
}

}  // namespace ehi::series
