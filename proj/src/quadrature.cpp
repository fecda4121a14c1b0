#include "ehi/quadrature.hpp"

#include <cmath>
#include <vector>

#include "ehi/summation.hpp"

namespace ehi::quadrature {

namespace {

cplx node(int k, int n) { return std::polar(1.0, 2.0 * kPi * k / n); }

cplx reduce_circle(const std::vector<cplx>& vals) {
  return kTwoPiI / double(vals.size()) * pairwise_sum(vals);
}

}  // namespace

cplx circle_integrate(const Fn1& f, int n) {
  CircleQuadrature cq(n);
  std::vector<cplx> vals(cq.n_points);
  for (int k = 0; k < cq.n_points; ++k) vals[k] = f(node(k, cq.n_points));
  return reduce_circle(vals);
}

QuadratureResult circle_integrate_adaptive(const Fn1& f, double rel_tol,
                                           int n_max, double abs_floor) {
  CircleQuadrature top(n_max);
  int n = 16;
  std::vector<cplx> vals(n);
  for (int k = 0; k < n; ++k) vals[k] = f(node(k, n));
  cplx prev = reduce_circle(vals);
  double err = std::abs(prev);
  while (n < top.n_points) {
    n *= 2;
    std::vector<cplx> next(n);
    for (int k = 0; k < n / 2; ++k) next[2 * k] = vals[k];
    for (int k = 0; k < n / 2; ++k) next[2 * k + 1] = f(node(2 * k + 1, n));
    vals = std::move(next);
    const cplx cur = reduce_circle(vals);
    err = std::abs(cur - prev);
    if (err <= std::max(abs_floor, rel_tol * std::abs(cur)))
      return {cur, err, n, true};
    prev = cur;
  }
  return {prev, err, n, false};
}

cplx circle_integrate_2d(const Fn2& f, int n) {
  CircleQuadrature cq(n);
  const int m = cq.n_points;
  std::vector<cplx> vals(std::size_t(m) * m);
  for (int j = 0; j < m; ++j) {
    const cplx zj = node(j, m);
    for (int k = 0; k < m; ++k) vals[std::size_t(j) * m + k] = f(zj, node(k, m));
  }
  const cplx w = kTwoPiI / double(m);
  return w * w * pairwise_sum(vals);
}

QuadratureResult circle_integrate_2d_adaptive(const Fn2& f, double rel_tol,
                                              int n_max, double abs_floor) {
  CircleQuadrature top(n_max);
  int n = 16;
  std::vector<cplx> vals(std::size_t(n) * n);
  for (int j = 0; j < n; ++j) {
    const cplx zj = node(j, n);
    for (int k = 0; k < n; ++k) vals[std::size_t(j) * n + k] = f(zj, node(k, n));
  }
  auto reduce = [](const std::vector<cplx>& v, int m) {
    const cplx w = kTwoPiI / double(m);
    return w * w * pairwise_sum(v);
  };
  cplx prev = reduce(vals, n);
  double err = std::abs(prev);
  while (n < top.n_points) {
    const int m = 2 * n;
    std::vector<cplx> next(std::size_t(m) * m);
    for (int j = 0; j < m; ++j) {
      const cplx zj = node(j, m);
      for (int k = 0; k < m; ++k) {
        if ((j & 1) == 0 && (k & 1) == 0)
          next[std::size_t(j) * m + k] = vals[std::size_t(j / 2) * n + k / 2];
        else
          next[std::size_t(j) * m + k] = f(zj, node(k, m));
      }
    }
    vals = std::move(next);
    n = m;
    const cplx cur = reduce(vals, n);
    err = std::abs(cur - prev);
    if (err <= std::max(abs_floor, rel_tol * std::abs(cur)))
      return {cur, err, long(n) * n, true};
    prev = cur;
  }
  return {prev, err, long(n) * n, false};
}

cplx interval_integrate(const FnReal& g, int n) {
  CircleQuadrature cq(n);
  std::vector<cplx> vals(cq.n_points);
  for (int k = 0; k < cq.n_points; ++k)
    vals[k] = g(2.0 * kPi * k / cq.n_points);
  return 2.0 * kPi / double(cq.n_points) * pairwise_sum(vals);
}

QuadratureResult interval_integrate_adaptive(const FnReal& g, double rel_tol,
                                             int n_max, double abs_floor) {
  CircleQuadrature top(n_max);
  int n = 16;
  std::vector<cplx> vals(n);
  for (int k = 0; k < n; ++k) vals[k] = g(2.0 * kPi * k / n);
  auto reduce = [](const std::vector<cplx>& v) {
    return 2.0 * kPi / double(v.size()) * pairwise_sum(v);
  };
  cplx prev = reduce(vals);
  double err = std::abs(prev);
  while (n < top.n_points) {
    n *= 2;
    std::vector<cplx> next(n);
    for (int k = 0; k < n / 2; ++k) next[2 * k] = vals[k];
    for (int k = 0; k < n / 2; ++k)
      next[2 * k + 1] = g(2.0 * kPi * (2 * k + 1) / n);
    vals = std::move(next);
    const cplx cur = reduce(vals);
    err = std::abs(cur - prev);
    if (err <= std::max(abs_floor, rel_tol * std::abs(cur)))
      return {cur, err, n, true};
    prev = cur;
  }
  return {prev, err, n, false};
}

void check_contour_clear(std::span<const cplx> poles, int n, double guard) {
  CircleQuadrature cq(n);
  for (const cplx& pole : poles) {
    const double a = std::arg(pole);
    const int k0 = static_cast<int>(std::lround(a * cq.n_points / (2.0 * kPi)));
    for (int dk = -1; dk <= 1; ++dk) {
      const int k = ((k0 + dk) % cq.n_points + cq.n_points) % cq.n_points;
      if (std::abs(pole - node(k, cq.n_points)) < guard)
        throw PoleOnContourError(
            "integration contour passes within the pole guard band");
    }
  }
}

}  // namespace ehi::quadrature
