#pragma once

#include <functional>
#include <span>

#include "ehi/types.hpp"

namespace ehi::quadrature {

using Fn1 = std::function<cplx(cplx)>;
using Fn2 = std::function<cplx(cplx, cplx)>;
using FnReal = std::function<cplx(double)>;

// Node count for the periodic trapezoid rule on the unit circle: a power of
// two between 16 and 16384, positively oriented.
struct CircleQuadrature {
  int n_points;

  explicit CircleQuadrature(int n) : n_points(n) {
    if (n < 16 || n > (1 << 14) || (n & (n - 1)) != 0)
      throw DomainError("CircleQuadrature: n must be a power of two in [16, 16384]");
  }
};

struct QuadratureResult {
  cplx value{0.0, 0.0};
  double err_estimate = 0.0;
  long n_used = 0;
  bool converged = false;
};

// integral over |z|=1 of f(z) dz/z  ~=  (2 pi i / n) sum_k f(e^{2 pi i k/n}).
// Exact for Laurent polynomials of degree < n; spectrally accurate for f
// analytic in an annulus around the circle.
cplx circle_integrate(const Fn1& f, int n);

// Doubles n from 16 until successive values differ by at most
// max(abs_floor, rel_tol * |I|), reusing previously computed nodes (the
// n-point nodes are the even-indexed 2n-point nodes).
QuadratureResult circle_integrate_adaptive(const Fn1& f, double rel_tol,
                                           int n_max = 1 << 14,
                                           double abs_floor = 1e-300);

// Tensor-product rule: integral of f(z1,z2) dz1/z1 dz2/z2 over the torus.
cplx circle_integrate_2d(const Fn2& f, int n);
QuadratureResult circle_integrate_2d_adaptive(const Fn2& f, double rel_tol,
                                              int n_max = 1 << 10,
                                              double abs_floor = 1e-300);

// integral_0^{2 pi} g(u) du by the same periodic trapezoid rule.
cplx interval_integrate(const FnReal& g, int n);
QuadratureResult interval_integrate_adaptive(const FnReal& g, double rel_tol,
                                             int n_max = 1 << 14,
                                             double abs_floor = 1e-300);

// Throws PoleOnContourError if any registered pole lies within `guard` of a
// quadrature node used at circle size n (checked for the largest level, which
// contains every coarser node set).
void check_contour_clear(std::span<const cplx> poles, int n,
                         double guard = kPoleGuard);

}  // namespace ehi::quadrature
