#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ehi/quadrature.hpp"

using namespace ehi;
using namespace ehi::quadrature;

namespace {
double rel(cplx a, cplx b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}
}  // namespace

TEST_CASE("constant integrand converges at the first doubling") {
  const auto res = circle_integrate_adaptive([](cplx) { return cplx(1.0); },
                                             1e-12);
  CHECK(res.converged);
  CHECK(res.n_used == 32);
  CHECK(rel(res.value, kTwoPiI) < 1e-15);
}

TEST_CASE("low-degree Laurent polynomials are integrated exactly") {
  auto f = [](cplx z) { return 3.0 + z * z + 1.0 / z + 0.25 * z * z * z; };
  CHECK(rel(circle_integrate(f, 16), 3.0 * kTwoPiI) < 1e-15);
}

TEST_CASE("node counts must be powers of two in range") {
  auto f = [](cplx) { return cplx(1.0); };
  CHECK_THROWS_AS(circle_integrate(f, 12), DomainError);
  CHECK_THROWS_AS(circle_integrate(f, 24), DomainError);
  CHECK_THROWS_AS(circle_integrate(f, 1 << 15), DomainError);
}

TEST_CASE("geometric error decay for an analytic integrand") {
  auto f = [](cplx z) { return 1.0 / (1.0 - 0.5 * z); };
  const cplx exact = kTwoPiI;  // only the z^0 mode survives
  double prev_err = -1.0;
  for (int n : {16, 32, 64}) {
    const double err = std::abs(circle_integrate(f, n) - exact);
    if (prev_err > 1e-16 && err > 1e-16) CHECK(prev_err / err > 5.0);
    prev_err = err;
  }
  const auto res = circle_integrate_adaptive(f, 1e-12);
  CHECK(res.converged);
  CHECK(rel(res.value, exact) < 1e-13);
}

TEST_CASE("adaptive runs are deterministic") {
  auto f = [](cplx z) { return std::exp(z) / (2.0 - z); };
  const auto a = circle_integrate_adaptive(f, 1e-13);
  const auto b = circle_integrate_adaptive(f, 1e-13);
  CHECK(a.value.real() == b.value.real());
  CHECK(a.value.imag() == b.value.imag());
  CHECK(a.n_used == b.n_used);
}

TEST_CASE("slowly converging integrand reports failure honestly") {
  auto f = [](cplx z) { return 1.0 / (1.0 - 0.999 * z); };
  const auto res = circle_integrate_adaptive(f, 1e-14, 64);
  CHECK(!res.converged);
}

TEST_CASE("torus rule matches a product of one-dimensional integrals") {
  auto f = [](cplx z1, cplx z2) {
    return 1.0 / ((1.0 - 0.3 * z1) * (1.0 - 0.4 * z2)) + z1 / z2;
  };
  const cplx exact = kTwoPiI * kTwoPiI;
  CHECK(rel(circle_integrate_2d(f, 64), exact) < 1e-13);
  const auto res = circle_integrate_2d_adaptive(f, 1e-12, 1 << 8);
  CHECK(res.converged);
  CHECK(rel(res.value, exact) < 1e-13);
}

TEST_CASE("periodic interval rule integrates a smooth function") {
  // int_0^{2pi} exp(cos u) du = 2 pi I_0(1)
  const cplx exact(7.9549265210128452745, 0.0);
  auto g = [](double u) { return cplx(std::exp(std::cos(u))); };
  const auto res = interval_integrate_adaptive(g, 1e-13);
  CHECK(res.converged);
  CHECK(rel(res.value, exact) < 1e-13);
}

TEST_CASE("contour guard flags poles near quadrature nodes") {
  const cplx on_node = std::polar(1.0 + 4e-9, 2.0 * kPi * 3.0 / 64.0);
  const cplx clear = std::polar(1.1, 0.3);
  const cplx poles_bad[] = {clear, on_node};
  const cplx poles_ok[] = {clear};
  CHECK_THROWS_AS(check_contour_clear(poles_bad, 64), PoleOnContourError);
  CHECK_NOTHROW(check_contour_clear(poles_ok, 64));
}
