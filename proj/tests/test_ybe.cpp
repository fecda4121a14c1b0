#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "ehi/bailey.hpp"
#include "ehi/errors.hpp"
#include "ehi/report.hpp"
#include "ehi/sklyanin.hpp"
#include "ehi/specfun.hpp"
#include "ehi/ybe.hpp"

using namespace ehi;

namespace {

// Difference operators use p = e^{2 pi i tau}; integral operators use
// q = e^{4 pi i eta}.  Im(eta) is kept small so the eta-shifted evaluation
// points stay inside every kernel's pole-free annulus.
const cplx kTau{0.1, 0.38};
const cplx kEta{0.05, 0.03};

// Spectral chamber: u - v = 0.30 - 0.16i keeps |e^{2 pi i (v_j - u_j)}| and
// the sqrt(pq)-dressed multipliers strictly inside the unit disk, with room
// for the eta-shifts.
const cplx kU{0.19, -0.06};
const cplx kV{-0.11, 0.10};

const specfun::GammaEngine& engine() {
  static specfun::GammaEngine eng(
      NomePair{std::exp(kTwoPiI * kTau), std::exp(2.0 * kTwoPiI * kEta)});
  return eng;
}

ybe::SOperatorContext make_ctx(double rel_tol = 1e-9, int n_max = 1 << 10) {
  return {&engine(), kEta, rel_tol, n_max,
          std::make_shared<bailey::EvalBudget>()};
}

cplx expi(cplx w) { return std::exp(kTwoPiI * w); }

// Laurent polynomial even in both arguments; wrapped, it lies in the class
// every integral letter preserves.
cplx even_laurent(cplx x, cplx y) {
  const cplx cx = x + 1.0 / x;
  const cplx cy = y + 1.0 / y;
  return 1.0 + 0.5 * cx + 0.3 * cy + 0.2 * cx * cy;
}

}  // namespace

TEST_CASE("spectral tuple bookkeeping") {
  const ybe::SpectralAssignment w{cplx(1.0), cplx(2.0), cplx(3.0), cplx(4.0)};
  const auto braided = w.s2().s3().s1();
  CHECK(braided.u1 == cplx(3.0));
  CHECK(braided.u2 == cplx(1.0));
  CHECK(braided.v1 == cplx(4.0));
  CHECK(braided.v2 == cplx(2.0));
  const auto twice = w.s2().s2();
  CHECK(twice.u2 == w.u2);
  CHECK(twice.v1 == w.v1);

  const auto split = ybe::split_spectral(kU, 0.0, kV, 0.0, kEta);
  CHECK(std::abs(split.u1 + split.u2 - kU) < 1e-15);
  CHECK(std::abs(split.v1 + split.v2 - kV) < 1e-15);
  CHECK(std::abs(split.u1 - split.u2 - kEta) < 1e-15);
}

TEST_CASE("multiplier letter intertwines the difference-operator sandwich") {
  const auto ctx = make_ctx();
  const auto asg = ybe::split_spectral(kU, 0.0, kV, 0.0, kEta);

  // finite differences and multipliers only, so any entire function works
  const ybe::Fn2 phi = [](cplx z1, cplx z2) {
    return 0.7 * expi(z1) + 0.4 * expi(-z2) + 0.2 * expi(z1 + z2) + 1.0;
  };
  const ybe::Fn2 s2phi = ybe::apply_s2(ctx, asg, phi);

  const std::array<std::array<cplx, 2>, 2> probes = {
      {{cplx(0.13, 0.02), cplx(0.37, -0.03)}, {cplx(0.29, 0.0), cplx(0.11, 0.0)}}};
  for (const auto& pr : probes) {
    const cplx z1 = pr[0], z2 = pr[1];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const cplx lhs =
            ybe::s2_factor(ctx, asg, z1, z2) *
            ybe::l_sandwich_entry(i, j, asg.u1, asg.u2, asg.v1, asg.v2, kTau,
                                  kEta, phi, z1, z2);
        const cplx rhs =
            ybe::l_sandwich_entry(i, j, asg.u1, asg.v1, asg.u2, asg.v2, kTau,
                                  kEta, s2phi, z1, z2);
        CHECK(relative_error(lhs, rhs) < 1e-10);
      }
  }

  // reciprocal-parameter multiplier must break the exchange
  const cplx flipped = engine().sqrt_pq() * expi(asg.v1 - asg.u2);
  const ybe::Fn2 flipmul = [&, flipped](cplx z1, cplx z2) {
    return engine().gamma_pm2(flipped, expi(z1), expi(z2)) * phi(z1, z2);
  };
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const cplx z1 = probes[0][0], z2 = probes[0][1];
      const cplx lhs = engine().gamma_pm2(flipped, expi(z1), expi(z2)) *
                       ybe::l_sandwich_entry(i, j, asg.u1, asg.u2, asg.v1,
                                             asg.v2, kTau, kEta, phi, z1, z2);
      const cplx rhs = ybe::l_sandwich_entry(i, j, asg.u1, asg.v1, asg.u2,
                                             asg.v2, kTau, kEta, flipmul, z1,
                                             z2);
      worst = std::max(worst, relative_error(lhs, rhs));
    }
  CHECK(worst > 1e-3);
}

TEST_CASE("slot-1 integral letter swaps the slot-1 spectral pair") {
  const auto ctx = make_ctx();
  // complex spin keeps |e^{2 pi i (u2 - u1)}| < 1
  const cplx u1{0.21, -0.05}, u2{-0.09, 0.07};
  const ybe::SpectralAssignment asg{u1, u2, cplx(0.0), cplx(0.0)};

  const ybe::Fn2 phi = ybe::gaussian_wrap(kEta, [](cplx x, cplx y) {
    return (0.6 * (x + 1.0 / x) + 1.0) * (0.8 + 0.3 * y);
  });
  const ybe::Fn2 s1phi = ybe::apply_s1(ctx, asg, phi);

  const cplx z1{0.23, 0.0}, z2{0.14, 0.0};
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      const ybe::Fn2 l_phi = [&, i, k](cplx w1, cplx w2) {
        return sklyanin::l_apply(u1, u2, kTau, kEta, phi, 1, w1, w2)[static_cast<size_t>(i)][static_cast<size_t>(k)];
      };
      const cplx lhs = ybe::apply_s1(ctx, asg, l_phi)(z1, z2);
      const cplx rhs = sklyanin::l_apply(
          u2, u1, kTau, kEta, s1phi, 1, z1,
          z2)[static_cast<size_t>(i)][static_cast<size_t>(k)];
      CHECK(relative_error(lhs, rhs) < 1e-8);
    }
}

TEST_CASE("slot-2 integral letter swaps the slot-2 spectral pair") {
  const auto ctx = make_ctx();
  const cplx v1{0.21, -0.05}, v2{-0.09, 0.07};
  const ybe::SpectralAssignment asg{cplx(0.0), cplx(0.0), v1, v2};

  const ybe::Fn2 phi = ybe::gaussian_wrap(kEta, [](cplx x, cplx y) {
    return (0.8 + 0.3 * x) * (0.6 * (y + 1.0 / y) + 1.0);
  });
  const ybe::Fn2 s3phi = ybe::apply_s3(ctx, asg, phi);

  const cplx z1{0.14, 0.0}, z2{0.23, 0.0};
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      const ybe::Fn2 l_phi = [&, i, k](cplx w1, cplx w2) {
        return sklyanin::l_apply(v1, v2, kTau, kEta, phi, 2, w1, w2)[static_cast<size_t>(i)][static_cast<size_t>(k)];
      };
      const cplx lhs = ybe::apply_s3(ctx, asg, l_phi)(z1, z2);
      const cplx rhs = sklyanin::l_apply(
          v2, v1, kTau, kEta, s3phi, 2, z1,
          z2)[static_cast<size_t>(i)][static_cast<size_t>(k)];
      CHECK(relative_error(lhs, rhs) < 1e-8);
    }
}

TEST_CASE("integral letters in disjoint slots commute") {
  const auto ctx = make_ctx();
  const ybe::SpectralAssignment asg{cplx(0.21, -0.05), cplx(-0.09, 0.07),
                                    cplx(0.15, -0.04), cplx(-0.05, 0.08)};
  const ybe::Fn2 phi = ybe::gaussian_wrap(kEta, even_laurent);
  const std::array<std::array<cplx, 2>, 1> probes = {
      {{cplx(0.13, 0.0), cplx(0.37, 0.0)}}};
  CHECK(ybe::coxeter_s1s3_residual(ctx, asg, phi, probes) < 1e-8);
}

TEST_CASE("cubic braid relation and the one-variable operator chain") {
  const auto ctx = make_ctx(1e-10);
  // balanced chamber: both integral-letter parameters and the dressed
  // multiplier sit near modulus 0.63
  const cplx b{0.21, -0.073}, a{-0.06, -0.073};
  const cplx u2{0.05, 0.02};
  const cplx u1 = u2 + b;
  const cplx v1 = u2 - a;
  const cplx v2{0.02, 0.05};
  const ybe::SpectralAssignment asg{u1, u2, v1, v2};

  auto f1 = [](cplx x) {
    return 1.0 + 0.6 * (x + 1.0 / x) + 0.15 * (x * x + 1.0 / (x * x));
  };
  const ybe::Fn2 phi =
      ybe::gaussian_wrap(kEta, [&](cplx x, cplx) { return f1(x); });

  const std::array<std::array<cplx, 2>, 1> probes = {
      {{cplx(0.13, 0.0), cplx(0.37, 0.0)}}};
  CHECK(ybe::coxeter_cubic_residual(ctx, asg, phi, probes) < 1e-8);

  // left word against M(s) D(st) M(t) acting on the multiplicative part
  const cplx z1 = probes[0][0], z2 = probes[0][1];
  const cplx s = expi(v1 - u2), t = expi(u2 - u1);
  bailey::OperatorContext bctx{&engine(), 1e-10, 1 << 12,
                               std::make_shared<bailey::EvalBudget>()};
  const bailey::AnalyticFn chain = bailey::m_operator(
      s,
      bailey::d_multiplied(s * t, expi(z2),
                           bailey::m_operator(t, f1, bctx), bctx),
      bctx);
  const cplx lhs_word =
      ybe::apply_s1(ctx, asg.s1().s2(),
                    ybe::apply_s2(ctx, asg.s1(), ybe::apply_s1(ctx, asg, phi)))(
          z1, z2);
  const cplx unwrapped =
      std::exp(kI * kPi * (z1 * z1 + z2 * z2) / kEta) * lhs_word;
  CHECK(relative_error(unwrapped, chain(expi(z1))) < 1e-10);

  // reciprocal-parameter middle multiplier must break the cubic relation
  const cplx flipped_mid = engine().sqrt_pq() * expi(-(a + b));
  auto flip_mult = [&](ybe::Fn2 g) -> ybe::Fn2 {
    return [&, g = std::move(g)](cplx w1, cplx w2) {
      return engine().gamma_pm2(flipped_mid, expi(w1), expi(w2)) * g(w1, w2);
    };
  };
  const cplx flip_lhs =
      ybe::apply_s1(ctx, asg.s1().s2(),
                    flip_mult(ybe::apply_s1(ctx, asg, phi)))(z1, z2);
  const cplx flipped_outer = engine().sqrt_pq() * expi(-a);
  const cplx flipped_inner = engine().sqrt_pq() * expi(-b);
  const ybe::Fn2 flip_in = [&](cplx w1, cplx w2) {
    return engine().gamma_pm2(flipped_inner, expi(w1), expi(w2)) *
           phi(w1, w2);
  };
  const cplx flip_rhs =
      engine().gamma_pm2(flipped_outer, expi(z1), expi(z2)) *
      ybe::apply_s1(ctx, asg.s2(), flip_in)(z1, z2);
  CHECK(relative_error(flip_lhs, flip_rhs) > 1e-2);
}

TEST_CASE("braid word agrees with the closed-form kernel transform") {
  const auto ctx = make_ctx(1e-9);
  const auto asg = ybe::split_spectral(kU, 0.0, kV, 0.0, kEta);
  const ybe::Fn2 phi = ybe::gaussian_wrap(kEta, even_laurent);

  const cplx z1{0.13, 0.0}, z2{0.37, 0.0};
  const auto direct =
      ybe::r_apply(ctx, asg, even_laurent, expi(z1), expi(z2));
  CHECK(direct.converged);
  const cplx braided =
      std::exp(kI * kPi * (z1 * z1 + z2 * z2) / kEta) *
      ybe::r12_braid(ctx, asg, phi)(z2, z1);
  CHECK(relative_error(direct.value, braided) < 1e-6);
}

TEST_CASE("kernel symmetries") {
  const auto ctx = make_ctx();
  const auto asg = ybe::split_spectral(kU, 0.0, kV, 0.0, kEta);
  const cplx x1 = expi(cplx(0.13)), x2 = expi(cplx(0.37));
  const cplx x = expi(cplx(0.61)), y = expi(cplx(0.83));

  const cplx base = ybe::r_kernel(ctx, asg, x1, x2, x, y);
  CHECK(relative_error(base, ybe::r_kernel(ctx, asg, x1, x2, 1.0 / x, y)) <
        1e-13);
  CHECK(relative_error(base, ybe::r_kernel(ctx, asg, x1, x2, x, 1.0 / y)) <
        1e-13);

  // nome exchange is a pure relabeling of every factor
  specfun::GammaEngine swapped(
      NomePair{std::exp(2.0 * kTwoPiI * kEta), std::exp(kTwoPiI * kTau)});
  ybe::SOperatorContext sctx{&swapped, kEta, 1e-9, 1 << 10, nullptr};
  const cplx swapped_val = ybe::r_kernel(sctx, asg, x1, x2, x, y);
  CHECK(base.real() == doctest::Approx(swapped_val.real()).epsilon(1e-15));
  CHECK(base.imag() == doctest::Approx(swapped_val.imag()).epsilon(1e-15));
}

TEST_CASE("spectral exchange relation at reduced scale") {
  auto ctx = make_ctx(1e-7);
  const ybe::Fn2 phi = ybe::gaussian_wrap(kEta, even_laurent);
  const std::array<std::array<cplx, 2>, 1> probes = {
      {{cplx(0.13, 0.0), cplx(0.37, 0.0)}}};
  const double res =
      ybe::rll_residual(ctx, kTau, kU, kV, 0.0, 0.0, phi, probes);
  CHECK(res < 1e-5);
  CHECK(ctx.budget->used > 0);
  CHECK(ctx.budget->used < 10'000'000);
  MESSAGE("spectral exchange residual ", res, ", kernel evals ",
          ctx.budget->used);

  // zero input stays exactly zero
  const ybe::Fn2 zero = [](cplx, cplx) { return cplx(0.0); };
  CHECK(ybe::rll_residual(ctx, kTau, kU, kV, 0.0, 0.0, zero, probes) == 0.0);
}

TEST_CASE("guards: budget, domain, and nome consistency") {
  // exhaust a tiny budget inside the braid
  auto ctx = make_ctx(1e-9);
  ctx.budget = std::make_shared<bailey::EvalBudget>();
  ctx.budget->limit = 100;
  const auto asg = ybe::split_spectral(kU, 0.0, kV, 0.0, kEta);
  const ybe::Fn2 phi = ybe::gaussian_wrap(kEta, even_laurent);
  CHECK_THROWS_AS(ybe::r12_braid(ctx, asg, phi)(cplx(0.13), cplx(0.37)),
                  BudgetExceededError);

  // integral letter with kernel poles crossing the contour
  const auto good = make_ctx();
  const ybe::SpectralAssignment bad{cplx(0.0, 0.0), cplx(0.3, -0.12),
                                    cplx(0.0), cplx(0.0)};
  CHECK_THROWS_AS(ybe::apply_s1(good, bad, phi)(cplx(0.1), cplx(0.2)),
                  DomainError);

  // kernel with the inner multiplier reaching the torus
  const ybe::SpectralAssignment far{cplx(0.1), cplx(0.0), cplx(0.0, 0.3),
                                    cplx(0.0)};
  CHECK_THROWS_AS(
      ybe::r_kernel(good, far, cplx(1.0), cplx(1.0), cplx(1.0), cplx(1.0)),
      DomainError);

  // mismatched nomes are rejected before any quadrature
  CHECK_THROWS_AS(ybe::rll_residual(good, kTau + 0.01, kU, kV, 0.0, 0.0, phi,
                                    std::array<std::array<cplx, 2>, 1>{
                                        {{cplx(0.13), cplx(0.37)}}}),
                  DomainError);
}
