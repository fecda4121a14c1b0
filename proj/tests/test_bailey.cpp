#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "ehi/bailey.hpp"
#include "ehi/sampling.hpp"

using namespace ehi;
using namespace ehi::bailey;
using specfun::GammaEngine;

namespace {
double rel(cplx a, cplx b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// Laurent test function, analytic away from 0 and infinity.
cplx laurent(cplx z) {
  return 1.0 + 0.3 * (z + 1.0 / z) + cplx(0.0, 0.1) * (z * z - 1.0 / (z * z));
}
}  // namespace

TEST_CASE("multiplier and its reciprocal parameter cancel exactly") {
  const NomePair nomes(cplx(0.11, 0.05), cplx(0.07, -0.1));
  const GammaEngine eng(nomes);
  const cplx s(0.6, 0.2), u(0.9, -0.3), w(-0.4, 0.8);
  CHECK(rel(d_factor(s, u, w, eng) * d_factor(1.0 / s, u, w, eng), cplx(1.0)) <
        1e-12);
}

TEST_CASE("integral operator reproduces the beta closed form") {
  Rng rng(83421);
  const NomePair nomes = sampling::random_nomes(rng, 0.06, 0.12);
  const GammaEngine eng(nomes);
  const cplx pq = nomes.p * nomes.q;

  const cplx t = std::polar(0.45, rng.angle());
  // four companions with t^2 t3 t4 t5 t6 = pq
  std::array<cplx, 4> t_rest;
  {
    cplx prod(1.0);
    for (int j = 0; j < 3; ++j) {
      t_rest[j] = std::polar(rng.uniform(0.35, 0.55), rng.angle());
      prod *= t_rest[j];
    }
    t_rest[3] = pq / (t * t * prod);
    REQUIRE(std::abs(t_rest[3]) < 0.9);
  }

  OperatorContext ctx;
  ctx.eng = &eng;
  auto f = [&](cplx z) {
    cplx v(1.0);
    for (const cplx& a : t_rest) v *= eng.gamma_pm(a, z);
    return v;
  };
  for (cplx w : {std::polar(1.0, 0.7), std::polar(1.0, 2.9)}) {
    const cplx via_integral = m_apply(t, f, w, ctx);
    const cplx closed = m_apply_beta_closed_form(t, t_rest, w, eng);
    CHECK(rel(via_integral, closed) < 1e-9);
  }
  CHECK(ctx.budget->used > 0);
}

TEST_CASE("operator composition satisfies the star-triangle identity") {
  Rng rng(460);
  const NomePair nomes = sampling::random_nomes(rng, 0.06, 0.11);
  const GammaEngine eng(nomes);
  OperatorContext ctx;
  ctx.eng = &eng;
  const cplx s = std::polar(0.55, rng.angle());
  const cplx t = std::polar(0.6, rng.angle());
  const cplx u = rng.unit_circle();
  const cplx probes[] = {rng.unit_circle(), rng.unit_circle()};
  const auto rep =
      star_triangle_residual(s, t, u, laurent, probes, ctx, 1e-9);
  CAPTURE(rep.rel_err);
  CHECK(rep.passed);
  CHECK(rep.n_used > 0);
}

TEST_CASE("star-triangle rejects contour-inadmissible multipliers") {
  const NomePair nomes(cplx(0.3), cplx(0.3));  // sqrt|pq| = 0.3
  const GammaEngine eng(nomes);
  OperatorContext ctx;
  ctx.eng = &eng;
  const cplx probes[] = {cplx(1.0)};
  // |st| = 0.25 < sqrt|pq| max(|u|,1/|u|) = 0.3
  CHECK_THROWS_AS(star_triangle_residual(cplx(0.5), cplx(0.5), cplx(1.0),
                                         laurent, probes, ctx, 1e-9),
                  DomainError);
}

TEST_CASE("transported pairs stay matched under the composed operator") {
  Rng rng(77002);
  const NomePair nomes = sampling::random_nomes(rng, 0.06, 0.11);
  const GammaEngine eng(nomes);
  OperatorContext ctx;
  ctx.eng = &eng;
  const cplx s = std::polar(0.5, rng.angle());
  const cplx t = std::polar(0.62, rng.angle());
  const cplx u = rng.unit_circle();
  const cplx probes[] = {rng.unit_circle()};
  const auto rep = bailey_lemma_check(laurent, s, t, u, probes, ctx, 1e-9);
  CAPTURE(rep.rel_err);
  CHECK(rep.passed);
}

TEST_CASE("budget exhaustion raises instead of silently truncating") {
  const NomePair nomes(cplx(0.1), cplx(0.08));
  const GammaEngine eng(nomes);
  OperatorContext ctx;
  ctx.eng = &eng;
  ctx.budget->limit = 10;
  CHECK_THROWS_AS(m_apply(cplx(0.5), laurent, cplx(1.0), ctx),
                  BudgetExceededError);
}

TEST_CASE("degenerate operator parameters are rejected") {
  const NomePair nomes(cplx(0.1), cplx(0.08));
  const GammaEngine eng(nomes);
  OperatorContext ctx;
  ctx.eng = &eng;
  CHECK_THROWS_AS(m_apply(cplx(1.0) /*t^2 = 1*/, laurent, cplx(1.0), ctx),
                  DomainError);
  CHECK_THROWS_AS(m_apply(cplx(0.5), laurent, cplx(3.0), ctx), DomainError);
}
