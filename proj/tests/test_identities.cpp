#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ehi/identities.hpp"
#include "ehi/sampling.hpp"

using namespace ehi;
using namespace ehi::identities;
using specfun::GammaEngine;

namespace {
double rel(cplx a, cplx b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}
}  // namespace

TEST_CASE("six-parameter contour integral factorizes into gamma products") {
  Rng rng(20240801);
  for (int k = 0; k < 3; ++k) {
    const NomePair nomes = sampling::random_nomes(rng);
    const auto t = sampling::beta_params(rng, nomes);
    const auto rep = verify_elliptic_beta(t, nomes);
    CAPTURE(k);
    CAPTURE(rep.rel_err);
    CHECK(rep.passed);
    CHECK(rep.rel_err < 1e-9);
    CHECK(rep.n_used >= 32);
  }
}

TEST_CASE("unbalanced or inadmissible beta parameters are rejected") {
  const NomePair nomes(cplx(0.15), cplx(0.1));
  std::vector<cplx> t(6, cplx(0.5));
  CHECK_THROWS_AS(verify_elliptic_beta(t, nomes), BalanceError);
  Rng rng(7);
  auto ok = sampling::beta_params(rng, nomes);
  auto bad = ok;
  bad[0] *= 1.0 / std::abs(bad[0]);  // push onto the unit circle
  bad[5] *= std::abs(bad[0]);        // keep the product balanced
  CHECK_THROWS_AS(verify_elliptic_beta(bad, nomes), DomainError);
}

TEST_CASE("balanced evaluator reproduces the beta integral via duplication") {
  Rng rng(5150);
  const NomePair nomes = sampling::random_nomes(rng);
  const auto t = sampling::beta_params(rng, nomes);
  const GammaEngine eng(nomes);
  const cplx pq = nomes.p * nomes.q;
  const cplx sp = std::sqrt(nomes.p), sq = std::sqrt(nomes.q);
  const cplx spq = eng.sqrt_pq();

  std::vector<cplx> T(t.begin(), t.end());
  for (cplx c : {spq, -spq, sp * spq, -sp * spq, sq * spq, -sq * spq,
                 spq * spq, -spq * spq})
    T.push_back(c);
  std::vector<cplx> W;
  for (const cplx& tj : t) W.push_back(pq / tj);
  for (cplx c : {cplx(1.0), cplx(-1.0), sp, -sp, sq, -sq, spq, -spq})
    W.push_back(c);

  const cplx lhs = eng.phase_factor() / (4.0 * kPi * kI) *
                   specfun::general_ehi_eval(T, W, nomes, 1e-12);
  CHECK(rel(lhs, elliptic_beta_rhs(t, eng)) < 1e-10);
}

TEST_CASE("eight-parameter function obeys its reflection identity") {
  Rng rng(99173);
  for (int k = 0; k < 2; ++k) {
    const NomePair nomes = sampling::random_nomes(rng);
    const auto t = sampling::v_params(rng, nomes);
    const auto rep = verify_v_reflection(t, nomes);
    CAPTURE(rep.rel_err);
    CHECK(rep.passed);
    CHECK(rep.rel_err < 1e-9);
  }
}

TEST_CASE("eight-parameter function obeys its difference equation") {
  Rng rng(441);
  const NomePair nomes = sampling::difference_equation_nomes(rng);
  const auto t = sampling::difference_equation_params(rng, nomes);
  VerifyOptions opts;
  opts.tol = 1e-8;
  const auto rep = verify_v_difference_equation(t, nomes, opts);
  CAPTURE(rep.rel_err);
  CHECK(rep.passed);
  CHECK(rep.rel_err < 1e-8);
}

TEST_CASE("difference equation rejects shifts that leave the domain") {
  const NomePair nomes(cplx(0.08), cplx(0.45));
  std::vector<cplx> t(8, cplx(0.5));  // |t1| > |q|
  CHECK_THROWS_AS(verify_v_difference_equation(t, nomes), DomainError);
}

TEST_CASE("rank-1 multiple integral reduces to the beta evaluation") {
  Rng rng(31337);
  const NomePair nomes = sampling::random_nomes(rng);
  const auto sp = sampling::selberg_params(rng, nomes, 1);
  const GammaEngine eng(nomes);
  CHECK(rel(selberg_rhs(1, sp.t, sp.tm, eng),
            elliptic_beta_rhs(sp.tm, eng)) < 1e-14);
  const auto rep = verify_selberg(1, sp.t, sp.tm, nomes);
  CAPTURE(rep.rel_err);
  CHECK(rep.passed);
  CHECK(rep.rel_err < 1e-10);
}

TEST_CASE("rank-2 multiple integral matches its product formula") {
  Rng rng(2718281);
  const NomePair nomes = sampling::random_nomes(rng, 0.08, 0.15);
  const auto sp = sampling::selberg_params(rng, nomes, 2);
  VerifyOptions opts;
  opts.tol = 1e-6;
  const auto rep = verify_selberg(2, sp.t, sp.tm, nomes, opts);
  CAPTURE(rep.rel_err);
  CHECK(rep.passed);
  CHECK(rep.rel_err < 1e-6);
}

TEST_CASE("additive-variable kernel identity holds for real nomes") {
  Rng rng(60601);
  const NomePair nomes = sampling::random_nomes(rng, 0.04, 0.12, true);
  const auto sp = sampling::str_functional_params(rng, nomes);
  const auto rep = verify_str_functional(sp, nomes);
  CAPTURE(rep.rel_err);
  CHECK(rep.passed);
  CHECK(rep.rel_err < 1e-9);
  CHECK_THROWS_AS(
      verify_str_functional(sp, NomePair(cplx(0.1, 0.02), cplx(0.05))),
      DomainError);
}

TEST_CASE("measure factor equals its two-theta product form") {
  const NomePair nomes(cplx(0.09), cplx(0.05));
  const GammaEngine eng(nomes);
  for (double u : {0.37, 1.9, 4.4}) {
    const cplx zu = std::polar(1.0, u);
    const cplx via_pair = eng.inv_gamma_pair(zu * zu);
    const cplx via_thetas =
        eng.theta_p(std::exp(2.0 * kI * u)) * eng.theta_q(std::exp(-2.0 * kI * u));
    CHECK(rel(via_pair, via_thetas) < 1e-13);
  }
}
