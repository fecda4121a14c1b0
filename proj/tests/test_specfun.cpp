#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "ehi/specfun.hpp"

using namespace ehi;
using namespace ehi::specfun;

namespace {
double rel(cplx a, cplx b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}
}  // namespace

// Frozen values below come from 40-digit brute-force partial products /
// series, truncated far past double precision.

TEST_CASE("infinite q-product matches frozen brute-force values") {
  CHECK(rel(qpoch_inf(cplx(0.2), cplx(0.1)),
            cplx(0.78225812973481676126, 0.0)) < 1e-14);
  CHECK(rel(qpoch_inf(cplx(0.3, -0.55), cplx(0.35, 0.2)),
            cplx(0.4276640240041346246, 0.43462166120910204972)) < 1e-14);
  CHECK(qpoch_inf(cplx(0.0), cplx(0.9)) == cplx(1.0));
}

TEST_CASE("infinite q-product returns exact zero on a vanishing factor") {
  const cplx p(0.25);
  CHECK(qpoch_inf(cplx(16.0), p) == cplx(0.0));  // z = p^{-2}
}

TEST_CASE("multiplicative theta matches frozen value and its quasi-periods") {
  const cplx z(0.4, 0.3), p(0.1, -0.15);
  CHECK(rel(theta_mult(z, p),
            cplx(0.70734402334279965067, -0.035322348163187183968)) < 1e-14);

  // theta(pz;p) = -z^{-1} theta(z;p) and theta(1/z;p) = -z^{-1} theta(z;p)
  CHECK(rel(theta_mult(p * z, p), -theta_mult(z, p) / z) < 1e-13);
  CHECK(rel(theta_mult(1.0 / z, p), -theta_mult(z, p) / z) < 1e-13);
}

TEST_CASE("elliptic gamma matches frozen double-product values") {
  CHECK(rel(elliptic_gamma(cplx(0.3, 0.4), NomePair(cplx(0.2), cplx(0.15))),
            cplx(0.9535343511130231875, 0.95824098197239884831)) < 1e-13);
  CHECK(rel(elliptic_gamma(cplx(1.4, -0.2),
                           NomePair(cplx(0.13, 0.04), cplx(-0.05, 0.21))),
            cplx(-1.7407553714457351462, -1.7754981259554295467)) < 1e-13);
}

TEST_CASE("elliptic gamma satisfies reflection and shift equations") {
  const NomePair nomes(cplx(0.21, 0.05), cplx(0.1, -0.12));
  const GammaEngine eng(nomes);
  const cplx pq = nomes.p * nomes.q;
  for (cplx z : {cplx(0.8, 0.1), cplx(0.3, -0.6), cplx(-1.2, 0.4)}) {
    CHECK(rel(eng.gamma(z) * eng.gamma(pq / z), cplx(1.0)) < 1e-12);
    CHECK(rel(eng.gamma(nomes.q * z), eng.theta_p(z) * eng.gamma(z)) < 1e-12);
    CHECK(rel(eng.gamma(nomes.p * z), eng.theta_q(z) * eng.gamma(z)) < 1e-12);
  }
}

TEST_CASE("elliptic gamma with one nome zero collapses to a q-product") {
  const cplx z(0.45, -0.3), q(0.2, 0.1);
  CHECK(rel(elliptic_gamma(z, NomePair(cplx(0.0), q)),
            1.0 / qpoch_inf(z, q)) < 1e-13);
}

TEST_CASE("fast-annulus series path agrees with the double product") {
  const NomePair nomes(cplx(0.3, -0.1), cplx(-0.15, 0.22));
  const GammaEngine eng(nomes);
  // moduli spanning the annulus |pq| < |z| < 1/max(|p|,|q|)
  for (cplx z : {cplx(0.9, 0.05), cplx(0.2, 0.2), cplx(-0.7, 0.6),
                 cplx(2.0, -0.5), cplx(0.11, -0.05)}) {
    CHECK(rel(eng.gamma(z), elliptic_gamma(z, nomes)) < 1e-12);
  }
}

TEST_CASE("nome swap is bit-identical on both evaluation paths") {
  const NomePair nomes(cplx(0.17, 0.06), cplx(-0.12, 0.21));
  const GammaEngine e1(nomes), e2(nomes.swapped());
  for (cplx z : {cplx(0.85, 0.1), cplx(0.04, 0.02), cplx(-3.0, 1.0)}) {
    const cplx a = e1.gamma(z), b = e2.gamma(z);
    CHECK(a.real() == b.real());
    CHECK(a.imag() == b.imag());
    const cplx fa = elliptic_gamma(z, nomes);
    const cplx fb = elliptic_gamma(z, nomes.swapped());
    CHECK(fa.real() == fb.real());
    CHECK(fa.imag() == fb.imag());
  }
}

TEST_CASE("engine theta evaluations match the plain q-products") {
  const NomePair nomes(cplx(0.28, 0.13), cplx(0.33, -0.2));
  const GammaEngine eng(nomes);
  for (cplx z : {cplx(1.4, -0.3), cplx(-0.5, 0.8), cplx(0.2, 0.05)}) {
    CHECK(rel(eng.theta_p(z), theta_mult(z, nomes.p)) < 1e-13);
    CHECK(rel(eng.theta_q(z), theta_mult(z, nomes.q)) < 1e-13);
  }
}

TEST_CASE("reciprocal gamma pair is regular and vanishes at w = 1") {
  const NomePair nomes(cplx(0.25), cplx(0.2, 0.1));
  const GammaEngine eng(nomes);
  CHECK(eng.inv_gamma_pair(cplx(1.0)) == cplx(0.0));
  for (cplx w : {cplx(0.6, 0.4), cplx(-1.0, 0.0), cplx(1.7, -0.6)}) {
    CHECK(rel(eng.inv_gamma_pair(w),
              1.0 / (eng.gamma(w) * eng.gamma(1.0 / w))) < 1e-12);
  }
}

TEST_CASE("argument duplication splits into eight gamma factors") {
  const NomePair nomes(cplx(0.2, 0.06), cplx(0.11, -0.16));
  const GammaEngine eng(nomes);
  const cplx sp = std::sqrt(nomes.p), sq = std::sqrt(nomes.q);
  const cplx spq = eng.sqrt_pq();
  for (cplx z : {cplx(0.7, 0.2), cplx(-0.3, 0.5)}) {
    cplx prod(1.0);
    for (cplx c : {cplx(1.0), cplx(-1.0), sp, -sp, sq, -sq, spq, -spq})
      prod *= eng.gamma(c * z);
    CHECK(rel(eng.gamma(z * z), prod) < 1e-11);
  }
}

TEST_CASE("poles and bad domains are rejected") {
  CHECK_THROWS_AS(NomePair(cplx(1.0), cplx(0.1)), DomainError);
  CHECK_THROWS_AS(TruncationPolicy(1e-20, 100), DomainError);
  CHECK_THROWS_AS(TruncationPolicy(1e-12, 2), DomainError);
  const NomePair nomes(cplx(0.2), cplx(0.3));
  const GammaEngine eng(nomes);
  CHECK_THROWS_AS(eng.gamma(cplx(1.0)), PoleError);
  CHECK_THROWS_AS(eng.gamma(cplx(0.0)), DomainError);
  CHECK_THROWS_AS(elliptic_gamma(cplx(1.0), nomes), PoleError);
  CHECK_THROWS_AS(qpoch_inf(cplx(0.5), cplx(2.0)), DomainError);
}

TEST_CASE("additive theta functions match frozen series values") {
  CHECK(rel(jacobi_theta(2, cplx(0.0), cplx(0.0, 1.0)),
            cplx(0.91357913815611682141, 0.0)) < 1e-14);
  const cplx u(0.31, -0.12), tau(0.23, 1.1);
  CHECK(rel(jacobi_theta(1, u, tau),
            cplx(0.76921375018339232516, -0.045895841826516874509)) < 1e-14);
  CHECK(rel(jacobi_theta(4, u, tau),
            cplx(1.0547483563309991766, -0.016482366871453953667)) < 1e-14);
}

TEST_CASE("additive theta_1 bridges to the multiplicative theta") {
  const cplx tau(0.23, 1.1);
  const cplx p = std::exp(kTwoPiI * tau);
  for (cplx u : {cplx(0.31, -0.12), cplx(-0.4, 0.2)}) {
    const cplx bridge = kI * std::exp(kI * kPi * tau / 4.0) *
                        std::exp(-kI * kPi * u) * qpoch_inf(p, p) *
                        theta_mult(std::exp(kTwoPiI * u), p);
    CHECK(rel(jacobi_theta(1, u, tau), bridge) < 1e-13);
  }
}

TEST_CASE("additive theta_1 has the expected parity and periods") {
  const cplx tau(-0.1, 0.9), u(0.27, 0.33);
  const cplx t1 = jacobi_theta(1, u, tau);
  CHECK(rel(jacobi_theta(1, -u, tau), -t1) < 1e-13);
  CHECK(rel(jacobi_theta(1, u + 1.0, tau), -t1) < 1e-13);
  const cplx quasi = -std::exp(-kI * kPi * tau - 2.0 * kI * kPi * u) * t1;
  CHECK(rel(jacobi_theta(1, u + tau, tau), quasi) < 1e-12);
  CHECK(rel(jacobi_theta(2, u, tau), jacobi_theta(1, u + 0.5, tau)) < 1e-13);
}

TEST_CASE("sign-expansion enumerates arguments in mask order") {
  const auto v = expand_pm(cplx(2.0), {cplx(3.0), cplx(5.0)});
  REQUIRE(v.size() == 4);
  CHECK(v[0] == cplx(2.0) / 15.0);
  CHECK(v[1] == cplx(2.0) * 3.0 / 5.0);
  CHECK(v[2] == cplx(2.0) / 3.0 * 5.0);
  CHECK(v[3] == cplx(30.0));
}

TEST_CASE("balanced contour evaluator integrates a trivial ratio") {
  const NomePair nomes(cplx(0.15), cplx(0.1));
  const cplx t[] = {cplx(0.3, 0.1), cplx(0.5)};
  const cplx w[] = {cplx(0.3, 0.1), cplx(0.5)};
  const cplx val = general_ehi_eval(t, w, nomes, 1e-12);
  CHECK(rel(val, kTwoPiI) < 1e-12);

  const cplx w_bad[] = {cplx(0.3, 0.1), cplx(0.51)};
  CHECK_THROWS_AS(general_ehi_eval(t, w_bad, nomes, 1e-12), BalanceError);
  const cplx t_big[] = {cplx(1.2), cplx(0.5)};
  const cplx w_big[] = {cplx(0.3), cplx(2.0)};
  CHECK_THROWS_AS(general_ehi_eval(t_big, w_big, nomes, 1e-12),
                  PoleOnContourError);
}
