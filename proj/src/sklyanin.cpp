#include "ehi/sklyanin.hpp"

#include <cmath>
#include <vector>

#include "ehi/specfun.hpp"

namespace ehi::sklyanin {

using specfun::jacobi_theta;

cplx sklyanin_apply(int a, const SklyaninParams& sp, const Fn1& phi, cplx z,
                    const TruncationPolicy& policy) {
  if (a < 0 || a > 3) throw DomainError("sklyanin_apply: index must be 0..3");
  const cplx den = jacobi_theta(1, 2.0 * z, sp.tau, policy);
  if (std::abs(den) < 1e-12)
    throw PoleError("sklyanin_apply: theta_1(2z) vanishes at this point", z);
  const cplx shift = 2.0 * sp.eta * sp.ell;
  const cplx front = (a == 2 ? kI : cplx(1.0)) *
                     jacobi_theta(a + 1, sp.eta, sp.tau, policy) / den;
  return front * (jacobi_theta(a + 1, 2.0 * z - shift, sp.tau, policy) *
                      phi(z + sp.eta) -
                  jacobi_theta(a + 1, -2.0 * z - shift, sp.tau, policy) *
                      phi(z - sp.eta));
}

namespace {

// (S^a S^b phi)(z) with the inner application recomputed at the two shifted
// points the outer operator requests.
cplx compose2(int a, int b, const SklyaninParams& sp, const Fn1& phi, cplx z,
              const TruncationPolicy& policy) {
  auto inner = [&](cplx zz) { return sklyanin_apply(b, sp, phi, zz, policy); };
  return sklyanin_apply(a, sp, inner, z, policy);
}

struct RelationSamples {
  std::vector<cplx> lhs;  // S^0 S^al - S^al S^0   (or the family-(i) bracket)
  std::vector<cplx> rhs;  // i (S^be S^ga + S^ga S^be)  (or family-(i) rhs)
  double scale = 1e-300;  // largest composite magnitude seen
};

void cyclic_from(int alpha, int& beta, int& gamma) {
  if (alpha < 1 || alpha > 3)
    throw DomainError("structure relation: alpha must be 1, 2, or 3");
  beta = alpha % 3 + 1;
  gamma = beta % 3 + 1;
}

RelationSamples collect_family2(int alpha, const SklyaninParams& sp,
                                std::span<const Fn1> fns,
                                std::span<const cplx> probes,
                                const TruncationPolicy& policy) {
  int beta, gamma;
  cyclic_from(alpha, beta, gamma);
  RelationSamples rs;
  for (const Fn1& f : fns) {
    for (const cplx& z : probes) {
      const cplx oa = compose2(0, alpha, sp, f, z, policy);
      const cplx ao = compose2(alpha, 0, sp, f, z, policy);
      const cplx bg = compose2(beta, gamma, sp, f, z, policy);
      const cplx gb = compose2(gamma, beta, sp, f, z, policy);
      rs.lhs.push_back(oa - ao);
      rs.rhs.push_back(kI * (bg + gb));
      for (cplx v : {oa, ao, bg, gb})
        rs.scale = std::max(rs.scale, std::abs(v));
    }
  }
  return rs;
}

}  // namespace

double structure_relation_residual(int alpha, const SklyaninParams& sp,
                                   std::span<const Fn1> fns,
                                   std::span<const cplx> probes,
                                   const TruncationPolicy& policy) {
  int beta, gamma;
  cyclic_from(alpha, beta, gamma);
  double worst = 0.0;
  for (const Fn1& f : fns) {
    for (const cplx& z : probes) {
      const cplx ab = compose2(alpha, beta, sp, f, z, policy);
      const cplx ba = compose2(beta, alpha, sp, f, z, policy);
      const cplx og = compose2(0, gamma, sp, f, z, policy);
      const cplx go = compose2(gamma, 0, sp, f, z, policy);
      double scale = 1e-300;
      for (cplx v : {ab, ba, og, go}) scale = std::max(scale, std::abs(v));
      worst = std::max(worst, std::abs(ab - ba - kI * (og + go)) / scale);
    }
  }
  return worst;
}

StructureFit structure_constant_fit(int alpha, const SklyaninParams& sp,
                                    std::span<const Fn1> fns,
                                    std::span<const cplx> probes,
                                    const TruncationPolicy& policy) {
  const RelationSamples rs = collect_family2(alpha, sp, fns, probes, policy);
  cplx num(0.0);
  double den = 0.0, lhs_sq = 0.0;
  for (std::size_t i = 0; i < rs.lhs.size(); ++i) {
    num += std::conj(rs.rhs[i]) * rs.lhs[i];
    den += std::norm(rs.rhs[i]);
    lhs_sq += std::norm(rs.lhs[i]);
  }
  if (den < 1e-24 * rs.scale * rs.scale)
    throw IllConditionedError(
        "structure_constant_fit: right side numerically degenerate over the "
        "sample set");
  StructureFit out;
  out.j_fit = num / den;
  double misfit = 0.0;
  for (std::size_t i = 0; i < rs.lhs.size(); ++i)
    misfit += std::norm(rs.lhs[i] - out.j_fit * rs.rhs[i]);
  out.fit_residual = std::sqrt(misfit / std::max(lhs_sq, 1e-300));
  return out;
}

cplx structure_constant_12(cplx tau, cplx eta, const TruncationPolicy& policy) {
  const cplx t1 = jacobi_theta(1, eta, tau, policy);
  const cplx t2 = jacobi_theta(2, eta, tau, policy);
  const cplx t3 = jacobi_theta(3, eta, tau, policy);
  const cplx t4 = jacobi_theta(4, eta, tau, policy);
  return (t1 * t1 * t4 * t4) / (t2 * t2 * t3 * t3);
}

namespace {

using PauliRow = std::array<cplx, 2>;
using Pauli = std::array<PauliRow, 2>;

constexpr Pauli kSigma[4] = {
    Pauli{PauliRow{cplx(1.0), cplx(0.0)}, PauliRow{cplx(0.0), cplx(1.0)}},
    Pauli{PauliRow{cplx(0.0), cplx(1.0)}, PauliRow{cplx(1.0), cplx(0.0)}},
    Pauli{PauliRow{cplx(0.0), cplx(0.0, -1.0)},
          PauliRow{cplx(0.0, 1.0), cplx(0.0)}},
    Pauli{PauliRow{cplx(1.0), cplx(0.0)}, PauliRow{cplx(0.0), cplx(-1.0)}}};

}  // namespace

std::array<cplx, 4> baxter_weights(cplx u, cplx tau, cplx eta,
                                   const TruncationPolicy& policy) {
  std::array<cplx, 4> w;
  for (int a = 0; a < 4; ++a) {
    const cplx den = jacobi_theta(a + 1, eta, tau, policy);
    if (std::abs(den) < 1e-14)
      throw PoleError("baxter_weights: theta_{a+1}(eta) vanishes", eta);
    w[a] = jacobi_theta(a + 1, u + eta, tau, policy) / den;
  }
  return w;
}

namespace {

using Mat8 = std::array<std::array<cplx, 8>, 8>;

Mat8 embed(const Mat4& r, int leg1, int leg2) {
  // place the 4x4 matrix on tensor legs (leg1, leg2) of C^2^{x3}
  Mat8 out{};
  const int spectator = 3 - leg1 - leg2;
  for (int row = 0; row < 8; ++row) {
    const int i[3] = {(row >> 2) & 1, (row >> 1) & 1, row & 1};
    for (int col = 0; col < 8; ++col) {
      const int j[3] = {(col >> 2) & 1, (col >> 1) & 1, col & 1};
      if (i[spectator] != j[spectator]) continue;
      out[row][col] = r[2 * i[leg1] + i[leg2]][2 * j[leg1] + j[leg2]];
    }
  }
  return out;
}

Mat8 mul(const Mat8& a, const Mat8& b) {
  Mat8 c{};
  for (int i = 0; i < 8; ++i)
    for (int k = 0; k < 8; ++k) {
      const cplx aik = a[i][k];
      if (aik == cplx(0.0)) continue;
      for (int j = 0; j < 8; ++j) c[i][j] += aik * b[k][j];
    }
  return c;
}

}  // namespace

Mat4 baxter_r(cplx u, cplx tau, cplx eta, const TruncationPolicy& policy) {
  const auto w = baxter_weights(u, tau, eta, policy);
  Mat4 r{};
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
            r[2 * i + k][2 * j + l] += w[a] * kSigma[a][i][j] * kSigma[a][k][l];
  return r;
}

double baxter_ybe_residual(cplx u, cplx v, cplx tau, cplx eta,
                           const TruncationPolicy& policy) {
  const Mat8 r12 = embed(baxter_r(u - v, tau, eta, policy), 0, 1);
  const Mat8 r13 = embed(baxter_r(u, tau, eta, policy), 0, 2);
  const Mat8 r23 = embed(baxter_r(v, tau, eta, policy), 1, 2);
  const Mat8 lhs = mul(mul(r12, r13), r23);
  const Mat8 rhs = mul(mul(r23, r13), r12);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      num += std::norm(lhs[i][j] - rhs[i][j]);
      den += std::norm(lhs[i][j]);
    }
  return std::sqrt(num / std::max(den, 1e-300));
}

Mat2 l_apply(cplx a, cplx b, cplx tau, cplx eta, const Fn2& phi, int slot,
             cplx z1, cplx z2, const TruncationPolicy& policy) {
  if (slot != 1 && slot != 2) throw DomainError("l_apply: slot must be 1 or 2");
  const cplx ell = ((a - b) / eta - 1.0) / 2.0;
  const SklyaninParams sp(tau, eta, ell);
  const auto w = baxter_weights(a + b, tau, eta, policy);

  Fn1 phi1 = slot == 1 ? Fn1([&phi, z2](cplx zz) { return phi(zz, z2); })
                       : Fn1([&phi, z1](cplx zz) { return phi(z1, zz); });
  const cplx at = slot == 1 ? z1 : z2;

  std::array<cplx, 4> s;
  for (int idx = 0; idx < 4; ++idx)
    s[idx] = sklyanin_apply(idx, sp, phi1, at, policy);

  Mat2 out;
  out[0][0] = w[0] * s[0] + w[3] * s[3];
  out[0][1] = w[1] * s[1] - kI * w[2] * s[2];
  out[1][0] = w[1] * s[1] + kI * w[2] * s[2];
  out[1][1] = w[0] * s[0] - w[3] * s[3];
  return out;
}

}  // namespace ehi::sklyanin
