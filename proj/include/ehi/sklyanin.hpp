#pragma once

#include <array>
#include <functional>
#include <span>

#include "ehi/types.hpp"

namespace ehi::sklyanin {

using Fn1 = std::function<cplx(cplx)>;
using Fn2 = std::function<cplx(cplx, cplx)>;
using Mat2 = std::array<std::array<cplx, 2>, 2>;
using Mat4 = std::array<std::array<cplx, 4>, 4>;

// Parameter bundle for the theta-coefficient difference operators: additive
// half-period ratio tau (Im tau > 0), step eta, spin ell.
struct SklyaninParams {
  cplx tau;
  cplx eta;
  cplx ell;

  SklyaninParams(cplx tau_in, cplx eta_in, cplx ell_in)
      : tau(tau_in), eta(eta_in), ell(ell_in) {
    if (!(tau.imag() > 0.0))
      throw DomainError("SklyaninParams: Im(tau) must be > 0");
    if (eta == cplx(0.0))
      throw DomainError("SklyaninParams: eta must be nonzero");
  }

  // Total step between the two shifted theta prefactors.
  cplx g() const { return eta * (2.0 * ell + 1.0); }
};

// [S^a Phi](z) = i^{delta_{a,2}} theta_{a+1}(eta) / theta_1(2z) *
//   [ theta_{a+1}(2z - 2 eta ell) Phi(z + eta)
//   - theta_{a+1}(-2z - 2 eta ell) Phi(z - eta) ],   a = 0..3,
// all thetas at half-period ratio tau.  On constants at ell = 0, S^0 acts as
// multiplication by 2 theta_1(eta).
cplx sklyanin_apply(int a, const SklyaninParams& sp, const Fn1& phi, cplx z,
                    const TruncationPolicy& policy = {});

// Largest normalized residual over {fns} x {probes} of the quadratic
// relation  S^al S^be - S^be S^al = i (S^0 S^ga + S^ga S^0)  with
// (al, be, ga) the cyclic permutation of (1,2,3) starting at `alpha`.
double structure_relation_residual(int alpha, const SklyaninParams& sp,
                                   std::span<const Fn1> fns,
                                   std::span<const cplx> probes,
                                   const TruncationPolicy& policy = {});

// Least-squares fit of the constant J in
//   S^0 S^al - S^al S^0 = i J (S^be S^ga + S^ga S^be)
// over the sample set.  fit_residual is the rms misfit at the optimum,
// normalized by the rms of the left side.
struct StructureFit {
  cplx j_fit;
  double fit_residual;
};
StructureFit structure_constant_fit(int alpha, const SklyaninParams& sp,
                                    std::span<const Fn1> fns,
                                    std::span<const cplx> probes,
                                    const TruncationPolicy& policy = {});

// Closed form of the alpha = 3 structure constant:
// theta_1^2(eta) theta_4^2(eta) / (theta_2^2(eta) theta_3^2(eta)).
cplx structure_constant_12(cplx tau, cplx eta,
                           const TruncationPolicy& policy = {});

// w_a(u) = theta_{a+1}(u + eta) / theta_{a+1}(eta), a = 0..3.
std::array<cplx, 4> baxter_weights(cplx u, cplx tau, cplx eta,
                                   const TruncationPolicy& policy = {});

// R(u) = sum_a w_a(u) sigma_a (x) sigma_a; R(0) = 2 * swap.
Mat4 baxter_r(cplx u, cplx tau, cplx eta, const TruncationPolicy& policy = {});

// Frobenius-normalized residual of R12(u-v) R13(u) R23(v) =
// R23(v) R13(u) R12(u-v) on the triple tensor product.
double baxter_ybe_residual(cplx u, cplx v, cplx tau, cplx eta,
                           const TruncationPolicy& policy = {});

// 2x2 value matrix of L(a,b) = sum_a w_a(a+b) sigma_a S^a applied to one
// slot of a two-variable function; the spin is read off from
// a - b = eta (2 ell + 1).
Mat2 l_apply(cplx a, cplx b, cplx tau, cplx eta, const Fn2& phi, int slot,
             cplx z1, cplx z2, const TruncationPolicy& policy = {});

}  // namespace ehi::sklyanin
