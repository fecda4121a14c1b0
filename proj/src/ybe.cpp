#include "ehi/ybe.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "ehi/errors.hpp"
#include "ehi/report.hpp"
#include "ehi/sklyanin.hpp"
#include "ehi/summation.hpp"

namespace ehi::ybe {

namespace {

cplx expi(cplx w) { return std::exp(kTwoPiI * w); }

// One-period contour integral on midpoint nodes zeta_k = (k + 1/2)/n,
// doubled until two consecutive levels agree.  Midpoints keep zeta = 0, 1/2
// off the grid; difference-operator images carry removable 1/theta_1(2 zeta)
// spikes exactly there.
cplx period_integral(const std::function<cplx(double)>& g, double rel_tol,
                     int n_max,
                     const std::shared_ptr<bailey::EvalBudget>& budget) {
  cplx prev = 0.0;
  bool have_prev = false;
  for (int n = 16; n <= n_max; n *= 2) {
    std::vector<cplx> vals(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
      if (budget) budget->tick();
      vals[static_cast<size_t>(k)] = g((k + 0.5) / n);
    }
    const cplx cur = pairwise_sum(vals) / static_cast<double>(n);
    if (have_prev &&
        std::abs(cur - prev) <= std::max(rel_tol * std::abs(cur), 1e-30))
      return cur;
    prev = cur;
    have_prev = true;
  }
  throw NonConvergentError(
      "contour integral did not stabilize within the node cap");
}

void require_contour_separation(cplx t, cplx x_out, const char* what) {
  const double ax = std::abs(x_out);
  if (std::abs(t) * std::max(ax, 1.0 / ax) >= 1.0 - kPoleGuard)
    throw DomainError(std::string(what) +
                      ": kernel poles reach the integration contour");
}

void require_off_gamma_pole(cplx t2, const char* what) {
  if (std::abs(1.0 - t2) < kPoleGuard)
    throw DomainError(std::string(what) + ": Gamma(t^2) has a pole");
}

// Shared slot-local integral letter: integrate the dressed phi restricted to
// one slot.  `restrict` must evaluate phi with the integration variable in
// the active slot and the spectator frozen.
cplx integral_letter(const SOperatorContext& ctx, cplx t, cplx z_out,
                     const std::function<cplx(cplx)>& restricted) {
  require_contour_separation(t, expi(z_out), "integral letter");
  require_off_gamma_pole(t * t, "integral letter");
  const specfun::GammaEngine& eng = *ctx.eng;
  const cplx x_out = expi(z_out);
  auto integrand = [&](double zeta) -> cplx {
    const cplx big_x = std::polar(1.0, 2.0 * kPi * zeta);
    return eng.gamma_pm2(t, x_out, big_x) * eng.inv_gamma_pair(big_x * big_x) *
           std::exp(kI * kPi * (zeta * zeta) / ctx.eta) *
           restricted(cplx(zeta));
  };
  const cplx integral =
      period_integral(integrand, ctx.rel_tol, ctx.n_max, ctx.budget);
  return std::exp(-kI * kPi * z_out * z_out / ctx.eta) * eng.qp_p() *
         eng.qp_q() / (2.0 * eng.gamma(t * t)) * integral;
}

}  // namespace

SpectralAssignment split_spectral(cplx u, cplx ell1, cplx v, cplx ell2,
                                  cplx eta) {
  const cplx du = eta * (ell1 + 0.5);
  const cplx dv = eta * (ell2 + 0.5);
  return {u / 2.0 + du, u / 2.0 - du, v / 2.0 + dv, v / 2.0 - dv};
}

cplx s2_factor(const SOperatorContext& ctx, const SpectralAssignment& w,
               cplx z1, cplx z2) {
  const cplx m = ctx.eng->sqrt_pq() * expi(w.u2 - w.v1);
  return ctx.eng->gamma_pm2(m, expi(z1), expi(z2));
}

Fn2 apply_s2(const SOperatorContext& ctx, const SpectralAssignment& w,
             Fn2 phi) {
  return [ctx, w, phi = std::move(phi)](cplx z1, cplx z2) {
    return s2_factor(ctx, w, z1, z2) * phi(z1, z2);
  };
}

Fn2 apply_s1(const SOperatorContext& ctx, const SpectralAssignment& w,
             Fn2 phi) {
  const cplx t = expi(w.u2 - w.u1);
  return [ctx, t, phi = std::move(phi)](cplx z1, cplx z2) {
    return integral_letter(ctx, t, z1,
                           [&](cplx zeta) { return phi(zeta, z2); });
  };
}

Fn2 apply_s3(const SOperatorContext& ctx, const SpectralAssignment& w,
             Fn2 phi) {
  const cplx t = expi(w.v2 - w.v1);
  return [ctx, t, phi = std::move(phi)](cplx z1, cplx z2) {
    return integral_letter(ctx, t, z2,
                           [&](cplx zeta) { return phi(z1, zeta); });
  };
}

Fn2 r12_braid(const SOperatorContext& ctx, const SpectralAssignment& w,
              Fn2 phi) {
  const SpectralAssignment w1 = w.s2();
  const SpectralAssignment w2 = w1.s3();
  const SpectralAssignment w3 = w2.s1();
  Fn2 g = apply_s2(ctx, w, std::move(phi));
  g = apply_s3(ctx, w1, std::move(g));
  g = apply_s1(ctx, w2, std::move(g));
  return apply_s2(ctx, w3, std::move(g));
}

Fn2 gaussian_wrap(cplx eta, std::function<cplx(cplx, cplx)> f) {
  return [eta, f = std::move(f)](cplx z1, cplx z2) {
    return std::exp(-kI * kPi * (z1 * z1 + z2 * z2) / eta) *
           f(expi(z1), expi(z2));
  };
}

double coxeter_s1s3_residual(const SOperatorContext& ctx,
                             const SpectralAssignment& w, const Fn2& phi,
                             std::span<const std::array<cplx, 2>> probes) {
  const Fn2 lhs = apply_s1(ctx, w.s3(), apply_s3(ctx, w, phi));
  const Fn2 rhs = apply_s3(ctx, w.s1(), apply_s1(ctx, w, phi));
  double worst = 0.0;
  for (const auto& pr : probes)
    worst = std::max(worst,
                     relative_error(lhs(pr[0], pr[1]), rhs(pr[0], pr[1])));
  return worst;
}

double coxeter_cubic_residual(const SOperatorContext& ctx,
                              const SpectralAssignment& w, const Fn2& phi,
                              std::span<const std::array<cplx, 2>> probes) {
  const Fn2 lhs = apply_s1(ctx, w.s1().s2(),
                           apply_s2(ctx, w.s1(), apply_s1(ctx, w, phi)));
  const Fn2 rhs = apply_s2(ctx, w.s2().s1(),
                           apply_s1(ctx, w.s2(), apply_s2(ctx, w, phi)));
  double worst = 0.0;
  for (const auto& pr : probes)
    worst = std::max(worst,
                     relative_error(lhs(pr[0], pr[1]), rhs(pr[0], pr[1])));
  return worst;
}

cplx r_kernel(const SOperatorContext& ctx, const SpectralAssignment& w,
              cplx x1, cplx x2, cplx x, cplx y) {
  if (ctx.budget) ctx.budget->tick();
  const specfun::GammaEngine& eng = *ctx.eng;
  const cplx t_b = expi(w.v1 - w.u1);
  const cplx t_a = expi(w.v2 - w.u2);
  const cplx m_out = eng.sqrt_pq() * expi(w.u1 - w.v2);
  const cplx m_in = eng.sqrt_pq() * expi(w.u2 - w.v1);
  require_contour_separation(t_b, x2, "integral kernel");
  require_contour_separation(t_a, x1, "integral kernel");
  require_contour_separation(m_in, 1.0, "integral kernel");
  require_off_gamma_pole(t_b * t_b, "integral kernel");
  require_off_gamma_pole(t_a * t_a, "integral kernel");
  const cplx four_pi_i = 4.0 * kPi * kI;
  const cplx pref = eng.qp_p() * eng.qp_q();
  return pref * pref /
         (four_pi_i * four_pi_i * eng.gamma(t_b * t_b) *
          eng.gamma(t_a * t_a)) *
         eng.gamma_pm2(m_out, x1, x2) * eng.gamma_pm2(t_b, x2, x) *
         eng.gamma_pm2(t_a, x1, y) * eng.inv_gamma_pair(x * x) *
         eng.inv_gamma_pair(y * y) * eng.gamma_pm2(m_in, x, y);
}

quadrature::QuadratureResult r_apply(const SOperatorContext& ctx,
                                     const SpectralAssignment& w,
                                     const std::function<cplx(cplx, cplx)>& f,
                                     cplx x1, cplx x2) {
  const specfun::GammaEngine& eng = *ctx.eng;
  const cplx t_b = expi(w.v1 - w.u1);
  const cplx t_a = expi(w.v2 - w.u2);
  const cplx m_out = eng.sqrt_pq() * expi(w.u1 - w.v2);
  const cplx m_in = eng.sqrt_pq() * expi(w.u2 - w.v1);
  require_contour_separation(t_b, x2, "integral kernel");
  require_contour_separation(t_a, x1, "integral kernel");
  require_contour_separation(m_in, 1.0, "integral kernel");
  require_off_gamma_pole(t_b * t_b, "integral kernel");
  require_off_gamma_pole(t_a * t_a, "integral kernel");
  auto integrand = [&](cplx x, cplx y) -> cplx {
    if (ctx.budget) ctx.budget->tick();
    return eng.gamma_pm2(t_b, x2, x) * eng.gamma_pm2(t_a, x1, y) *
           eng.inv_gamma_pair(x * x) * eng.inv_gamma_pair(y * y) *
           eng.gamma_pm2(m_in, x, y) * f(x, y);
  };
  quadrature::QuadratureResult res = quadrature::circle_integrate_2d_adaptive(
      integrand, ctx.rel_tol, ctx.n_max);
  if (!res.converged)
    throw NonConvergentError(
        "kernel transform did not stabilize within the node cap");
  const cplx four_pi_i = 4.0 * kPi * kI;
  const cplx pref = eng.qp_p() * eng.qp_q();
  const cplx norm = pref * pref /
                    (four_pi_i * four_pi_i * eng.gamma(t_b * t_b) *
                     eng.gamma(t_a * t_a)) *
                    eng.gamma_pm2(m_out, x1, x2);
  res.value *= norm;
  res.err_estimate *= std::abs(norm);
  return res;
}

namespace {

// Theta coefficients of the four difference generators at one point:
// generator a maps phi to pre[a]/den * (up[a] phi(z+eta) - dn[a] phi(z-eta)).
struct GeneratorRow {
  cplx den;
  std::array<cplx, 4> pre, up, dn;
};

GeneratorRow generator_row(cplx tau, cplx eta, cplx ell, cplx z,
                           const TruncationPolicy& policy) {
  GeneratorRow row;
  row.den = specfun::jacobi_theta(1, 2.0 * z, tau, policy);
  if (std::abs(row.den) < 1e-12)
    throw PoleError("difference generator: theta_1(2z) vanishes", z);
  const cplx g = 2.0 * eta * ell;
  for (int a = 0; a < 4; ++a) {
    row.pre[a] = (a == 2 ? kI : cplx(1.0)) *
                 specfun::jacobi_theta(a + 1, eta, tau, policy);
    row.up[a] = specfun::jacobi_theta(a + 1, 2.0 * z - g, tau, policy);
    row.dn[a] = specfun::jacobi_theta(a + 1, -2.0 * z - g, tau, policy);
  }
  return row;
}

cplx gen_apply(const GeneratorRow& row, int a, cplx plus, cplx minus) {
  return row.pre[a] / row.den * (row.up[a] * plus - row.dn[a] * minus);
}

// Entry (i, k) of the operator-valued matrix from spectral weights and the
// four generator values.
cplx matrix_entry(const std::array<cplx, 4>& wgt, const std::array<cplx, 4>& s,
                  int i, int k) {
  if (i == 0 && k == 0) return wgt[0] * s[0] + wgt[3] * s[3];
  if (i == 0 && k == 1) return wgt[1] * s[1] - kI * wgt[2] * s[2];
  if (i == 1 && k == 0) return wgt[1] * s[1] + kI * wgt[2] * s[2];
  return wgt[0] * s[0] - wgt[3] * s[3];
}

// (L1(a1,b1) sigma3 L2(a2,b2))_{ij} at (z1, z2), sourcing the four shifted
// values of the operand from `corner(sgn1, sgn2)` = phi(z1 + sgn1 eta,
// z2 + sgn2 eta).  Sharing the corners lets one evaluation stand in for both
// the direct and the memoized paths.
cplx sandwich_from_corners(int i, int j, cplx a1, cplx b1, cplx a2, cplx b2,
                           cplx tau, cplx eta,
                           const std::function<cplx(int, int)>& corner,
                           cplx z1, cplx z2, const TruncationPolicy& policy) {
  if (i < 0 || i > 1 || j < 0 || j > 1)
    throw DomainError("sandwich entry: index out of range");
  const cplx ell2 = ((a2 - b2) / eta - 1.0) / 2.0;
  const auto wgt1 = sklyanin::baxter_weights(a1 + b1, tau, eta, policy);
  const auto wgt2 = sklyanin::baxter_weights(a2 + b2, tau, eta, policy);
  const GeneratorRow row2 = generator_row(tau, eta, ell2, z2, policy);
  // slot-2 column j of L2 phi at the two slot-1 shifted points
  std::array<cplx, 2> h0, h1;
  for (int s = 0; s < 2; ++s) {
    const int sgn1 = s == 0 ? 1 : -1;
    const cplx pp = corner(sgn1, +1);
    const cplx pm = corner(sgn1, -1);
    std::array<cplx, 4> sv;
    for (int a = 0; a < 4; ++a) sv[a] = gen_apply(row2, a, pp, pm);
    h0[static_cast<size_t>(s)] = matrix_entry(wgt2, sv, 0, j);
    h1[static_cast<size_t>(s)] = matrix_entry(wgt2, sv, 1, j);
  }
  const cplx ell1 = ((a1 - b1) / eta - 1.0) / 2.0;
  const GeneratorRow row1 = generator_row(tau, eta, ell1, z1, policy);
  std::array<cplx, 4> s_h0, s_h1;
  for (int a = 0; a < 4; ++a) {
    s_h0[static_cast<size_t>(a)] = gen_apply(row1, a, h0[0], h0[1]);
    s_h1[static_cast<size_t>(a)] = gen_apply(row1, a, h1[0], h1[1]);
  }
  return matrix_entry(wgt1, s_h0, i, 0) - matrix_entry(wgt1, s_h1, i, 1);
}

}  // namespace

cplx l_sandwich_entry(int i, int j, cplx a1, cplx b1, cplx a2, cplx b2,
                      cplx tau, cplx eta, const Fn2& phi, cplx z1, cplx z2) {
  const TruncationPolicy policy{};
  auto corner = [&](int sgn1, int sgn2) {
    return phi(z1 + static_cast<double>(sgn1) * eta,
               z2 + static_cast<double>(sgn2) * eta);
  };
  return sandwich_from_corners(i, j, a1, b1, a2, b2, tau, eta, corner, z1, z2,
                               policy);
}

double rll_residual(const SOperatorContext& ctx, cplx tau, cplx u, cplx v,
                    cplx ell1, cplx ell2, const Fn2& phi,
                    std::span<const std::array<cplx, 2>> probes) {
  const cplx eta = ctx.eta;
  if (std::abs(std::exp(kTwoPiI * tau) - ctx.eng->p()) > 1e-10 ||
      std::abs(std::exp(2.0 * kTwoPiI * eta) - ctx.eng->q()) > 1e-10)
    throw DomainError(
        "spectral exchange check: engine nomes do not match (tau, eta)");
  const SpectralAssignment asg = split_spectral(u, ell1, v, ell2, eta);
  const Fn2 rphi = r12_braid(ctx, asg, phi);
  const TruncationPolicy policy{};
  double num = 0.0, den = 0.0;
  for (const auto& pr : probes) {
    const cplx z1 = pr[0], z2 = pr[1];
    // kernel transform of phi at the four shifted corners, shared by every
    // matrix entry on the swapped-parameter side
    std::array<std::array<cplx, 2>, 2> grid;
    for (int s1 = 0; s1 < 2; ++s1)
      for (int s2 = 0; s2 < 2; ++s2) {
        const double g1 = s1 == 0 ? 1.0 : -1.0;
        const double g2 = s2 == 0 ? 1.0 : -1.0;
        grid[static_cast<size_t>(s1)][static_cast<size_t>(s2)] =
            rphi(z1 + g1 * eta, z2 + g2 * eta);
      }
    auto grid_corner = [&](int sgn1, int sgn2) {
      return grid[sgn1 > 0 ? 0 : 1][sgn2 > 0 ? 0 : 1];
    };
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const Fn2 gij = [&, i, j](cplx zz1, cplx zz2) {
          return l_sandwich_entry(i, j, asg.u1, asg.u2, asg.v1, asg.v2, tau,
                                  eta, phi, zz1, zz2);
        };
        const cplx lhs = r12_braid(ctx, asg, gij)(z1, z2);
        const cplx rhs =
            sandwich_from_corners(i, j, asg.v1, asg.v2, asg.u1, asg.u2, tau,
                                  eta, grid_corner, z1, z2, policy);
        num = std::max(num, std::abs(lhs - rhs));
        den = std::max(den, std::max(std::abs(lhs), std::abs(rhs)));
      }
  }
  return num / std::max(den, 1e-300);
}

}  // namespace ehi::ybe
