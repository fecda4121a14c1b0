#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ehi/bailey.hpp"
#include "ehi/identities.hpp"
#include "ehi/quadrature.hpp"
#include "ehi/report.hpp"
#include "ehi/sampling.hpp"
#include "ehi/sci.hpp"
#include "ehi/sklyanin.hpp"
#include "ehi/specfun.hpp"
#include "ehi/types.hpp"
#include "ehi/ybe.hpp"

namespace {

using namespace ehi;

// ---------------------------------------------------------------------------
// plumbing

cplx parse_cplx(const std::string& s) {
  try {
    const auto comma = s.find(',');
    size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(s, &used);
      if (used != s.size()) throw DomainError("");
      return cplx(re, 0.0);
    }
    const std::string re_part = s.substr(0, comma), im_part = s.substr(comma + 1);
    const double re = std::stod(re_part, &used);
    if (used != re_part.size()) throw DomainError("");
    const double im = std::stod(im_part, &used);
    if (used != im_part.size()) throw DomainError("");
    return cplx(re, im);
  } catch (const std::exception&) {
    throw DomainError("expected a number 're' or a pair 're,im', got '" + s +
                      "'");
  }
}

void print_value(cplx v) {
  if (std::abs(v.imag()) <= 1e-14 * std::max(1.0, std::abs(v.real())))
    std::printf("%.17g\n", v.real());
  else
    std::printf("%.17g%+.17gi\n", v.real(), v.imag());
}

struct OutputOptions {
  std::string format = "json";
  std::string path;  // empty = stdout
};

void write_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open output file: " + path);
  out << text;
}

void emit_reports(const std::vector<VerificationReport>& reports,
                  const OutputOptions& oo) {
  std::ostringstream os;
  if (oo.format == "csv") {
    os << VerificationReport::csv_header() << "\n";
    for (const auto& rep : reports) os << rep.csv_row() << "\n";
  } else {
    for (const auto& rep : reports) os << rep.to_json().dump() << "\n";
  }
  write_text(os.str(), oo.path);
}

// Decorrelated per-case stream: deterministic in (seed, index) and
// independent of scheduling.
Rng case_rng(std::uint64_t seed, int index) {
  return Rng(seed ^ (0x9e3779b97f4a7c15ULL *
                     static_cast<std::uint64_t>(index + 1)));
}

// ---------------------------------------------------------------------------
// per-identity verification cases

cplx laurent_probe_fn(cplx z) {
  return 1.0 + 0.3 * (z + 1.0 / z) +
         cplx(0.0, 0.1) * (z * z - 1.0 / (z * z));
}

// Shared nome chamber for the braid-word checks: p = e^{2 pi i tau},
// q = e^{4 pi i eta}.
const cplx kBraidTau(0.1, 0.38);
const cplx kBraidEta(0.05, 0.03);

specfun::GammaEngine braid_engine() {
  return specfun::GammaEngine(NomePair{std::exp(kTwoPiI * kBraidTau),
                                       std::exp(2.0 * kTwoPiI * kBraidEta)});
}

VerificationReport coxeter_case(Rng& rng, double tol) {
  const specfun::GammaEngine eng = braid_engine();
  ybe::SOperatorContext ctx{&eng, kBraidEta,
                            std::clamp(tol / 100.0, 1e-10, 1e-8), 1 << 10,
                            std::make_shared<bailey::EvalBudget>()};
  // balanced chamber: integral-letter parameters and dressed multipliers all
  // stay well inside the unit disk yet contour-separated
  const cplx b(rng.uniform(0.15, 0.28), -rng.uniform(0.06, 0.085));
  const cplx a(-rng.uniform(0.02, 0.10), -rng.uniform(0.06, 0.085));
  const cplx u2(rng.uniform(-0.05, 0.10), rng.uniform(-0.02, 0.05));
  const cplx v2(rng.uniform(-0.02, 0.06), rng.uniform(0.02, 0.07));
  const ybe::SpectralAssignment asg{u2 + b, u2, u2 - a, v2};
  const ybe::Fn2 phi = ybe::gaussian_wrap(kBraidEta, [](cplx x, cplx) {
    return 1.0 + 0.6 * (x + 1.0 / x) + 0.15 * (x * x + 1.0 / (x * x));
  });
  const std::array<std::array<cplx, 2>, 2> probes = {
      {{cplx(rng.uniform(0.05, 0.45)), cplx(rng.uniform(0.05, 0.45))},
       {cplx(rng.uniform(0.05, 0.45)), cplx(rng.uniform(0.05, 0.45))}}};

  Stopwatch sw;
  const double res = ybe::coxeter_cubic_residual(ctx, asg, phi, probes);
  VerificationReport rep;
  rep.identity_id = "coxeter_braid";
  rep.params["tuple"] = {json_cplx(asg.u1), json_cplx(asg.u2),
                         json_cplx(asg.v1), json_cplx(asg.v2)};
  rep.params["probes"] = static_cast<int>(probes.size());
  rep.n_used = ctx.budget->used;
  rep.finish_residual(res, tol, cplx(res), cplx(1.0));
  rep.elapsed_ms = sw.ms();
  return rep;
}

VerificationReport rll_case(Rng& rng, double tol) {
  const specfun::GammaEngine eng = braid_engine();
  ybe::SOperatorContext ctx{&eng, kBraidEta, 1e-7, 1 << 10,
                            std::make_shared<bailey::EvalBudget>()};
  const cplx u(rng.uniform(0.10, 0.30), -rng.uniform(0.04, 0.08));
  const cplx v(rng.uniform(-0.20, 0.00), rng.uniform(0.06, 0.12));
  const ybe::Fn2 phi = ybe::gaussian_wrap(kBraidEta, [](cplx x, cplx y) {
    const cplx cx = x + 1.0 / x, cy = y + 1.0 / y;
    return 1.0 + 0.5 * cx + 0.3 * cy + 0.2 * cx * cy;
  });
  const std::array<std::array<cplx, 2>, 1> probes = {
      {{cplx(rng.uniform(0.05, 0.45)), cplx(rng.uniform(0.05, 0.45))}}};

  Stopwatch sw;
  const double res =
      ybe::rll_residual(ctx, kBraidTau, u, v, 0.0, 0.0, phi, probes);
  VerificationReport rep;
  rep.identity_id = "rll_exchange";
  rep.params["u"] = json_cplx(u);
  rep.params["v"] = json_cplx(v);
  rep.params["spins"] = {0.0, 0.0};
  rep.n_used = ctx.budget->used;
  rep.finish_residual(res, tol, cplx(res), cplx(1.0));
  rep.elapsed_ms = sw.ms();
  return rep;
}

VerificationReport sklyanin_case(Rng& rng, double tol) {
  const cplx tau(rng.uniform(-0.2, 0.2), rng.uniform(0.33, 0.48));
  const cplx eta(rng.uniform(0.10, 0.25), rng.uniform(0.04, 0.12));
  const cplx ell = 0.5 * (1.0 + std::floor(rng.uniform01() * 3.0));
  const sklyanin::SklyaninParams sp(tau, eta, ell);

  const std::vector<sklyanin::Fn1> fns = {
      [](cplx) { return cplx(1.0); },
      [](cplx z) { return std::cos(2.0 * kPi * z); },
      [](cplx z) {
        return std::exp(kTwoPiI * z) + 0.5 * std::exp(-kTwoPiI * z) + 0.1;
      },
      [](cplx z) {
        return std::sin(2.0 * kPi * z) + 0.2 * std::cos(4.0 * kPi * z);
      },
  };
  const std::vector<cplx> probes = {cplx(0.23, 0.11), cplx(-0.41, 0.06),
                                    cplx(0.17, -0.23), cplx(0.08, 0.31),
                                    cplx(-0.29, -0.14)};

  Stopwatch sw;
  double worst = 0.0;
  for (int alpha = 1; alpha <= 3; ++alpha)
    worst = std::max(
        worst, sklyanin::structure_relation_residual(alpha, sp, fns, probes));
  const sklyanin::StructureFit fit =
      sklyanin::structure_constant_fit(3, sp, fns, probes);
  const cplx closed = sklyanin::structure_constant_12(tau, eta);
  worst = std::max(worst, fit.fit_residual);
  worst = std::max(worst,
                   std::abs(fit.j_fit - closed) / std::max(std::abs(closed),
                                                           1e-300));

  VerificationReport rep;
  rep.identity_id = "sklyanin_structure";
  rep.params["tau"] = json_cplx(tau);
  rep.params["eta"] = json_cplx(eta);
  rep.params["ell"] = json_cplx(ell);
  rep.n_used = static_cast<long>(fns.size() * probes.size());
  rep.finish_residual(worst, tol, cplx(worst), cplx(1.0));
  rep.elapsed_ms = sw.ms();
  return rep;
}

VerificationReport baxter_case(Rng& rng, double tol) {
  const cplx tau(rng.uniform(-0.2, 0.2), rng.uniform(0.33, 0.48));
  const cplx eta(rng.uniform(0.05, 0.25), rng.uniform(-0.08, 0.08));
  const cplx u(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4));
  const cplx v(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4));

  Stopwatch sw;
  const double res = sklyanin::baxter_ybe_residual(u, v, tau, eta);
  VerificationReport rep;
  rep.identity_id = "baxter_ybe";
  rep.params["tau"] = json_cplx(tau);
  rep.params["eta"] = json_cplx(eta);
  rep.params["u"] = json_cplx(u);
  rep.params["v"] = json_cplx(v);
  rep.n_used = 1;
  rep.finish_residual(res, tol, cplx(res), cplx(1.0));
  rep.elapsed_ms = sw.ms();
  return rep;
}

VerificationReport run_verify_case(const std::string& id, std::uint64_t seed,
                                   int index, double tol) {
  Rng rng = case_rng(seed, index);
  identities::VerifyOptions opts;
  opts.tol = tol;
  VerificationReport rep;

  if (id == "beta") {
    const NomePair nomes = sampling::random_nomes(rng);
    const auto t = sampling::beta_params(rng, nomes);
    rep = identities::verify_elliptic_beta(t, nomes, opts);
  } else if (id == "e7") {
    const NomePair nomes = sampling::random_nomes(rng);
    const auto t = sampling::v_params(rng, nomes);
    rep = identities::verify_v_reflection(t, nomes, opts);
  } else if (id == "ehe") {
    const NomePair nomes = sampling::difference_equation_nomes(rng);
    const auto t = sampling::difference_equation_params(rng, nomes);
    rep = identities::verify_v_difference_equation(t, nomes, opts);
  } else if (id == "selberg") {
    const int rank = 1 + (index % 2);
    const NomePair nomes = sampling::random_nomes(rng);
    const auto sp = sampling::selberg_params(rng, nomes, rank);
    // the tensor-product contour rule caps the rank-2 accuracy
    opts.tol = rank == 1 ? tol : std::max(tol, 1e-6);
    rep = identities::verify_selberg(rank, sp.t, sp.tm, nomes, opts);
  } else if (id == "str-functional") {
    const NomePair nomes = sampling::random_nomes(rng, 0.08, 0.2, true);
    const auto sp = sampling::str_functional_params(rng, nomes);
    rep = identities::verify_str_functional(sp, nomes, opts);
  } else if (id == "str-operator") {
    const NomePair nomes = sampling::random_nomes(rng, 0.06, 0.11);
    const specfun::GammaEngine eng(nomes);
    bailey::OperatorContext ctx;
    ctx.eng = &eng;
    ctx.rel_tol = std::min(1e-9, tol / 10.0);
    const cplx s = std::polar(0.55, rng.angle());
    const cplx t = std::polar(0.60, rng.angle());
    const cplx u = rng.unit_circle();
    const cplx probes[] = {rng.unit_circle(), rng.unit_circle()};
    rep = bailey::star_triangle_residual(s, t, u, laurent_probe_fn, probes,
                                         ctx, tol);
  } else if (id == "bailey") {
    const NomePair nomes = sampling::random_nomes(rng, 0.06, 0.11);
    const specfun::GammaEngine eng(nomes);
    bailey::OperatorContext ctx;
    ctx.eng = &eng;
    ctx.rel_tol = std::min(1e-9, tol / 10.0);
    const cplx s = std::polar(0.50, rng.angle());
    const cplx t = std::polar(0.62, rng.angle());
    const cplx u = rng.unit_circle();
    const cplx probes[] = {rng.unit_circle()};
    rep = bailey::bailey_lemma_check(laurent_probe_fn, s, t, u, probes, ctx,
                                     tol);
  } else if (id == "coxeter") {
    rep = coxeter_case(rng, tol);
  } else if (id == "sklyanin") {
    rep = sklyanin_case(rng, tol);
  } else if (id == "baxter-ybe") {
    rep = baxter_case(rng, tol);
  } else if (id == "rll") {
    rep = rll_case(rng, tol);
  } else {
    throw DomainError("unknown verification id: " + id);
  }

  rep.params["seed"] = seed;
  rep.params["case"] = index;
  return rep;
}

struct CaseSpec {
  std::string id;
  std::uint64_t seed;
  int index;
  double tol;
};

std::vector<VerificationReport> run_case_pool(const std::vector<CaseSpec>& specs,
                                              int jobs) {
  std::vector<VerificationReport> out(specs.size());
  std::vector<std::exception_ptr> failures(specs.size());
  std::atomic<size_t> cursor{0};
  const auto worker = [&] {
    for (size_t i = cursor++; i < specs.size(); i = cursor++) {
      try {
        out[i] = run_verify_case(specs[i].id, specs[i].seed, specs[i].index,
                                 specs[i].tol);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const int n_threads =
      std::max(1, std::min<int>(jobs, static_cast<int>(specs.size())));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(n_threads) - 1);
  for (int t = 0; t + 1 < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& failure : failures)
    if (failure) std::rethrow_exception(failure);
  return out;
}

const std::vector<std::string> kVerifyIds = {
    "beta",     "e7",      "ehe",      "selberg",    "str-functional",
    "str-operator", "bailey", "coxeter", "sklyanin", "baxter-ybe", "rll"};

// cases per identity when running the whole suite
int suite_cases(const std::string& id) {
  if (id == "beta" || id == "str-functional") return 3;
  if (id == "baxter-ybe") return 5;
  if (id == "coxeter" || id == "rll") return 1;
  return 2;
}

// ---------------------------------------------------------------------------
// index commands

sci::Fugacities seeded_fugacities(std::uint64_t seed) {
  Rng rng = case_rng(seed, 0);
  sci::Fugacities y;
  cplx prod = 1.0;
  for (int k = 0; k < 5; ++k) {
    y[k] = rng.unit_circle();
    prod *= y[k];
  }
  y[5] = 1.0 / prod;
  return y;
}

void emit_index_series(const series::GradedSeries& s, const OutputOptions& oo) {
  std::ostringstream os;
  if (oo.format == "csv") {
    os << "a,b,z,coeff_re,coeff_im\n";
    for (const auto& [key, gl] : s.terms())
      for (const auto& [zp, c] : gl) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%.17g,%.17g\n", key.a, key.b,
                      zp, c.real(), c.imag());
        os << buf;
      }
  } else {
    nlohmann::ordered_json j;
    j["lattice"] = s.lattice();
    j["max_units"] = s.max_units();
    j["gauge_free"] = s.gauge_free();
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [key, gl] : s.terms())
      for (const auto& [zp, c] : gl) {
        nlohmann::ordered_json term;
        term["a"] = key.a;
        term["b"] = key.b;
        term["z"] = zp;
        term["coeff"] = json_cplx(c);
        terms.push_back(term);
      }
    j["terms"] = terms;
    os << j.dump() << "\n";
  }
  write_text(os.str(), oo.path);
}

// ---------------------------------------------------------------------------
// quadrature convergence table

// Periodic trapezoid rule on 1/(1 - 2r cos u + r^2), r = 3/4; the geometric
// series gives the exact value 2 pi / (1 - r^2) = 32 pi / 7.
std::vector<std::pair<int, double>> convergence_rows() {
  const double r = 0.75;
  const double exact = 32.0 * kPi / 7.0;
  const auto g = [r](double u) {
    return cplx(1.0 / (1.0 - 2.0 * r * std::cos(u) + r * r), 0.0);
  };
  std::vector<std::pair<int, double>> rows;
  for (int n = 16; n <= 1024; n *= 2) {
    const cplx val = quadrature::interval_integrate(g, n);
    rows.emplace_back(n, std::abs(val - exact) / exact);
  }
  return rows;
}

void emit_convergence(const OutputOptions& oo) {
  const auto rows = convergence_rows();
  std::ostringstream os;
  if (oo.format == "csv") {
    os << "n,rel_err\n";
    for (const auto& [n, err] : rows) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%d,%.17g\n", n, err);
      os << buf;
    }
  } else {
    for (const auto& [n, err] : rows) {
      nlohmann::ordered_json j;
      j["n"] = n;
      j["rel_err"] = err;
      os << j.dump() << "\n";
    }
  }
  write_text(os.str(), oo.path);
}

bool all_passed(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const VerificationReport& r) { return r.passed; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elliptic hypergeometric identity workbench"};
  app.require_subcommand(1);

  // ---- eval ----
  auto* eval = app.add_subcommand("eval", "evaluate one special value");
  eval->require_subcommand(1);
  std::string z_str = "0", p_str = "0.1", q_str = "0.1", u_str = "0",
              tau_str = "0,0.4";
  int jtheta_index = 1;
  auto* eval_gamma =
      eval->add_subcommand("gamma", "double-product gamma value");
  eval_gamma->add_option("--z", z_str, "argument (re or re,im)")->required();
  eval_gamma->add_option("--p", p_str, "first nome")->required();
  eval_gamma->add_option("--q", q_str, "second nome")->required();
  auto* eval_theta = eval->add_subcommand("theta", "multiplicative theta");
  eval_theta->add_option("--z", z_str, "argument")->required();
  eval_theta->add_option("--p", p_str, "nome")->required();
  auto* eval_jtheta =
      eval->add_subcommand("jtheta", "additive-variable theta_a(u|tau)");
  eval_jtheta->add_option("--a", jtheta_index, "index 1..4")->required();
  eval_jtheta->add_option("--u", u_str, "argument")->required();
  eval_jtheta->add_option("--tau", tau_str, "half-period ratio (re,im)")
      ->required();
  std::vector<std::string> v_params_str;
  auto* eval_v = eval->add_subcommand(
      "v", "eight-parameter contour integral (balanced product (pq)^2)");
  eval_v->add_option("--t", v_params_str, "parameter (repeat 8 times)")
      ->expected(8);
  eval_v->add_option("--p", p_str, "first nome")->required();
  eval_v->add_option("--q", q_str, "second nome")->required();
  std::string k_u1 = "0", k_u2 = "0", k_v1 = "0", k_v2 = "0", k_x1 = "1",
              k_x2 = "1", k_x = "1", k_y = "1", k_tau = "0.1,0.38",
              k_eta = "0.05,0.03";
  auto* eval_kernel =
      eval->add_subcommand("kernel", "closed-form braid-word kernel");
  eval_kernel->add_option("--tau", k_tau, "p = e^{2 pi i tau}");
  eval_kernel->add_option("--eta", k_eta, "q = e^{4 pi i eta}");
  eval_kernel->add_option("--u1", k_u1)->required();
  eval_kernel->add_option("--u2", k_u2)->required();
  eval_kernel->add_option("--v1", k_v1)->required();
  eval_kernel->add_option("--v2", k_v2)->required();
  eval_kernel->add_option("--x1", k_x1, "first output point (multiplicative)");
  eval_kernel->add_option("--x2", k_x2, "second output point");
  eval_kernel->add_option("--x", k_x, "first contour point");
  eval_kernel->add_option("--y", k_y, "second contour point");

  // ---- verify ----
  std::string verify_id;
  std::uint64_t seed = 1;
  int cases = 3;
  double tol = 1e-9;
  OutputOptions oo;
  int jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* verify =
      app.add_subcommand("verify", "verify an identity on sampled parameters");
  verify->add_option("id", verify_id, "identity family")
      ->required()
      ->check(CLI::IsMember(kVerifyIds));
  verify->add_option("--seed", seed, "RNG seed (recorded in reports)");
  verify->add_option("--cases", cases, "number of sampled parameter sets")
      ->check(CLI::PositiveNumber);
  verify->add_option("--tol", tol, "pass tolerance")
      ->check(CLI::PositiveNumber);
  verify->add_option("--format", oo.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", oo.path, "write reports to a file");
  verify->add_option("--jobs", jobs, "max concurrent cases")
      ->check(CLI::PositiveNumber);

  // ---- index ----
  auto* index = app.add_subcommand("index", "graded character-series checks");
  index->require_subcommand(1);
  std::string theory_path;
  int order = 2, lattice = 0;
  double index_tol = 1e-12, cross_tol = 1.0, p0 = 0.05, q0 = 0.05;
  auto* index_compute = index->add_subcommand(
      "compute", "expand the index series of a theory description");
  index_compute->add_option("--theory", theory_path, "theory JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  index_compute->add_option("--order", order,
                            "truncation order override (total degree)");
  index_compute->add_option("--lattice", lattice,
                            "exponent denominator override (0 = derive)");
  index_compute->add_option("--format", oo.format)
      ->check(CLI::IsMember({"json", "csv"}));
  index_compute->add_option("--out", oo.path);
  auto* index_duality = index->add_subcommand(
      "duality", "compare the gauge theory with its confined description");
  index_duality->add_option("--order", order, "truncation order");
  index_duality->add_option("--seed", seed, "flavor-point seed");
  index_duality->add_option("--tol", index_tol, "coefficient tolerance")
      ->check(CLI::PositiveNumber);
  index_duality->add_option("--format", oo.format)
      ->check(CLI::IsMember({"json", "csv"}));
  index_duality->add_option("--out", oo.path);
  auto* index_cross = index->add_subcommand(
      "crosscheck", "evaluate the series against the gamma product");
  index_cross->add_option("--order", order, "truncation order");
  index_cross->add_option("--seed", seed, "flavor-point seed");
  index_cross->add_option("--p", p0, "first nome (real, in [0,1))");
  index_cross->add_option("--q", q0, "second nome (real, in [0,1))");
  index_cross->add_option("--tol", cross_tol,
                          "largest acceptable truncation remainder")
      ->check(CLI::PositiveNumber);
  index_cross->add_option("--format", oo.format)
      ->check(CLI::IsMember({"json", "csv"}));
  index_cross->add_option("--out", oo.path);

  // ---- suite ----
  auto* suite =
      app.add_subcommand("suite", "run every verification with default cases");
  suite->add_option("--seed", seed, "RNG seed");
  suite->add_option("--tol", tol, "pass tolerance for the integral identities")
      ->check(CLI::PositiveNumber);
  suite->add_option("--format", oo.format)
      ->check(CLI::IsMember({"json", "csv"}));
  suite->add_option("--out", oo.path);
  suite->add_option("--jobs", jobs, "max concurrent cases")
      ->check(CLI::PositiveNumber);

  // ---- convergence ----
  auto* conv = app.add_subcommand(
      "convergence", "periodic-quadrature convergence table");
  conv->add_option("--format", oo.format)->check(CLI::IsMember({"json", "csv"}));
  conv->add_option("--out", oo.path);

  try {
    app.parse(argc, argv);

    if (eval_gamma->parsed()) {
      const specfun::GammaEngine eng(
          NomePair{parse_cplx(p_str), parse_cplx(q_str)});
      print_value(eng.gamma(parse_cplx(z_str)));
      return 0;
    }
    if (eval_theta->parsed()) {
      print_value(specfun::theta_mult(parse_cplx(z_str), parse_cplx(p_str)));
      return 0;
    }
    if (eval_jtheta->parsed()) {
      print_value(specfun::jacobi_theta(jtheta_index, parse_cplx(u_str),
                                        parse_cplx(tau_str)));
      return 0;
    }
    if (eval_v->parsed()) {
      std::vector<cplx> t;
      t.reserve(v_params_str.size());
      for (const auto& s : v_params_str) t.push_back(parse_cplx(s));
      const specfun::GammaEngine eng(
          NomePair{parse_cplx(p_str), parse_cplx(q_str)});
      const auto res = identities::v_function(t, eng, 1e-11, 1 << 14);
      print_value(res.value);
      return 0;
    }
    if (eval_kernel->parsed()) {
      const cplx tau = parse_cplx(k_tau), eta = parse_cplx(k_eta);
      const specfun::GammaEngine eng(NomePair{
          std::exp(kTwoPiI * tau), std::exp(2.0 * kTwoPiI * eta)});
      const ybe::SOperatorContext ctx{&eng, eta, 1e-9, 1 << 10, nullptr};
      const ybe::SpectralAssignment w{parse_cplx(k_u1), parse_cplx(k_u2),
                                      parse_cplx(k_v1), parse_cplx(k_v2)};
      print_value(ybe::r_kernel(ctx, w, parse_cplx(k_x1), parse_cplx(k_x2),
                                parse_cplx(k_x), parse_cplx(k_y)));
      return 0;
    }

    if (verify->parsed()) {
      std::vector<CaseSpec> specs;
      specs.reserve(static_cast<size_t>(cases));
      for (int i = 0; i < cases; ++i)
        specs.push_back({verify_id, seed, i, tol});
      const auto reports = run_case_pool(specs, jobs);
      emit_reports(reports, oo);
      return all_passed(reports) ? 0 : 1;
    }

    if (index_compute->parsed()) {
      std::ifstream in(theory_path);
      std::stringstream buf;
      buf << in.rdbuf();
      int doc_order = 2, doc_lattice = 0;
      const sci::TheoryModel th =
          sci::theory_from_json(buf.str(), &doc_order, &doc_lattice);
      const int use_order = index_compute->count("--order") ? order : doc_order;
      const int use_lattice =
          index_compute->count("--lattice") ? lattice : doc_lattice;
      emit_index_series(sci::index_series(th, use_order, use_lattice), oo);
      return 0;
    }
    if (index_duality->parsed()) {
      auto rep = sci::duality_check(seeded_fugacities(seed), order, index_tol);
      rep.params["seed"] = seed;
      emit_reports({rep}, oo);
      return rep.passed ? 0 : 1;
    }
    if (index_cross->parsed()) {
      auto rep = sci::index_numeric_crosscheck(seeded_fugacities(seed), p0, q0,
                                               order, cross_tol);
      rep.params["seed"] = seed;
      emit_reports({rep}, oo);
      return rep.passed ? 0 : 1;
    }

    if (suite->parsed()) {
      std::vector<CaseSpec> specs;
      for (const auto& id : kVerifyIds)
        for (int i = 0; i < suite_cases(id); ++i)
          specs.push_back({id, seed, i, tol});
      auto reports = run_case_pool(specs, jobs);
      auto duality = sci::duality_check(seeded_fugacities(seed), 2, 1e-12);
      duality.params["seed"] = seed;
      reports.push_back(std::move(duality));
      auto cross = sci::index_numeric_crosscheck(seeded_fugacities(seed), 0.05,
                                                 0.05, 2, 100.0);
      cross.params["seed"] = seed;
      reports.push_back(std::move(cross));
      emit_reports(reports, oo);
      return all_passed(reports) ? 0 : 1;
    }

    if (conv->parsed()) {
      emit_convergence(oo);
      return 0;
    }

    throw CLI::CallForHelp();
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
