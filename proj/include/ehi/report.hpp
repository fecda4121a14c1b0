#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include <json.hpp>

#include "ehi/types.hpp"

namespace ehi {

inline nlohmann::ordered_json json_cplx(cplx z) {
  return nlohmann::ordered_json::array({z.real(), z.imag()});
}

inline double relative_error(cplx a, cplx b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

struct Stopwatch {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

// One verified identity instance.  `rel_err` is |lhs-rhs| scaled by the
// larger side for two-sided checks, or a normalized residual for the checks
// that prove an expression vanishes.
struct VerificationReport {
  std::string identity_id;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  cplx lhs{0.0, 0.0};
  cplx rhs{0.0, 0.0};
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;
  long n_used = 0;
  double elapsed_ms = 0.0;
  bool passed = false;

  void finish(cplx lhs_in, cplx rhs_in, double tol_in) {
    lhs = lhs_in;
    rhs = rhs_in;
    tol = tol_in;
    abs_err = std::abs(lhs - rhs);
    rel_err = relative_error(lhs, rhs);
    passed = rel_err <= tol;
  }

  void finish_residual(double residual, double tol_in, cplx raw, cplx scale) {
    lhs = raw;
    rhs = cplx(0.0);
    tol = tol_in;
    abs_err = std::abs(raw);
    rel_err = residual;
    passed = residual <= tol && std::isfinite(residual);
    params["residual_scale"] = json_cplx(scale);
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["identity_id"] = identity_id;
    j["params"] = params;
    j["lhs"] = json_cplx(lhs);
    j["rhs"] = json_cplx(rhs);
    j["abs_err"] = abs_err;
    j["rel_err"] = rel_err;
    j["tol"] = tol;
    j["n_used"] = n_used;
    j["passed"] = passed;
    j["elapsed_ms"] = elapsed_ms;  // timing only; excluded from replay diffs
    return j;
  }

  static std::string csv_header() {
    return "identity_id,rel_err,n_used,elapsed_ms,passed";
  }
  std::string csv_row() const {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%.17g,%ld,%.3f,%d",
                  identity_id.c_str(), rel_err, n_used, elapsed_ms,
                  int(passed));
    return buf;
  }
};

}  // namespace ehi
