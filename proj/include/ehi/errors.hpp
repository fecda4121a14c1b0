#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ehi {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input outside the admissible parameter region (bad nome, inadmissible
// operator parameter, contour-inadmissible shift, ...).
struct DomainError : Error {
  using Error::Error;
};

// A balancing product constraint is violated.
struct BalanceError : DomainError {
  using DomainError::DomainError;
};

// An evaluation point is too close to a pole of the function requested.
struct PoleError : Error {
  PoleError(const std::string& msg, std::complex<double> at)
      : Error(msg), at(at) {}
  std::complex<double> at;
};

// A registered pole (or a detected one) sits inside the guard band of the
// integration contour.
struct PoleOnContourError : Error {
  using Error::Error;
};

// A truncated product/series failed to meet its tail bound within the
// allowed number of terms.
struct NonConvergentError : Error {
  using Error::Error;
};

// A lazy operator chain exceeded its kernel-evaluation budget.
struct BudgetExceededError : Error {
  using Error::Error;
};

// A least-squares fit matrix is effectively singular.
struct IllConditionedError : Error {
  using Error::Error;
};

// Plethystic exponential of a series with a nonzero constant term.
struct ConstantTermError : Error {
  using Error::Error;
};

// Self-estimated series truncation remainder exceeds the requested
// comparison tolerance.
struct RemainderTooLargeError : Error {
  using Error::Error;
};

// Representation label not known to the character table.
struct UnknownRepError : Error {
  using Error::Error;
};

}  // namespace ehi
