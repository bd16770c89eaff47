#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dualtaylor {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input: degenerate geometry, malformed config, violated precondition.
// The message names the offending field.
struct ValidationError : Error {
  using Error::Error;
};

// Malformed file or expression text.
struct ParseError : Error {
  using Error::Error;
};

// A degree/candidate cap ran out before the requested bounds were met.
// Carries the best errors reached so the caller can diagnose geometry vs bug.
struct ApproximationFailure : Error {
  ApproximationFailure(const std::string& msg, std::vector<double> best)
      : Error(msg), best_errors(std::move(best)) {}
  explicit ApproximationFailure(const std::string& msg) : Error(msg) {}
  std::vector<double> best_errors;
};

// The sequence failed the diverging-ratio requirement; nothing was solved.
struct RefusalError : Error {
  using Error::Error;
};

// An internal consistency check failed. Always a bug, never a data problem.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace dualtaylor
