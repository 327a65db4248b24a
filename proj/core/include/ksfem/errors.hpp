#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ksfem {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MeshError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct SolverError : Error {
  using Error::Error;
};

/// Thrown when the nonlinear iteration exhausts its iteration budget.
/// Carries the last iterate so callers can inspect or dump it.
struct PicardError : SolverError {
  PicardError(const std::string& what, double residual, int iterations,
              std::vector<double> last_iterate)
      : SolverError(what),
        final_residual(residual),
        iterations(iterations),
        iterate(std::move(last_iterate)) {}

  double final_residual;
  int iterations;
  std::vector<double> iterate;
};

}  // namespace ksfem
