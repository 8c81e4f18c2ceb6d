#pragma once

#include <stdexcept>
#include <string>

namespace rtf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input: unknown keys, invalid enums, bad grid parameters.
struct ConfigError : Error {
  using Error::Error;
};

// A state left the admissible set (rho, p > 0, |u| < 1).
struct AdmissibilityError : Error {
  using Error::Error;
};

struct RecoveryError : AdmissibilityError {
  RecoveryError(const std::string& what, int i = -1, int j = -1)
      : AdmissibilityError(what), cell_i(i), cell_j(j) {}
  int cell_i;
  int cell_j;
};

struct StiffSolveError : Error {
  StiffSolveError(const std::string& what, int i, int j, double res, int stage = 0)
      : Error(what), cell_i(i), cell_j(j), residual(res), stage(stage) {}
  int cell_i;
  int cell_j;
  double residual;
  int stage;
};

}  // namespace rtf
