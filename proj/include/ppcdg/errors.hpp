#pragma once

#include <stdexcept>
#include <string>

#include "ppcdg/field.hpp"

namespace ppcdg {

/// A state at a quadrature or constraint point failed rho > 0, rho e > 0, or finiteness.
class InadmissibleStateError : public std::runtime_error {
 public:
  InadmissibleStateError(Layout layout, int i, int j, double x, double y, std::string constraint, double value);

  Layout layout;
  int i, j;
  double x, y;
  std::string constraint;  // "density", "internal_energy" or "non_finite"
  double value;
  int stage = -1;  // SSP-RK stage (0..2) when raised inside a time step
};

/// Bad run configuration (unknown problem, invalid mesh, out-of-range parameter).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File system failure while writing or reading run artifacts.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ppcdg
