#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ppcdg/field.hpp"

namespace ppcdg {

struct ProblemSpec {
  std::string id;
  int dim = 2;
  double gamma = 5.0 / 3.0;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  int default_nx = 100, default_ny = 100;
  double t_end = 0.0;
  /// Indexed by Side; in 1D only kXLo and kXHi are used.
  std::array<BoundarySide, 4> sides{};
  /// Initial data in conserved variables.
  StateFn initial;
  /// Exact solution at time t, or empty when none is known.
  std::function<ConservedState(double x, double y, double t)> exact;
};

const std::vector<std::string>& problem_ids();

/// Throws ConfigError for an unknown id.
ProblemSpec problem_library(const std::string& id);

OverlappingMesh make_mesh(const ProblemSpec& p, int nx, int ny);

/// The smooth low-pressure vortex (state at (x, y) before any advection), shared with tests.
ConservedState vortex_state(double x, double y, double gamma);

}  // namespace ppcdg
