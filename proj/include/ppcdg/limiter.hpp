#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "ppcdg/field.hpp"

namespace ppcdg {

struct LimiterParams {
  /// Density floor min(eps_cap, rho_avg). The internal-energy floor is
  /// min(max(eps_cap, 1e-12 S), rho_e(avg)) with S a bound on |E| over the cell, which keeps the
  /// limited point values clear of the rounding noise in E - |m|^2/(2 rho) - |B|^2/2. Both
  /// floors are capped by the average's own margin so the scaling problem always has a solution.
  double eps_cap = 1e-13;
};

struct LimiterStats {
  int limited_cells = 0;  // cells where either scaling factor dropped below 1
  double min_theta = 1.0;
  /// Smallest density and rho e over the limiter points after limiting.
  double min_rho = std::numeric_limits<double>::infinity();
  double min_rho_e = std::numeric_limits<double>::infinity();
};

/// Catalog points (px, py) at which admissibility is enforced: the half-cell Gauss-Lobatto
/// points in 1D plus the volume Gauss points; in 2D Gauss x Lobatto, Lobatto x Gauss and the
/// (2N)^2 volume Gauss points. This covers every point the residuals evaluate.
std::vector<std::pair<int, int>> limiter_points(const DgSpace& space);

/// Two-stage scaling limiter about the cell average, in place on the active cells followed by
/// a ghost sync. Averages are untouched (bitwise) and (B1, B2) is scaled as a whole so the local
/// DF property survives. Throws InadmissibleStateError if a cell average is itself inadmissible.
LimiterStats pp_limit(DGField& f, const LimiterParams& params = {});

/// Value-returning form.
DGField pp_limited(const DGField& f, const LimiterParams& params = {});

struct PointExtrema {
  double min_rho = 0.0, min_p = 0.0;
};

/// Smallest density and pressure over the limiter point set of all active cells.
PointExtrema point_extrema(const DGField& f, const Eos& eos);

}  // namespace ppcdg
