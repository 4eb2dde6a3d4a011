#pragma once

#include <array>
#include <functional>
#include <optional>

#include "ppcdg/mhd.hpp"

namespace ppcdg {

enum class BoundaryKind { periodic, outflow, reflecting, inflow };

enum Side : int { kXLo = 0, kXHi = 1, kYLo = 2, kYHi = 3 };

/// Returns the pinned state for a ghost cell centred at (x, y), or nullopt to fall back to
/// outflow there (e.g. the part of the jet nozzle wall outside the nozzle).
using InflowFn = std::function<std::optional<ConservedState>(double x, double y)>;

struct BoundarySide {
  BoundaryKind kind = BoundaryKind::outflow;
  InflowFn inflow;
};

/// Uniform primal mesh plus the staggered dual mesh.
///
/// Primal cell i spans (x_{i-1/2}, x_{i+1/2}) with centre x_i = x0 + (i + 1/2) dx, i = 0..nx-1.
/// Dual cell I has centre x0 + I dx and spans (x_{I-1}, x_I) in primal-centre terms, so primal
/// cell i overlaps dual cells i and i+1. On a periodic axis dual cells 0..nx-1 are distinct;
/// otherwise 0..nx are all real cells (the two end cells stick out by half a cell).
/// In 1D the y axis is degenerate: ny = 1, dy = 1.
class OverlappingMesh {
 public:
  OverlappingMesh() = default;
  static OverlappingMesh line(double x0, double x1, int nx, BoundarySide lo, BoundarySide hi);
  static OverlappingMesh rect(double x0, double x1, int nx, double y0, double y1, int ny,
                              std::array<BoundarySide, 4> sides);

  int dim() const { return dim_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int n(int axis) const { return axis == 0 ? nx_ : ny_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double h(int axis) const { return axis == 0 ? dx_ : dy_; }
  double x0() const { return x0_; }
  double x1() const { return x1_; }
  double y0() const { return y0_; }
  double y1() const { return y1_; }
  const BoundarySide& side(int s) const { return sides_[s]; }
  bool periodic(int axis) const { return sides_[2 * axis].kind == BoundaryKind::periodic; }

  /// Number of distinct dual cells along an axis.
  int num_dual(int axis) const;

  double primal_x(int i) const { return x0_ + (i + 0.5) * dx_; }
  double primal_y(int j) const { return dim_ == 1 ? 0.0 : y0_ + (j + 0.5) * dy_; }
  double dual_x(int i) const { return x0_ + i * dx_; }
  double dual_y(int j) const { return dim_ == 1 ? 0.0 : y0_ + j * dy_; }

 private:
  int dim_ = 1;
  int nx_ = 1, ny_ = 1;
  double x0_ = 0, x1_ = 1, y0_ = 0, y1_ = 1;
  double dx_ = 1, dy_ = 1;
  std::array<BoundarySide, 4> sides_{};
};

}  // namespace ppcdg
