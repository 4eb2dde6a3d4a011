#include "ppcdg/mesh.hpp"

#include <stdexcept>

namespace ppcdg {

namespace {

void check_axis(const BoundarySide& lo, const BoundarySide& hi, int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("mesh: cell count must be positive");
  if (!(b > a)) throw std::invalid_argument("mesh: empty domain");
  const bool plo = lo.kind == BoundaryKind::periodic;
  const bool phi = hi.kind == BoundaryKind::periodic;
  if (plo != phi) throw std::invalid_argument("mesh: periodic boundaries must come in pairs");
  if (plo && n < 2) throw std::invalid_argument("mesh: periodic axis needs at least two cells");
  if ((lo.kind == BoundaryKind::inflow && !lo.inflow) || (hi.kind == BoundaryKind::inflow && !hi.inflow))
    throw std::invalid_argument("mesh: inflow boundary without an inflow state");
}

}  // namespace

OverlappingMesh OverlappingMesh::line(double x0, double x1, int nx, BoundarySide lo, BoundarySide hi) {
  check_axis(lo, hi, nx, x0, x1);
  OverlappingMesh m;
  m.dim_ = 1;
  m.nx_ = nx;
  m.ny_ = 1;
  m.x0_ = x0;
  m.x1_ = x1;
  m.y0_ = 0.0;
  m.y1_ = 1.0;
  m.dx_ = (x1 - x0) / nx;
  m.dy_ = 1.0;
  m.sides_ = {lo, hi, BoundarySide{}, BoundarySide{}};
  return m;
}

OverlappingMesh OverlappingMesh::rect(double x0, double x1, int nx, double y0, double y1, int ny,
                                      std::array<BoundarySide, 4> sides) {
  check_axis(sides[kXLo], sides[kXHi], nx, x0, x1);
  check_axis(sides[kYLo], sides[kYHi], ny, y0, y1);
  OverlappingMesh m;
  m.dim_ = 2;
  m.nx_ = nx;
  m.ny_ = ny;
  m.x0_ = x0;
  m.x1_ = x1;
  m.y0_ = y0;
  m.y1_ = y1;
  m.dx_ = (x1 - x0) / nx;
  m.dy_ = (y1 - y0) / ny;
  m.sides_ = sides;
  return m;
}

int OverlappingMesh::num_dual(int axis) const {
  if (axis == 1 && dim_ == 1) return 1;
  return periodic(axis) ? n(axis) : n(axis) + 1;
}

}  // namespace ppcdg
