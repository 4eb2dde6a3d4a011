#include "ppcdg/problems.hpp"

#include <cmath>
#include <numbers>

#include "ppcdg/errors.hpp"

namespace ppcdg {

namespace {

constexpr double kPi = std::numbers::pi;

ConservedState prim(double rho, Vec3 v, Vec3 B, double p, double gamma) {
  PrimitiveState w;
  w.rho = rho;
  w.v = v;
  w.B = B;
  w.p = p;
  return to_conserved(w, Eos{gamma});
}

BoundarySide kind(BoundaryKind k) { return BoundarySide{k, {}}; }

std::array<BoundarySide, 4> all(BoundaryKind k) { return {kind(k), kind(k), kind(k), kind(k)}; }

// Wrap into [lo, hi) for a periodic axis.
double wrap(double x, double lo, double hi) {
  const double L = hi - lo;
  double r = std::fmod(x - lo, L);
  if (r < 0) r += L;
  return lo + r;
}

ProblemSpec riemann_vacuum() {
  ProblemSpec p;
  p.id = "riemann_vacuum";
  p.dim = 1;
  p.x0 = -0.5;
  p.x1 = 0.5;
  p.default_nx = 100;
  p.default_ny = 1;
  p.t_end = 0.1;
  p.sides = all(BoundaryKind::outflow);
  const double g = p.gamma;
  p.initial = [g](double x, double) {
    if (x < 0) return prim(1e-12, {0, 0, 0}, {0, 0, 0}, 1e-12, g);
    return prim(1.0, {0, 0, 0}, {0, 1, 0}, 0.5, g);
  };
  return p;
}

ProblemSpec vortex() {
  ProblemSpec p;
  p.id = "vortex";
  p.x0 = p.y0 = -10;
  p.x1 = p.y1 = 10;
  p.default_nx = p.default_ny = 40;
  p.t_end = 0.05;
  p.sides = all(BoundaryKind::periodic);
  const double g = p.gamma;
  p.initial = [g](double x, double y) { return vortex_state(x, y, g); };
  // The vortex is carried by the mean flow (1, 1).
  p.exact = [g](double x, double y, double t) {
    return vortex_state(wrap(x - t, -10, 10), wrap(y - t, -10, 10), g);
  };
  return p;
}

ProblemSpec orszag_tang() {
  ProblemSpec p;
  p.id = "orszag_tang";
  p.x1 = p.y1 = 2 * kPi;
  p.default_nx = p.default_ny = 200;
  p.t_end = 2.0;
  p.sides = all(BoundaryKind::periodic);
  const double g = p.gamma;
  p.initial = [g](double x, double y) {
    return prim(g * g, {-std::sin(y), std::sin(x), 0}, {-std::sin(y), std::sin(2 * x), 0}, g, g);
  };
  return p;
}

ProblemSpec rotor() {
  ProblemSpec p;
  p.id = "rotor";
  p.default_nx = p.default_ny = 200;
  p.t_end = 0.295;
  p.sides = all(BoundaryKind::outflow);
  const double g = p.gamma;
  p.initial = [g](double x, double y) {
    const double r0 = 0.1, r1 = 0.115;
    const double dx = x - 0.5, dy = y - 0.5, r = std::hypot(dx, dy);
    const Vec3 B{2.5 / std::sqrt(4 * kPi), 0, 0};
    if (r < r0) return prim(10, {-dy / r0, dx / r0, 0}, B, 0.5, g);
    if (r < r1) {
      const double lam = (r1 - r) / (r1 - r0);
      return prim(1 + 9 * lam, {-lam * dy / r, lam * dx / r, 0}, B, 0.5, g);
    }
    return prim(1, {0, 0, 0}, B, 0.5, g);
  };
  return p;
}

ProblemSpec shock_cloud() {
  ProblemSpec p;
  p.id = "shock_cloud";
  p.default_nx = p.default_ny = 400;
  p.t_end = 0.06;
  p.sides = all(BoundaryKind::outflow);
  const double g = p.gamma;
  const ConservedState right = prim(1, {-11.2536, 0, 0}, {0, 0.56418958, 0.56418958}, 1, g);
  p.sides[kXHi] = BoundarySide{BoundaryKind::inflow, [right](double, double) { return std::optional(right); }};
  p.initial = [g, right](double x, double y) {
    if (x < 0.6) return prim(3.86859, {0, 0, 0}, {0, 2.1826182, -2.1826182}, 167.345, g);
    if (std::hypot(x - 0.8, y - 0.5) < 0.15) return prim(10, {0, 0, 0}, {0, 0.56418958, 0.56418958}, 1, g);
    return right;
  };
  return p;
}

ProblemSpec blast(const std::string& id, double pe, double b0) {
  ProblemSpec p;
  p.id = id;
  p.gamma = 1.4;
  p.x0 = p.y0 = -0.5;
  p.x1 = p.y1 = 0.5;
  p.default_nx = p.default_ny = 200;
  p.t_end = id == "blast_classic" ? 0.01 : 0.001;
  p.sides = all(BoundaryKind::outflow);
  const double g = p.gamma;
  p.initial = [g, pe, b0](double x, double y) {
    const double pr = x * x + y * y < 0.01 ? pe : 0.1;
    return prim(1, {0, 0, 0}, {b0, 0, 0}, pr, g);
  };
  return p;
}

ProblemSpec jet(const std::string& id, double b0) {
  ProblemSpec p;
  p.id = id;
  p.gamma = 1.4;
  p.x0 = 0;
  p.x1 = 0.5;
  p.y0 = 0;
  p.y1 = 1.5;
  p.default_nx = 200;
  p.default_ny = 600;
  p.t_end = 0.002;
  p.sides = all(BoundaryKind::outflow);
  // Only the right half of the symmetric domain [-0.5, 0.5] x [0, 1.5] is computed.
  p.sides[kXLo] = kind(BoundaryKind::reflecting);
  const double g = p.gamma;
  const ConservedState beam = prim(1.4, {0, 800, 0}, {0, b0, 0}, 1, g);
  p.sides[kYLo] = BoundarySide{BoundaryKind::inflow, [beam](double x, double) -> std::optional<ConservedState> {
                                 if (std::abs(x) <= 0.05) return beam;
                                 return std::nullopt;
                               }};
  p.initial = [g, b0](double, double) { return prim(0.14, {0, 0, 0}, {0, b0, 0}, 1, g); };
  return p;
}

}  // namespace

ConservedState vortex_state(double x, double y, double gamma) {
  const double mu = 5.389489439;
  const double r2 = x * x + y * y;
  const double ev = std::exp(0.5 * (1 - r2));
  const double dv = mu / (std::sqrt(2.0) * kPi) * ev;
  const double db = mu / (2 * kPi) * ev;
  const double dp = -mu * mu * (1 + r2) / (8 * kPi * kPi) * std::exp(1 - r2);
  return prim(1, {1 - dv * y, 1 + dv * x, 0}, {-db * y, db * x, 0}, 1 + dp, gamma);
}

const std::vector<std::string>& problem_ids() {
  static const std::vector<std::string> ids = {"riemann_vacuum", "vortex",        "orszag_tang", "rotor",
                                               "shock_cloud",    "blast_classic", "blast_extreme", "jet_case1",
                                               "jet_case2",      "jet_case3"};
  return ids;
}

ProblemSpec problem_library(const std::string& id) {
  if (id == "riemann_vacuum") return riemann_vacuum();
  if (id == "vortex") return vortex();
  if (id == "orszag_tang") return orszag_tang();
  if (id == "rotor") return rotor();
  if (id == "shock_cloud") return shock_cloud();
  if (id == "blast_classic") return blast(id, 1e3, 100 / std::sqrt(4 * kPi));
  if (id == "blast_extreme") return blast(id, 1e4, 1000 / std::sqrt(4 * kPi));
  if (id == "jet_case1") return jet(id, std::sqrt(200.0));
  if (id == "jet_case2") return jet(id, std::sqrt(2000.0));
  if (id == "jet_case3") return jet(id, std::sqrt(20000.0));
  throw ConfigError("unknown problem '" + id + "'");
}

OverlappingMesh make_mesh(const ProblemSpec& p, int nx, int ny) {
  if (p.dim == 1) return OverlappingMesh::line(p.x0, p.x1, nx, p.sides[kXLo], p.sides[kXHi]);
  return OverlappingMesh::rect(p.x0, p.x1, nx, p.y0, p.y1, ny, p.sides);
}

}  // namespace ppcdg
