#include "ppcdg/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppcdg {

const char* layout_name(Layout l) { return l == Layout::primal ? "primal" : "dual"; }

DGField::DGField(SpacePtr space, Layout layout) : space_(std::move(space)), layout_(layout) {
  const auto& mesh = space_->mesh();
  nm_ = space_->num_modes();
  bs_ = space_->block_size();
  for (int a = 0; a < 2; ++a) {
    const bool degenerate = a == 1 && mesh.dim() == 1;
    if (degenerate) {
      active_[a] = 1;
      off_[a] = 0;
      ext_[a] = 1;
    } else if (layout == Layout::primal) {
      active_[a] = mesh.n(a);
      off_[a] = 1;
      ext_[a] = mesh.n(a) + 2;
    } else {
      active_[a] = mesh.num_dual(a);
      off_[a] = 0;
      ext_[a] = mesh.n(a) + 1;
    }
  }
  c_.assign(static_cast<std::size_t>(ext_[0]) * ext_[1] * bs_, 0.0);
}

ConservedState DGField::average(int i, int j) const {
  const double* c = cell(i, j);
  ConservedState u;
  for (int v = 0; v < kNumVars; ++v) u[v] = c[v * nm_];
  return u;
}

void DGField::set_constant(int i, int j, const ConservedState& u) {
  double* c = cell(i, j);
  std::fill(c, c + bs_, 0.0);
  for (int v = 0; v < kNumVars; ++v) c[v * nm_] = u[v];
}

ConservedState DGField::at(int i, int j, int px, int py) const {
  const double* c = cell(i, j);
  const double* phi = space_->phi(px, py);
  ConservedState u;
  for (int v = 0; v < kNumVars; ++v) {
    double s = 0.0;
    for (int m = 0; m < nm_; ++m) s += c[v * nm_ + m] * phi[m];
    u[v] = s;
  }
  return u;
}

ConservedState DGField::at_ref(int i, int j, double xi, double eta) const {
  const auto& sp = *space_;
  double lx[4], ly[4];
  for (int a = 0; a <= sp.k(); ++a) {
    lx[a] = std::sqrt(2.0 * a + 1.0) * legendre(a, 2.0 * xi);
    ly[a] = sp.dim() == 1 ? (a == 0 ? 1.0 : 0.0) : std::sqrt(2.0 * a + 1.0) * legendre(a, 2.0 * eta);
  }
  const double* c = cell(i, j);
  ConservedState u;
  for (int v = 0; v < kNumVars; ++v) {
    double s = 0.0;
    for (int m = 0; m < nm_; ++m) s += c[v * nm_ + m] * lx[sp.mode_ax(m)] * ly[sp.mode_ay(m)];
    u[v] = s;
  }
  return u;
}

double DGField::centre_x(int i) const {
  const auto& mesh = space_->mesh();
  return layout_ == Layout::primal ? mesh.primal_x(i) : mesh.dual_x(i);
}

double DGField::centre_y(int j) const {
  const auto& mesh = space_->mesh();
  return layout_ == Layout::primal ? mesh.primal_y(j) : mesh.dual_y(j);
}

ConservedState DGField::evaluate(int i, int j, double x, double y) const {
  const auto& mesh = space_->mesh();
  if (i < lo(0) || i >= hi(0) || j < lo(1) || j >= hi(1)) throw std::out_of_range("evaluate: no such cell");
  const double xi = (x - centre_x(i)) / mesh.dx();
  const double eta = mesh.dim() == 1 ? 0.0 : (y - centre_y(j)) / mesh.dy();
  const double tol = 1e-12;
  if (std::abs(xi) > 0.5 + tol || std::abs(eta) > 0.5 + tol)
    throw std::out_of_range("evaluate: point outside the closed cell");
  return at_ref(i, j, std::clamp(xi, -0.5, 0.5), std::clamp(eta, -0.5, 0.5));
}

FieldPair make_fields(const SpacePtr& space) {
  return FieldPair{DGField(space, Layout::primal), DGField(space, Layout::dual)};
}

namespace {

// dst = src, optionally mirrored across an axis (odd modes and normal vector components flip).
void copy_cell(const DgSpace& sp, double* dst, const double* src, int mirror_axis) {
  const int nm = sp.num_modes();
  if (mirror_axis < 0) {
    std::copy(src, src + sp.block_size(), dst);
    return;
  }
  for (int v = 0; v < kNumVars; ++v) {
    const bool normal = v == kM1 + mirror_axis || v == kB1 + mirror_axis;
    for (int m = 0; m < nm; ++m) {
      const int a = mirror_axis == 0 ? sp.mode_ax(m) : sp.mode_ay(m);
      const double s = ((a % 2) ? -1.0 : 1.0) * (normal ? -1.0 : 1.0);
      dst[v * nm + m] = s * src[v * nm + m];
    }
  }
}

void fill_primal_side(DGField& f, int axis, int hi_side, int t) {
  const auto& sp = f.space();
  const auto& mesh = sp.mesh();
  const int n = mesh.n(axis);
  const BoundarySide& bs = mesh.side(2 * axis + hi_side);
  const int ghost = hi_side ? n : -1;
  const int inner = hi_side ? n - 1 : 0;
  auto cell = [&](int g) { return axis == 0 ? f.cell(g, t) : f.cell(t, g); };
  switch (bs.kind) {
    case BoundaryKind::periodic:
      copy_cell(sp, cell(ghost), cell(hi_side ? 0 : n - 1), -1);
      break;
    case BoundaryKind::outflow:
      copy_cell(sp, cell(ghost), cell(inner), -1);
      break;
    case BoundaryKind::reflecting:
      copy_cell(sp, cell(ghost), cell(inner), axis);
      break;
    case BoundaryKind::inflow: {
      const double x = axis == 0 ? mesh.primal_x(ghost) : mesh.primal_x(t);
      const double y = axis == 0 ? mesh.primal_y(t) : mesh.primal_y(ghost);
      auto s = bs.inflow(x, y);
      if (s) {
        if (axis == 0)
          f.set_constant(ghost, t, *s);
        else
          f.set_constant(t, ghost, *s);
      } else {
        copy_cell(sp, cell(ghost), cell(inner), -1);
      }
      break;
    }
  }
}

}  // namespace

void sync_ghosts(DGField& f) {
  const auto& sp = f.space();
  const auto& mesh = sp.mesh();
  const int bs = sp.block_size();
  if (f.layout() == Layout::primal) {
    for (int j = 0; j < f.active(1); ++j) {
      fill_primal_side(f, 0, 0, j);
      fill_primal_side(f, 0, 1, j);
    }
    if (mesh.dim() == 2)
      for (int i = f.lo(0); i < f.hi(0); ++i) {
        fill_primal_side(f, 1, 0, i);
        fill_primal_side(f, 1, 1, i);
      }
    return;
  }
  if (mesh.periodic(0))
    for (int j = f.lo(1); j < f.hi(1); ++j) std::copy_n(f.cell(0, j), bs, f.cell(mesh.nx(), j));
  if (mesh.dim() == 2 && mesh.periodic(1))
    for (int i = f.lo(0); i < f.hi(0); ++i) std::copy_n(f.cell(i, 0), bs, f.cell(i, mesh.ny()));
}

void sync_ghosts(FieldPair& f) {
  sync_ghosts(f.primal);
  sync_ghosts(f.dual);
}

namespace {

double fold(double x, double a, double b, bool periodic) {
  if (!periodic) return std::clamp(x, a, b);
  const double L = b - a;
  double r = std::fmod(x - a, L);
  if (r < 0) r += L;
  return a + r;
}

void project_field(DGField& f, const StateFn& fn) {
  const auto& sp = f.space();
  const auto& mesh = sp.mesh();
  const auto& pts = sp.pts();
  const int nm = sp.num_modes();
  const int ng = 2 * pts.N;
  const bool two_d = mesh.dim() == 2;
  for (int j = 0; j < f.active(1); ++j)
    for (int i = 0; i < f.active(0); ++i) {
      double* c = f.cell(i, j);
      std::fill(c, c + sp.block_size(), 0.0);
      for (int px = 0; px < ng; ++px)
        for (int py = 0; py < (two_d ? ng : 1); ++py) {
          const double w = pts.gauss_w[px] * (two_d ? pts.gauss_w[py] : 1.0);
          const double x = fold(f.centre_x(i) + pts.xi[px] * mesh.dx(), mesh.x0(), mesh.x1(), mesh.periodic(0));
          const double y = two_d ? fold(f.centre_y(j) + pts.xi[py] * mesh.dy(), mesh.y0(), mesh.y1(), mesh.periodic(1))
                                 : 0.0;
          const ConservedState u = fn(x, y);
          const double* phi = sp.phi(px, py);
          for (int v = 0; v < kNumVars; ++v)
            for (int m = 0; m < nm; ++m) c[v * nm + m] += w * u[v] * phi[m];
        }
      sp.project_df(c + kB1 * nm, c + kB2 * nm);
    }
}

}  // namespace

FieldPair project_initial(const StateFn& fn, const SpacePtr& space) {
  FieldPair f = make_fields(space);
  project_field(f.primal, fn);
  project_field(f.dual, fn);
  sync_ghosts(f);
  return f;
}

double max_incell_divergence(const DGField& f, int i, int j, const std::vector<std::array<double, 2>>& pts) {
  const auto& sp = f.space();
  const auto& mesh = sp.mesh();
  const int nm = sp.num_modes();
  const double* c = f.cell(i, j);
  double worst = 0.0;
  for (const auto& p : pts) {
    double div = 0.0;
    for (int m = 0; m < nm; ++m) {
      const int a = sp.mode_ax(m), b = sp.mode_ay(m);
      const double lx = std::sqrt(2.0 * a + 1.0) * legendre(a, 2.0 * p[0]);
      const double ly = std::sqrt(2.0 * b + 1.0) * legendre(b, 2.0 * p[1]);
      const double dlx = 2.0 * std::sqrt(2.0 * a + 1.0) * legendre_derivative(a, 2.0 * p[0]);
      const double dly = 2.0 * std::sqrt(2.0 * b + 1.0) * legendre_derivative(b, 2.0 * p[1]);
      div += c[kB1 * nm + m] * dlx * ly / mesh.dx() + c[kB2 * nm + m] * lx * dly / mesh.dy();
    }
    worst = std::max(worst, std::abs(div));
  }
  return worst;
}

}  // namespace ppcdg
