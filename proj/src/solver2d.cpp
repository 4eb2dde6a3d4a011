#include "ppcdg/solver2d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kernels.hpp"

namespace ppcdg {

namespace {

using detail::check_point;
using detail::eval_point;
using detail::flux_dir;
using detail::flux_xy;
using detail::PointFailure;

// Quadrant q = qx + 2 qy of the other mesh holds the target's (qx, qy) quarter.
inline int quad_of(int sx, int sy) { return sx + 2 * sy; }

template <int K>
struct Kernel2D {
  static constexpr int NM = (K + 1) * (K + 2) / 2;
  static constexpr int N = K + 1;
  static constexpr int NG = 2 * N;
  static constexpr int NP = NG * NG;

  const DgSpace& sp;
  double gm1, inv_tau, inv_dx, inv_dy;
  bool source;
  // Volume tables: weighted phi, d/dx phi and d/dy phi per (mode, point), and the catalog
  // index of each volume point in its overlapping cell.
  std::array<double, NM * NP> wphi{}, wgx{}, wgy{};
  std::array<int, NG> shift{};

  Kernel2D(const DgSpace& space, double gm1_, double tau, bool with_source)
      : sp(space), gm1(gm1_), inv_tau(1.0 / tau), inv_dx(1.0 / space.mesh().dx()), inv_dy(1.0 / space.mesh().dy()),
        source(with_source) {
    const auto& pts = sp.pts();
    for (int p = 0; p < NG; ++p) shift[p] = pts.half_shift(p);
    for (int px = 0; px < NG; ++px)
      for (int py = 0; py < NG; ++py) {
        const int p = px * NG + py;
        const double w = pts.gauss_w[px] * pts.gauss_w[py];
        for (int m = 0; m < NM; ++m) {
          wphi[m * NP + p] = w * sp.phi(px, py)[m];
          wgx[m * NP + p] = w * inv_dx * sp.dphi_dxi(px, py)[m];
          wgy[m * NP + p] = w * inv_dy * sp.dphi_deta(px, py)[m];
        }
      }
  }

  void value(const double* c, int px, int py, double* u) const { eval_point<NM>(c, sp.phi(px, py), u); }

  void run(const double* T, const std::array<const double*, 4>& Q, double* R) const {
    const auto& pts = sp.pts();
    for (int i = 0; i < kNumVars * NM; ++i) R[i] = -inv_tau * T[i];
    double u[kNumVars], f1[kNumVars], f2[kNumVars];

    // Relaxation toward the other mesh and the volume flux term.
    for (int px = 0; px < NG; ++px) {
      const int sx = px >= N;
      const int ox = shift[px];
      for (int py = 0; py < NG; ++py) {
        const int sy = py >= N;
        const int oy = shift[py];
        const int q = quad_of(sx, sy);
        value(Q[q], ox, oy, u);
        check_point(u, q, ox, oy);
        flux_xy(u, gm1, f1, f2);
        const int p = px * NG + py;
        for (int m = 0; m < NM; ++m) {
          const double a = inv_tau * wphi[m * NP + p];
          const double b = wgx[m * NP + p];
          const double c = wgy[m * NP + p];
          for (int v = 0; v < kNumVars; ++v) R[v * NM + m] += a * u[v] + b * f1[v] + c * f2[v];
        }
      }
    }

    // Faces x = +-dx/2: the other mesh is evaluated on its cell centre line.
    for (int py = 0; py < NG; ++py) {
      const int sy = py >= N;
      const int oy = pts.half_shift(py);
      const double w = pts.gauss_w[py] * inv_dx;
      for (int sx = 0; sx < 2; ++sx) {
        const int q = quad_of(sx, sy);
        value(Q[q], pts.centre(), oy, u);
        check_point(u, q, pts.centre(), oy);
        flux_dir(u, gm1, 0, f1);
        const double* phi = sp.phi(sx ? pts.face_hi() : pts.face_lo(), py);
        const double sw = sx ? -w : w;
        for (int m = 0; m < NM; ++m)
          for (int v = 0; v < kNumVars; ++v) R[v * NM + m] += sw * phi[m] * f1[v];
      }
    }
    // Faces y = +-dy/2.
    for (int px = 0; px < NG; ++px) {
      const int sx = px >= N;
      const int ox = pts.half_shift(px);
      const double w = pts.gauss_w[px] * inv_dy;
      for (int sy = 0; sy < 2; ++sy) {
        const int q = quad_of(sx, sy);
        value(Q[q], ox, pts.centre(), u);
        check_point(u, q, ox, pts.centre());
        flux_dir(u, gm1, 1, f2);
        const double* phi = sp.phi(px, sy ? pts.face_hi() : pts.face_lo());
        const double sw = sy ? -w : w;
        for (int m = 0; m < NM; ++m)
          for (int v = 0; v < kNumVars; ++v) R[v * NM + m] += sw * phi[m] * f2[v];
      }
    }

    if (source) add_source(Q, R);
    sp.project_df(R + kB1 * NM, R + kB2 * NM);
  }

  // -[[B_n]] S(<U>) on the interior lines x = 0 and y = 0 of the target cell.
  void add_source(const std::array<const double*, 4>& Q, double* R) const {
    const auto& pts = sp.pts();
    double ul[kNumVars], ur[kNumVars], avg[kNumVars];
    for (int py = 0; py < NG; ++py) {
      const int sy = py >= N;
      const int oy = pts.half_shift(py);
      const int ql = quad_of(0, sy), qr = quad_of(1, sy);
      value(Q[ql], pts.face_hi(), oy, ul);
      value(Q[qr], pts.face_lo(), oy, ur);
      check_point(ul, ql, pts.face_hi(), oy);
      check_point(ur, qr, pts.face_lo(), oy);
      const double jump = ur[kB1] - ul[kB1];
      for (int v = 0; v < kNumVars; ++v) avg[v] = 0.5 * (ul[v] + ur[v]);
      accumulate_source(avg, -pts.gauss_w[py] * jump * inv_dx, sp.phi(pts.centre(), py), R);
    }
    for (int px = 0; px < NG; ++px) {
      const int sx = px >= N;
      const int ox = pts.half_shift(px);
      const int qd = quad_of(sx, 0), qu = quad_of(sx, 1);
      value(Q[qd], ox, pts.face_hi(), ul);
      value(Q[qu], ox, pts.face_lo(), ur);
      check_point(ul, qd, ox, pts.face_hi());
      check_point(ur, qu, ox, pts.face_lo());
      const double jump = ur[kB2] - ul[kB2];
      for (int v = 0; v < kNumVars; ++v) avg[v] = 0.5 * (ul[v] + ur[v]);
      accumulate_source(avg, -pts.gauss_w[px] * jump * inv_dy, sp.phi(px, pts.centre()), R);
    }
  }

  static void accumulate_source(const double* u, double coef, const double* phi, double* R) {
    if (coef == 0.0) return;
    const double rho = u[kRho];
    const double v[3] = {u[kM1] / rho, u[kM2] / rho, u[kM3] / rho};
    double s[kNumVars];
    s[kRho] = 0.0;
    for (int d = 0; d < 3; ++d) {
      s[kM1 + d] = u[kB1 + d];
      s[kB1 + d] = v[d];
    }
    s[kE] = v[0] * u[kB1] + v[1] * u[kB2] + v[2] * u[kB3];
    for (int m = 0; m < NM; ++m) {
      const double a = coef * phi[m];
      for (int var = 1; var < kNumVars; ++var) R[var * NM + m] += a * s[var];
    }
  }
};

void require_2d(const DGField& primal, const DGField& dual, const char* who) {
  if (primal.space().dim() != 2 || primal.layout() != Layout::primal || dual.layout() != Layout::dual ||
      primal.space_ptr() != dual.space_ptr())
    throw std::invalid_argument(std::string(who) + ": expects a 2D primal/dual pair on one space");
}

// In-cell divergence at the centre and four corners, relative to the cell's field scale.
void check_locally_df(const DGField& f, int i, int j) {
  const auto& sp = f.space();
  const auto& pts = sp.pts();
  const int nm = sp.num_modes();
  const double* c = f.cell(i, j);
  const double hx = sp.mesh().dx(), hy = sp.mesh().dy();
  double mag = 1.0;
  for (int m = 0; m < 2 * nm; ++m) mag += std::abs(c[kB1 * nm + m]);
  const double scale = mag / std::min(hx, hy);
  const int sample[5][2] = {{pts.centre(), pts.centre()},
                            {pts.face_lo(), pts.face_lo()},
                            {pts.face_lo(), pts.face_hi()},
                            {pts.face_hi(), pts.face_lo()},
                            {pts.face_hi(), pts.face_hi()}};
  for (const auto& s : sample) {
    const double* gx = sp.dphi_dxi(s[0], s[1]);
    const double* gy = sp.dphi_deta(s[0], s[1]);
    double div = 0.0;
    for (int m = 0; m < nm; ++m) div += c[kB1 * nm + m] * gx[m] / hx + c[kB2 * nm + m] * gy[m] / hy;
    if (std::abs(div) > 1e-10 * scale)
      throw std::logic_error("residual_2d_locally_df: magnetic field of " + std::string(layout_name(f.layout())) +
                             " cell (" + std::to_string(i) + ", " + std::to_string(j) + ") is not locally DF");
  }
}

template <int K>
void residual_half(const DGField& target, const DGField& opp, const Eos& eos, double tau, bool source,
                   DGField& out) {
  const auto& sp = target.space();
  const Kernel2D<K> ker(sp, eos.gamma - 1.0, tau, source);
  detail::for_cells(target.active(0), target.active(1), [&](int i, int j) {
    const auto Q = detail::overlapping_cells(opp, target.layout(), i, j);
    try {
      ker.run(target.cell(i, j), Q, out.cell(i, j));
    } catch (const PointFailure& pf) {
      throw detail::locate(opp, target.layout(), i, j, pf);
    }
  });
}

template <int K>
Residual residual_impl(const DGField& primal, const DGField& dual, const Eos& eos, double tau, bool source) {
  Residual r = make_fields(primal.space_ptr());
  residual_half<K>(primal, dual, eos, tau, source, r.primal);
  residual_half<K>(dual, primal, eos, tau, source, r.dual);
  return r;
}

}  // namespace

Residual residual_2d(const DGField& primal, const DGField& dual, const Eos& eos, double tau_max, bool with_source) {
  require_2d(primal, dual, "residual_2d");
  if (!(tau_max > 0.0)) throw std::invalid_argument("residual_2d: tau_max must be positive");
  switch (primal.space().k()) {
    case 0: return residual_impl<0>(primal, dual, eos, tau_max, with_source);
    case 1: return residual_impl<1>(primal, dual, eos, tau_max, with_source);
    case 2: return residual_impl<2>(primal, dual, eos, tau_max, with_source);
    case 3: return residual_impl<3>(primal, dual, eos, tau_max, with_source);
  }
  throw std::invalid_argument("residual_2d: unsupported degree");
}

Residual residual_2d_standard(const DGField& primal, const DGField& dual, const Eos& eos, double tau_max) {
  return residual_2d(primal, dual, eos, tau_max, false);
}

Residual residual_2d_locally_df(const DGField& primal, const DGField& dual, const Eos& eos, double tau_max) {
  require_2d(primal, dual, "residual_2d_locally_df");
  if (primal.space().k() > 0) {
    for (const DGField* f : {&primal, &dual})
      for (int j = 0; j < f->active(1); ++j)
        for (int i = 0; i < f->active(0); ++i) check_locally_df(*f, i, j);
  }
  return residual_2d(primal, dual, eos, tau_max, true);
}

namespace {

void eval_dyn(const DgSpace& sp, const double* c, int px, int py, double* u) {
  detail::eval_any(sp.num_modes(), c, sp.phi(px, py), u);
}

// Values of the other mesh at the two ends of one interior pairing of the target cell.
struct PairSample {
  ConservedState lo, hi;
};

// Pairing along axis `axis` at transverse catalog point t: the other mesh's values on the
// target's faces (faces = true) or on either side of its interior centre line (faces = false).
PairSample sample_pair(const DGField& opp, const std::array<const double*, 4>& Q, int axis, int t, bool faces,
                       Layout target, int i, int j) {
  const auto& sp = opp.space();
  const auto& pts = sp.pts();
  const int st = t >= pts.N;
  const int ot = pts.half_shift(t);
  const int qlo = axis == 0 ? quad_of(0, st) : quad_of(st, 0);
  const int qhi = axis == 0 ? quad_of(1, st) : quad_of(st, 1);
  const int nlo = faces ? pts.centre() : pts.face_hi();
  const int nhi = faces ? pts.centre() : pts.face_lo();
  PairSample p;
  const int lx = axis == 0 ? nlo : ot, ly = axis == 0 ? ot : nlo;
  const int hx = axis == 0 ? nhi : ot, hy = axis == 0 ? ot : nhi;
  eval_dyn(sp, Q[qlo], lx, ly, p.lo.q.data());
  eval_dyn(sp, Q[qhi], hx, hy, p.hi.q.data());
  try {
    check_point(p.lo.q.data(), qlo, lx, ly);
    check_point(p.hi.q.data(), qhi, hx, hy);
  } catch (const PointFailure& pf) {
    throw detail::locate(opp, target, i, j, pf);
  }
  return p;
}

void speeds_half(const DGField& target, const DGField& opp, const Eos& eos, WaveSpeeds2D& acc) {
  const int NG = 2 * target.space().pts().N;
  for (int j = 0; j < target.active(1); ++j)
    for (int i = 0; i < target.active(0); ++i) {
      const auto Q = detail::overlapping_cells(opp, target.layout(), i, j);
      for (int axis = 0; axis < 2; ++axis)
        for (int t = 0; t < NG; ++t) {
          const PairSample f = sample_pair(opp, Q, axis, t, true, target.layout(), i, j);
          const double a = wave_speed_alpha(f.hi, f.lo, eos, axis);
          const PairSample c = sample_pair(opp, Q, axis, t, false, target.layout(), i, j);
          const double b = std::abs(c.hi[kB1 + axis] - c.lo[kB1 + axis]) /
                           (2.0 * std::sqrt(0.5 * (c.hi.rho() + c.lo.rho())));
          if (!std::isfinite(a) || !std::isfinite(b))
            throw std::runtime_error("wave_speeds_2d: non-finite speed at " + std::string(layout_name(target.layout())) +
                                     " cell (" + std::to_string(i) + ", " + std::to_string(j) + ")");
          if (axis == 0) {
            acc.ahat1 = std::max(acc.ahat1, a);
            acc.beta1 = std::max(acc.beta1, b);
          } else {
            acc.ahat2 = std::max(acc.ahat2, a);
            acc.beta2 = std::max(acc.beta2, b);
          }
        }
    }
}

}  // namespace

WaveSpeeds2D wave_speeds_2d(const DGField& primal, const DGField& dual, const Eos& eos, SchemeVariant variant) {
  require_2d(primal, dual, "wave_speeds_2d");
  WaveSpeeds2D s;
  speeds_half(primal, dual, eos, s);
  speeds_half(dual, primal, eos, s);
  if (variant == SchemeVariant::locally_df_pp) {
    s.a1 = std::max(s.ahat1, s.beta1);
    s.a2 = std::max(s.ahat2, s.beta2);
  } else {
    s.a1 = s.ahat1;
    s.a2 = s.ahat2;
  }
  return s;
}

double max_dt_2d(const WaveSpeeds2D& s, const DgSpace& space, double theta, CflMode mode, double cfl) {
  if (!(theta > 0.0 && theta <= 1.0)) throw std::invalid_argument("max_dt: theta must lie in (0, 1]");
  if (!std::isfinite(s.a1) || !std::isfinite(s.a2)) throw std::runtime_error("max_dt: non-finite wave speed");
  const double rate = std::max(s.a1 / space.mesh().dx() + s.a2 / space.mesh().dy(), 1e-300);
  if (mode == CflMode::practical) return cfl / rate;
  return (1.0 - 1e-3) * 0.5 * theta * space.quad().omega_hat_1() / rate;
}

namespace {

// Gauss-weighted normal-component differences of `opp` over the target cell (i, j): across its
// faces (faces = true, the face-quadrature divergence) or across its interior lines.
double weighted_div(const DGField& opp, Layout target, int i, int j, bool faces) {
  const auto& sp = opp.space();
  if (sp.dim() != 2) throw std::invalid_argument("discrete divergence: 2D fields only");
  const auto& pts = sp.pts();
  const auto Q = detail::overlapping_cells(opp, target, i, j);
  const int nm = sp.num_modes();
  auto comp = [&](int q, int var, int px, int py) {
    const double* phi = sp.phi(px, py);
    const double* c = Q[q] + var * nm;
    double s = 0.0;
    for (int m = 0; m < nm; ++m) s += c[m] * phi[m];
    return s;
  };
  const int lo = faces ? pts.centre() : pts.face_hi();
  const int hi = faces ? pts.centre() : pts.face_lo();
  double dx_part = 0.0, dy_part = 0.0;
  for (int t = 0; t < 2 * pts.N; ++t) {
    const int st = t >= pts.N;
    const int ot = pts.half_shift(t);
    const double w = pts.gauss_w[t];
    dx_part += w * (comp(quad_of(1, st), kB1, hi, ot) - comp(quad_of(0, st), kB1, lo, ot));
    dy_part += w * (comp(quad_of(st, 1), kB2, ot, hi) - comp(quad_of(st, 0), kB2, ot, lo));
  }
  return dx_part / sp.mesh().dx() + dy_part / sp.mesh().dy();
}

}  // namespace

double discrete_div_primal(const DGField& dual, int i, int j) { return weighted_div(dual, Layout::primal, i, j, true); }
double discrete_div_dual(const DGField& primal, int i, int j) { return weighted_div(primal, Layout::dual, i, j, true); }
double tilde_div_primal(const DGField& dual, int i, int j) { return weighted_div(dual, Layout::primal, i, j, false); }
double tilde_div_dual(const DGField& primal, int i, int j) { return weighted_div(primal, Layout::dual, i, j, false); }

double eps_div(const DGField& primal) {
  const auto& sp = primal.space();
  if (sp.dim() != 2 || primal.layout() != Layout::primal) throw std::invalid_argument("eps_div: 2D primal field only");
  const auto& mesh = sp.mesh();
  const auto& pts = sp.pts();
  const int nm = sp.num_modes();
  const int NG = 2 * pts.N;
  const double dx = mesh.dx(), dy = mesh.dy();
  auto bval = [&](int i, int j, int px, int py, double* b) {
    const double* phi = sp.phi(px, py);
    const double* c = primal.cell(i, j);
    for (int d = 0; d < 3; ++d) {
      double s = 0.0;
      for (int m = 0; m < nm; ++m) s += c[(kB1 + d) * nm + m] * phi[m];
      b[d] = s;
    }
  };
  double num = 0.0, den = 0.0;
  const int nx = mesh.nx(), ny = mesh.ny();
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double* c = primal.cell(i, j);
      for (int px = 0; px < NG; ++px)
        for (int py = 0; py < NG; ++py) {
          const double w = pts.gauss_w[px] * pts.gauss_w[py] * dx * dy;
          const double* gx = sp.dphi_dxi(px, py);
          const double* gy = sp.dphi_deta(px, py);
          double div = 0.0;
          for (int m = 0; m < nm; ++m) div += c[kB1 * nm + m] * gx[m] / dx + c[kB2 * nm + m] * gy[m] / dy;
          double b[3];
          bval(i, j, px, py, b);
          num += w * std::abs(div);
          den += w * std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
        }
      // Face to the right of (i, j) and face above it, when they are not the domain boundary.
      const bool has_right = i + 1 < nx || mesh.periodic(0);
      const bool has_top = j + 1 < ny || mesh.periodic(1);
      const int ir = (i + 1) % nx, jt = (j + 1) % ny;
      for (int t = 0; t < NG; ++t) {
        double bl[3], br[3];
        if (has_right) {
          bval(i, j, pts.face_hi(), t, bl);
          bval(ir, j, pts.face_lo(), t, br);
          const double w = pts.gauss_w[t] * dy;
          num += w * std::abs(br[0] - bl[0]);
          den += w * 0.5 * (std::sqrt(bl[0] * bl[0] + bl[1] * bl[1] + bl[2] * bl[2]) +
                            std::sqrt(br[0] * br[0] + br[1] * br[1] + br[2] * br[2]));
        }
        if (has_top) {
          bval(i, j, t, pts.face_hi(), bl);
          bval(i, jt, t, pts.face_lo(), br);
          const double w = pts.gauss_w[t] * dx;
          num += w * std::abs(br[1] - bl[1]);
          den += w * 0.5 * (std::sqrt(bl[0] * bl[0] + bl[1] * bl[1] + bl[2] * bl[2]) +
                            std::sqrt(br[0] * br[0] + br[1] * br[1] + br[2] * br[2]));
        }
      }
    }
  return den > 0.0 ? num / den : 0.0;
}

DivergenceReport divergence_report(const DGField& primal, const DGField& dual) {
  require_2d(primal, dual, "divergence_report");
  DivergenceReport r;
  for (int j = 0; j < primal.active(1); ++j)
    for (int i = 0; i < primal.active(0); ++i) {
      r.div_primal.push_back(discrete_div_primal(dual, i, j));
      r.tilde_div_primal.push_back(tilde_div_primal(dual, i, j));
    }
  for (int j = 0; j < dual.active(1); ++j)
    for (int i = 0; i < dual.active(0); ++i) r.div_dual.push_back(discrete_div_dual(primal, i, j));
  r.eps_div = eps_div(primal);
  return r;
}

}  // namespace ppcdg
