#include "ppcdg/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kernels.hpp"
#include "ppcdg/errors.hpp"

namespace ppcdg {

std::vector<std::pair<int, int>> limiter_points(const DgSpace& space) {
  const RefPoints& pts = space.pts();
  std::vector<int> gauss, lobatto;
  for (int s = 0; s < 2; ++s) {
    for (int mu = 0; mu < pts.N; ++mu) gauss.push_back(pts.gauss(s, mu));
    for (int nu = 0; nu < pts.L; ++nu) lobatto.push_back(pts.lobatto(s, nu));
  }
  std::vector<std::pair<int, int>> out;
  if (space.dim() == 1) {
    for (int p : lobatto) out.emplace_back(p, 0);
    for (int p : gauss) out.emplace_back(p, 0);
    return out;
  }
  for (int a : gauss)
    for (int b : lobatto) out.emplace_back(a, b);
  for (int a : lobatto)
    for (int b : gauss) out.emplace_back(a, b);
  for (int a : gauss)
    for (int b : gauss) out.emplace_back(a, b);
  return out;
}

namespace {

void scale_deviation(double* c, int nm, int v, double theta) {
  for (int m = 1; m < nm; ++m) c[v * nm + m] *= theta;
}

// Largest t in [0, 1] with rho_e(ubar + t (u - ubar)) >= eps, by bisection. rho_e is concave
// along the segment and rho_e(ubar) >= eps, so the feasible set is an interval containing 0.
double energy_root(const double* ubar, const double* u, double eps) {
  double d[kNumVars], w[kNumVars];
  for (int v = 0; v < kNumVars; ++v) d[v] = u[v] - ubar[v];
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 64 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    for (int v = 0; v < kNumVars; ++v) w[v] = ubar[v] + mid * d[v];
    if (w[kRho] > 0.0 && detail::rho_e_of(w) >= eps)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

struct CellResult {
  bool limited = false;
  double theta = 1.0;
  double min_rho = std::numeric_limits<double>::infinity();
  double min_re = std::numeric_limits<double>::infinity();
};

// Largest |phi_m| over the catalog, for a bound on the rounding noise of point values.
double max_abs_phi(const DgSpace& sp, const std::vector<std::pair<int, int>>& pts) {
  double m = 0.0;
  for (auto [px, py] : pts)
    for (int a = 0; a < sp.num_modes(); ++a) m = std::max(m, std::abs(sp.phi(px, py)[a]));
  return m;
}

// Point values of rho and rho e at every limiter point, with their minima.
struct PointScan {
  double rmin = std::numeric_limits<double>::infinity();
  double remin = std::numeric_limits<double>::infinity();
};

PointScan scan(const DgSpace& sp, const double* c, const std::vector<const double*>& phis, double* uall) {
  PointScan s;
  const int nm = sp.num_modes();
  for (std::size_t p = 0; p < phis.size(); ++p) {
    double* u = uall + p * kNumVars;
    detail::eval_any(nm, c, phis[p], u);
    s.rmin = std::min(s.rmin, u[kRho]);
    s.remin = std::min(s.remin, detail::rho_e_of(u));
  }
  return s;
}

bool points_ok(const DgSpace& sp, const double* c, const std::vector<const double*>& phis, double rho_min,
               double re_min) {
  double u[kNumVars];
  for (const double* phi : phis) {
    detail::eval_any(sp.num_modes(), c, phi, u);
    if (!(u[kRho] >= rho_min)) return false;
    if (re_min > -1.0 && !(detail::rho_e_of(u) >= re_min)) return false;
  }
  return true;
}

CellResult limit_cell(const DgSpace& sp, double* c, const std::vector<const double*>& phis,
                      const LimiterParams& params, double phimax, std::vector<double>& work) {
  const int nm = sp.num_modes();
  CellResult res;
  double ubar[kNumVars];
  for (int v = 0; v < kNumVars; ++v) ubar[v] = c[v * nm];
  const double rbar = ubar[kRho];
  const double rebar = detail::rho_e_of(ubar);
  if (nm == 1) {
    res.min_rho = rbar;
    res.min_re = rebar;
    return res;
  }
  // rho e is a difference of O(E) terms, so its point values carry rounding noise of order
  // 1e-16 |E|. The energy floor sits well above that noise unless the average itself does not.
  double scale = 0.0;
  for (int m = 0; m < nm; ++m) scale += std::abs(c[kE * nm + m]);
  const double noise = 1e-12 * scale * phimax;
  const double eps_rho = std::min(params.eps_cap, rbar);
  const double eps_re = std::min(std::max(params.eps_cap, noise), rebar);

  work.resize(phis.size() * kNumVars);
  double* uall = work.data();
  PointScan s = scan(sp, c, phis, uall);
  if (s.rmin >= eps_rho && s.remin >= eps_re) {
    res.min_rho = s.rmin;
    res.min_re = s.remin;
    return res;
  }

  // Stage 1: density.
  if (!(s.rmin >= eps_rho)) {
    double t1 = rbar > s.rmin ? std::clamp((rbar - eps_rho) / (rbar - s.rmin), 0.0, 1.0) : 0.0;
    scale_deviation(c, nm, kRho, t1);
    // Rounding can leave a point a hair below the floor; shrink until the evaluated values agree.
    while (t1 > 0.0 && !points_ok(sp, c, phis, 0.5 * eps_rho, -2.0)) {
      const double shrink = t1 > 1e-12 ? 0.5 : 0.0;
      scale_deviation(c, nm, kRho, shrink);
      t1 *= shrink;
    }
    res.limited = true;
    res.theta = t1;
    s = scan(sp, c, phis, uall);
  }

  // Stage 2: all eight components jointly.
  double t2 = 1.0;
  if (rebar <= noise) {
    // The average is within rounding of the boundary; only the constant state is safe.
    bool need = false;
    for (int v = 0; v < kNumVars && !need; ++v)
      for (int m = 1; m < nm; ++m) need = need || c[v * nm + m] != 0.0;
    if (need) {
      for (int v = 0; v < kNumVars; ++v) scale_deviation(c, nm, v, 0.0);
      t2 = 0.0;
    }
  } else if (!(s.remin >= eps_re)) {
    for (std::size_t p = 0; p < phis.size(); ++p) {
      const double* u = uall + p * kNumVars;
      if (!(detail::rho_e_of(u) >= eps_re)) t2 = std::min(t2, energy_root(ubar, u, eps_re));
    }
    if (t2 < 1.0) {
      for (int v = 0; v < kNumVars; ++v) scale_deviation(c, nm, v, t2);
      while (t2 > 0.0 && !points_ok(sp, c, phis, 0.5 * eps_rho, 0.5 * eps_re)) {
        const double shrink = t2 > 1e-12 ? 0.5 : 0.0;
        for (int v = 0; v < kNumVars; ++v) scale_deviation(c, nm, v, shrink);
        t2 *= shrink;
      }
    }
  }
  if (t2 < 1.0) {
    res.limited = true;
    res.theta = std::min(res.theta, t2);
  }
  s = scan(sp, c, phis, uall);
  res.min_rho = s.rmin;
  res.min_re = s.remin;
  return res;
}

// Tabulated basis values at the limiter points, with repeated locations removed (the half-cell
// Lobatto sets share the centre).
std::vector<const double*> limiter_phis(const DgSpace& sp) {
  std::vector<const double*> out;
  std::vector<std::pair<double, double>> seen;
  const auto& xi = sp.pts().xi;
  for (auto [px, py] : limiter_points(sp)) {
    const std::pair<double, double> at{xi[px], sp.dim() == 1 ? 0.0 : xi[py]};
    if (std::find(seen.begin(), seen.end(), at) != seen.end()) continue;
    seen.push_back(at);
    out.push_back(sp.phi(px, py));
  }
  return out;
}

}  // namespace

LimiterStats pp_limit(DGField& f, const LimiterParams& params) {
  const DgSpace& sp = f.space();
  const auto pts = limiter_points(sp);
  const auto phis = limiter_phis(sp);
  const double phimax = max_abs_phi(sp, pts);
  const int ni = f.active(0), nj = f.active(1);
  std::vector<CellResult> results(static_cast<std::size_t>(ni) * nj);
  detail::for_cells(ni, nj, [&](int i, int j) {
    const ConservedState avg = f.average(i, j);
    if (!admissible(avg)) {
      const double re = internal_energy_density(avg);
      const char* what = !std::isfinite(avg.rho()) || !std::isfinite(re) ? "non_finite"
                         : avg.rho() > 0.0                               ? "internal_energy"
                                                                         : "density";
      throw InadmissibleStateError(f.layout(), i, j, f.centre_x(i), f.centre_y(j), what,
                                   avg.rho() > 0.0 ? re : avg.rho());
    }
    thread_local std::vector<double> work;
    results[static_cast<std::size_t>(j) * ni + i] = limit_cell(sp, f.cell(i, j), phis, params, phimax, work);
  });
  LimiterStats st;
  for (const CellResult& r : results) {
    if (r.limited) ++st.limited_cells;
    st.min_theta = std::min(st.min_theta, r.theta);
    st.min_rho = std::min(st.min_rho, r.min_rho);
    st.min_rho_e = std::min(st.min_rho_e, r.min_re);
  }
  sync_ghosts(f);
  return st;
}

DGField pp_limited(const DGField& f, const LimiterParams& params) {
  DGField g = f;
  pp_limit(g, params);
  return g;
}

PointExtrema point_extrema(const DGField& f, const Eos& eos) {
  const DgSpace& sp = f.space();
  const auto phis = limiter_phis(sp);
  const int nm = sp.num_modes();
  PointExtrema e{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  double u[kNumVars];
  for (int j = 0; j < f.active(1); ++j)
    for (int i = 0; i < f.active(0); ++i)
      for (const double* phi : phis) {
        detail::eval_any(nm, f.cell(i, j), phi, u);
        e.min_rho = std::min(e.min_rho, u[kRho]);
        e.min_p = std::min(e.min_p, eos.pressure_from_internal(detail::rho_e_of(u)));
      }
  return e;
}

}  // namespace ppcdg
