#pragma once

// Shared inner-loop helpers for the residual, wave-speed and limiter kernels.

#include <array>
#include <climits>
#include <cmath>
#include <exception>

#include "ppcdg/errors.hpp"
#include "ppcdg/field.hpp"

namespace ppcdg::detail {

/// Raised inside kernels; translated to InadmissibleStateError with a physical location.
struct PointFailure {
  int q;       // which opposite cell (quadrant index qx + 2 qy), or -1 for the target itself
  int px, py;  // catalog point in that cell
  const char* constraint;
  double value;
};

template <int NM>
inline void eval_point(const double* c, const double* phi, double* u) {
  for (int v = 0; v < kNumVars; ++v) {
    double s = 0.0;
    for (int m = 0; m < NM; ++m) s += c[v * NM + m] * phi[m];
    u[v] = s;
  }
}

/// eval_point for a runtime mode count, dispatching to the same unrolled code.
inline void eval_any(int nm, const double* c, const double* phi, double* u) {
  switch (nm) {
    case 1: return eval_point<1>(c, phi, u);
    case 2: return eval_point<2>(c, phi, u);
    case 3: return eval_point<3>(c, phi, u);
    case 4: return eval_point<4>(c, phi, u);
    case 6: return eval_point<6>(c, phi, u);
    case 10: return eval_point<10>(c, phi, u);
  }
  for (int v = 0; v < kNumVars; ++v) {
    double s = 0.0;
    for (int m = 0; m < nm; ++m) s += c[v * nm + m] * phi[m];
    u[v] = s;
  }
}

inline double rho_e_of(const double* u) {
  return u[kE] - 0.5 * (u[kM1] * u[kM1] + u[kM2] * u[kM2] + u[kM3] * u[kM3]) / u[kRho] -
         0.5 * (u[kB1] * u[kB1] + u[kB2] * u[kB2] + u[kB3] * u[kB3]);
}

inline void check_point(const double* u, int q, int px, int py) {
  if (!(u[kRho] > 0.0)) {
    throw PointFailure{q, px, py, std::isfinite(u[kRho]) ? "density" : "non_finite", u[kRho]};
  }
  const double re = rho_e_of(u);
  if (!(re > 0.0)) throw PointFailure{q, px, py, std::isfinite(re) ? "internal_energy" : "non_finite", re};
}

/// F_dir(U) for an admissible point value (no checks).
inline void flux_dir(const double* u, double gm1, int dir, double* f) {
  const double rho = u[kRho];
  const double v[3] = {u[kM1] / rho, u[kM2] / rho, u[kM3] / rho};
  const double b2 = u[kB1] * u[kB1] + u[kB2] * u[kB2] + u[kB3] * u[kB3];
  const double m2 = u[kM1] * u[kM1] + u[kM2] * u[kM2] + u[kM3] * u[kM3];
  const double p = gm1 * (u[kE] - 0.5 * m2 / rho - 0.5 * b2);
  const double ptot = p + 0.5 * b2;
  const double vi = v[dir], bi = u[kB1 + dir];
  const double vb = v[0] * u[kB1] + v[1] * u[kB2] + v[2] * u[kB3];
  f[kRho] = u[kM1 + dir];
  for (int d = 0; d < 3; ++d) {
    f[kM1 + d] = vi * u[kM1 + d] - bi * u[kB1 + d];
    f[kB1 + d] = vi * u[kB1 + d] - bi * v[d];
  }
  f[kM1 + dir] += ptot;
  f[kB1 + dir] = 0.0;
  f[kE] = vi * (u[kE] + ptot) - bi * vb;
}

/// F_1 and F_2 sharing the primitive recovery.
inline void flux_xy(const double* u, double gm1, double* f1, double* f2) {
  const double rho = u[kRho];
  const double v[3] = {u[kM1] / rho, u[kM2] / rho, u[kM3] / rho};
  const double b2 = u[kB1] * u[kB1] + u[kB2] * u[kB2] + u[kB3] * u[kB3];
  const double m2 = u[kM1] * u[kM1] + u[kM2] * u[kM2] + u[kM3] * u[kM3];
  const double p = gm1 * (u[kE] - 0.5 * m2 / rho - 0.5 * b2);
  const double ptot = p + 0.5 * b2;
  const double vb = v[0] * u[kB1] + v[1] * u[kB2] + v[2] * u[kB3];
  const double eh = u[kE] + ptot;
  f1[kRho] = u[kM1];
  f2[kRho] = u[kM2];
  for (int d = 0; d < 3; ++d) {
    f1[kM1 + d] = v[0] * u[kM1 + d] - u[kB1] * u[kB1 + d];
    f2[kM1 + d] = v[1] * u[kM1 + d] - u[kB2] * u[kB1 + d];
    f1[kB1 + d] = v[0] * u[kB1 + d] - u[kB1] * v[d];
    f2[kB1 + d] = v[1] * u[kB1 + d] - u[kB2] * v[d];
  }
  f1[kM1] += ptot;
  f2[kM2] += ptot;
  f1[kB1] = 0.0;
  f2[kB2] = 0.0;
  f1[kE] = v[0] * eh - u[kB1] * vb;
  f2[kE] = v[1] * eh - u[kB2] * vb;
}

/// The four (2D) or two (1D) cells of the other mesh overlapping cell (i, j) of a field with
/// layout `target`. Index q = qx + 2 qy with qx, qy = 0 for the lower-left neighbour.
inline std::array<const double*, 4> overlapping_cells(const DGField& opp, Layout target, int i, int j) {
  const int s = target == Layout::primal ? 0 : -1;
  std::array<const double*, 4> q{};
  if (opp.space().dim() == 1) {
    q[0] = opp.cell(i + s, 0);
    q[1] = opp.cell(i + s + 1, 0);
    return q;
  }
  for (int qy = 0; qy < 2; ++qy)
    for (int qx = 0; qx < 2; ++qx) q[qx + 2 * qy] = opp.cell(i + s + qx, j + s + qy);
  return q;
}

inline void overlapping_index(Layout target, int i, int j, int q, int dim, int& oi, int& oj) {
  const int s = target == Layout::primal ? 0 : -1;
  oi = i + s + (q & 1);
  oj = dim == 1 ? 0 : j + s + (q >> 1);
}

/// Converts a kernel failure in the overlapping cell q of target cell (i, j) to a located error.
InadmissibleStateError locate(const DGField& opp, Layout target, int i, int j, const PointFailure& pf);

/// Runs body(i, j) over [0, ni) x [0, nj), possibly in parallel. If any iteration throws, the
/// exception of the lowest linear index is rethrown after the loop, so reports are deterministic.
template <class Body>
void for_cells(int ni, int nj, Body&& body) {
  long first = LONG_MAX;
  std::exception_ptr err;
  const long total = static_cast<long>(ni) * nj;
#pragma omp parallel for schedule(static)
  for (long idx = 0; idx < total; ++idx) {
    try {
      body(static_cast<int>(idx % ni), static_cast<int>(idx / ni));
    } catch (...) {
#pragma omp critical(ppcdg_for_cells)
      if (idx < first) {
        first = idx;
        err = std::current_exception();
      }
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace ppcdg::detail
