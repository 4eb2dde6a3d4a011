#pragma once

#include <vector>

#include "ppcdg/solver1d.hpp"

namespace ppcdg {

enum class SchemeVariant { standard, locally_df_pp };

/// Standard CDG residual on overlapping rectangles: relaxation toward the other mesh, volume
/// flux term with (2N)^2 Gauss points per cell (N per quarter and axis), and the four face
/// integrals with N Gauss points per half-face using the other mesh's interior values.
/// Ghosts must be synced. In a locally DF space the (B1, B2) rows are projected onto the DF
/// subspace (Galerkin with DF test functions).
Residual residual_2d_standard(const DGField& primal, const DGField& dual, const Eos& eos, double tau_max);

/// Standard residual plus the Godunov-Powell source discretized on the interior lines of each
/// cell where the other mesh's field jumps. Requires locally DF (B1, B2) (or k = 0) and throws
/// std::logic_error if a cell's in-cell divergence is not numerically zero.
Residual residual_2d_locally_df(const DGField& primal, const DGField& dual, const Eos& eos, double tau_max);

/// Either of the above; the source term is included iff with_source.
Residual residual_2d(const DGField& primal, const DGField& dual, const Eos& eos, double tau_max, bool with_source);

struct WaveSpeeds2D {
  double a1 = 0, a2 = 0;        // speeds entering the CFL condition
  double ahat1 = 0, ahat2 = 0;  // max alpha over the face pairs used by the residuals
  double beta1 = 0, beta2 = 0;  // max |[[B_l]]| / (2 sqrt(<rho>)) over interior jump points
};

/// a_l = max(ahat_l, beta_l) for locally_df_pp, a_l = ahat_l for standard.
WaveSpeeds2D wave_speeds_2d(const DGField& primal, const DGField& dual, const Eos& eos, SchemeVariant variant);

/// theoretical: dt with a1 dt/dx + a2 dt/dy = (1 - 1e-3) theta omega_hat_1 / 2;
/// practical: dt = cfl / (a1/dx + a2/dy).
double max_dt_2d(const WaveSpeeds2D& s, const DgSpace& space, double theta, CflMode mode, double cfl);

/// Face-quadrature divergence of the dual field over primal cell (i, j), and vice versa.
double discrete_div_primal(const DGField& dual, int i, int j);
double discrete_div_dual(const DGField& primal, int i, int j);
/// The same quantities built from the jumps across the interior lines of the cell.
double tilde_div_primal(const DGField& dual, int i, int j);
double tilde_div_dual(const DGField& primal, int i, int j);

/// Global relative divergence error of the primal magnetic field: face normal-jump integrals
/// plus in-cell |div B| integrals, over face <|B|> plus in-cell |B| integrals. Counts interior
/// faces and, on periodic axes, the wrap-around faces. Returns 0 for a zero field.
double eps_div(const DGField& primal);

struct DivergenceReport {
  std::vector<double> div_primal;        // per active primal cell, row-major
  std::vector<double> div_dual;          // per active dual cell
  std::vector<double> tilde_div_primal;  // per active primal cell
  double eps_div = 0.0;
};

DivergenceReport divergence_report(const DGField& primal, const DGField& dual);

}  // namespace ppcdg
