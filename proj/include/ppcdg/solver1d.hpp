#pragma once

#include "ppcdg/field.hpp"

namespace ppcdg {

/// Time derivatives of the modal coefficients, shaped like the solution fields.
using Residual = FieldPair;

/// Weak-form CDG residual on overlapping intervals. Both fields must have their ghosts
/// synced. The constant-mode row of cell j is
///   (avg U^D - avg U^C)/tau - (F1(U^D(x_{j+1/2})) - F1(U^D(x_{j-1/2})))/dx
/// and its mirror for the dual cells. Throws InadmissibleStateError at the first bad point.
Residual residual_1d(const DGField& primal, const DGField& dual, const Eos& eos, double tau_max);

/// Largest alpha_1 over the face pairs of every primal and dual cell.
double wave_speed_1d(const DGField& primal, const DGField& dual, const Eos& eos);

enum class CflMode { theoretical, practical };

/// theoretical: largest dt with a1 dt/dx < theta omega_hat_1 / 2 (shrunk by a 1e-3 margin);
/// practical: dt = cfl dx / a1. tau_max = dt / theta.
double max_dt_1d(double a1, const DgSpace& space, double theta, CflMode mode, double cfl);
double max_dt_1d(const DGField& primal, const DGField& dual, const Eos& eos, double theta, CflMode mode,
                 double cfl);

}  // namespace ppcdg
