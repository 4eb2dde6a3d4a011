#pragma once

#include <cstddef>
#include <utility>

#include "ppcdg/errors.hpp"
#include "ppcdg/field.hpp"

namespace ppcdg {

/// y <- y + a x over the raw storage (ghosts included; the residual has zero ghosts).
inline void axpy(double a, const DGField& x, DGField& y) {
  auto& yd = y.data();
  const auto& xd = x.data();
  for (std::size_t n = 0; n < yd.size(); ++n) yd[n] += a * xd[n];
}
inline void axpy(double a, const FieldPair& x, FieldPair& y) {
  axpy(a, x.primal, y.primal);
  axpy(a, x.dual, y.dual);
}

/// y <- y + c (x - y). Written this way so components with x == y (B1 in 1D) stay bitwise fixed.
inline void blend(double c, const DGField& x, DGField& y) {
  auto& yd = y.data();
  const auto& xd = x.data();
  for (std::size_t n = 0; n < yd.size(); ++n) yd[n] += c * (xd[n] - yd[n]);
}
inline void blend(double c, const FieldPair& x, FieldPair& y) {
  blend(c, x.primal, y.primal);
  blend(c, x.dual, y.dual);
}

inline void axpy(double a, double x, double& y) { y += a * x; }
inline void blend(double c, double x, double& y) { y += c * (x - y); }

/// One Shu-Osher SSP-RK3 step,
///   u1 = u + dt L(u),  u2 = u + 1/4 (u1 + dt L(u1) - u),  u_new = u + 2/3 (u2 + dt L(u2) - u),
/// which is the usual 3/4, 1/4 and 1/3, 2/3 convex form. check_euler(w, stage) sees each
/// forward-Euler result before it is blended; limit(state, stage) runs after every stage.
/// An InadmissibleStateError from any callback is rethrown tagged with its stage index.
template <class State, class Rhs, class CheckEuler, class Limit>
void ssp_rk3_step(State& u, double dt, Rhs&& rhs, CheckEuler&& check_euler, Limit&& limit) {
  int stage = 0;
  try {
    State u1 = u;
    axpy(dt, rhs(u), u1);
    check_euler(u1, stage);
    limit(u1, stage);

    stage = 1;
    State w = u1;
    axpy(dt, rhs(u1), w);
    check_euler(w, stage);
    State u2 = u;
    blend(0.25, w, u2);
    limit(u2, stage);

    stage = 2;
    w = u2;
    axpy(dt, rhs(u2), w);
    check_euler(w, stage);
    State un = u;
    blend(2.0 / 3.0, w, un);
    limit(un, stage);
    u = std::move(un);
  } catch (InadmissibleStateError& e) {
    e.stage = stage;
    throw;
  }
}

}  // namespace ppcdg
