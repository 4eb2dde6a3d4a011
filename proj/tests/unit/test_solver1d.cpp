#include "doctest.h"

#include <cmath>
#include <random>

#include "ppcdg/limiter.hpp"
#include "ppcdg/runner.hpp"
#include "ppcdg/solver1d.hpp"
#include "ppcdg/timeloop.hpp"
#include "test_util.hpp"

using namespace ppcdg;
using namespace testutil;

namespace {

// Smooth periodic 1D state with constant B1.
ConservedState wave(double x) {
  return prim(1 + 0.3 * std::sin(2 * M_PI * x), {0.5 + 0.2 * std::cos(2 * M_PI * x), 0.1, 0},
              {0.7, 0.3 * std::sin(2 * M_PI * x), 0.2}, 1 + 0.2 * std::cos(2 * M_PI * x));
}

double total(const FieldPair& u, int v) {
  const auto& sp = u.primal.space();
  double s = 0.0;
  for (int i = 0; i < u.primal.active(0); ++i) s += 0.5 * u.primal.average(i)[v] * sp.mesh().dx();
  for (int i = 0; i < u.dual.active(0); ++i) s += 0.5 * u.dual.average(i)[v] * sp.mesh().dx();
  return s;
}

}  // namespace

TEST_CASE("uniform state has zero residual") {
  const Eos eos{1.4};
  const ConservedState c = prim(0.8, {1, -0.5, 0.2}, {0.3, 1, -1}, 2, 1.4);
  for (int k = 0; k <= 3; ++k) {
    FieldPair u = project_initial([&](double, double) { return c; }, periodic_line(6, k));
    const Residual r = residual_1d(u.primal, u.dual, eos, 0.01);
    for (const DGField* f : {&r.primal, &r.dual})
      for (int i = 0; i < f->active(0); ++i)
        for (int v = 0; v < kNumVars; ++v)
          for (int m = 0; m <= k; ++m) CHECK(std::abs(f->coeff(i, 0, v, m)) < 1e-11);
  }
}

TEST_CASE("B1 residual vanishes for any input") {
  std::mt19937_64 rng(3);
  const Eos eos{};
  auto sp = periodic_line(8, 2);
  FieldPair u = make_fields(sp);
  perturb(u.primal, prim(1, {0, 0, 0}, {0.5, 0, 0}, 1), 0.2, rng);
  perturb(u.dual, prim(1, {0, 0, 0}, {-0.5, 0, 0}, 1), 0.2, rng);
  const Residual r = residual_1d(u.primal, u.dual, eos, 0.05);
  for (const DGField* f : {&r.primal, &r.dual})
    for (int i = 0; i < f->active(0); ++i)
      for (int m = 0; m < 3; ++m) CHECK(f->coeff(i, 0, kB1, m) == 0.0);
}

TEST_CASE("k = 0 residual is the Lax-Friedrichs-like form") {
  std::mt19937_64 rng(9);
  const Eos eos{5.0 / 3.0};
  auto sp = periodic_line(5, 0);
  FieldPair u = make_fields(sp);
  perturb(u.primal, prim(1, {0.2, 0, 0}, {0.5, 0.1, 0}, 1), 0.3, rng);
  perturb(u.dual, prim(1, {0.2, 0, 0}, {0.5, 0.1, 0}, 1), 0.3, rng);
  const double tau = 0.037, dx = sp->mesh().dx();
  const Residual r = residual_1d(u.primal, u.dual, eos, tau);
  for (int j = 0; j < 5; ++j) {
    // Primal cell j spans dual cells j (left half) and j + 1 (right half).
    const ConservedState dl = u.dual.average(j), dr = u.dual.average((j + 1) % 5);
    const Vec8 fl = flux(dl, eos, 0), fr = flux(dr, eos, 0);
    // B1 is held fixed in 1D, so its row is zero rather than the relaxation term.
    for (int v : {kRho, kM1, kM2, kM3, kB2, kB3, kE}) {
      const double want = (0.5 * (dl[v] + dr[v]) - u.primal.average(j)[v]) / tau - (fr[v] - fl[v]) / dx;
      CHECK(r.primal.coeff(j, 0, v, 0) == doctest::Approx(want).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("1D time step") {
  auto sp = periodic_line(10, 2);
  const double dx = sp->mesh().dx(), a = 3.0;
  const double th = max_dt_1d(a, *sp, 1.0, CflMode::theoretical, 0.25);
  CHECK(th < dx / (12 * a));
  CHECK(th > 0.99 * dx / (12 * a));
  CHECK(max_dt_1d(a, *sp, 1.0, CflMode::practical, 0.25) == doctest::Approx(0.25 * dx / a));
  CHECK(max_dt_1d(2 * a, *sp, 1.0, CflMode::practical, 0.25) == doctest::Approx(0.5 * 0.25 * dx / a));
  CHECK(max_dt_1d(2 * a, *sp, 1.0, CflMode::theoretical, 0.25) == doctest::Approx(0.5 * th));
  CHECK_THROWS(max_dt_1d(a, *sp, 0.0, CflMode::practical, 0.25));
}

TEST_CASE("wave speed of a uniform field is alpha(U, U)") {
  const Eos eos{};
  const ConservedState c = prim(2, {0.5, 0, 0}, {1, 1, 0}, 1);
  FieldPair u = project_initial([&](double, double) { return c; }, periodic_line(4, 1));
  CHECK(wave_speed_1d(u.primal, u.dual, eos) == doctest::Approx(wave_speed_alpha(c, c, eos, 0)));
}

TEST_CASE("periodic conservation and B1 constancy over SSP-RK3 steps") {
  const Eos eos{5.0 / 3.0};
  auto sp = periodic_line(32, 2);
  FieldPair u = project_initial([](double x, double) { return wave(x); }, sp);
  std::vector<double> b1_primal, b1_dual;
  for (int i = 0; i < 32; ++i)
    for (int m = 0; m < 3; ++m) {
      b1_primal.push_back(u.primal.coeff(i, 0, kB1, m));
      b1_dual.push_back(u.dual.coeff(i, 0, kB1, m));
    }
  for (int step = 0; step < 10; ++step) {
    const double dt = max_dt_1d(u.primal, u.dual, eos, 1.0, CflMode::theoretical, 0.25);
    std::array<double, kNumVars> before;
    for (int v = 0; v < kNumVars; ++v) before[v] = total(u, v);
    ssp_rk3_step(
        u, dt, [&](const FieldPair& s) { return residual_1d(s.primal, s.dual, eos, dt); },
        [](const FieldPair&, int) {},
        [](FieldPair& s, int) {
          pp_limit(s.primal);
          pp_limit(s.dual);
        });
    for (int v : {kRho, kM1, kM2, kM3, kB2, kB3, kE})
      REQUIRE(std::abs(total(u, v) - before[v]) <= 1e-12 * std::abs(before[v]) + 1e-15);
  }
  int n = 0;
  for (int i = 0; i < 32; ++i)
    for (int m = 0; m < 3; ++m, ++n) {
      CHECK(u.primal.coeff(i, 0, kB1, m) == b1_primal[n]);
      CHECK(u.dual.coeff(i, 0, kB1, m) == b1_dual[n]);
    }
}

TEST_CASE("near-vacuum Riemann problem stays admissible with the theoretical time step") {
  RunConfig c;
  c.problem = "riemann_vacuum";
  c.nx = 100;
  c.k = 2;
  c.cfl_mode = CflMode::theoretical;
  const RunResult r = run(c);
  REQUIRE(r.exit_code == 0);
  CHECK(r.t == doctest::Approx(0.1));
  for (const DiagnosticsRow& d : r.diagnostics) {
    REQUIRE(d.min_rho > 0.0);
    REQUIRE(d.min_p > 0.0);
  }
}
