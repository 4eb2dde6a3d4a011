#include "doctest.h"

#include <cmath>
#include <random>

#include "ppcdg/mhd.hpp"
#include "ppcdg/verification.hpp"
#include "test_util.hpp"

using namespace ppcdg;
using testutil::prim;

namespace {

// Textbook ideal MHD flux from primitives, written out component by component.
Vec8 flux_oracle(const PrimitiveState& w, double gamma, int i) {
  const double b2 = dot3(w.B, w.B), v2 = dot3(w.v, w.v);
  const double E = w.p / (gamma - 1.0) + 0.5 * w.rho * v2 + 0.5 * b2;
  const double pt = w.p + 0.5 * b2;
  const double vb = dot3(w.v, w.B);
  Vec8 f{};
  f[0] = w.rho * w.v[i];
  for (int d = 0; d < 3; ++d) {
    f[1 + d] = w.rho * w.v[i] * w.v[d] - w.B[i] * w.B[d] + (d == i ? pt : 0.0);
    f[4 + d] = w.v[i] * w.B[d] - w.B[i] * w.v[d];
  }
  f[7] = (E + pt) * w.v[i] - w.B[i] * vb;
  return f;
}

}  // namespace

TEST_CASE("internal energy and admissibility") {
  ConservedState u(Vec8{2.0, 2.0, 0.0, 4.0, 1.0, 0.0, 2.0, 10.0});
  // 10 - (4 + 16)/(2*2) - (1 + 4)/2
  CHECK(internal_energy_density(u) == doctest::Approx(2.5));
  CHECK(admissible(ConservedState(Vec8{1, 0, 0, 0, 0, 0, 0, 1})));
  CHECK_FALSE(admissible(ConservedState(Vec8{1, 0, 0, 0, 1, 0, 0, 0.5})));
  CHECK_FALSE(admissible(ConservedState(Vec8{0, 0, 0, 0, 0, 0, 0, 1})));
  CHECK_FALSE(admissible(ConservedState(Vec8{1, 0, 0, 0, 0, 0, 0, NAN})));
  CHECK(admissible(counterexample_state(0, 0.1, 0.1, 8.0, 5.0 / 3.0)));
}

TEST_CASE("primitive round trip") {
  const Eos eos{1.4};
  const ConservedState u = prim(0.7, {1, -2, 3}, {0.5, 0.1, -1}, 2.0, 1.4);
  const PrimitiveState w = to_primitive(u, eos);
  CHECK(w.rho == doctest::Approx(0.7));
  CHECK(w.v[1] == doctest::Approx(-2.0));
  CHECK(w.B[2] == doctest::Approx(-1.0));
  CHECK(w.p == doctest::Approx(2.0));
  CHECK(pressure(u, eos) == doctest::Approx(2.0));
}

TEST_CASE("flux examples") {
  const double g = 5.0 / 3.0, p = 0.3;
  const Eos eos{g};
  const Vec8 rest = flux(ConservedState(Vec8{1, 0, 0, 0, 0, 0, 0, p / (g - 1)}), eos, 0);
  const Vec8 want_rest{0, p, 0, 0, 0, 0, 0, 0};
  for (int v = 0; v < kNumVars; ++v) CHECK(rest[v] == doctest::Approx(want_rest[v]));

  const Vec8 f = flux(ConservedState(Vec8{1, 1, 0, 0, 1, 0, 0, 1 + p / (g - 1)}), eos, 0);
  const Vec8 want{1, p + 0.5, 0, 0, 0, 0, 0, g * p / (g - 1) + 0.5};
  for (int v = 0; v < kNumVars; ++v) CHECK(f[v] == doctest::Approx(want[v]).epsilon(1e-14));
}

TEST_CASE("flux matches the primitive-form oracle and F_i has no B_i component") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3), pos(0.1, 5);
  for (int s = 0; s < 500; ++s) {
    const double g = 1.1 + 0.1 * pos(rng);
    PrimitiveState w;
    w.rho = pos(rng);
    w.p = pos(rng);
    for (int d = 0; d < 3; ++d) {
      w.v[d] = u(rng);
      w.B[d] = u(rng);
    }
    const ConservedState U = to_conserved(w, Eos{g});
    for (int i = 0; i < 3; ++i) {
      const Vec8 f = flux(U, Eos{g}, i), o = flux_oracle(w, g, i);
      for (int v = 0; v < kNumVars; ++v) REQUIRE(f[v] == doctest::Approx(o[v]).epsilon(1e-11).scale(1.0));
      REQUIRE(f[kB1 + i] == 0.0);
    }
  }
  CHECK_THROWS_AS(flux(ConservedState(Vec8{0, 0, 0, 0, 0, 0, 0, 1}), Eos{}, 0), std::domain_error);
}

TEST_CASE("Godunov-Powell source") {
  const Vec8 z = godunov_source(ConservedState(Vec8{2, 0, 0, 0, 0, 0, 0, 3}));
  for (double x : z) CHECK(x == 0.0);
  const Vec8 s = godunov_source(ConservedState(Vec8{1, 1, 0, 0, 0, 1, 0, 5}));
  const Vec8 want{0, 0, 1, 0, 1, 0, 0, 0};
  for (int v = 0; v < kNumVars; ++v) CHECK(s[v] == want[v]);
  std::mt19937_64 rng(3);
  for (int n = 0; n < 100; ++n) CHECK(godunov_source(random_admissible(rng, Eos{}))[kRho] == 0.0);
}

TEST_CASE("GQL value") {
  const ConservedState u = prim(1.3, {0.2, -1, 0.5}, {1, 2, -0.3}, 0.8);
  CHECK(gql_value(u, AuxiliaryPair{}) == doctest::Approx(u.E()));
  const PrimitiveState w = to_primitive(u, Eos{});
  CHECK(gql_value(u, AuxiliaryPair{w.v, w.B}) == doctest::Approx(internal_energy_density(u)).epsilon(1e-12));

  // The own (v, B) is the minimizer over the auxiliary variables.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> a(-20, 20);
  const double re = internal_energy_density(u);
  for (int n = 0; n < 10000; ++n) {
    AuxiliaryPair aux;
    for (int d = 0; d < 3; ++d) {
      aux.v_star[d] = a(rng);
      aux.B_star[d] = a(rng);
    }
    REQUIRE(gql_value(u, aux) >= re * (1 - 1e-12));
  }
}

TEST_CASE("wave speed alpha") {
  const double g = 5.0 / 3.0;
  const Eos eos{g};
  const ConservedState rest = prim(1, {0, 0, 0}, {0, 0, 0}, 1, g);
  CHECK(gql_directional_speed(rest, eos, 0) == doctest::Approx(std::sqrt(1.0 / 3.0)));
  CHECK(wave_speed_alpha(rest, rest, eos, 0) == doctest::Approx(std::sqrt(1.0 / 3.0)));

  // Equal states: no jump term, the max of |v_i| + C_i.
  const ConservedState u = prim(2, {1.5, 0, 0}, {0.3, 1, 0}, 0.5, g);
  CHECK(wave_speed_alpha(u, u, eos, 0) == doctest::Approx(1.5 + gql_directional_speed(u, eos, 0)));

  for (double tp : {1e-2, 1e-4}) {
    const ConservedState s[3] = {counterexample_state(0, tp, 0.5, 8, g), counterexample_state(1, tp, 0.5, 8, g),
                                 counterexample_state(2, tp, 0.5, 8, g)};
    for (const auto& x : s)
      for (const auto& y : s) CHECK(wave_speed_alpha(x, y, eos, 0) < 5.0);
  }
  CHECK_THROWS_AS(wave_speed_alpha(ConservedState(Vec8{1, 0, 0, 0, 1, 0, 0, 0.5}), rest, eos, 0), std::domain_error);
}

TEST_CASE("spectral radius") {
  const double g = 1.4;
  const Eos eos{g};
  CHECK(spectral_radius(prim(2, {0, 0, 0}, {0, 0, 0}, 3, g), eos, 1) == doctest::Approx(std::sqrt(g * 3 / 2)));
  // B along x with |B|^2/rho = c_s^2: the discriminant vanishes.
  const double rho = 2, p = 3, cs = std::sqrt(g * p / rho);
  const ConservedState u = prim(rho, {-0.5, 1, 0}, {cs * std::sqrt(rho), 0, 0}, p, g);
  CHECK(spectral_radius(u, eos, 0) == doctest::Approx(0.5 + cs));

  std::mt19937_64 rng(5);
  for (int n = 0; n < 2000; ++n) {
    const ConservedState w = random_admissible(rng, eos);
    const double c = std::sqrt(g * pressure(w, eos) / w.rho());
    for (int i = 0; i < 3; ++i) REQUIRE(spectral_radius(w, eos, i) >= c * (1 - 1e-12));
  }
}

TEST_CASE("GQL equivalence on raw 8-vectors") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-5, 5), r(1e-3, 5);
  int agree = 0;
  for (int n = 0; n < 100000; ++n) {
    Vec8 q;
    for (double& x : q) x = u(rng);
    q[kRho] = r(rng);
    const ConservedState U(q);
    const Vec3 v{q[kM1] / q[kRho], q[kM2] / q[kRho], q[kM3] / q[kRho]};
    const bool gql = gql_value(U, AuxiliaryPair{v, U.B()}) > 0.0;
    agree += gql == admissible(U);
  }
  CHECK(agree == 100000);
}

TEST_CASE("convexity of the admissible set") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> lam(0, 1);
  const Eos eos{};
  for (int n = 0; n < 20000; ++n) {
    const ConservedState a = random_admissible(rng, eos), b = random_admissible(rng, eos);
    const double l = lam(rng);
    ConservedState c;
    for (int v = 0; v < kNumVars; ++v) c[v] = l * a[v] + (1 - l) * b[v];
    // rho e is concave, so the combination of the two rho e values bounds it from below.
    const double lo = l * internal_energy_density(a) + (1 - l) * internal_energy_density(b);
    REQUIRE(internal_energy_density(c) >= lo - 1e-13 * std::abs(c.E()));
  }
}
