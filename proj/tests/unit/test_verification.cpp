#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "ppcdg/verification.hpp"

using namespace ppcdg;

TEST_CASE("fuzz batteries pass and are deterministic") {
  const FuzzReport a = fuzz_lemmas(7, 2000);
  CHECK(a.passed());
  CHECK(a.results.size() == fuzz_batteries().size());
  for (const FuzzResult& r : a.results) {
    INFO(r.battery);
    CHECK(r.samples == 2000);
    CHECK(r.checks >= r.samples);
    CHECK(r.violations == 0);
    CHECK(r.first_counterexample.empty());
  }
  const FuzzReport b = fuzz_lemmas(7, 2000);
  CHECK(a.to_json() == b.to_json());
  const auto j = nlohmann::json::parse(a.to_json());
  CHECK(j["seed"] == 7);

  const FuzzReport one = fuzz_lemmas(3, 100, {"gql"});
  REQUIRE(one.results.size() == 1);
  CHECK(one.results[0].battery == "gql");
  CHECK_THROWS_AS(fuzz_lemmas(1, 10, {"no_such_battery"}), std::invalid_argument);
}

TEST_CASE("random admissible draws are admissible") {
  std::mt19937_64 rng(11);
  const Eos eos{5.0 / 3.0};
  for (int n = 0; n < 10000; ++n) {
    const ConservedState u = random_admissible(rng, eos);
    REQUIRE(u.rho() > 0);
    const PrimitiveState w = to_primitive(u, eos);
    CHECK(w.p > 0);
  }
}

TEST_CASE("counterexample states are admissible with div = eps / dx") {
  CounterexampleParams p;
  const CounterexampleReport r = run_counterexample(p);
  CHECK(r.inputs_admissible);
  CHECK(r.delta == doctest::Approx(1.0));
  CHECK(r.div_primal == doctest::Approx(p.eps / p.dx).epsilon(1e-12));
  CHECK(r.tilde_div_primal == doctest::Approx(r.div_primal).epsilon(1e-12));
  CHECK(r.closed_form_mismatch < 1e-10 * std::max(1.0, std::abs(r.closed_form.E())));
  CHECK_FALSE(r.standard_admissible);
  CHECK(r.df_admissible);
  CHECK(r.demonstrated());
  CHECK(r.limit_energy < 0);
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j.contains("sweep"));
}

TEST_CASE("counterexample sweep crosses into negative internal energy") {
  const CounterexampleReport r = run_counterexample({});
  REQUIRE(r.sweep.size() > 2);
  bool positive = false, negative = false;
  for (auto [tp, e] : r.sweep) {
    positive = positive || e > 0;
    negative = negative || e < 0;
  }
  CHECK(negative);
  // Small tt_p approaches the closed-form limit.
  double best_tp = r.sweep.front().first, best_e = r.sweep.front().second;
  for (auto [tp, e] : r.sweep)
    if (tp < best_tp) best_tp = tp, best_e = e;
  CHECK(best_e == doctest::Approx(r.limit_energy).epsilon(0.05));
  (void)positive;
}

TEST_CASE("counterexample states in closed form") {
  const double g = 5.0 / 3.0;
  for (int which = 0; which < 3; ++which) {
    const ConservedState u = counterexample_state(which, 1e-3, 0.3, 8.0, g);
    CHECK(u.rho() > 0);
    CHECK(to_primitive(u, Eos{g}).p > 0);
  }
  // U1 and U2 differ only by the jump in B1.
  const ConservedState u1 = counterexample_state(1, 1e-3, 0.3, 8.0, g);
  const ConservedState u2 = counterexample_state(2, 1e-3, 0.3, 8.0, g);
  CHECK(u1.rho() == u2.rho());
  CHECK(std::abs(u1[kB1] - u2[kB1]) > 0);
}

TEST_CASE("counterexample parameter validation") {
  CounterexampleParams p;
  p.tt_p = 0.0;
  CHECK_THROWS_AS(run_counterexample(p), std::invalid_argument);
  p.tt_p = 1.0;  // above 1/gamma
  CHECK_THROWS_AS(run_counterexample(p), std::invalid_argument);
  p = {};
  p.eps = 2.0;  // above delta
  CHECK_THROWS_AS(run_counterexample(p), std::invalid_argument);
  p.eps = -0.1;
  CHECK_THROWS_AS(run_counterexample(p), std::invalid_argument);
}
