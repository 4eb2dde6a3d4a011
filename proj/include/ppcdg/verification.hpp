#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ppcdg/mhd.hpp"

namespace ppcdg {

// ---- Lemma batteries ----

struct FuzzResult {
  std::string battery;
  long samples = 0;
  long checks = 0;
  long violations = 0;
  std::string first_counterexample;  // JSON object with the exact inputs, empty if none
};

struct FuzzReport {
  std::uint64_t seed = 0;
  std::vector<FuzzResult> results;
  bool passed() const;
  std::string to_json() const;
};

/// gql, flux_split, jensen, source, convexity, source_orthogonality.
const std::vector<std::string>& fuzz_batteries();

/// Runs the named batteries (all when empty) with n_samples draws each. Deterministic in seed.
/// Throws std::invalid_argument for an unknown battery name.
FuzzReport fuzz_lemmas(std::uint64_t seed, long n_samples, const std::vector<std::string>& batteries = {});

/// Random admissible state drawn in primitive variables: log-uniform rho and p in [1e-8, 1e3],
/// uniform v and B in [-10, 10]^3.
template <class Rng>
ConservedState random_admissible(Rng& rng, const Eos& eos);

// ---- Counterexample for the standard scheme ----

struct CounterexampleParams {
  double gamma = 5.0 / 3.0;
  double C = 8.0;  // tau_max (ahat_1/dx + ahat_2/dy)
  double eps = 0.5;
  double tt_p = 1e-4;
  double theta = 1.0;
  double dx = 1.0;  // dy = dx
};

struct CounterexampleReport {
  CounterexampleParams params;
  double delta = 0;
  bool inputs_admissible = false;  // U0, U1, U2 in G, so the point condition holds
  double div_primal = 0;           // discrete divergence of the dual field over the centre cell
  double tilde_div_primal = 0;
  ConservedState standard_update;  // k = 0 standard forward-Euler primal average
  ConservedState closed_form;      // (1-theta)U0 + theta/2 (U1+U2) + theta C/(a1+a2) (F1(U1)-F1(U2))
  double closed_form_mismatch = 0; // max component difference to standard_update
  bool standard_admissible = true;
  double standard_dt = 0;
  ConservedState df_update;  // same data through the locally DF PP residual at the theoretical dt
  bool df_admissible = false;
  double df_dt = 0;
  std::vector<std::pair<double, double>> sweep;  // (tt_p, internal energy of U(tt_p, eps))
  double limit_energy = 0;                       // closed form of the tt_p -> 0 limit
  bool demonstrated() const { return inputs_admissible && !standard_admissible && df_admissible; }
  std::string to_json() const;
};

/// U0, U1, U2 (which = 0, 1, 2) as closed-form functions of (tt_p, eps) with delta = min(C/8, 1).
ConservedState counterexample_state(int which, double tt_p, double eps, double C, double gamma);

/// Throws std::invalid_argument when tt_p is outside (0, 1/gamma) or eps outside (0, delta).
CounterexampleReport run_counterexample(const CounterexampleParams& p);

template <class Rng>
ConservedState random_admissible(Rng& rng, const Eos& eos) {
  std::uniform_real_distribution<double> lg(-8.0, 3.0), u(-10.0, 10.0);
  PrimitiveState w;
  w.rho = std::pow(10.0, lg(rng));
  w.p = std::pow(10.0, lg(rng));
  for (int d = 0; d < 3; ++d) w.v[d] = u(rng);
  for (int d = 0; d < 3; ++d) w.B[d] = u(rng);
  return to_conserved(w, eos);
}

}  // namespace ppcdg
