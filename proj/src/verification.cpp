#include "ppcdg/verification.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "json.hpp"

#include "ppcdg/field.hpp"
#include "ppcdg/solver2d.hpp"

namespace ppcdg {

namespace {

using json = nlohmann::json;
using Rng = std::mt19937_64;

json state_json(const ConservedState& u) { return json(std::vector<double>(u.q.begin(), u.q.end())); }
json aux_json(const AuxiliaryPair& a) {
  return json{{"v_star", std::vector<double>(a.v_star.begin(), a.v_star.end())},
              {"B_star", std::vector<double>(a.B_star.begin(), a.B_star.end())}};
}

AuxiliaryPair random_aux(Rng& rng) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  AuxiliaryPair a;
  for (int d = 0; d < 3; ++d) a.v_star[d] = u(rng);
  for (int d = 0; d < 3; ++d) a.B_star[d] = u(rng);
  return a;
}

Eos random_eos(Rng& rng) {
  std::uniform_real_distribution<double> g(1.05, 3.0);
  return Eos{g(rng)};
}

void record(FuzzResult& r, const json& example) {
  if (r.violations++ == 0) r.first_counterexample = example.dump();
}

// Random 8-vector with rho > 0; E is placed so that rho e has a random sign and O(1) relative size.
ConservedState random_vector(Rng& rng) {
  std::uniform_real_distribution<double> lg(-8.0, 3.0), u(-10.0, 10.0), s(-1.0, 1.0);
  ConservedState x;
  x.q[kRho] = std::pow(10.0, lg(rng));
  for (int d = 0; d < 3; ++d) x.q[kM1 + d] = x.q[kRho] * u(rng);
  for (int d = 0; d < 3; ++d) x.q[kB1 + d] = u(rng);
  double kin = 0, mag = 0;
  for (int d = 0; d < 3; ++d) {
    kin += x.q[kM1 + d] * x.q[kM1 + d];
    mag += x.q[kB1 + d] * x.q[kB1 + d];
  }
  const double K = 0.5 * kin / x.q[kRho] + 0.5 * mag;
  x.q[kE] = K + (K + 1.0) * s(rng);
  return x;
}

void gql(Rng& rng, long n, FuzzResult& r) {
  for (long s = 0; s < n; ++s) {
    const ConservedState x = random_vector(rng);
    AuxiliaryPair own;
    for (int d = 0; d < 3; ++d) {
      own.v_star[d] = x.q[kM1 + d] / x.q[kRho];
      own.B_star[d] = x.q[kB1 + d];
    }
    ++r.checks;
    if (admissible(x) != (gql_value(x, own) > 0.0)) record(r, {{"U", state_json(x)}, {"aux", aux_json(own)}});
  }
}

void flux_split(Rng& rng, long n, FuzzResult& r) {
  for (long s = 0; s < n; ++s) {
    const Eos eos = random_eos(rng);
    const ConservedState a = random_admissible(rng, eos), b = random_admissible(rng, eos);
    const AuxiliaryPair aux = random_aux(rng);
    const Vec8 ns = n_star(aux);
    const double vb = dot3(aux.v_star, aux.B_star), bb = dot3(aux.B_star, aux.B_star);
    for (int i = 0; i < 3; ++i) {
      const double alpha = 1.000001 * wave_speed_alpha(a, b, eos, i);
      const Vec8 fa = flux(a, eos, i), fb = flux(b, eos, i);
      double lhs = bb + (a.q[kB1 + i] - b.q[kB1 + i]) / alpha * vb;
      for (int v = 0; v < kNumVars; ++v) lhs += (a.q[v] - fa[v] / alpha + b.q[v] + fb[v] / alpha) * ns[v];
      ++r.checks;
      if (!(lhs > 0.0))
        record(r, {{"gamma", eos.gamma}, {"U", state_json(a)}, {"U_tilde", state_json(b)}, {"aux", aux_json(aux)},
                   {"dir", i + 1}, {"alpha", alpha}, {"lhs", lhs}});
    }
  }
}

void jensen(Rng& rng, long n, FuzzResult& r) {
  for (long s = 0; s < n; ++s) {
    const Eos eos = random_eos(rng);
    const ConservedState a = random_admissible(rng, eos), b = random_admissible(rng, eos);
    const double avg = 0.5 * (a.rho() + b.rho());
    for (int l = 0; l < 3; ++l) {
      const double beta = std::abs(b.q[kB1 + l] - a.q[kB1 + l]) / (2.0 * std::sqrt(avg));
      const double half_alpha = 0.5 * wave_speed_alpha(a, b, eos, l);
      ++r.checks;
      if (!(beta <= half_alpha))
        record(r, {{"gamma", eos.gamma}, {"U", state_json(a)}, {"U_tilde", state_json(b)}, {"dir", l + 1},
                   {"beta", beta}, {"half_alpha", half_alpha}});
    }
  }
}

// -xi S(U).n* >= xi (v*.B*) - |xi|/sqrt(rho) (U.n* + |B*|^2/2)
void source(Rng& rng, long n, FuzzResult& r) {
  std::uniform_real_distribution<double> xs(-100.0, 100.0);
  for (long s = 0; s < n; ++s) {
    const Eos eos = random_eos(rng);
    const ConservedState u = random_admissible(rng, eos);
    const AuxiliaryPair aux = random_aux(rng);
    const double xi = s % 1000 == 0 ? 0.0 : xs(rng);
    const double lhs = -xi * dot8(godunov_source(u), n_star(aux));
    const double rhs = xi * dot3(aux.v_star, aux.B_star) - std::abs(xi) / std::sqrt(u.rho()) * gql_value(u, aux);
    ++r.checks;
    if (!(lhs >= rhs))
      record(r, {{"U", state_json(u)}, {"aux", aux_json(aux)}, {"xi", xi}, {"lhs", lhs}, {"rhs", rhs}});
  }
}

void convexity(Rng& rng, long n, FuzzResult& r) {
  std::uniform_real_distribution<double> l01(0.0, 1.0);
  for (long s = 0; s < n; ++s) {
    const Eos eos = random_eos(rng);
    const ConservedState a = random_admissible(rng, eos), b = random_admissible(rng, eos);
    const double lam = l01(rng);
    ConservedState c;
    for (int v = 0; v < kNumVars; ++v) c.q[v] = lam * a.q[v] + (1 - lam) * b.q[v];
    // Both endpoints are admissible with margin far above rounding of c, so any miss is real.
    ++r.checks;
    if (!admissible(c)) record(r, {{"U", state_json(a)}, {"U_tilde", state_json(b)}, {"lambda", lam}});
  }
}

void source_orthogonality(Rng& rng, long n, FuzzResult& r) {
  for (long s = 0; s < n; ++s) {
    const ConservedState u = random_admissible(rng, random_eos(rng));
    ++r.checks;
    if (godunov_source(u)[kRho] != 0.0) record(r, {{"U", state_json(u)}});
  }
}

}  // namespace

const std::vector<std::string>& fuzz_batteries() {
  static const std::vector<std::string> names = {"gql", "flux_split", "jensen", "source", "convexity",
                                                 "source_orthogonality"};
  return names;
}

bool FuzzReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const FuzzResult& r) { return r.violations == 0; });
}

std::string FuzzReport::to_json() const {
  json j;
  j["seed"] = seed;
  j["passed"] = passed();
  j["batteries"] = json::array();
  for (const FuzzResult& r : results) {
    json b{{"battery", r.battery}, {"samples", r.samples}, {"checks", r.checks}, {"violations", r.violations},
           {"passed", r.violations == 0}};
    if (!r.first_counterexample.empty()) b["first_counterexample"] = json::parse(r.first_counterexample);
    j["batteries"].push_back(b);
  }
  return j.dump(2);
}

FuzzReport fuzz_lemmas(std::uint64_t seed, long n_samples, const std::vector<std::string>& batteries) {
  const std::vector<std::string>& names = batteries.empty() ? fuzz_batteries() : batteries;
  FuzzReport rep;
  rep.seed = seed;
  for (std::size_t b = 0; b < names.size(); ++b) {
    const std::string& name = names[b];
    // Each battery gets its own stream so selecting a subset does not change the draws.
    const auto it = std::find(fuzz_batteries().begin(), fuzz_batteries().end(), name);
    if (it == fuzz_batteries().end()) throw std::invalid_argument("unknown battery '" + name + "'");
    std::seed_seq ss{seed, static_cast<std::uint64_t>(it - fuzz_batteries().begin())};
    Rng rng(ss);
    FuzzResult r;
    r.battery = name;
    r.samples = n_samples;
    if (name == "gql") gql(rng, n_samples, r);
    if (name == "flux_split") flux_split(rng, n_samples, r);
    if (name == "jensen") jensen(rng, n_samples, r);
    if (name == "source") source(rng, n_samples, r);
    if (name == "convexity") convexity(rng, n_samples, r);
    if (name == "source_orthogonality") source_orthogonality(rng, n_samples, r);
    rep.results.push_back(std::move(r));
  }
  return rep;
}

// ---------------------------------------------------------------------------------------------

ConservedState counterexample_state(int which, double p, double eps, double C, double gamma) {
  const double delta = std::min(C / 8.0, 1.0);
  const double pe = p / (gamma - 1.0);
  ConservedState u;
  switch (which) {
    case 0:
      u.q = {1, 1 + delta * eps, 0, 0, 1 + eps / 2, 0, 0,
             (1 + delta * eps) * (1 + delta * eps) / 2 + (2 + eps) * (2 + eps) / 8 + pe};
      break;
    case 1:
      u.q = {1, 1, 0, 0, 1, 0, 0, 1 + pe};
      break;
    case 2:
      u.q = {1, 1, 0, 0, 1 + eps, 0, 0, (1 + (1 + eps) * (1 + eps)) / 2 + pe};
      break;
    default:
      throw std::invalid_argument("counterexample_state: which must be 0, 1 or 2");
  }
  return u;
}

namespace {

// Primal cell (1, 1) of a periodic 4 x 4 mesh is the centre cell; the dual cells on its left
// carry U1 and those on its right U2.
FieldPair counterexample_fields(const CounterexampleParams& p, bool locally_df) {
  const BoundarySide per{BoundaryKind::periodic, {}};
  auto space = std::make_shared<const DgSpace>(
      OverlappingMesh::rect(0, 4 * p.dx, 4, 0, 4 * p.dx, 4, {per, per, per, per}), 0, locally_df);
  FieldPair f = make_fields(space);
  const ConservedState u0 = counterexample_state(0, p.tt_p, p.eps, p.C, p.gamma);
  const ConservedState u1 = counterexample_state(1, p.tt_p, p.eps, p.C, p.gamma);
  const ConservedState u2 = counterexample_state(2, p.tt_p, p.eps, p.C, p.gamma);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) {
      f.primal.set_constant(i, j, u0);
      const bool rows = j == 1 || j == 2;
      f.dual.set_constant(i, j, rows && i == 1 ? u1 : rows && i == 2 ? u2 : u0);
    }
  sync_ghosts(f);
  return f;
}

ConservedState update(const FieldPair& f, const Residual& r, double dt) {
  ConservedState u = f.primal.average(1, 1);
  for (int v = 0; v < kNumVars; ++v) u.q[v] += dt * r.primal.coeff(1, 1, v, 0);
  return u;
}

}  // namespace

CounterexampleReport run_counterexample(const CounterexampleParams& p) {
  if (!(p.gamma > 1.0)) throw std::invalid_argument("counterexample: gamma must exceed 1");
  if (!(p.C > 0.0)) throw std::invalid_argument("counterexample: C must be positive");
  if (!(p.theta > 0.0 && p.theta <= 1.0)) throw std::invalid_argument("counterexample: theta must lie in (0, 1]");
  if (!(p.tt_p > 0.0 && p.tt_p < 1.0 / p.gamma)) throw std::invalid_argument("counterexample: tt_p outside (0, 1/gamma)");
  const double delta = std::min(p.C / 8.0, 1.0);
  if (!(p.eps > 0.0 && p.eps < delta)) throw std::invalid_argument("counterexample: eps outside (0, delta)");
  if (!(p.dx > 0.0)) throw std::invalid_argument("counterexample: dx must be positive");

  CounterexampleReport rep;
  rep.params = p;
  rep.delta = delta;
  const Eos eos{p.gamma};
  const ConservedState U[3] = {counterexample_state(0, p.tt_p, p.eps, p.C, p.gamma),
                               counterexample_state(1, p.tt_p, p.eps, p.C, p.gamma),
                               counterexample_state(2, p.tt_p, p.eps, p.C, p.gamma)};
  rep.inputs_admissible = admissible(U[0]) && admissible(U[1]) && admissible(U[2]);

  // Standard scheme with tau_max fixed by the CFL number C.
  {
    const FieldPair f = counterexample_fields(p, false);
    rep.div_primal = discrete_div_primal(f.dual, 1, 1);
    rep.tilde_div_primal = tilde_div_primal(f.dual, 1, 1);
    const WaveSpeeds2D s = wave_speeds_2d(f.primal, f.dual, eos, SchemeVariant::standard);
    const double tau = p.C / (s.ahat1 / p.dx + s.ahat2 / p.dx);
    rep.standard_dt = p.theta * tau;
    rep.standard_update = update(f, residual_2d_standard(f.primal, f.dual, eos, tau), rep.standard_dt);
    rep.standard_admissible = admissible(rep.standard_update);
    const Vec8 f1 = flux(U[1], eos, 0), f2 = flux(U[2], eos, 0);
    const double c = p.theta * p.C / (s.ahat1 + s.ahat2);
    for (int v = 0; v < kNumVars; ++v) {
      rep.closed_form.q[v] = (1 - p.theta) * U[0].q[v] + 0.5 * p.theta * (U[1].q[v] + U[2].q[v]) + c * (f1[v] - f2[v]);
      rep.closed_form_mismatch =
          std::max(rep.closed_form_mismatch, std::abs(rep.closed_form.q[v] - rep.standard_update.q[v]));
    }
  }
  // Locally DF PP pipeline: source term on, beta-augmented speeds, theoretical dt.
  {
    const FieldPair f = counterexample_fields(p, true);
    const WaveSpeeds2D s = wave_speeds_2d(f.primal, f.dual, eos, SchemeVariant::locally_df_pp);
    rep.df_dt = max_dt_2d(s, f.primal.space(), p.theta, CflMode::theoretical, 0.0);
    const double tau = rep.df_dt / p.theta;
    rep.df_update = update(f, residual_2d_locally_df(f.primal, f.dual, eos, tau), rep.df_dt);
    rep.df_admissible = admissible(rep.df_update);
  }
  // The convex-combination state U(tt_p, eps) built with the speed bounds 5 and sqrt(gamma p + 4) + 1.
  for (double tp = 1e-2; tp >= 0.99e-6; tp /= 10) {
    const ConservedState a = counterexample_state(0, tp, p.eps, p.C, p.gamma);
    const ConservedState b = counterexample_state(1, tp, p.eps, p.C, p.gamma);
    const ConservedState c = counterexample_state(2, tp, p.eps, p.C, p.gamma);
    const double at = 5.0 + std::sqrt(p.gamma * tp + 4.0) + 1.0;
    const Vec8 fb = flux(b, eos, 0), fc = flux(c, eos, 0);
    ConservedState w;
    for (int v = 0; v < kNumVars; ++v)
      w.q[v] = (1 - p.theta) * a.q[v] + 0.5 * p.theta * (b.q[v] + c.q[v]) + p.theta * p.C / at * (fb[v] - fc[v]);
    rep.sweep.emplace_back(tp, internal_energy_density(w));
  }
  const double dh = p.C / 8.0, dt = dh - delta, e = p.eps, th = p.theta;
  rep.limit_energy = -th * e / 8.0 *
                     ((8 * dh - e) + th * e * (2 * dt + dh * e) * (2 * dt + dh * e) +
                      4 * e * (dh + delta * dt + delta * dh * (1 + e)));
  return rep;
}

std::string CounterexampleReport::to_json() const {
  json j;
  j["params"] = {{"gamma", params.gamma}, {"C", params.C},         {"eps", params.eps},
                 {"tt_p", params.tt_p},   {"theta", params.theta}, {"dx", params.dx}};
  j["delta"] = delta;
  j["inputs_admissible"] = inputs_admissible;
  j["div_primal"] = div_primal;
  j["tilde_div_primal"] = tilde_div_primal;
  j["standard"] = {{"dt", standard_dt},
                   {"update", state_json(standard_update)},
                   {"internal_energy", internal_energy_density(standard_update)},
                   {"admissible", standard_admissible},
                   {"closed_form_mismatch", closed_form_mismatch}};
  j["locally_df_pp"] = {{"dt", df_dt},
                        {"update", state_json(df_update)},
                        {"internal_energy", internal_energy_density(df_update)},
                        {"admissible", df_admissible}};
  j["sweep"] = json::array();
  for (auto [tp, e] : sweep) j["sweep"].push_back({{"tt_p", tp}, {"internal_energy", e}});
  j["limit_internal_energy"] = limit_energy;
  j["demonstrated"] = demonstrated();
  return j.dump(2);
}

}  // namespace ppcdg
