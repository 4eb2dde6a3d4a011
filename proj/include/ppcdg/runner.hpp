#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppcdg/errors.hpp"
#include "ppcdg/problems.hpp"
#include "ppcdg/solver2d.hpp"

namespace ppcdg {

struct RunConfig {
  std::string problem = "vortex";
  int nx = 0, ny = 0;  // 0 picks the problem default
  int k = 2;
  SchemeVariant variant = SchemeVariant::locally_df_pp;
  bool limiter = true;
  /// Unset: on for locally_df_pp, off for standard. Switching it off under locally_df_pp is
  /// an ablation (DF space, beta speeds and limiter kept, source dropped).
  std::optional<bool> source;
  CflMode cfl_mode = CflMode::practical;
  double cfl = 0.25;
  double theta = 1.0;
  std::optional<double> t_end, gamma;
  /// Retry a failed practical-mode step once with the theoretical dt.
  bool retry_theoretical = true;

  std::string out;                 // output directory; empty writes nothing
  double snapshot_interval = 0.0;  // 0: initial and final snapshots only
  bool oversample = false;         // add (k+1)^d uniform points per cell to snapshots
  int checkpoint_every = 0;        // steps; a final checkpoint is always written when out is set
  std::string restart;             // checkpoint file to resume from
  long max_steps = 0;              // 0: unlimited
  bool stationary_reference = false;
  std::uint64_t seed = 1;
  bool verbose = false;
};

bool source_enabled(const RunConfig& c);

/// key=value assignment as in a config file ("nx=64", "variant=standard", ...).
void apply_setting(RunConfig& c, const std::string& key, const std::string& value);
/// Flat key=value file; '#' starts a comment. Throws ConfigError or IoError.
void load_config_file(RunConfig& c, const std::string& path);

struct DiagnosticsRow {
  double t = 0, dt = 0, eps_div = 0, min_rho = 0, min_p = 0;
  int limited_cells = 0;
};

struct FailureRecord {
  std::string kind;  // inadmissible_state, non_finite, config_error, io_error
  std::string message;
  bool located = false;
  Layout layout = Layout::primal;
  int i = 0, j = 0;
  double x = 0, y = 0;
  std::string constraint;
  double value = 0;
  int stage = -1;
  long step = 0;
  double t = 0, dt = 0;
};

std::string failure_json(const FailureRecord& f);

struct RunResult {
  int exit_code = 0;  // 0 ok, 2 inadmissible/non-finite abort, 3 config error, 4 I/O error
  long steps = 0;
  int retries = 0;
  double t = 0;
  std::vector<DiagnosticsRow> diagnostics;
  std::optional<FailureRecord> failure;
  std::optional<FieldPair> state;
  ProblemSpec problem;
};

/// Full run. Never throws for numerical, configuration or I/O failures; those set exit_code
/// and failure (and failure.json under out).
RunResult run(const RunConfig& config);

/// Snapshot CSV of the primal field: t,x,y,rho,m1,m2,m3,B1,B2,B3,E,p.
void write_snapshot(const std::string& path, const DGField& primal, const Eos& eos, double t, bool oversample);

/// Hexfloat text checkpoint of both fields.
void write_checkpoint(const std::string& path, const RunConfig& c, const FieldPair& u, double t, long step);
/// Loads into u (which must have the right shape); returns (t, step).
std::pair<double, long> read_checkpoint(const std::string& path, FieldPair& u);

struct ConvergenceRow {
  int n = 0;
  double h = 0;
  std::array<double, kNumVars> err{};
  std::array<double, kNumVars> rate{};  // NaN on the first level
  double eps_div = 0, eps_rate = 0;
};

struct ConvergenceTable {
  std::string reference;  // "advected" or "stationary"
  std::vector<ConvergenceRow> rows;
};

/// Runs base on n x n meshes for each level and measures the domain-averaged L1 error of the
/// primal solution against the exact one (Gauss quadrature per cell). Levels must be strictly
/// increasing.
ConvergenceTable convergence_study(const RunConfig& base, const std::vector<int>& levels);
void write_convergence_csv(const std::string& path, const ConvergenceTable& t);

}  // namespace ppcdg
