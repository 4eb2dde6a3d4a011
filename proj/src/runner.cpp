#include "ppcdg/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "ppcdg/limiter.hpp"
#include "ppcdg/timeloop.hpp"

namespace fs = std::filesystem;

namespace ppcdg {

bool source_enabled(const RunConfig& c) { return c.source.value_or(c.variant == SchemeVariant::locally_df_pp); }

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("bad number for " + key + ": '" + v + "'");
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long n = std::stol(v, &pos);
    if (pos == v.size()) return n;
  } catch (const std::exception&) {
  }
  throw ConfigError("bad integer for " + key + ": '" + v + "'");
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("bad switch for " + key + ": '" + v + "' (use on/off)");
}

}  // namespace

void apply_setting(RunConfig& c, const std::string& key_in, const std::string& value_in) {
  std::string key = trim(key_in);
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string v = trim(value_in);
  if (key == "problem") {
    c.problem = v;
  } else if (key == "nx") {
    c.nx = static_cast<int>(to_long(key, v));
  } else if (key == "ny") {
    c.ny = static_cast<int>(to_long(key, v));
  } else if (key == "k") {
    c.k = static_cast<int>(to_long(key, v));
  } else if (key == "variant") {
    if (v == "standard")
      c.variant = SchemeVariant::standard;
    else if (v == "locally_df_pp")
      c.variant = SchemeVariant::locally_df_pp;
    else
      throw ConfigError("unknown variant '" + v + "'");
  } else if (key == "limiter") {
    c.limiter = to_bool(key, v);
  } else if (key == "source") {
    c.source = to_bool(key, v);
  } else if (key == "cfl_mode") {
    if (v == "practical")
      c.cfl_mode = CflMode::practical;
    else if (v == "theoretical")
      c.cfl_mode = CflMode::theoretical;
    else
      throw ConfigError("unknown cfl_mode '" + v + "'");
  } else if (key == "cfl") {
    c.cfl = to_double(key, v);
  } else if (key == "theta") {
    c.theta = to_double(key, v);
  } else if (key == "t_end") {
    c.t_end = to_double(key, v);
  } else if (key == "gamma") {
    c.gamma = to_double(key, v);
  } else if (key == "retry_theoretical") {
    c.retry_theoretical = to_bool(key, v);
  } else if (key == "out") {
    c.out = v;
  } else if (key == "snapshot_interval") {
    c.snapshot_interval = to_double(key, v);
  } else if (key == "oversample") {
    c.oversample = to_bool(key, v);
  } else if (key == "checkpoint_every") {
    c.checkpoint_every = static_cast<int>(to_long(key, v));
  } else if (key == "restart") {
    c.restart = v;
  } else if (key == "max_steps") {
    c.max_steps = to_long(key, v);
  } else if (key == "reference") {
    if (v != "advected" && v != "stationary") throw ConfigError("reference must be advected or stationary");
    c.stationary_reference = v == "stationary";
  } else if (key == "seed") {
    c.seed = static_cast<std::uint64_t>(to_long(key, v));
  } else if (key == "verbose") {
    c.verbose = to_bool(key, v);
  } else {
    throw ConfigError("unknown config key '" + key_in + "'");
  }
}

void load_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    apply_setting(c, line.substr(0, eq), line.substr(eq + 1));
  }
}

std::string failure_json(const FailureRecord& f) {
  nlohmann::json j;
  j["kind"] = f.kind;
  j["message"] = f.message;
  if (f.located) {
    j["layout"] = layout_name(f.layout);
    j["cell"] = {f.i, f.j};
    j["x"] = f.x;
    j["y"] = f.y;
    j["constraint"] = f.constraint;
    j["value"] = std::isfinite(f.value) ? nlohmann::json(f.value) : nlohmann::json(std::to_string(f.value));
    j["stage"] = f.stage;
  }
  j["step"] = f.step;
  j["t"] = f.t;
  j["dt"] = f.dt;
  return j.dump(2);
}

// ---------------------------------------------------------------------------------------------
// Artifacts

void write_snapshot(const std::string& path, const DGField& primal, const Eos& eos, double t, bool oversample) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw IoError("cannot write " + path);
  std::fprintf(fp, "t,x,y,rho,m1,m2,m3,B1,B2,B3,E,p\n");
  const DgSpace& sp = primal.space();
  const int ns = oversample ? sp.k() + 1 : 1;
  const int nsy = sp.dim() == 1 ? 1 : ns;
  const double hx = sp.mesh().dx(), hy = sp.mesh().dy();
  for (int j = 0; j < primal.active(1); ++j)
    for (int b = 0; b < nsy; ++b)
      for (int i = 0; i < primal.active(0); ++i)
        for (int a = 0; a < ns; ++a) {
          const double xi = (a + 0.5) / ns - 0.5, eta = sp.dim() == 1 ? 0.0 : (b + 0.5) / nsy - 0.5;
          const ConservedState u = primal.at_ref(i, j, xi, eta);
          const double x = primal.centre_x(i) + xi * hx;
          const double y = sp.dim() == 1 ? 0.0 : primal.centre_y(j) + eta * hy;
          std::fprintf(fp, "%.10g,%.10g,%.10g", t, x, y);
          for (int v = 0; v < kNumVars; ++v) std::fprintf(fp, ",%.12g", u.q[v]);
          std::fprintf(fp, ",%.12g\n", eos.pressure_from_internal(internal_energy_density(u)));
        }
  if (std::fclose(fp) != 0) throw IoError("cannot write " + path);
}

void write_checkpoint(const std::string& path, const RunConfig& c, const FieldPair& u, double t, long step) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write checkpoint " + path);
  const DgSpace& sp = u.primal.space();
  out << "ppcdg-checkpoint 1\n";
  out << "problem " << c.problem << "\n";
  out << "shape " << sp.dim() << " " << sp.k() << " " << sp.mesh().nx() << " " << sp.mesh().ny() << "\n";
  out << std::hexfloat;
  out << "t " << t << "\n";
  out << "step " << step << "\n";
  for (const DGField* f : {&u.primal, &u.dual}) {
    out << layout_name(f->layout()) << " " << f->data().size() << "\n";
    for (double d : f->data()) out << d << "\n";
  }
  if (!out) throw IoError("cannot write checkpoint " + path);
}

std::pair<double, long> read_checkpoint(const std::string& path, FieldPair& u) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read checkpoint " + path);
  auto bad = [&](const std::string& what) { return ConfigError("checkpoint " + path + ": " + what); };
  std::string word, tag;
  int version = 0;
  in >> word >> version;
  if (word != "ppcdg-checkpoint" || version != 1) throw bad("not a checkpoint");
  std::string problem;
  in >> word >> problem;
  int dim, k, nx, ny;
  in >> word >> dim >> k >> nx >> ny;
  const DgSpace& sp = u.primal.space();
  if (!in || dim != sp.dim() || k != sp.k() || nx != sp.mesh().nx() || ny != sp.mesh().ny())
    throw bad("shape does not match the run");
  // operator>> does not parse hexfloat portably; go through strtod.
  auto read_double = [&]() {
    std::string s;
    in >> s;
    char* end = nullptr;
    const double d = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') throw bad("bad number '" + s + "'");
    return d;
  };
  in >> word;
  const double t = read_double();
  long step = 0;
  in >> word >> step;
  for (DGField* f : {&u.primal, &u.dual}) {
    std::size_t n = 0;
    in >> tag >> n;
    if (tag != layout_name(f->layout()) || n != f->data().size()) throw bad("field size mismatch");
    for (std::size_t m = 0; m < n; ++m) f->data()[m] = read_double();
  }
  if (!in) throw bad("truncated");
  sync_ghosts(u);
  return {t, step};
}

// ---------------------------------------------------------------------------------------------
// Time stepping

namespace {

void check_averages(const DGField& f) {
  for (int j = 0; j < f.active(1); ++j)
    for (int i = 0; i < f.active(0); ++i) {
      const ConservedState a = f.average(i, j);
      if (admissible(a)) continue;
      const double re = internal_energy_density(a);
      const bool finite = std::isfinite(a.rho()) && std::isfinite(re);
      const char* what = !finite ? "non_finite" : a.rho() > 0.0 ? "internal_energy" : "density";
      throw InadmissibleStateError(f.layout(), i, j, f.centre_x(i), f.centre_y(j), what,
                                   a.rho() > 0.0 || !finite ? re : a.rho());
    }
}

struct Stepper {
  const RunConfig& cfg;
  Eos eos;
  bool with_source;
  int dim;

  double dt_for(const FieldPair& u, CflMode mode) const {
    const DgSpace& sp = u.primal.space();
    if (dim == 1) return max_dt_1d(u.primal, u.dual, eos, cfg.theta, mode, cfg.cfl);
    return max_dt_2d(wave_speeds_2d(u.primal, u.dual, eos, cfg.variant), sp, cfg.theta, mode, cfg.cfl);
  }

  struct StepInfo {
    int limited = 0;  // limiter activations summed over stages and meshes
    // Point minima of the final stage, known only when the limiter ran.
    std::optional<PointExtrema> extrema;
  };

  StepInfo step(FieldPair& u, double dt) const {
    const double tau = dt / cfg.theta;
    StepInfo info;
    auto rhs = [&](const FieldPair& s) {
      return dim == 1 ? residual_1d(s.primal, s.dual, eos, tau)
                      : residual_2d(s.primal, s.dual, eos, tau, with_source);
    };
    auto check = [](const FieldPair& w, int) {
      check_averages(w.primal);
      check_averages(w.dual);
    };
    auto limit = [&](FieldPair& s, int) {
      if (cfg.limiter) {
        const LimiterStats a = pp_limit(s.primal), b = pp_limit(s.dual);
        info.limited += a.limited_cells + b.limited_cells;
        info.extrema = PointExtrema{std::min(a.min_rho, b.min_rho),
                                    eos.pressure_from_internal(std::min(a.min_rho_e, b.min_rho_e))};
      } else {
        sync_ghosts(s);
      }
    };
    ssp_rk3_step(u, dt, rhs, check, limit);
    return info;
  }
};

DiagnosticsRow measure(const FieldPair& u, const Eos& eos, double t, double dt, int limited,
                       std::optional<PointExtrema> known = std::nullopt) {
  DiagnosticsRow r;
  r.t = t;
  r.dt = dt;
  r.limited_cells = limited;
  if (u.primal.space().dim() == 2) r.eps_div = eps_div(u.primal);
  if (!known) {
    const PointExtrema a = point_extrema(u.primal, eos), b = point_extrema(u.dual, eos);
    known = PointExtrema{std::min(a.min_rho, b.min_rho), std::min(a.min_p, b.min_p)};
  }
  r.min_rho = known->min_rho;
  r.min_p = known->min_p;
  return r;
}

FailureRecord plain_failure(const std::string& kind, const std::string& message) {
  FailureRecord f;
  f.kind = kind;
  f.message = message;
  return f;
}

FailureRecord from_error(const InadmissibleStateError& e) {
  FailureRecord f;
  f.kind = e.constraint == "non_finite" ? "non_finite" : "inadmissible_state";
  f.message = e.what();
  f.located = true;
  f.layout = e.layout;
  f.i = e.i;
  f.j = e.j;
  f.x = e.x;
  f.y = e.y;
  f.constraint = e.constraint;
  f.value = e.value;
  f.stage = e.stage;
  return f;
}

void validate(const RunConfig& c, const ProblemSpec& p, int nx, int ny) {
  if (c.k < 0 || c.k > 3) throw ConfigError("k must be in 0..3");
  if (nx < 1 || ny < 1) throw ConfigError("mesh sizes must be positive");
  if (p.dim == 1 && c.ny > 1) throw ConfigError(p.id + " is one-dimensional; ny must be 1 or unset");
  if (!(c.theta > 0.0 && c.theta <= 1.0)) throw ConfigError("theta must lie in (0, 1]");
  if (!(c.cfl > 0.0)) throw ConfigError("cfl must be positive");
  if (c.t_end && !(*c.t_end >= 0.0)) throw ConfigError("t_end must be non-negative");
  if (c.gamma && !(*c.gamma > 1.0)) throw ConfigError("gamma must exceed 1");
  if (!(c.snapshot_interval >= 0.0)) throw ConfigError("snapshot_interval must be non-negative");
  if (p.dim == 2 && c.variant == SchemeVariant::standard && source_enabled(c) && c.k > 0)
    throw ConfigError("source=on needs the locally divergence-free space (variant=locally_df_pp)");
}

// 1D theory needs a constant B1; accept data whose projection is constant to rounding and pin it.
void pin_constant_b1(FieldPair& u) {
  const double b = u.primal.coeff(0, 0, kB1, 0);
  const int nm = u.primal.space().num_modes();
  const double tol = 1e-12 * (1.0 + std::abs(b));
  for (DGField* f : {&u.primal, &u.dual})
    for (int i = 0; i < f->active(0); ++i)
      for (int m = 0; m < nm; ++m) {
        const double c = f->coeff(i, 0, kB1, m);
        if (std::abs(c - (m == 0 ? b : 0.0)) > tol)
          throw ConfigError("1D initial data must have a constant B1 (found a varying B1 near x = " +
                            std::to_string(f->centre_x(i)) + ")");
        f->coeff(i, 0, kB1, m) = m == 0 ? b : 0.0;
      }
  sync_ghosts(u);
}

class Artifacts {
 public:
  Artifacts(const RunConfig& c, bool append) : c_(c) {
    if (c.out.empty()) return;
    std::error_code ec;
    fs::create_directories(c.out, ec);
    if (ec) throw IoError("cannot create output directory " + c.out + ": " + ec.message());
    const std::string path = (fs::path(c.out) / "diagnostics.csv").string();
    const bool exists = fs::exists(path);
    diag_ = std::fopen(path.c_str(), append && exists ? "a" : "w");
    if (!diag_) throw IoError("cannot write " + path);
    if (!(append && exists)) std::fprintf(diag_, "t,dt,eps_div,min_rho,min_p,limited_cells\n");
  }
  ~Artifacts() {
    if (diag_) std::fclose(diag_);
  }
  Artifacts(const Artifacts&) = delete;
  Artifacts& operator=(const Artifacts&) = delete;

  void diag(const DiagnosticsRow& r) {
    if (!diag_) return;
    std::fprintf(diag_, "%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.t, r.dt, r.eps_div, r.min_rho, r.min_p,
                 r.limited_cells);
    if (std::fflush(diag_) != 0) throw IoError("cannot write diagnostics.csv");
  }
  void snapshot(const FieldPair& u, const Eos& eos, double t, long step) {
    if (c_.out.empty()) return;
    char name[64];
    std::snprintf(name, sizeof name, "snapshot_%07ld.csv", step);
    write_snapshot((fs::path(c_.out) / name).string(), u.primal, eos, t, c_.oversample);
  }
  void checkpoint(const FieldPair& u, double t, long step) {
    if (c_.out.empty()) return;
    write_checkpoint((fs::path(c_.out) / "checkpoint.txt").string(), c_, u, t, step);
  }
  void failure(const FailureRecord& f) {
    if (c_.out.empty()) return;
    std::ofstream o(fs::path(c_.out) / "failure.json");
    o << failure_json(f) << "\n";
  }

 private:
  const RunConfig& c_;
  std::FILE* diag_ = nullptr;
};

}  // namespace

RunResult run(const RunConfig& cfg) {
  RunResult res;
  std::unique_ptr<Artifacts> art;
  auto fail = [&](FailureRecord f, int code) {
    res.exit_code = code;
    if (art) {
      try {
        art->failure(f);
      } catch (...) {
      }
    } else if (!cfg.out.empty()) {
      std::error_code ec;
      fs::create_directories(cfg.out, ec);
      std::ofstream o(fs::path(cfg.out) / "failure.json");
      o << failure_json(f) << "\n";
    }
    res.failure = std::move(f);
    return res;
  };

  ProblemSpec prob;
  FieldPair u;
  Eos eos;
  double t = 0, t_end = 0;
  long step = 0;
  try {
    prob = problem_library(cfg.problem);
    const int nx = cfg.nx != 0 ? cfg.nx : prob.default_nx;
    const int ny = prob.dim == 1 ? 1 : (cfg.ny != 0 ? cfg.ny : prob.default_ny);
    validate(cfg, prob, nx, ny);
    if (cfg.gamma) prob.gamma = *cfg.gamma;
    eos.gamma = prob.gamma;
    // Re-bind initial data to the (possibly overridden) gamma through a fresh lookup.
    if (cfg.gamma) {
      const double g_old = problem_library(cfg.problem).gamma, g_new = prob.gamma;
      auto base = prob.initial;
      prob.initial = [base, g_old, g_new](double x, double y) {
        PrimitiveState w = to_primitive(base(x, y), Eos{g_old});
        return to_conserved(w, Eos{g_new});
      };
    }
    t_end = cfg.t_end.value_or(prob.t_end);
    auto space = std::make_shared<const DgSpace>(make_mesh(prob, nx, ny), cfg.k,
                                                 prob.dim == 2 && cfg.variant == SchemeVariant::locally_df_pp);
    u = project_initial(prob.initial, space);
    if (prob.dim == 1) pin_constant_b1(u);
    if (!cfg.restart.empty()) std::tie(t, step) = read_checkpoint(cfg.restart, u);
  } catch (const ConfigError& e) {
    return fail(plain_failure("config_error", e.what()), 3);
  } catch (const IoError& e) {
    return fail(plain_failure("io_error", e.what()), 4);
  } catch (const std::invalid_argument& e) {
    return fail(plain_failure("config_error", e.what()), 3);
  } catch (const std::domain_error& e) {
    return fail(plain_failure("config_error", std::string("initial data: ") + e.what()), 3);
  }
  res.problem = prob;

  const Stepper stepper{cfg, eos, prob.dim == 2 && source_enabled(cfg), prob.dim};
  double dt = 0;
  auto next_output = [&](double now) {
    if (cfg.snapshot_interval <= 0) return t_end;
    const double n = std::floor(now / cfg.snapshot_interval + 1e-9) + 1;
    return std::min(t_end, n * cfg.snapshot_interval);
  };

  try {
    art = std::make_unique<Artifacts>(cfg, !cfg.restart.empty());
    if (step == 0) {
      // Initial state: the limiter makes the projected data satisfy the point conditions.
      if (cfg.limiter) {
        pp_limit(u.primal);
        pp_limit(u.dual);
      }
      res.diagnostics.push_back(measure(u, eos, t, 0.0, 0));
      art->diag(res.diagnostics.back());
      art->snapshot(u, eos, t, step);
    }
    double target = next_output(t);
    while (t < t_end && (cfg.max_steps == 0 || step < cfg.max_steps)) {
      dt = stepper.dt_for(u, cfg.cfl_mode);
      if (!(dt > 0.0) || !std::isfinite(dt)) throw std::runtime_error("non-finite or zero time step");
      bool hits = false;
      if (t + dt >= target) {
        dt = target - t;
        hits = true;
      }
      Stepper::StepInfo info;
      try {
        FieldPair trial = u;
        info = stepper.step(trial, dt);
        u = std::move(trial);
      } catch (const InadmissibleStateError&) {
        if (cfg.cfl_mode != CflMode::practical || !cfg.retry_theoretical) throw;
        const double dt_th = stepper.dt_for(u, CflMode::theoretical);
        if (!(dt_th < dt)) throw;
        if (cfg.verbose) std::fprintf(stderr, "step %ld: retrying with theoretical dt %.3e\n", step, dt_th);
        dt = dt_th;
        hits = false;
        ++res.retries;
        info = stepper.step(u, dt);
      }
      t = hits ? target : t + dt;
      ++step;
      res.diagnostics.push_back(measure(u, eos, t, dt, info.limited, info.extrema));
      art->diag(res.diagnostics.back());
      if (cfg.verbose && step % 100 == 0)
        std::fprintf(stderr, "step %ld t=%.6g dt=%.3e min_rho=%.3e min_p=%.3e\n", step, t, dt,
                     res.diagnostics.back().min_rho, res.diagnostics.back().min_p);
      if (hits && t < t_end) {
        art->snapshot(u, eos, t, step);
        target = next_output(t);
      }
      if (cfg.checkpoint_every > 0 && step % cfg.checkpoint_every == 0) art->checkpoint(u, t, step);
    }
    art->snapshot(u, eos, t, step);
    art->checkpoint(u, t, step);
  } catch (const InadmissibleStateError& e) {
    FailureRecord f = from_error(e);
    f.step = step;
    f.t = t;
    f.dt = dt;
    res.steps = step;
    res.t = t;
    res.state = std::move(u);
    return fail(std::move(f), 2);
  } catch (const IoError& e) {
    res.steps = step;
    res.t = t;
    return fail(plain_failure("io_error", e.what()), 4);
  } catch (const std::runtime_error& e) {
    FailureRecord f = plain_failure("non_finite", e.what());
    f.step = step;
    f.t = t;
    f.dt = dt;
    res.steps = step;
    res.t = t;
    return fail(std::move(f), 2);
  }
  res.steps = step;
  res.t = t;
  res.state = std::move(u);
  return res;
}

// ---------------------------------------------------------------------------------------------
// Convergence

ConvergenceTable convergence_study(const RunConfig& base, const std::vector<int>& levels) {
  const ProblemSpec prob = problem_library(base.problem);
  if (!prob.exact) throw ConfigError("problem '" + base.problem + "' has no exact solution");
  if (levels.size() < 2) throw ConfigError("a convergence study needs at least two levels");
  for (std::size_t l = 1; l < levels.size(); ++l)
    if (levels[l] <= levels[l - 1]) throw ConfigError("convergence levels must be strictly increasing");

  ConvergenceTable table;
  table.reference = base.stationary_reference ? "stationary" : "advected";
  for (std::size_t l = 0; l < levels.size(); ++l) {
    RunConfig c = base;
    c.nx = levels[l];
    c.ny = prob.dim == 1 ? 0 : levels[l];
    if (!base.out.empty()) c.out = (fs::path(base.out) / ("level_" + std::to_string(levels[l]))).string();
    const RunResult r = run(c);
    if (r.exit_code != 0)
      throw std::runtime_error("convergence level " + std::to_string(levels[l]) + " failed: " +
                               (r.failure ? r.failure->message : std::string("unknown")));
    const DGField& p = r.state->primal;
    const double tref = base.stationary_reference ? 0.0 : r.t;
    ConvergenceRow row;
    row.n = levels[l];
    row.h = p.space().mesh().dx();
    // Domain-averaged L1 norm of the error, integrated with the (2N)^d half-cell Gauss points.
    const DgSpace& sp = p.space();
    const RefPoints& pts = sp.pts();
    const int ng = 2 * pts.N;
    const int ngy = sp.dim() == 1 ? 1 : ng;
    for (int j = 0; j < p.active(1); ++j)
      for (int i = 0; i < p.active(0); ++i)
        for (int b = 0; b < ngy; ++b)
          for (int a = 0; a < ng; ++a) {
            const double w = pts.gauss_w[a] * (sp.dim() == 1 ? 1.0 : pts.gauss_w[b]);
            const double x = p.centre_x(i) + pts.xi[a] * sp.mesh().dx();
            const double y = sp.dim() == 1 ? 0.0 : p.centre_y(j) + pts.xi[b] * sp.mesh().dy();
            const ConservedState e = r.problem.exact(x, y, tref);
            const ConservedState h = p.at(i, j, a, b);
            for (int v = 0; v < kNumVars; ++v) row.err[v] += w * std::abs(h.q[v] - e.q[v]);
          }
    const double ncell = static_cast<double>(p.active(0)) * p.active(1);
    for (double& e : row.err) e /= ncell;
    row.eps_div = prob.dim == 2 ? eps_div(p) : 0.0;
    row.rate.fill(std::numeric_limits<double>::quiet_NaN());
    row.eps_rate = std::numeric_limits<double>::quiet_NaN();
    if (l > 0) {
      const ConvergenceRow& prev = table.rows.back();
      const double ratio = std::log(prev.h / row.h);
      for (int v = 0; v < kNumVars; ++v) row.rate[v] = std::log(prev.err[v] / row.err[v]) / ratio;
      row.eps_rate = std::log(prev.eps_div / row.eps_div) / ratio;
    }
    table.rows.push_back(row);
  }
  return table;
}

void write_convergence_csv(const std::string& path, const ConvergenceTable& t) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw IoError("cannot write " + path);
  static const char* names[kNumVars] = {"rho", "m1", "m2", "m3", "B1", "B2", "B3", "E"};
  std::fprintf(fp, "reference,n,h");
  for (const char* n : names) std::fprintf(fp, ",err_%s,rate_%s", n, n);
  std::fprintf(fp, ",eps_div,rate_eps_div\n");
  for (const ConvergenceRow& r : t.rows) {
    std::fprintf(fp, "%s,%d,%.17g", t.reference.c_str(), r.n, r.h);
    for (int v = 0; v < kNumVars; ++v) std::fprintf(fp, ",%.6e,%.4f", r.err[v], r.rate[v]);
    std::fprintf(fp, ",%.6e,%.4f\n", r.eps_div, r.eps_rate);
  }
  if (std::fclose(fp) != 0) throw IoError("cannot write " + path);
}

}  // namespace ppcdg
