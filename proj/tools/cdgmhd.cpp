// Command line front end: run a benchmark, run the verification batteries, or a convergence study.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ppcdg/runner.hpp"
#include "json.hpp"
#include "ppcdg/verification.hpp"

using namespace ppcdg;

namespace {

// Flags mirror the config keys; anything given on the command line overrides the file.
struct Overrides {
  std::string config;
  std::vector<std::pair<std::string, std::string>> kv;
};

void add_run_flags(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "key=value config file");
  for (const char* key : {"problem", "nx", "ny", "k", "variant", "cfl", "cfl-mode", "theta", "t-end", "gamma",
                          "limiter", "source", "out", "snapshot-interval", "oversample", "checkpoint-every",
                          "restart", "max-steps", "reference", "retry-theoretical", "verbose"}) {
    const std::string name = std::string("--") + key;
    app->add_option_function<std::string>(
        name, [&o, key](const std::string& v) { o.kv.emplace_back(key, v); }, std::string("see README (") + key + ")");
  }
}

RunConfig build_config(const Overrides& o) {
  RunConfig c;
  if (!o.config.empty()) load_config_file(c, o.config);
  for (const auto& [k, v] : o.kv) apply_setting(c, k, v);
  return c;
}

std::vector<int> parse_levels(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positivity-preserving central DG solver for ideal MHD"};
  app.require_subcommand(1);

  Overrides run_o;
  CLI::App* run_cmd = app.add_subcommand("run", "time-integrate one benchmark problem");
  add_run_flags(run_cmd, run_o);

  std::uint64_t seed = 20240101;
  long samples = 100000;
  std::vector<std::string> batteries;
  bool counterexample = false;
  std::string json_out;
  CLI::App* verify_cmd = app.add_subcommand("verify", "lemma fuzz batteries and the counterexample");
  verify_cmd->add_option("--seed", seed, "RNG seed");
  verify_cmd->add_option("--samples", samples, "draws per battery");
  verify_cmd->add_option("--battery", batteries, "battery name (repeatable); default all");
  verify_cmd->add_flag("--counterexample", counterexample, "also run the standard-scheme counterexample");
  verify_cmd->add_option("--json", json_out, "write the JSON summary here instead of stdout");

  Overrides conv_o;
  std::string levels = "10,20,40,80";
  CLI::App* conv_cmd = app.add_subcommand("convergence", "mesh refinement study against the exact solution");
  add_run_flags(conv_cmd, conv_o);
  conv_cmd->add_option("--levels", levels, "comma separated cells per axis");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      const RunConfig c = build_config(run_o);
      const RunResult r = run(c);
      if (r.failure) {
        std::cerr << failure_json(*r.failure) << "\n";
      } else {
        const DiagnosticsRow& d = r.diagnostics.back();
        std::printf("%s: t=%.6g steps=%ld retries=%d min_rho=%.3e min_p=%.3e eps_div=%.3e\n", c.problem.c_str(), r.t,
                    r.steps, r.retries, d.min_rho, d.min_p, d.eps_div);
      }
      return r.exit_code;
    }
    if (*verify_cmd) {
      const FuzzReport rep = fuzz_lemmas(seed, samples, batteries);
      nlohmann::json j = nlohmann::json::parse(rep.to_json());
      bool ok = rep.passed();
      if (counterexample) {
        const CounterexampleReport ce = run_counterexample(CounterexampleParams{});
        j["counterexample"] = nlohmann::json::parse(ce.to_json());
        ok = ok && ce.demonstrated();
      }
      j["passed"] = ok;
      if (json_out.empty()) {
        std::cout << j.dump(2) << "\n";
      } else {
        std::ofstream(json_out) << j.dump(2) << "\n";
        std::printf("%s\n", ok ? "PASS" : "FAIL");
      }
      return ok ? 0 : 1;
    }
    if (*conv_cmd) {
      RunConfig c = build_config(conv_o);
      const ConvergenceTable t = convergence_study(c, parse_levels(levels));
      std::printf("reference: %s\n%6s %12s %6s %12s %6s %12s %6s\n", t.reference.c_str(), "n", "err_m1", "rate",
                  "err_B1", "rate", "eps_div", "rate");
      for (const ConvergenceRow& r : t.rows)
        std::printf("%6d %12.4e %6.2f %12.4e %6.2f %12.4e %6.2f\n", r.n, r.err[kM1], r.rate[kM1], r.err[kB1],
                    r.rate[kB1], r.eps_div, r.eps_rate);
      if (!c.out.empty()) {
        std::filesystem::create_directories(c.out);
        write_convergence_csv((std::filesystem::path(c.out) / "convergence.csv").string(), t);
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
