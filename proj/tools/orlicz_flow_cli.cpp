// orlicz-flow: minimizing-movement experiments for generalized gradient flows.
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "orlicz_flow/errors.hpp"
#include "orlicz_flow/experiment.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kSolverFailure = 3;
constexpr int kCheckViolation = 4;

}  // namespace

int main(int argc, char** argv) {
  using namespace orlicz_flow;

  CLI::App app{"Minimizing-movement solver for rate-independent and Orlicz-type gradient flows"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool check = false;
  auto* run = app.add_subcommand("run", "run every step size of a config and write artifacts");
  run->add_option("--config", config_path, "experiment JSON")->required();
  run->add_flag("--check", check, "compare against built-in thresholds, exit 4 on violation");
  run->add_option("--out", out_dir, "override output_dir");

  std::string table_config;
  auto* table = app.add_subcommand("table", "print a convergence table as CSV");
  table->add_option("--config", table_config, "experiment JSON")->required();

  std::string potential;
  auto* probe = app.add_subcommand("probe", "print structural probes of a convex function");
  probe->add_option("--potential", potential, "e.g. power:2, bp_primal, bp_dual, damage_primal")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) {
      ExperimentConfig cfg = load_config(config_path);
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      const ExperimentResult res = run_experiment(cfg);
      for (const RunSummary& r : res.runs) {
        std::printf("tau=%s steps=%zu status=%s class=%s", format_double(r.tau).c_str(),
                    r.steps_done, r.solver_ok ? "ok" : "solver_failure",
                    to_string(r.classification).c_str());
        if (r.final_error) std::printf(" final_error=%s", format_double(*r.final_error).c_str());
        std::printf("\n");
        if (!r.solver_ok) std::fprintf(stderr, "error: %s\n", r.message.c_str());
      }
      if (res.solver_failed()) return kSolverFailure;
      if (check) {
        bool all = true;
        for (const CheckItem& c : check_experiment(cfg, res)) {
          if (!c.pass) {
            all = false;
            std::fprintf(stderr, "check failed: %s = %s > %s\n", c.name.c_str(),
                         format_double(c.value).c_str(), format_double(c.threshold).c_str());
          }
        }
        std::printf("check: %s\n", all ? "pass" : "FAIL");
        if (!all) return kCheckViolation;
      }
      return kOk;
    }
    if (*table) {
      std::cout << convergence_table(load_config(table_config));
      return kOk;
    }
    std::cout << probe_report(potential);
    return kOk;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kSolverFailure;
  }
}
