#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orlicz_flow/dissipation.hpp"
#include "orlicz_flow/edb_verify.hpp"
#include "orlicz_flow/energy.hpp"
#include "orlicz_flow/mm_solver.hpp"

namespace orlicz_flow {

struct ExperimentTolerances {
  double inner_tol = 1e-10;
  double edb_tol = -1.0;  // negative: default_edb_tol
  int max_inner_iterations = 50000;
};

/// Parsed experiment configuration. See README for the JSON schema.
struct ExperimentConfig {
  std::string problem;
  std::optional<double> lambda;
  std::optional<double> p;
  std::optional<double> well;
  std::optional<double> length;
  std::optional<int> nodes;
  std::vector<double> u0;  // empty: preset default
  double horizon = 0.0;
  std::vector<double> tau_list;
  ExperimentTolerances tolerances;
  std::string output_dir = "out";
  std::uint64_t seed = 0;
};

/// Throws ConfigError naming the offending field path (e.g. "params.nodes").
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

const std::vector<std::string>& preset_names();

struct Preset {
  std::string name;
  DissipationPotential potential;
  EnergyFunctional energy;
  GridFunction u0;
  /// Exact or reference solution at time t, when one exists.
  std::function<GridFunction(double)> oracle;
  double length = 0.0;  // spatial domain length for PDE presets, else 0
  bool convex = true;   // energy convex (semiconvexity constant 0)
};

Preset build_preset(const ExperimentConfig& cfg);

struct RunSummary {
  double tau = 0.0;
  std::size_t steps_done = 0;
  bool solver_ok = true;
  std::string message;
  std::optional<double> final_error;
  std::optional<double> sup_error;
  double max_fy_gap = 0.0;
  double max_el_residual = 0.0;
  double max_interval_residual = 0.0;
  double cumulative_residual = 0.0;
  SolutionClass classification = SolutionClass::neither;
  bool energy_nonincreasing = true;
  bool monotone_nonincreasing = true;
  double mass_drift = 0.0;
  long inner_iterations = 0;
  std::filesystem::path directory;
};

struct ExperimentResult {
  std::vector<RunSummary> runs;
  bool solver_failed() const;
};

/// Runs every tau of the config, concurrently up to ORLICZ_FLOW_THREADS, and
/// writes trajectory.csv, edb_report.json and summary.json per run into
/// <output_dir>/tau_<k>. Artifacts are skipped when `write` is false.
ExperimentResult run_experiment(const ExperimentConfig& cfg, bool write = true);

struct CheckItem {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Thresholds baked into the binary for the preset runs; writes check.json
/// next to the run directories when `write` is set.
std::vector<CheckItem> check_experiment(const ExperimentConfig& cfg, const ExperimentResult& res,
                                        bool write = true);

/// CSV table "tau,sup_error,edb_residual,empirical_order,plateau". Needs an
/// oracle (bp_ode, quadratic, heat) and at least three step sizes.
std::string convergence_table(const ExperimentConfig& cfg);

/// JSON report of the structural probes for a named convex function.
std::string probe_report(const std::string& potential_name);

/// Number of worker threads: ORLICZ_FLOW_THREADS if set and positive, else
/// the hardware concurrency.
unsigned worker_threads();

/// %.17g formatting used for every emitted number.
std::string format_double(double x);

}  // namespace orlicz_flow
