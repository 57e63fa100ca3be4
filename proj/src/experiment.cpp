#include "orlicz_flow/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "orlicz_flow/ac_gurtin.hpp"
#include "orlicz_flow/errors.hpp"

namespace orlicz_flow {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- config

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

double get_number(const Json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) bad(path, "must be finite");
  return x;
}

double get_positive(const Json& j, const std::string& path) {
  const double x = get_number(j, path);
  if (!(x > 0.0)) bad(path, "must be positive");
  return x;
}

long long get_integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<long long>();
}

void reject_unknown(const Json& obj, const std::set<std::string>& allowed,
                    const std::string& prefix) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) bad(prefix + key, "unknown key");
  }
}

const std::map<std::string, std::set<std::string>>& preset_params() {
  static const std::map<std::string, std::set<std::string>> m{
      {"bp_ode", {"lambda"}},
      {"quadratic", {"lambda"}},
      {"damage", {"lambda", "L", "nodes"}},
      {"double_well", {"well"}},
      {"heat", {"L", "nodes"}},
      {"ac_gurtin", {"p", "well", "L", "nodes"}},
  };
  return m;
}

bool on_grid(const std::string& problem) {
  return problem == "damage" || problem == "heat" || problem == "ac_gurtin";
}

// ---------------------------------------------------------------- presets

GridFunction cosine_profile(const GridMeasure& grid, double length, double base, double amp) {
  GridFunction u(grid.size());
  const auto x = grid.labels();
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = base + amp * std::cos(std::numbers::pi * x[i] / length);
  }
  return u;
}

// ---------------------------------------------------------------- output

std::string fmt(double x) { return format_double(x); }

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json optional_number(const std::optional<double>& x) {
  return x ? number_or_null(*x) : Json(nullptr);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

std::string trajectory_csv(const DiscreteSolution& sol) {
  const GridMeasure& grid = sol.energy.grid();
  const double tau = sol.partition.tau();
  std::string out = "t,node,U,xi,E,phi_step,phistar_step,fy_gap\n";
  char line[256];
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t n = 0; n < sol.U.size(); ++n) {
    const double t = sol.partition.time(n);
    const double e = sol.energy.value(t, sol.U[n]);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double xi = nan;
      double phi = 0.0;
      double phistar = 0.0;
      double gap = 0.0;
      if (n > 0) {
        const GridFunction& prev = sol.U[n - 1];
        const ConvexFn f = sol.potential.at(t, prev, i);
        const double v = (sol.U[n][i] - prev[i]) / tau;
        xi = sol.xi[n - 1][i];
        const double w = grid.weight(i);
        phi = tau * (w * f(v));
        phistar = tau * (w * f.conjugate()(-xi));
        gap = w * (f(v) + f.conjugate()(-xi) + xi * v);
      }
      std::snprintf(line, sizeof line, "%s,%zu,%s,%s,%s,%s,%s,%s\n", fmt(t).c_str(), i,
                    fmt(sol.U[n][i]).c_str(), fmt(xi).c_str(), fmt(e).c_str(),
                    fmt(phi).c_str(), fmt(phistar).c_str(), fmt(gap).c_str());
      out += line;
    }
  }
  return out;
}

Json edb_json(const DiscreteSolution& sol, const EDBReport& rep) {
  Json per = Json::array();
  for (std::size_t n = 0; n < rep.per_interval.size(); ++n) {
    const IntervalBalance& b = rep.per_interval[n];
    per.push_back(Json{{"t0", sol.partition.time(n)},
                       {"t1", sol.partition.time(n + 1)},
                       {"dissipation_primal", number_or_null(b.dissipation_primal)},
                       {"dissipation_dual", number_or_null(b.dissipation_dual)},
                       {"energy_drop", number_or_null(b.energy_drop)},
                       {"p_integral", number_or_null(b.p_integral)},
                       {"residual", number_or_null(b.residual)}});
  }
  Json gaps = Json::array();
  for (double g : rep.fy_gaps) gaps.push_back(number_or_null(g));
  return Json{{"classification", to_string(rep.classification)},
              {"tol_used", rep.tol_used},
              {"cumulative_residual", number_or_null(rep.cumulative_residual)},
              {"max_subinterval_residual", number_or_null(rep.max_residual)},
              {"min_subinterval_residual", number_or_null(rep.min_residual)},
              {"max_fy_clamp", number_or_null(rep.max_fy_clamp)},
              {"per_interval", per},
              {"fy_gaps", gaps}};
}

Json summary_json(const ExperimentConfig& cfg, const RunSummary& s) {
  return Json{{"problem", cfg.problem},
              {"tau", s.tau},
              {"T", cfg.horizon},
              {"steps_completed", s.steps_done},
              {"status", s.solver_ok ? "ok" : "solver_failure"},
              {"message", s.message},
              {"final_error", optional_number(s.final_error)},
              {"sup_error", optional_number(s.sup_error)},
              {"classification", to_string(s.classification)},
              {"cumulative_residual", number_or_null(s.cumulative_residual)},
              {"max_interval_residual", number_or_null(s.max_interval_residual)},
              {"max_fy_gap", number_or_null(s.max_fy_gap)},
              {"max_el_residual", number_or_null(s.max_el_residual)},
              {"energy_nonincreasing", s.energy_nonincreasing},
              {"monotone_nonincreasing", s.monotone_nonincreasing},
              {"mass_drift", number_or_null(s.mass_drift)},
              {"inner_iterations", s.inner_iterations},
              {"seed", cfg.seed}};
}

RunSummary summarize(const ExperimentConfig& cfg, const Preset& preset,
                     const DiscreteSolution& sol, const EDBReport& rep) {
  RunSummary s;
  s.tau = sol.partition.tau();
  s.steps_done = sol.xi.size();
  const GridMeasure& grid = sol.energy.grid();
  const double mass0 = integrate(sol.U[0], grid);
  double e_prev = sol.energy.value(0.0, sol.U[0]);
  const double energy_tol = 10.0 * cfg.tolerances.inner_tol;
  if (preset.oracle) s.sup_error = 0.0;
  for (std::size_t n = 0; n < sol.U.size(); ++n) {
    const double t = sol.partition.time(n);
    if (n > 0) {
      const double e = sol.energy.value(t, sol.U[n]);
      if (!(e <= e_prev + energy_tol)) s.energy_nonincreasing = false;
      e_prev = e;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(sol.U[n][i] <= sol.U[n - 1][i])) s.monotone_nonincreasing = false;
      }
      const StepDiagnostics& d = sol.diags[n - 1];
      s.max_fy_gap = std::max(s.max_fy_gap, d.fy_gap);
      s.max_el_residual = std::max(s.max_el_residual, d.el_residual);
      s.inner_iterations += d.inner_iterations;
    }
    s.mass_drift = std::max(s.mass_drift, std::abs(integrate(sol.U[n], grid) - mass0));
    if (preset.oracle) {
      const double err = sup_norm([&] {
        GridFunction ref = preset.oracle(t);
        for (std::size_t i = 0; i < ref.size(); ++i) ref[i] -= sol.U[n][i];
        return ref;
      }());
      s.sup_error = std::max(*s.sup_error, err);
      if (n + 1 == sol.U.size()) s.final_error = err;
    }
  }
  s.classification = rep.classification;
  s.cumulative_residual = rep.cumulative_residual;
  s.max_interval_residual = rep.per_interval.empty() ? 0.0 : -INFINITY;
  for (const IntervalBalance& b : rep.per_interval) {
    s.max_interval_residual = std::max(s.max_interval_residual, b.residual);
  }
  return s;
}

RunSummary run_one(const ExperimentConfig& cfg, std::size_t k, bool write) {
  const Preset preset = build_preset(cfg);
  SolverOptions opts;
  opts.inner_tol = cfg.tolerances.inner_tol;
  opts.max_inner_iterations = cfg.tolerances.max_inner_iterations;
  const double tau = cfg.tau_list[k];

  std::optional<DiscreteSolution> sol;
  std::string failure;
  try {
    sol.emplace(run_scheme(preset.potential, preset.energy, preset.u0, cfg.horizon, tau, opts));
  } catch (const SchemeError& e) {
    sol.emplace(e.partial());
    failure = e.what();
  }
  const EDBReport rep = edb_report(*sol, cfg.tolerances.edb_tol);
  RunSummary s = summarize(cfg, preset, *sol, rep);
  s.tau = sol->partition.tau();
  if (!failure.empty()) {
    s.solver_ok = false;
    s.message = failure;
    if (s.final_error && s.steps_done < sol->partition.steps()) s.final_error.reset();
  }
  if (write) {
    s.directory = fs::path(cfg.output_dir) / ("tau_" + std::to_string(k));
    fs::create_directories(s.directory);
    write_text(s.directory / "trajectory.csv", trajectory_csv(*sol));
    write_text(s.directory / "edb_report.json", edb_json(*sol, rep).dump(2) + "\n");
    write_text(s.directory / "summary.json", summary_json(cfg, s).dump(2) + "\n");
  }
  return s;
}

double oracle_threshold(const ExperimentConfig& cfg, const Preset& preset, double tau) {
  const double amp = sup_norm(preset.u0);
  if (cfg.problem == "bp_ode") return 0.8 * tau * std::max(1.0, amp / 2.0);
  if (cfg.problem == "quadratic") return 0.5 * tau * cfg.lambda.value_or(1.0) * amp;
  if (cfg.problem == "heat") {
    const double L = preset.length;
    const double h = L / static_cast<double>(preset.u0.size() - 1);
    const double k2 = std::numbers::pi * std::numbers::pi / (L * L);
    return 2.0 * (tau * k2 + h * h * k2 * k2 / 12.0) * amp;
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"bp_ode", "quadratic", "damage",
                                              "double_well", "heat", "ac_gurtin"};
  return names;
}

ExperimentConfig parse_config(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("<root>", "expected an object");
  reject_unknown(j, {"problem", "params", "u0", "T", "tau_list", "tolerances", "output_dir", "seed"},
                 "");

  ExperimentConfig cfg;
  if (!j.contains("problem") || !j["problem"].is_string()) bad("problem", "required string");
  cfg.problem = j["problem"].get<std::string>();
  const auto& names = preset_names();
  if (std::find(names.begin(), names.end(), cfg.problem) == names.end()) {
    bad("problem", "unknown preset '" + cfg.problem + "'");
  }

  if (j.contains("params")) {
    const Json& p = j["params"];
    if (!p.is_object()) bad("params", "expected an object");
    reject_unknown(p, {"lambda", "p", "well", "L", "nodes"}, "params.");
    const auto& used = preset_params().at(cfg.problem);
    for (const auto& [key, value] : p.items()) {
      if (!used.count(key)) bad("params." + key, "not used by preset " + cfg.problem);
    }
    if (p.contains("lambda")) cfg.lambda = get_positive(p["lambda"], "params.lambda");
    if (p.contains("p")) {
      cfg.p = get_number(p["p"], "params.p");
      if (!(*cfg.p > 1.0)) bad("params.p", "must exceed 1");
    }
    if (p.contains("well")) {
      cfg.well = get_number(p["well"], "params.well");
      if (*cfg.well < 0.0) bad("params.well", "must be >= 0");
    }
    if (p.contains("L")) cfg.length = get_positive(p["L"], "params.L");
    if (p.contains("nodes")) {
      const long long n = get_integer(p["nodes"], "params.nodes");
      if (n < 2 || n > 1000000) bad("params.nodes", "must lie in [2, 1e6]");
      cfg.nodes = static_cast<int>(n);
    }
  }

  if (j.contains("u0")) {
    const Json& u = j["u0"];
    if (u.is_string()) {
      const std::string s = u.get<std::string>();
      if (s != "default" && !(s == "cos" && on_grid(cfg.problem))) {
        bad("u0", "unknown initial-data preset '" + s + "'");
      }
    } else if (u.is_array()) {
      if (u.empty()) bad("u0", "must not be empty");
      for (std::size_t i = 0; i < u.size(); ++i) {
        cfg.u0.push_back(get_number(u[i], "u0[" + std::to_string(i) + "]"));
      }
    } else {
      bad("u0", "expected an array of numbers or a preset name");
    }
  }

  if (!j.contains("T")) bad("T", "required");
  cfg.horizon = get_positive(j["T"], "T");

  if (!j.contains("tau_list") || !j["tau_list"].is_array() || j["tau_list"].empty()) {
    bad("tau_list", "required non-empty array");
  }
  for (std::size_t k = 0; k < j["tau_list"].size(); ++k) {
    const std::string path = "tau_list[" + std::to_string(k) + "]";
    const double tau = get_positive(j["tau_list"][k], path);
    try {
      (void)Partition::uniform(cfg.horizon, tau);
    } catch (const DomainError& e) {
      bad(path, e.what());
    }
    if (std::find(cfg.tau_list.begin(), cfg.tau_list.end(), tau) != cfg.tau_list.end()) {
      bad(path, "duplicate step size");
    }
    cfg.tau_list.push_back(tau);
  }

  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    if (!t.is_object()) bad("tolerances", "expected an object");
    reject_unknown(t, {"inner_tol", "edb_tol", "max_inner_iterations"}, "tolerances.");
    if (t.contains("inner_tol")) {
      cfg.tolerances.inner_tol = get_positive(t["inner_tol"], "tolerances.inner_tol");
    }
    if (t.contains("edb_tol")) {
      cfg.tolerances.edb_tol = get_positive(t["edb_tol"], "tolerances.edb_tol");
    }
    if (t.contains("max_inner_iterations")) {
      const long long m = get_integer(t["max_inner_iterations"], "tolerances.max_inner_iterations");
      if (m < 1 || m > 100000000) bad("tolerances.max_inner_iterations", "must lie in [1, 1e8]");
      cfg.tolerances.max_inner_iterations = static_cast<int>(m);
    }
  }

  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string() || j["output_dir"].get<std::string>().empty()) {
      bad("output_dir", "expected a non-empty string");
    }
    cfg.output_dir = j["output_dir"].get<std::string>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) bad("seed", "expected a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }

  (void)build_preset(cfg);  // surfaces shape errors in u0 early
  return cfg;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

Preset build_preset(const ExperimentConfig& cfg) {
  const double lambda = cfg.lambda.value_or(1.0);
  const double length = cfg.length.value_or(1.0);

  auto grid_preset = [&](std::size_t default_nodes) {
    const std::size_t n = cfg.nodes ? static_cast<std::size_t>(*cfg.nodes) : default_nodes;
    GridMeasure grid = GridMeasure::uniform_trapezoid(length, n);
    if (!cfg.u0.empty() && cfg.u0.size() != n) {
      bad("u0", "has " + std::to_string(cfg.u0.size()) + " entries, grid has " +
                    std::to_string(n) + " nodes");
    }
    return grid;
  };
  auto atoms_preset = [&](GridFunction fallback) {
    GridFunction u0 = cfg.u0.empty() ? std::move(fallback) : cfg.u0;
    return std::make_pair(GridMeasure::unit_atoms(u0.size()), u0);
  };

  if (cfg.problem == "bp_ode") {
    auto [grid, u0] = atoms_preset({2.0});
    Preset p{cfg.problem, DissipationPotential::bp(grid),
             EnergyFunctional::quadratic(grid, lambda), u0, {}, 0.0, true};
    // psi'(x') = -lambda x  <=>  x' = -sinh(lambda x); tanh(lambda x / 2) decays like e^{-lambda t}.
    p.oracle = [u0 = u0, lambda](double t) {
      GridFunction x(u0.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = t == 0.0 ? u0[i]
                        : 2.0 / lambda *
                              std::atanh(std::exp(-lambda * t) * std::tanh(lambda * u0[i] / 2.0));
      }
      return x;
    };
    return p;
  }
  if (cfg.problem == "quadratic") {
    auto [grid, u0] = atoms_preset({1.0});
    Preset p{cfg.problem,
             DissipationPotential::autonomous(OrliczIntegrand(grid, ConvexFn::power(2.0))),
             EnergyFunctional::quadratic(grid, lambda),
             u0,
             {},
             0.0,
             true};
    p.oracle = [u0 = u0, lambda](double t) {
      GridFunction x(u0);
      for (double& xi : x) xi *= std::exp(-lambda * t);
      return x;
    };
    return p;
  }
  if (cfg.problem == "double_well") {
    auto [grid, u0] = atoms_preset({-1.6, -0.7, 0.8, 1.8});
    return Preset{cfg.problem,
                  DissipationPotential::autonomous(OrliczIntegrand(grid, ConvexFn::power(2.0))),
                  EnergyFunctional::double_well(grid, cfg.well.value_or(1.0)),
                  u0,
                  {},
                  0.0,
                  cfg.well.value_or(1.0) == 0.0};
  }
  if (cfg.problem == "damage") {
    GridMeasure grid = grid_preset(17);
    const double h = length / static_cast<double>(grid.size() - 1);
    GridFunction u0 = cfg.u0.empty() ? cosine_profile(grid, length, 0.0, 1.0) : cfg.u0;
    auto energy = EnergyFunctional::composite(
        grid, {QuadraticTerm{lambda, 0.0}, GradientTerm{ConvexFn::power(2.0), h}});
    return Preset{cfg.problem, DissipationPotential::damage(grid), energy, u0, {}, length, true};
  }
  if (cfg.problem == "heat") {
    GridMeasure grid = grid_preset(65);
    const double h = length / static_cast<double>(grid.size() - 1);
    GridFunction u0 = cfg.u0.empty() ? cosine_profile(grid, length, 0.0, 1.0) : cfg.u0;
    Preset p{cfg.problem,
             DissipationPotential::autonomous(OrliczIntegrand(grid, ConvexFn::power(2.0))),
             EnergyFunctional::p_dirichlet(grid, 2.0, h),
             u0,
             {},
             length,
             true};
    const int modes = static_cast<int>(grid.size());
    p.oracle = [u0, grid, length, modes](double t) {
      return reference_heat(u0, grid, length, t, modes);
    };
    return p;
  }
  // ac_gurtin
  GridMeasure grid = grid_preset(33);
  ACGurtinProblem prob{grid,
                       length,
                       ConvexFn::bp_primal(),
                       ConvexFn::power(cfg.p.value_or(2.0)),
                       cfg.well.value_or(1.0),
                       1.0,
                       cfg.u0.empty() ? cosine_profile(grid, length, 1.2, 0.4) : cfg.u0};
  AssembledProblem a = assemble(prob);
  return Preset{cfg.problem, a.potential, a.energy, prob.u0, {}, length, prob.well == 0.0};
}

bool ExperimentResult::solver_failed() const {
  return std::any_of(runs.begin(), runs.end(), [](const RunSummary& r) { return !r.solver_ok; });
}

unsigned worker_threads() {
  if (const char* env = std::getenv("ORLICZ_FLOW_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, bool write) {
  const std::size_t count = cfg.tau_list.size();
  std::vector<RunSummary> runs(count);
  std::vector<std::string> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        runs[k] = run_one(cfg, k, write);
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  const unsigned threads = std::min<unsigned>(worker_threads(), static_cast<unsigned>(count));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (std::size_t k = 0; k < count; ++k) {
    if (!errors[k].empty()) throw Error("run tau_" + std::to_string(k) + ": " + errors[k]);
  }
  return ExperimentResult{std::move(runs)};
}

std::vector<CheckItem> check_experiment(const ExperimentConfig& cfg, const ExperimentResult& res,
                                        bool write) {
  const Preset preset = build_preset(cfg);
  const double inner = 10.0 * cfg.tolerances.inner_tol;
  std::vector<CheckItem> items;
  auto add = [&](std::size_t k, const std::string& name, double value, double threshold) {
    items.push_back({"tau_" + std::to_string(k) + "/" + name, value, threshold,
                     value <= threshold});
  };
  auto add_flag = [&](std::size_t k, const std::string& name, bool ok) {
    items.push_back({"tau_" + std::to_string(k) + "/" + name, ok ? 1.0 : 0.0, 1.0, ok});
  };
  for (std::size_t k = 0; k < res.runs.size(); ++k) {
    const RunSummary& r = res.runs[k];
    add_flag(k, "solver_ok", r.solver_ok);
    add(k, "max_fy_gap", r.max_fy_gap, inner);
    add(k, "max_interval_residual", r.max_interval_residual, inner);
    add_flag(k, "energy_nonincreasing", r.energy_nonincreasing);
    if (r.sup_error) add(k, "sup_error", *r.sup_error, oracle_threshold(cfg, preset, r.tau));
    if (cfg.problem == "heat") add(k, "mass_drift", r.mass_drift, 1e-10);
    if (cfg.problem == "damage") {
      add_flag(k, "monotone_nonincreasing", r.monotone_nonincreasing);
      add_flag(k, "lyapunov", r.classification == SolutionClass::lyapunov);
    } else {
      add_flag(k, "classified", r.classification != SolutionClass::neither);
    }
  }
  if (write) {
    Json checks = Json::array();
    bool all = true;
    for (const CheckItem& c : items) {
      all = all && c.pass;
      checks.push_back(Json{{"name", c.name},
                            {"value", number_or_null(c.value)},
                            {"threshold", number_or_null(c.threshold)},
                            {"pass", c.pass}});
    }
    fs::create_directories(cfg.output_dir);
    write_text(fs::path(cfg.output_dir) / "check.json",
               Json{{"problem", cfg.problem}, {"pass", all}, {"checks", checks}}.dump(2) + "\n");
  }
  return items;
}

std::string convergence_table(const ExperimentConfig& cfg) {
  if (cfg.problem != "bp_ode" && cfg.problem != "quadratic" && cfg.problem != "heat") {
    throw ConfigError("problem: preset " + cfg.problem + " has no oracle for a convergence table");
  }
  if (cfg.tau_list.size() < 3) throw ConfigError("tau_list: need at least 3 step sizes");
  const ExperimentResult res = run_experiment(cfg, false);
  std::string out = "tau,sup_error,edb_residual,empirical_order,plateau\n";
  for (std::size_t k = 0; k < res.runs.size(); ++k) {
    const RunSummary& r = res.runs[k];
    if (!r.solver_ok) throw Error("run tau_" + std::to_string(k) + " failed: " + r.message);
    std::string order;
    std::string plateau;
    if (k > 0) {
      const RunSummary& prev = res.runs[k - 1];
      const double q = std::log(*prev.sup_error / *r.sup_error) / std::log(prev.tau / r.tau);
      order = fmt(q);
      plateau = q < 0.5 ? "1" : "0";
    }
    out += fmt(r.tau) + "," + fmt(*r.sup_error) + "," + fmt(r.cumulative_residual) + "," + order +
           "," + plateau + "\n";
  }
  return out;
}

std::string probe_report(const std::string& potential_name) {
  const ConvexFn f = ConvexFn::from_name(potential_name);
  const std::vector<double> samples{0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
  const std::vector<double> thetas{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  const std::vector<double> radii{0.1, 1.0, 10.0};

  auto array = [](const std::vector<double>& xs) {
    Json a = Json::array();
    for (double x : xs) a.push_back(number_or_null(x));
    return a;
  };

  const Delta2Report d2 = delta2_probe(f, samples);
  const SuperlinearityReport sp = superlinearity_probe(f, 1.0, thetas);
  const SuperlinearityReport sm = superlinearity_probe(f, -1.0, thetas);
  std::vector<double> coercivity;
  for (double r : radii) coercivity.push_back(coercivity_probe(f, r));
  Json rays = Json::array();
  for (double v : {-1.0, 0.0, 1.0}) {
    const RaySmoothnessReport rs = ray_smoothness_probe(f, v);
    rays.push_back(Json{{"v", v},
                        {"left_slope", number_or_null(rs.left_slope)},
                        {"right_slope", number_or_null(rs.right_slope)},
                        {"differentiable", rs.differentiable},
                        {"kink", rs.kink}});
  }
  const Json report{
      {"name", f.name()},
      {"orlicz", f.is_orlicz()},
      {"even", f.is_even()},
      {"conjugate", f.conjugate().name()},
      {"delta2",
       Json{{"samples", array(samples)},
            {"passes", d2.passes},
            {"k", d2.k ? number_or_null(*d2.k) : Json(nullptr)},
            {"ratio_trace", array(d2.ratio_trace)}}},
      {"superlinearity",
       Json{{"thetas", array(thetas)},
            {"superlinear", sp.superlinear && sm.superlinear},
            {"trace_plus", array(sp.trace)},
            {"trace_minus", array(sm.trace)}}},
      {"coercivity", Json{{"radii", array(radii)},
                          {"values", array(coercivity)},
                          {"coercive", coercivity[1] > 0.0}}},
      {"ray_smoothness", rays}};
  return report.dump(2) + "\n";
}

}  // namespace orlicz_flow
