#include "orlicz_flow/mm_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace orlicz_flow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::vector<ConvexFn> node_functions(const DissipationPotential& pot, double t,
                                     std::span<const double> u_prev) {
  std::vector<ConvexFn> fns;
  fns.reserve(u_prev.size());
  for (std::size_t i = 0; i < u_prev.size(); ++i) fns.push_back(pot.at(t, u_prev, i));
  return fns;
}

GridFunction rates(std::span<const double> U, std::span<const double> u_prev, double tau) {
  GridFunction v(U.size());
  for (std::size_t i = 0; i < U.size(); ++i) v[i] = (U[i] - u_prev[i]) / tau;
  return v;
}

double el_residual(const std::vector<ConvexFn>& fns, std::span<const double> v,
                   std::span<const double> xi) {
  double r = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    r = std::max(r, fns[i].subdifferential(v[i]).distance(-xi[i]));
  }
  return r;
}

double fy_gap_nodes(const std::vector<ConvexFn>& fns, const GridMeasure& grid,
                    std::span<const double> v, std::span<const double> xi) {
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double primal = fns[i](v[i]);
    const double dual = fns[i].conjugate()(-xi[i]);
    if (!std::isfinite(primal) || !std::isfinite(dual)) return kInf;
    sum += grid.weight(i) * (primal + dual + xi[i] * v[i]);
  }
  return std::max(sum, 0.0);
}

// Node-wise: find v with 0 in d phi(v) + slope(u + tau v). `curv` is the
// derivative of slope in its argument.
template <class Slope, class Curv>
RootResult solve_node(const ConvexFn& phi, double u, double tau, double start, double tol,
                      Slope&& slope, Curv&& curv) {
  RootOptions ro;
  ro.residual_tol = tol;
  const Interval dom = phi.domain();
  ro.domain_lo = dom.lo;
  ro.domain_hi = dom.hi;
  ro.initial_step = 1.0;
  ro.max_iterations = 500;
  return solve_monotone_inclusion(
      [&](double v) { return phi.directional_subdifferential(v).shifted(slope(u + tau * v)); },
      [&](double v) { return phi.second_derivative(v) + tau * curv(u + tau * v); }, start, ro);
}

GridFunction solve_separable(const std::vector<ConvexFn>& fns, const EnergyFunctional& energy,
                             double t, double tau, std::span<const double> u_prev,
                             const SolverOptions& opts, int& iterations) {
  const std::size_t n = u_prev.size();
  GridFunction U(n);
  for (std::size_t i = 0; i < n; ++i) {
    const RootResult r = solve_node(
        fns[i], u_prev[i], tau, 0.0, 0.1 * opts.inner_tol,
        [&](double x) { return energy.nodal_derivative(t, i, x); },
        [&](double x) { return energy.nodal_curvature(t, i, x); });
    iterations += r.iterations;
    if (r.status != RootStatus::converged) {
      GridFunction best(u_prev.begin(), u_prev.end());
      best[i] = u_prev[i] + tau * r.x;
      throw StepError("node " + std::to_string(i) + ": scalar step solve did not converge", best);
    }
    U[i] = u_prev[i] + tau * r.x;
  }
  return U;
}

GridFunction solve_coupled(const std::vector<ConvexFn>& fns, const EnergyFunctional& energy,
                           double t, double tau, std::span<const double> u_prev,
                           const SolverOptions& opts, int& iterations) {
  const GridMeasure& grid = energy.grid();
  const std::size_t n = u_prev.size();

  auto objective = [&](std::span<const double> U) {
    double phi_part = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double f = fns[i]((U[i] - u_prev[i]) / tau);
      if (!std::isfinite(f)) return kInf;
      phi_part += grid.weight(i) * f;
    }
    return tau * phi_part + energy.value(t, U);
  };

  // prox_s(w): node-wise argmin tau phi((U - u)/tau) + (U - w)^2 / (2 s).
  auto prox = [&](std::span<const double> w, std::span<const double> warm, double s,
                  GridFunction& out) {
    for (std::size_t i = 0; i < n; ++i) {
      const double wi = w[i];
      const RootResult r = solve_node(
          fns[i], u_prev[i], tau, (warm[i] - u_prev[i]) / tau, 1e-3 * opts.inner_tol,
          [&](double x) { return (x - wi) / s; }, [&](double) { return 1.0 / s; });
      if (r.status != RootStatus::converged) {
        throw StepError("node " + std::to_string(i) + ": proximal solve did not converge",
                        GridFunction(warm.begin(), warm.end()));
      }
      out[i] = u_prev[i] + tau * r.x;
    }
  };

  GridFunction x(u_prev.begin(), u_prev.end());
  GridFunction y = x;
  GridFunction z(n);
  GridFunction w(n);
  double momentum = 1.0;
  double s = 1.0;
  double best_obj = objective(x);
  GridFunction best = x;

  for (int it = 0; it < opts.max_inner_iterations; ++it) {
    ++iterations;
    const GridFunction gy = energy.gradient(t, y);
    const double ey = energy.value(t, y);
    for (int bt = 0;; ++bt) {
      for (std::size_t i = 0; i < n; ++i) w[i] = y[i] - s * gy[i];
      prox(w, y, s, z);
      const double ez = energy.value(t, z);
      double lin = 0.0;
      double sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = z[i] - y[i];
        lin += grid.weight(i) * gy[i] * d;
        sq += grid.weight(i) * d * d;
      }
      if (ez <= ey + lin + sq / (2.0 * s) + 1e-15 * std::abs(ey)) break;
      s *= 0.5;
      if (bt > 200) throw StepError("proximal gradient backtracking failed", best);
    }

    const double obj = objective(z);
    if (obj < best_obj) {
      best_obj = obj;
      best = z;
    }
    const GridFunction gz = energy.gradient(t, z);
    if (el_residual(fns, rates(z, u_prev, tau), gz) <= opts.inner_tol) return z;

    // Gradient-based adaptive restart.
    double restart = 0.0;
    for (std::size_t i = 0; i < n; ++i) restart += grid.weight(i) * (y[i] - z[i]) * (z[i] - x[i]);
    if (restart > 0.0) {
      momentum = 1.0;
      y = z;
    } else {
      const double next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
      const double beta = (momentum - 1.0) / next;
      for (std::size_t i = 0; i < n; ++i) y[i] = z[i] + beta * (z[i] - x[i]);
      momentum = next;
    }
    x = z;
  }
  throw StepError("proximal gradient hit the iteration cap (" +
                      std::to_string(opts.max_inner_iterations) + ")",
                  best);
}

}  // namespace

Partition Partition::uniform(double horizon, double tau) {
  if (!(horizon > 0.0) || !(tau > 0.0)) throw DomainError("need T > 0 and tau > 0");
  const double ratio = horizon / tau;
  const double steps = std::round(ratio);
  if (steps < 1.0 || std::abs(steps * tau - horizon) > 1e-9) {
    throw DomainError("tau = " + num(tau) + " does not divide T = " + num(horizon));
  }
  Partition p;
  p.horizon_ = horizon;
  p.steps_ = static_cast<std::size_t>(steps);
  p.tau_ = horizon / steps;
  return p;
}

double Partition::time(std::size_t n) const {
  if (n == steps_) return horizon_;
  return horizon_ * static_cast<double>(n) / static_cast<double>(steps_);
}

std::vector<double> Partition::nodes() const {
  std::vector<double> t(steps_ + 1);
  for (std::size_t n = 0; n <= steps_; ++n) t[n] = time(n);
  return t;
}

StepResult solve_step(const DissipationPotential& pot, const EnergyFunctional& energy, double t,
                      double tau, std::span<const double> u_prev, const SolverOptions& opts) {
  const GridMeasure& grid = energy.grid();
  grid.check_shape(u_prev);
  pot.grid().check_shape(u_prev);
  if (!(tau > 0.0)) throw DomainError("step width must be positive");
  if (!std::isfinite(energy.value(t, u_prev))) {
    throw DomainError("previous state lies outside the energy domain");
  }

  StepResult res;
  const double lambda = energy.semiconvexity(t);
  if (lambda > 0.0 && tau > opts.semiconvexity_safety / lambda) {
    if (!opts.allow_nonconvex_steps) {
      throw DomainError("tau = " + num(tau) + " exceeds the semiconvexity threshold " +
                        num(opts.semiconvexity_safety / lambda) + " (Lambda = " + num(lambda) +
                        ")");
    }
    res.diag.multi_minimizer_warning = true;
  }

  const std::vector<ConvexFn> fns = node_functions(pot, t, u_prev);
  int iterations = 0;
  res.U = energy.separable() ? solve_separable(fns, energy, t, tau, u_prev, opts, iterations)
                             : solve_coupled(fns, energy, t, tau, u_prev, opts, iterations);
  res.diag.inner_iterations = iterations;

  const GridFunction v = rates(res.U, u_prev, tau);
  const double phi = pot.eval_primal(t, u_prev, v);
  const double e = energy.value(t, res.U);
  if (!std::isfinite(phi) || !std::isfinite(e)) {
    throw DomainError("step objective is infinite at the computed minimizer");
  }
  res.xi = energy.gradient(t, res.U);
  res.diag.j_value = tau * phi + e;
  res.diag.el_residual = el_residual(fns, v, res.xi);
  res.diag.fy_gap = fy_gap_nodes(fns, grid, v, res.xi);
  return res;
}

DiscreteSolution run_scheme(const DissipationPotential& pot, const EnergyFunctional& energy,
                            std::span<const double> u0, double horizon, double tau,
                            const SolverOptions& opts) {
  energy.grid().check_shape(u0);
  DiscreteSolution sol{Partition::uniform(horizon, tau), {}, {}, {}, {}, pot, energy, opts};
  const Partition& part = sol.partition;
  const double step = part.tau();
  sol.U.reserve(part.steps() + 1);
  sol.U.emplace_back(u0.begin(), u0.end());

  const double e0 = energy.value(0.0, u0);
  double cum_p = 0.0;
  double cum_diss = 0.0;
  for (std::size_t n = 1; n <= part.steps(); ++n) {
    const double t_prev = part.time(n - 1);
    const double t = part.time(n);
    const GridFunction& u_prev = sol.U.back();
    StepResult r;
    try {
      r = solve_step(pot, energy, t, step, u_prev, opts);
    } catch (const Error& err) {
      throw SchemeError("step " + std::to_string(n) + " at t = " + num(t) + ": " + err.what(),
                        std::make_shared<const DiscreteSolution>(sol));
    }
    const GridFunction v = rates(r.U, u_prev, step);
    GridFunction minus_xi(r.xi.size());
    for (std::size_t i = 0; i < r.xi.size(); ++i) minus_xi[i] = -r.xi[i];
    cum_diss += step * (pot.eval_primal(t, u_prev, v) + pot.eval_conjugate(t, u_prev, minus_xi));
    cum_p += integrate_time_slope(energy, t_prev, t, u_prev, r.xi);
    sol.energy_slack.push_back(e0 + cum_p - cum_diss - energy.value(t, r.U));
    sol.U.push_back(std::move(r.U));
    sol.xi.push_back(std::move(r.xi));
    sol.diags.push_back(r.diag);
  }
  return sol;
}

namespace {

// Index n with t_n == t when t sits on the partition, else -1.
long node_index(const Partition& part, double t) {
  const double k = std::round(t / part.tau());
  if (std::abs(t - k * part.tau()) <= 1e-9 * part.tau()) return static_cast<long>(k);
  return -1;
}

void check_range(const Partition& part, double t) {
  if (!(t >= -1e-12 * part.horizon()) || !(t <= part.horizon() * (1.0 + 1e-12))) {
    throw RangeError("interpolation time " + num(t) + " outside [0, " + num(part.horizon()) + "]");
  }
}

}  // namespace

StepResult variational_step(const DiscreteSolution& sol, double t) {
  const Partition& part = sol.partition;
  check_range(part, t);
  const long k = node_index(part, t);
  if (k == 0) throw RangeError("variational multiplier is undefined at t = 0");
  if (k > 0) {
    StepResult r;
    r.U = sol.U[k];
    r.xi = sol.xi[k - 1];
    r.diag = sol.diags[k - 1];
    return r;
  }
  const auto n = static_cast<std::size_t>(std::ceil(t / part.tau()));
  const double theta = t - part.time(n - 1);
  return solve_step(sol.potential, sol.energy, t, theta, sol.U[n - 1], sol.options);
}

GridFunction interpolate(const DiscreteSolution& sol, double t, Interpolant which) {
  const Partition& part = sol.partition;
  check_range(part, t);
  const long k = node_index(part, t);
  if (k >= 0) return sol.U[static_cast<std::size_t>(k)];
  const auto n = static_cast<std::size_t>(std::ceil(t / part.tau()));  // t in (t_{n-1}, t_n)
  switch (which) {
    case Interpolant::left:
      return sol.U[n];
    case Interpolant::right:
      return sol.U[n - 1];
    case Interpolant::affine: {
      const double lam = (t - part.time(n - 1)) / part.tau();
      GridFunction out(sol.U[n].size());
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = lam * sol.U[n][i] + (1.0 - lam) * sol.U[n - 1][i];
      }
      return out;
    }
    case Interpolant::variational:
      return variational_step(sol, t).U;
  }
  throw RangeError("unknown interpolant");
}

}  // namespace orlicz_flow
