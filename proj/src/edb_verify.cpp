#include "orlicz_flow/edb_verify.hpp"

#include <algorithm>
#include <cmath>

namespace orlicz_flow {

FYGap fenchel_young_gap(const DissipationPotential& pot, double t, std::span<const double> u,
                        std::span<const double> v, std::span<const double> xi) {
  const GridMeasure& grid = pot.grid();
  grid.check_shape(u);
  grid.check_shape(v);
  grid.check_shape(xi);
  std::vector<double> minus_xi(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) minus_xi[i] = -xi[i];
  FYGap out;
  out.raw = pot.eval_primal(t, u, v) + pot.eval_conjugate(t, u, minus_xi) + pairing(xi, v, grid);
  out.gap = std::max(out.raw, 0.0);
  out.clamp = out.raw < 0.0 ? -out.raw : 0.0;
  return out;
}

std::string to_string(SolutionClass c) {
  switch (c) {
    case SolutionClass::energy:
      return "energy";
    case SolutionClass::lyapunov:
      return "lyapunov";
    case SolutionClass::neither:
      break;
  }
  return "neither";
}

double default_edb_tol(const DiscreteSolution& sol) {
  return 1e-6 + 1e-8 * std::abs(sol.energy.value(0.0, sol.U.front()));
}

EDBReport edb_report(const DiscreteSolution& sol, double tol) {
  EDBReport rep;
  rep.tol_used = tol < 0.0 ? default_edb_tol(sol) : tol;
  const Partition& part = sol.partition;
  const std::size_t steps = sol.xi.size();
  const double tau = part.tau();
  rep.per_interval.reserve(steps);
  rep.fy_gaps.reserve(steps);

  double e_prev = sol.energy.value(0.0, sol.U[0]);
  for (std::size_t n = 1; n <= steps; ++n) {
    const double t0 = part.time(n - 1);
    const double t1 = part.time(n);
    const GridFunction& u_prev = sol.U[n - 1];
    const GridFunction& xi = sol.xi[n - 1];
    GridFunction v(u_prev.size());
    GridFunction minus_xi(xi.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = (sol.U[n][i] - u_prev[i]) / tau;
      minus_xi[i] = -xi[i];
    }
    IntervalBalance b;
    b.dissipation_primal = tau * sol.potential.eval_primal(t1, u_prev, v);
    b.dissipation_dual = tau * sol.potential.eval_conjugate(t1, u_prev, minus_xi);
    const double e_next = sol.energy.value(t1, sol.U[n]);
    b.energy_drop = e_prev - e_next;
    b.p_integral = integrate_time_slope(sol.energy, t0, t1, u_prev, xi);
    b.residual = b.dissipation_primal + b.dissipation_dual - b.energy_drop - b.p_integral;
    rep.per_interval.push_back(b);

    const FYGap g = fenchel_young_gap(sol.potential, t1, u_prev, v, xi);
    rep.fy_gaps.push_back(g.gap);
    rep.max_fy_clamp = std::max(rep.max_fy_clamp, g.clamp);
    e_prev = e_next;
  }

  // Residual over [t_k, t_n] is prefix[n] - prefix[k]; track the extremes of
  // all such differences in one pass.
  double prefix = 0.0;
  double lowest = 0.0;
  double highest = 0.0;
  rep.max_residual = steps ? -INFINITY : 0.0;
  rep.min_residual = steps ? INFINITY : 0.0;
  for (const IntervalBalance& b : rep.per_interval) {
    prefix += b.residual;
    rep.max_residual = std::max(rep.max_residual, prefix - lowest);
    rep.min_residual = std::min(rep.min_residual, prefix - highest);
    lowest = std::min(lowest, prefix);
    highest = std::max(highest, prefix);
  }
  rep.cumulative_residual = prefix;

  const double worst = std::max(std::abs(rep.max_residual), std::abs(rep.min_residual));
  if (!std::isfinite(prefix)) {
    rep.classification = SolutionClass::neither;
  } else if (worst <= rep.tol_used) {
    rep.classification = SolutionClass::energy;
  } else if (rep.max_residual <= rep.tol_used) {
    rep.classification = SolutionClass::lyapunov;
  } else {
    rep.classification = SolutionClass::neither;
  }
  return rep;
}

}  // namespace orlicz_flow
