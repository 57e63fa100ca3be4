#pragma once

#include <span>
#include <string>
#include <vector>

#include "orlicz_flow/dissipation.hpp"
#include "orlicz_flow/mm_solver.hpp"

namespace orlicz_flow {

struct FYGap {
  double gap = 0.0;    // max(raw, 0)
  double clamp = 0.0;  // -raw when raw < 0, else 0
  double raw = 0.0;
};

/// phi(v) + phi*(-xi) + <xi, v>_mu for the potential frozen at (t, u).
FYGap fenchel_young_gap(const DissipationPotential& pot, double t, std::span<const double> u,
                        std::span<const double> v, std::span<const double> xi);

enum class SolutionClass { energy, lyapunov, neither };
std::string to_string(SolutionClass c);

struct IntervalBalance {
  double dissipation_primal = 0.0;  // tau phi(v^n)
  double dissipation_dual = 0.0;    // tau phi*(-xi^n)
  double energy_drop = 0.0;         // E(t_{n-1}, U^{n-1}) - E(t_n, U^n)
  double p_integral = 0.0;          // int of the power d_t E over the interval
  double residual = 0.0;            // primal + dual - drop - p_integral
};

struct EDBReport {
  std::vector<IntervalBalance> per_interval;
  std::vector<double> fy_gaps;
  double cumulative_residual = 0.0;  // over [0, T]
  double max_residual = 0.0;         // over all [t_k, t_n], k < n
  double min_residual = 0.0;
  double max_fy_clamp = 0.0;
  SolutionClass classification = SolutionClass::neither;
  double tol_used = 0.0;
};

/// Default classification tolerance: 1e-6 + 1e-8 |E_0(u0)|.
double default_edb_tol(const DiscreteSolution& sol);

/// Energy-dissipation balance of a discrete solution. The potential is frozen
/// at (t_n, U^{n-1}) on each interval, as in the step problem. A negative
/// `tol` selects default_edb_tol.
EDBReport edb_report(const DiscreteSolution& sol, double tol = -1.0);

}  // namespace orlicz_flow
