#pragma once

#include <memory>
#include <span>
#include <vector>

#include "orlicz_flow/dissipation.hpp"
#include "orlicz_flow/energy.hpp"
#include "orlicz_flow/errors.hpp"
#include "orlicz_flow/measure_grid.hpp"

namespace orlicz_flow {

struct SolverOptions {
  double inner_tol = 1e-10;  // Euler-Lagrange residual target (max norm)
  int max_inner_iterations = 50000;
  double semiconvexity_safety = 0.9;  // steps need tau <= safety / Lambda
  bool allow_nonconvex_steps = false;
};

/// Uniform time grid 0 = t_0 < ... < t_N = T.
class Partition {
 public:
  /// Throws DomainError unless T > 0, tau > 0 and tau divides T within 1e-9.
  static Partition uniform(double horizon, double tau);

  std::size_t steps() const noexcept { return steps_; }
  double tau() const noexcept { return tau_; }
  double horizon() const noexcept { return horizon_; }
  double time(std::size_t n) const;
  std::vector<double> nodes() const;

 private:
  double horizon_ = 0.0;
  double tau_ = 0.0;
  std::size_t steps_ = 0;
};

struct StepDiagnostics {
  double j_value = 0.0;    // tau phi((U - u_prev)/tau) + E_t(U)
  double fy_gap = 0.0;     // Fenchel-Young gap of ((U - u_prev)/tau, -xi)
  int inner_iterations = 0;
  double el_residual = 0.0;  // max_i dist(-xi_i, d phi_i(v_i))
  bool multi_minimizer_warning = false;
};

struct StepResult {
  GridFunction U;
  GridFunction xi;  // gradient of E_t at U; -xi lies in d phi(v)
  StepDiagnostics diag;
};

class StepError : public Error {
 public:
  StepError(const std::string& what, GridFunction best)
      : Error(what), best_iterate_(std::move(best)) {}
  const GridFunction& best_iterate() const noexcept { return best_iterate_; }

 private:
  GridFunction best_iterate_;
};

/// One minimizing-movement step:
///   U in Argmin tau phi_{t,u_prev}((U - u_prev)/tau) + E_t(U).
/// Separable energies are solved node by node with safeguarded Newton;
/// coupled ones by accelerated proximal gradient with the dissipation as
/// exact node-wise prox.
StepResult solve_step(const DissipationPotential& pot, const EnergyFunctional& energy,
                      double t, double tau, std::span<const double> u_prev,
                      const SolverOptions& opts = {});

struct DiscreteSolution {
  Partition partition;
  std::vector<GridFunction> U;   // U[0] = u0, ..., U[N]
  std::vector<GridFunction> xi;  // xi[n-1] pairs with U[n]
  std::vector<StepDiagnostics> diags;
  /// E_0(u0) + sum int P - sum tau (phi + phi*) - E_{t_n}(U^n) after each step.
  std::vector<double> energy_slack;
  DissipationPotential potential;
  EnergyFunctional energy;
  SolverOptions options;
};

/// Thrown by run_scheme when a step fails; carries the steps completed so far.
class SchemeError : public Error {
 public:
  SchemeError(const std::string& what, std::shared_ptr<const DiscreteSolution> partial)
      : Error(what), partial_(std::move(partial)) {}
  const DiscreteSolution& partial() const { return *partial_; }

 private:
  std::shared_ptr<const DiscreteSolution> partial_;
};

DiscreteSolution run_scheme(const DissipationPotential& pot, const EnergyFunctional& energy,
                            std::span<const double> u0, double horizon, double tau,
                            const SolverOptions& opts = {});

enum class Interpolant {
  left,         // left-continuous constant: U^n on (t_{n-1}, t_n]
  right,        // right-continuous constant: U^{n-1} on [t_{n-1}, t_n)
  affine,
  variational,  // re-solved step of width theta = t - t_{n-1}
};

GridFunction interpolate(const DiscreteSolution& sol, double t, Interpolant which);

/// Variational interpolant and its multiplier at t, by re-solving the step
/// from U^{n-1} with width t - t_{n-1}. On partition nodes returns U^n, xi^n.
StepResult variational_step(const DiscreteSolution& sol, double t);

}  // namespace orlicz_flow
