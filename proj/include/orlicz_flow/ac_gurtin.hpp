#pragma once

#include <string>
#include <vector>

#include "orlicz_flow/convex_fn.hpp"
#include "orlicz_flow/dissipation.hpp"
#include "orlicz_flow/energy.hpp"
#include "orlicz_flow/measure_grid.hpp"

namespace orlicz_flow {

/// 1-D Allen-Cahn-Gurtin type problem on [0, L] with zero-flux boundaries:
///   0 in d alpha(u_t) + d_u [ int beta(u_x) + well W(u) ],  W(u) = (u^2 - 1)^2 / 4.
struct ACGurtinProblem {
  GridMeasure grid;  // uniform trapezoid grid on [0, length]
  double length = 1.0;
  ConvexFn alpha = ConvexFn::power(2.0);
  ConvexFn beta = ConvexFn::power(2.0);
  double well = 0.0;
  double offset = 1.0;
  GridFunction u0;

  static ACGurtinProblem on_interval(double length, std::size_t nodes);
};

struct AssembledProblem {
  DissipationPotential potential;
  EnergyFunctional energy;
  bool beta_superlinear = true;
  bool alpha_superlinear = true;
  std::vector<std::string> warnings;
};

/// Builds the node-wise potential from alpha and the energy from beta on
/// forward differences plus the double well. Throws ConfigError when beta
/// fails the coercivity probe; non-superlinear beta or alpha is accepted and
/// flagged.
AssembledProblem assemble(const ACGurtinProblem& prob);

/// Neumann heat flow on [0, length] by cosine series: sum_k a_k
/// exp(-(k pi / L)^2 t) cos(k pi x / L), k < modes, with a_k the weighted
/// discrete cosine projection of u0 on the grid's nodes.
GridFunction reference_heat(std::span<const double> u0, const GridMeasure& grid, double length,
                            double t, int modes);

}  // namespace orlicz_flow
