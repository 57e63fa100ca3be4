#include "orlicz_flow/ac_gurtin.hpp"

#include <cmath>
#include <numbers>

#include "orlicz_flow/errors.hpp"
#include "orlicz_flow/orlicz_norms.hpp"

namespace orlicz_flow {

namespace {

bool superlinear(const ConvexFn& f) {
  const std::vector<double> thetas{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  return superlinearity_probe(f, 1.0, thetas).superlinear &&
         superlinearity_probe(f, -1.0, thetas).superlinear;
}

}  // namespace

ACGurtinProblem ACGurtinProblem::on_interval(double length, std::size_t nodes) {
  return ACGurtinProblem{GridMeasure::uniform_trapezoid(length, nodes), length,
                         ConvexFn::power(2.0),  ConvexFn::power(2.0),
                         0.0,                   1.0,
                         GridFunction(nodes, 0.0)};
}

AssembledProblem assemble(const ACGurtinProblem& prob) {
  const std::size_t n = prob.grid.size();
  if (n < 2) throw ConfigError("ac_gurtin: need at least 2 nodes");
  if (!(prob.length > 0.0)) throw ConfigError("ac_gurtin: length must be positive");
  if (!(prob.well >= 0.0)) throw ConfigError("ac_gurtin: well coefficient must be >= 0");
  if (!prob.u0.empty()) prob.grid.check_shape(prob.u0);
  if (!(coercivity_probe(prob.beta, 1.0) > 0.0)) {
    throw ConfigError("ac_gurtin: gradient integrand " + prob.beta.name() + " is not coercive");
  }
  if (!(coercivity_probe(prob.alpha, 1.0) > 0.0)) {
    throw ConfigError("ac_gurtin: dissipation integrand " + prob.alpha.name() +
                      " is not coercive");
  }

  const double h = prob.length / static_cast<double>(n - 1);
  std::vector<EnergyTerm> terms{GradientTerm{prob.beta, h}};
  if (prob.well > 0.0) terms.emplace_back(DoubleWellTerm{prob.well});

  AssembledProblem out{
      DissipationPotential::autonomous(OrliczIntegrand(prob.grid, prob.alpha)),
      EnergyFunctional::composite(prob.grid, std::move(terms), prob.offset),
      true, true, {}};
  out.beta_superlinear = superlinear(prob.beta);
  out.alpha_superlinear = superlinear(prob.alpha);
  if (!out.beta_superlinear) {
    out.warnings.push_back("gradient integrand " + prob.beta.name() + " is not superlinear");
  }
  if (!out.alpha_superlinear) {
    out.warnings.push_back("dissipation integrand " + prob.alpha.name() +
                           " is not superlinear");
  }
  return out;
}

GridFunction reference_heat(std::span<const double> u0, const GridMeasure& grid, double length,
                            double t, int modes) {
  grid.check_shape(u0);
  if (modes < 1) throw DomainError("reference_heat: modes must be >= 1");
  if (!grid.has_labels()) throw DomainError("reference_heat: grid has no node positions");
  const auto& x = grid.labels();
  const std::size_t n = grid.size();
  GridFunction out(n, 0.0);
  std::vector<double> basis(n);
  for (int k = 0; k < modes; ++k) {
    const double wave = k * std::numbers::pi / length;
    for (std::size_t i = 0; i < n; ++i) basis[i] = std::cos(wave * x[i]);
    const double norm = pairing(basis, basis, grid);
    if (norm <= 0.0) continue;
    const double a = pairing(u0, basis, grid) / norm * std::exp(-wave * wave * t);
    for (std::size_t i = 0; i < n; ++i) out[i] += a * basis[i];
  }
  return out;
}

}  // namespace orlicz_flow
