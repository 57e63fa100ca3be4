#pragma once

#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "orlicz_flow/convex_fn.hpp"
#include "orlicz_flow/measure_grid.hpp"

namespace orlicz_flow {

/// sum_i w_i lambda (u_i - center)^2 / 2
struct QuadraticTerm {
  double lambda = 1.0;
  double center = 0.0;
};

/// sum_i w_i scale (u_i^2 - 1)^2 / 4
struct DoubleWellTerm {
  double scale = 1.0;
};

/// sum_edges h beta((u_{i+1} - u_i) / h): forward differences, no ghost
/// nodes, so the boundary flux is zero. beta = power(p) gives the discrete
/// p-Dirichlet energy.
struct GradientTerm {
  ConvexFn integrand = ConvexFn::power(2.0);
  double h = 1.0;
};

using EnergyTerm = std::variant<QuadraticTerm, DoubleWellTerm, GradientTerm>;

struct GronwallReport {
  double envelope = 0.0;       // sampled sup_s E_s(u) over [t0, t1]
  double bound = 0.0;          // E_{t0}(u) exp(int |a'/a|)
  double log_rate_integral = 0.0;  // int_{t0}^{t1} |a'/a|
};

/// E_t(u) = a(t) * (sum of terms + offset). With a == 1 the energy is
/// autonomous. The offset realizes the positive lower bound C0.
class EnergyFunctional {
 public:
  static EnergyFunctional quadratic(const GridMeasure& grid, double lambda,
                                    double offset = 1.0, double center = 0.0);
  static EnergyFunctional double_well(const GridMeasure& grid, double scale,
                                      double offset = 1.0);
  static EnergyFunctional p_dirichlet(const GridMeasure& grid, double p, double h,
                                      double offset = 1.0);
  static EnergyFunctional gradient_integrand(const GridMeasure& grid, ConvexFn beta,
                                             double h, double offset = 1.0);
  static EnergyFunctional composite(const GridMeasure& grid, std::vector<EnergyTerm> terms,
                                    double offset = 1.0);

  /// Copy with time factor a(t) (C^1, a >= a0 > 0) and its derivative.
  EnergyFunctional time_scaled(std::function<double(double)> a,
                               std::function<double(double)> a_dot) const;

  const GridMeasure& grid() const noexcept { return grid_; }
  const std::vector<EnergyTerm>& terms() const noexcept { return terms_; }
  double offset() const noexcept { return offset_; }
  bool autonomous() const noexcept { return !scale_; }
  std::string name() const;

  double value(double t, std::span<const double> u) const;

  /// mu-weighted gradient: E(u + eps w) = E(u) + eps <xi, w>_mu + o(eps).
  /// Throws DomainError when E_t(u) is infinite.
  GridFunction gradient(double t, std::span<const double> u) const;

  /// Partial time derivative P_t(u, xi) = a'(t) * base(u); 0 when autonomous.
  double time_slope(double t, std::span<const double> u, std::span<const double> xi) const;

  GronwallReport gronwall_envelope(double t0, double t1, std::span<const double> u,
                                   int samples = 201) const;

  /// True when every term acts node by node (no GradientTerm).
  bool separable() const;
  /// d/dx and d^2/dx^2 of the node-i energy density at time t (separable only).
  double nodal_derivative(double t, std::size_t i, double x) const;
  double nodal_curvature(double t, std::size_t i, double x) const;

  /// Lambda >= 0 with E_t + Lambda |.|^2_mu / 2 convex.
  double semiconvexity(double t) const;
  /// C0 with E_t >= C0 (offset times a(t)).
  double lower_bound(double t) const;
  double time_factor(double t) const { return scale_ ? scale_(t) : 1.0; }

 private:
  EnergyFunctional(GridMeasure grid, std::vector<EnergyTerm> terms, double offset);

  double base_value(std::span<const double> u) const;

  GridMeasure grid_;
  std::vector<EnergyTerm> terms_;
  double offset_;
  std::function<double(double)> scale_;
  std::function<double(double)> scale_dot_;
};

}  // namespace orlicz_flow

namespace orlicz_flow {

/// int_{t0}^{t1} P_r(u, xi) dr by 5-point Gauss-Legendre with the state frozen.
double integrate_time_slope(const EnergyFunctional& energy, double t0, double t1,
                            std::span<const double> u, std::span<const double> xi);

}  // namespace orlicz_flow
