#pragma once

#include <functional>
#include <span>
#include <string>

#include "orlicz_flow/convex_fn.hpp"
#include "orlicz_flow/measure_grid.hpp"
#include "orlicz_flow/orlicz_norms.hpp"

namespace orlicz_flow {

/// Time/state-dependent dissipation potential phi_{t,u}(v) = sum_i w_i
/// phi_i(t, u_i, v_i), with its conjugate taken node-wise.
class DissipationPotential {
 public:
  enum class Kind { autonomous_nodewise, bp, damage, time_modulated, state_dependent };

  /// Node-wise callback (t, u_i, node) -> convex function of the rate.
  using NodeCallback = std::function<ConvexFn(double, double, std::size_t)>;

  static DissipationPotential autonomous(OrliczIntegrand integrand);
  static DissipationPotential bp(const GridMeasure& grid);
  static DissipationPotential damage(const GridMeasure& grid);
  /// a(t) * base(v); requires a(t) > 0 and continuous.
  static DissipationPotential time_modulated(OrliczIntegrand base,
                                             std::function<double(double)> a);
  /// Escape hatch for general (t, u)-dependence. Untested territory beyond
  /// the callback returning valid convex functions.
  static DissipationPotential state_dependent(GridMeasure grid, NodeCallback cb,
                                              std::string label = "state_dependent");

  Kind kind() const noexcept { return kind_; }
  const GridMeasure& grid() const noexcept { return grid_; }
  std::string name() const;

  /// The node-i function phi_i(t, u_i, .).
  ConvexFn at(double t, std::span<const double> u, std::size_t i) const;

  double eval_primal(double t, std::span<const double> u, std::span<const double> v) const;
  double eval_conjugate(double t, std::span<const double> u, std::span<const double> xi) const;

  /// v with xi in d phi_{t,u}(v) node-wise: the minimal-norm element of the
  /// conjugate's subdifferential at xi. NaN entries mark xi outside dom phi*.
  GridFunction invert_subdifferential(double t, std::span<const double> u,
                                      std::span<const double> xi) const;

 private:
  DissipationPotential(Kind kind, GridMeasure grid) : kind_(kind), grid_(std::move(grid)) {}

  Kind kind_;
  GridMeasure grid_;
  std::vector<ConvexFn> base_;
  std::function<double(double)> time_scale_;
  NodeCallback callback_;
  std::string label_;
};

}  // namespace orlicz_flow
