#pragma once

#include <span>
#include <vector>

#include "orlicz_flow/convex_fn.hpp"
#include "orlicz_flow/measure_grid.hpp"

namespace orlicz_flow {

/// Node-indexed family of convex functions over a grid; the discrete
/// counterpart of an Orlicz integrand phi(omega, x).
class OrliczIntegrand {
 public:
  OrliczIntegrand(GridMeasure grid, std::vector<ConvexFn> per_node);
  /// Same function at every node.
  OrliczIntegrand(GridMeasure grid, const ConvexFn& f);

  const GridMeasure& grid() const noexcept { return grid_; }
  const ConvexFn& at(std::size_t i) const { return per_node_[i]; }
  std::size_t size() const noexcept { return per_node_.size(); }

  /// Node-wise analytic conjugates (numeric for custom members).
  OrliczIntegrand conjugate() const;

  /// False when some member is not even (the damage pair).
  bool is_orlicz() const;

 private:
  GridMeasure grid_;
  std::vector<ConvexFn> per_node_;
};

struct NormReport {
  double luxemburg = 0.0;
  double amemiya = 0.0;
  double modular_at_unit = 0.0;  // I_phi(u)
};

/// I_phi(u) = sum_i w_i phi_i(u_i).
double modular(const OrliczIntegrand& phi, std::span<const double> u);

/// inf{alpha > 0 : I_phi(u / alpha) <= 1} by bisection; +inf when no alpha
/// works (possible only for non-even members such as damage_primal).
double luxemburg_norm(const OrliczIntegrand& phi, std::span<const double> u,
                      double tol = 1e-10);

struct AmemiyaResult {
  double value = 0.0;
  double alpha = 0.0;     // minimizing alpha (largest probed when not attained)
  bool attained = true;   // false when the infimum sits at alpha -> infinity
};

/// inf_{alpha > 0} (1 + I_phi(alpha u)) / alpha by golden-section in log alpha.
AmemiyaResult amemiya(const OrliczIntegrand& phi, std::span<const double> u,
                      double tol = 1e-10);
double amemiya_norm(const OrliczIntegrand& phi, std::span<const double> u,
                    double tol = 1e-10);

NormReport norm_report(const OrliczIntegrand& phi, std::span<const double> u,
                       double tol = 1e-10);

struct HolderReport {
  double lhs = 0.0;  // sum_i w_i |u_i v_i|, signed u_i v_i for non-even phi
  double rhs = 0.0;  // 2 ||v||_{phi*} ||u||_phi
  bool holds = false;
};

HolderReport holder_check(const OrliczIntegrand& phi, std::span<const double> u,
                          std::span<const double> v, double tol = 1e-10);

/// |sup_u (<u, v> - I_phi(u)) - I_{phi*}(v)|, with the supremum computed
/// node-wise by legendre_numeric and I_{phi*} from the analytic conjugates.
double conjugate_modular_gap(const OrliczIntegrand& phi, std::span<const double> v,
                             double tol = 1e-10);

struct EmbeddingConstants {
  double c_inf_to_phi = 0.0;  // sup ||u||_phi / ||u||_inf
  double c_phi_to_1 = 0.0;    // sup ||u||_1 / ||u||_phi
};

/// Constants of L_inf -> L_phi -> L_1, sampled over node indicators and the
/// constant function.
EmbeddingConstants embedding_constants(const OrliczIntegrand& phi, double tol = 1e-10);

}  // namespace orlicz_flow
