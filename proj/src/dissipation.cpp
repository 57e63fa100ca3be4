#include "orlicz_flow/dissipation.hpp"

#include <cmath>

#include "orlicz_flow/errors.hpp"

namespace orlicz_flow {

DissipationPotential DissipationPotential::autonomous(OrliczIntegrand integrand) {
  DissipationPotential p(Kind::autonomous_nodewise, integrand.grid());
  for (std::size_t i = 0; i < integrand.size(); ++i) p.base_.push_back(integrand.at(i));
  p.label_ = "autonomous(" + (p.base_.empty() ? std::string() : p.base_.front().name()) + ")";
  return p;
}

DissipationPotential DissipationPotential::bp(const GridMeasure& grid) {
  DissipationPotential p(Kind::bp, grid);
  p.base_.assign(grid.size(), ConvexFn::bp_primal());
  p.label_ = "bp";
  return p;
}

DissipationPotential DissipationPotential::damage(const GridMeasure& grid) {
  DissipationPotential p(Kind::damage, grid);
  p.base_.assign(grid.size(), ConvexFn::damage_primal());
  p.label_ = "damage";
  return p;
}

DissipationPotential DissipationPotential::time_modulated(OrliczIntegrand base,
                                                          std::function<double(double)> a) {
  if (!a) throw ConfigError("time_modulated potential needs a time scaling");
  DissipationPotential p(Kind::time_modulated, base.grid());
  for (std::size_t i = 0; i < base.size(); ++i) p.base_.push_back(base.at(i));
  p.time_scale_ = std::move(a);
  p.label_ = "time_modulated(" + p.base_.front().name() + ")";
  return p;
}

DissipationPotential DissipationPotential::state_dependent(GridMeasure grid, NodeCallback cb,
                                                           std::string label) {
  if (!cb) throw ConfigError("state_dependent potential needs a callback");
  DissipationPotential p(Kind::state_dependent, std::move(grid));
  p.callback_ = std::move(cb);
  p.label_ = std::move(label);
  return p;
}

std::string DissipationPotential::name() const { return label_; }

ConvexFn DissipationPotential::at(double t, std::span<const double> u, std::size_t i) const {
  switch (kind_) {
    case Kind::time_modulated: {
      const double a = time_scale_(t);
      if (!(a > 0.0) || !std::isfinite(a)) {
        throw DomainError("time scaling a(t) must be positive and finite");
      }
      return base_[i].scaled(a, 1.0);
    }
    case Kind::state_dependent:
      return callback_(t, u[i], i);
    default:
      return base_[i];
  }
}

double DissipationPotential::eval_primal(double t, std::span<const double> u,
                                         std::span<const double> v) const {
  grid_.check_shape(u);
  grid_.check_shape(v);
  GridFunction vals(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) vals[i] = at(t, u, i)(v[i]);
  return integrate(vals, grid_);
}

double DissipationPotential::eval_conjugate(double t, std::span<const double> u,
                                            std::span<const double> xi) const {
  grid_.check_shape(u);
  grid_.check_shape(xi);
  GridFunction vals(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) vals[i] = at(t, u, i).conjugate()(xi[i]);
  return integrate(vals, grid_);
}

GridFunction DissipationPotential::invert_subdifferential(double t, std::span<const double> u,
                                                          std::span<const double> xi) const {
  grid_.check_shape(u);
  grid_.check_shape(xi);
  GridFunction v(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    v[i] = at(t, u, i).conjugate().subdifferential(xi[i]).min_norm();
  }
  return v;
}

}  // namespace orlicz_flow
