#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace orlicz_flow {

/// Real values over the nodes of a GridMeasure. Entries may be +inf.
using GridFunction = std::vector<double>;

/// Finite, purely atomic measure: node i carries mass weights()[i] > 0.
///
/// Optional labels hold node coordinates for PDE grids. Instances are
/// immutable after construction.
class GridMeasure {
 public:
  /// Throws InvalidMeasureError unless every weight is finite and > 0.
  explicit GridMeasure(std::vector<double> weights,
                       std::vector<double> labels = {});

  /// Uniform grid on [0, length] with trapezoid weights.
  static GridMeasure uniform_trapezoid(double length, std::size_t nodes);

  /// `nodes` unit-mass atoms (an ODE system, one equation per node).
  static GridMeasure unit_atoms(std::size_t nodes);

  std::size_t size() const noexcept { return weights_.size(); }
  double mass() const noexcept { return mass_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return !labels_.empty(); }
  double weight(std::size_t i) const { return weights_[i]; }

  /// Throws ShapeError unless f has one entry per node.
  void check_shape(std::span<const double> f) const;

 private:
  std::vector<double> weights_;
  std::vector<double> labels_;
  double mass_ = 0.0;
};

GridMeasure make_grid(std::vector<double> weights,
                      std::vector<double> labels = {});

/// Sum of weight_i * f_i over extended reals. Any +inf contribution makes
/// the result +inf, including when -inf contributions are also present.
double integrate(std::span<const double> f, const GridMeasure& grid);

/// Weighted pairing sum_i w_i a_i b_i.
double pairing(std::span<const double> a, std::span<const double> b,
               const GridMeasure& grid);

double sup_norm(std::span<const double> f);

}  // namespace orlicz_flow
