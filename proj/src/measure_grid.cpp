#include "orlicz_flow/measure_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "orlicz_flow/errors.hpp"

namespace orlicz_flow {

GridMeasure::GridMeasure(std::vector<double> weights, std::vector<double> labels)
    : weights_(std::move(weights)), labels_(std::move(labels)) {
  if (weights_.empty()) {
    throw InvalidMeasureError("grid measure needs at least one node");
  }
  if (!labels_.empty() && labels_.size() != weights_.size()) {
    throw InvalidMeasureError("label count " + std::to_string(labels_.size()) +
                              " does not match node count " +
                              std::to_string(weights_.size()));
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double w = weights_[i];
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidMeasureError("weight of node " + std::to_string(i) +
                                " must be finite and positive, got " +
                                std::to_string(w));
    }
    mass_ += w;
  }
}

GridMeasure GridMeasure::uniform_trapezoid(double length, std::size_t nodes) {
  if (nodes < 2 || !(length > 0.0)) {
    throw InvalidMeasureError("uniform grid needs >= 2 nodes and length > 0");
  }
  const double h = length / static_cast<double>(nodes - 1);
  std::vector<double> w(nodes, h);
  w.front() = w.back() = 0.5 * h;
  std::vector<double> x(nodes);
  for (std::size_t i = 0; i < nodes; ++i) x[i] = h * static_cast<double>(i);
  x.back() = length;
  return GridMeasure(std::move(w), std::move(x));
}

GridMeasure GridMeasure::unit_atoms(std::size_t nodes) {
  return GridMeasure(std::vector<double>(nodes, 1.0));
}

void GridMeasure::check_shape(std::span<const double> f) const {
  if (f.size() != weights_.size()) {
    throw ShapeError("grid function has " + std::to_string(f.size()) +
                     " entries, grid has " + std::to_string(weights_.size()) +
                     " nodes");
  }
}

GridMeasure make_grid(std::vector<double> weights, std::vector<double> labels) {
  return GridMeasure(std::move(weights), std::move(labels));
}

double integrate(std::span<const double> f, const GridMeasure& grid) {
  grid.check_shape(f);
  constexpr double inf = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  bool plus_inf = false;
  bool minus_inf = false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == inf) {
      plus_inf = true;
    } else if (f[i] == -inf) {
      minus_inf = true;
    } else {
      sum += grid.weight(i) * f[i];
    }
  }
  if (plus_inf) return inf;
  if (minus_inf) return -inf;
  return sum;
}

double pairing(std::span<const double> a, std::span<const double> b,
               const GridMeasure& grid) {
  grid.check_shape(a);
  grid.check_shape(b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += grid.weight(i) * a[i] * b[i];
  return sum;
}

double sup_norm(std::span<const double> f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace orlicz_flow
