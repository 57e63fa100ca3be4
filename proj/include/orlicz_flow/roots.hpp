#pragma once

#include <functional>
#include <limits>

namespace orlicz_flow {

/// Closed interval of extended reals. lo > hi encodes the empty set.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double x) { return {x, x}; }
  static Interval empty() {
    return {std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity()};
  }

  bool is_empty() const { return lo > hi; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  /// Distance from x to the interval; +inf when empty.
  double distance(double x) const;
  /// Element of smallest absolute value; NaN when empty.
  double min_norm() const;
  Interval shifted(double c) const { return {lo + c, hi + c}; }
  Interval scaled(double c) const;  // c > 0
};

/// Set-valued nondecreasing map g. Points right of the domain should report
/// [+inf, +inf], points left of it [-inf, -inf].
using MonotoneMap = std::function<Interval(double)>;
/// Optional derivative of g where it is single-valued; NaN if unavailable.
using MonotoneSlope = std::function<double(double)>;

enum class RootStatus { converged, unbounded_above, unbounded_below, max_iterations };

struct RootResult {
  double x = 0.0;
  RootStatus status = RootStatus::max_iterations;
  int iterations = 0;
  double residual = std::numeric_limits<double>::infinity();  // dist(0, g(x))
  // Final bracket [lo, hi] with g(lo) < 0 < g(hi), when one was found.
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

struct RootOptions {
  double residual_tol = 1e-12;
  double initial_step = 1.0;
  double domain_lo = -std::numeric_limits<double>::infinity();
  double domain_hi = std::numeric_limits<double>::infinity();
  int max_doublings = 60;
  int max_iterations = 400;
};

/// Finds x with 0 in g(x) for a monotone inclusion.
///
/// Brackets outward from `start` by step doubling (clamped to the domain),
/// then runs Newton steps safeguarded by bisection. Reports unbounded_above /
/// unbounded_below when g stays negative / positive after max_doublings.
RootResult solve_monotone_inclusion(const MonotoneMap& g, const MonotoneSlope& dg,
                                    double start, const RootOptions& opts);

struct MaxResult {
  double argmax = 0.0;
  double value = -std::numeric_limits<double>::infinity();
  bool unbounded = false;
  int iterations = 0;
};

/// Maximizes a concave (quasi-concave) h: R -> [-inf, inf) starting from a
/// point where h is finite. Expands by step doubling, then golden-section.
/// Declares `unbounded` when h still increases with slope above `slope_tol`
/// after max_doublings.
MaxResult golden_maximize(const std::function<double(double)>& h, double start,
                          double x_tol, double slope_tol, int max_doublings = 60);

}  // namespace orlicz_flow
