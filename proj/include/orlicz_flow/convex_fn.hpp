#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orlicz_flow/roots.hpp"

namespace orlicz_flow {

enum class ConvexKind {
  power,           // |x|^p / p
  bp_primal,       // v asinh(v) - sqrt(v^2 + 1) + 1
  bp_dual,         // cosh(x) - 1
  damage_primal,   // x^2 / 2 on x <= 0, +inf otherwise
  damage_dual,     // max(-x, 0)^2 / 2
  linear_abs,      // |x|
  indicator_ball,  // 0 on [-1, 1], +inf otherwise
  custom,
};

/// User-supplied convex function. `derivative` is optional; when present it
/// must return a selection of the subdifferential (+-inf outside the domain).
struct CustomFnSpec {
  std::string name = "custom";
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double domain_lo = -std::numeric_limits<double>::infinity();
  double domain_hi = std::numeric_limits<double>::infinity();
  bool even = false;
};

/// Extended-real convex function of one real variable, x -> a * g(c * x)
/// for a catalog or custom base g and scales a, c > 0.
///
/// The power family is normalized as |x|^p / p so that its conjugate is
/// |xi|^q / q with 1/p + 1/q = 1; `power_raw(p)` is |x|^p.
class ConvexFn {
 public:
  static ConvexFn power(double p);
  static ConvexFn power_raw(double p);
  static ConvexFn bp_primal();
  static ConvexFn bp_dual();
  static ConvexFn damage_primal();
  static ConvexFn damage_dual();
  static ConvexFn linear_abs(double slope = 1.0);
  static ConvexFn indicator_ball(double radius = 1.0);
  static ConvexFn custom(CustomFnSpec spec);

  /// Parses catalog names: "power:<p>", "power_raw:<p>", "bp_primal",
  /// "bp_dual", "damage_primal", "damage_dual", "linear_abs",
  /// "indicator_ball[:r]". Throws ConfigError on anything else.
  static ConvexFn from_name(const std::string& name);

  /// x -> outer * f(inner * x).
  ConvexFn scaled(double outer, double inner = 1.0) const;

  double operator()(double x) const { return value(x); }
  double value(double x) const;

  /// [f'_-(x), f'_+(x)]; empty outside the effective domain.
  Interval subdifferential(double x) const;

  /// f'' where it exists as a finite number, otherwise NaN.
  double second_derivative(double x) const;

  /// Closure of the effective domain.
  Interval domain() const;

  ConvexFn conjugate() const;

  /// Subdifferential with out-of-domain points mapped to [+inf, +inf] (right
  /// of the domain) or [-inf, -inf] (left of it), as root finders expect.
  Interval directional_subdifferential(double x) const;

  ConvexKind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return param_; }
  bool is_even() const;
  /// False for the damage pair, which is deliberately not even.
  bool is_orlicz() const;
  /// Whether derivative inversion is available (catalog or custom with a
  /// derivative callback).
  bool has_derivative() const;
  std::string name() const;

 private:
  ConvexFn(ConvexKind kind, double param) : kind_(kind), param_(param) {}

  double base_value(double y) const;
  Interval base_subdifferential(double y) const;
  double base_second(double y) const;
  Interval base_domain() const;

  ConvexKind kind_;
  double param_ = 0.0;  // exponent for power
  double outer_ = 1.0;
  double inner_ = 1.0;
  std::shared_ptr<const CustomFnSpec> custom_;
};

struct LegendreResult {
  double value = 0.0;   // sup_v xi v - f(v), possibly +inf
  double argmax = 0.0;  // maximizer (last iterate when unbounded)
  int iterations = 0;
};

/// Numerical conjugate f*(xi) = sup_v xi v - f(v).
///
/// With a derivative, solves xi in df(v) by safeguarded Newton/bisection;
/// otherwise golden-section on the concave tilted objective. The bracket
/// starts at `bracket` and doubles at most 60 times before +inf is
/// certified. Throws NumericError when the inner iteration cap is hit.
LegendreResult legendre_numeric(const ConvexFn& f, double xi,
                                Interval bracket = {-1.0, 1.0}, double tol = 1e-10);

/// Custom function evaluating the conjugate of f by legendre_numeric, with
/// the maximizer as derivative selection.
ConvexFn numeric_conjugate(const ConvexFn& f, double tol = 1e-10);

struct Delta2Report {
  bool passes = false;
  std::optional<double> k;
  std::vector<double> ratio_trace;  // f(2x)/f(x) per sample, f(x) = 0 skipped
};

/// Sample-based doubling check. Fails on any infinite ratio, on a ratio above
/// `ratio_ceiling`, or on a trace that keeps growing (strictly increasing in
/// x with last/first >= 2).
Delta2Report delta2_probe(const ConvexFn& f, std::span<const double> x_samples,
                          double ratio_ceiling = 1e6);

struct SuperlinearityReport {
  bool superlinear = false;
  std::vector<double> trace;  // theta * f(v / theta)
};

/// Evaluates theta f(v/theta) along a decreasing theta sequence. The trace
/// is deemed divergent when it grows strictly and either passes `threshold`
/// or its increments fail to contract (last ratio of increments >= 0.5).
SuperlinearityReport superlinearity_probe(const ConvexFn& f, double v,
                                          std::span<const double> theta_seq,
                                          double threshold = 1e6);

/// min(f(r), f(-r)); a positive value certifies coercivity.
double coercivity_probe(const ConvexFn& f, double r);

struct RaySmoothnessReport {
  double left_slope = 0.0;   // d/dr f(r v) at r = 1 from the left
  double right_slope = 0.0;  // from the right
  bool differentiable = false;
  bool kink = false;  // subdifferential at v is not a singleton
};

/// Checks r -> f(r v) for differentiability at r = 1.
RaySmoothnessReport ray_smoothness_probe(const ConvexFn& f, double v);

}  // namespace orlicz_flow
