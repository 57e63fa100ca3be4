#include "orlicz_flow/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orlicz_flow/errors.hpp"

namespace orlicz_flow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

EnergyFunctional::EnergyFunctional(GridMeasure grid, std::vector<EnergyTerm> terms,
                                   double offset)
    : grid_(std::move(grid)), terms_(std::move(terms)), offset_(offset) {
  for (const auto& term : terms_) {
    if (const auto* g = std::get_if<GradientTerm>(&term); g && !(g->h > 0.0)) {
      throw ConfigError("gradient term needs spacing h > 0");
    }
    if (const auto* q = std::get_if<QuadraticTerm>(&term); q && !std::isfinite(q->lambda)) {
      throw ConfigError("quadratic coefficient must be finite");
    }
  }
}

EnergyFunctional EnergyFunctional::quadratic(const GridMeasure& grid, double lambda,
                                             double offset, double center) {
  return EnergyFunctional(grid, {QuadraticTerm{lambda, center}}, offset);
}

EnergyFunctional EnergyFunctional::double_well(const GridMeasure& grid, double scale,
                                               double offset) {
  if (scale < 0.0) throw ConfigError("double-well scale must be >= 0");
  return EnergyFunctional(grid, {DoubleWellTerm{scale}}, offset);
}

EnergyFunctional EnergyFunctional::p_dirichlet(const GridMeasure& grid, double p, double h,
                                               double offset) {
  if (!(p > 1.0)) throw ConfigError("p-Dirichlet energy needs p > 1");
  return gradient_integrand(grid, ConvexFn::power(p), h, offset);
}

EnergyFunctional EnergyFunctional::gradient_integrand(const GridMeasure& grid, ConvexFn beta,
                                                      double h, double offset) {
  return EnergyFunctional(grid, {GradientTerm{std::move(beta), h}}, offset);
}

EnergyFunctional EnergyFunctional::composite(const GridMeasure& grid,
                                             std::vector<EnergyTerm> terms, double offset) {
  return EnergyFunctional(grid, std::move(terms), offset);
}

EnergyFunctional EnergyFunctional::time_scaled(std::function<double(double)> a,
                                               std::function<double(double)> a_dot) const {
  if (!a || !a_dot) throw ConfigError("time scaling needs a(t) and a'(t)");
  EnergyFunctional e = *this;
  if (e.scale_) {
    auto a0 = e.scale_;
    auto a0_dot = e.scale_dot_;
    e.scale_ = [a0, a](double t) { return a0(t) * a(t); };
    e.scale_dot_ = [a0, a0_dot, a, a_dot](double t) {
      return a0_dot(t) * a(t) + a0(t) * a_dot(t);
    };
  } else {
    e.scale_ = std::move(a);
    e.scale_dot_ = std::move(a_dot);
  }
  return e;
}

std::string EnergyFunctional::name() const {
  std::string out;
  for (const auto& term : terms_) {
    if (!out.empty()) out += " + ";
    out += std::visit(
        overloaded{
            [](const QuadraticTerm& q) { return "quadratic(" + std::to_string(q.lambda) + ")"; },
            [](const DoubleWellTerm& d) { return "double_well(" + std::to_string(d.scale) + ")"; },
            [](const GradientTerm& g) { return "gradient[" + g.integrand.name() + "]"; },
        },
        term);
  }
  if (scale_) out = "a(t)*(" + out + ")";
  return out;
}

double EnergyFunctional::base_value(std::span<const double> u) const {
  grid_.check_shape(u);
  const std::size_t n = u.size();
  double total = offset_;
  for (const auto& term : terms_) {
    double part = 0.0;
    std::visit(overloaded{
                   [&](const QuadraticTerm& q) {
                     for (std::size_t i = 0; i < n; ++i) {
                       const double d = u[i] - q.center;
                       part += grid_.weight(i) * 0.5 * q.lambda * d * d;
                     }
                   },
                   [&](const DoubleWellTerm& dw) {
                     for (std::size_t i = 0; i < n; ++i) {
                       const double s = u[i] * u[i] - 1.0;
                       part += grid_.weight(i) * 0.25 * dw.scale * s * s;
                     }
                   },
                   [&](const GradientTerm& g) {
                     for (std::size_t i = 0; i + 1 < n; ++i) {
                       const double b = g.integrand((u[i + 1] - u[i]) / g.h);
                       if (!std::isfinite(b)) {
                         part = kInf;
                         return;
                       }
                       part += g.h * b;
                     }
                   },
               },
               term);
    total += part;
  }
  return total;
}

double EnergyFunctional::value(double t, std::span<const double> u) const {
  return time_factor(t) * base_value(u);
}

GridFunction EnergyFunctional::gradient(double t, std::span<const double> u) const {
  const double e = value(t, u);
  if (!std::isfinite(e)) throw DomainError("gradient requested outside the energy domain");
  const std::size_t n = u.size();
  GridFunction raw(n, 0.0);  // dE/du_i, unweighted
  for (const auto& term : terms_) {
    std::visit(overloaded{
                   [&](const QuadraticTerm& q) {
                     for (std::size_t i = 0; i < n; ++i) {
                       raw[i] += grid_.weight(i) * q.lambda * (u[i] - q.center);
                     }
                   },
                   [&](const DoubleWellTerm& dw) {
                     for (std::size_t i = 0; i < n; ++i) {
                       raw[i] += grid_.weight(i) * dw.scale * (u[i] * u[i] * u[i] - u[i]);
                     }
                   },
                   [&](const GradientTerm& g) {
                     for (std::size_t i = 0; i + 1 < n; ++i) {
                       const double flux =
                           g.integrand.subdifferential((u[i + 1] - u[i]) / g.h).min_norm();
                       raw[i] -= flux;
                       raw[i + 1] += flux;
                     }
                   },
               },
               term);
  }
  const double a = time_factor(t);
  for (std::size_t i = 0; i < n; ++i) raw[i] *= a / grid_.weight(i);
  return raw;
}

double EnergyFunctional::time_slope(double t, std::span<const double> u,
                                    std::span<const double> xi) const {
  grid_.check_shape(xi);
  if (!scale_) return 0.0;
  return scale_dot_(t) * base_value(u);
}

GronwallReport EnergyFunctional::gronwall_envelope(double t0, double t1,
                                                   std::span<const double> u,
                                                   int samples) const {
  if (t1 < t0) throw DomainError("gronwall_envelope needs t0 <= t1");
  GronwallReport rep;
  const double e0 = value(t0, u);
  rep.envelope = e0;
  if (!scale_ || t1 == t0) {
    rep.bound = e0;
    return rep;
  }
  const int m = std::max(samples, 3) | 1;  // odd count for Simpson
  const double h = (t1 - t0) / (m - 1);
  double simpson = 0.0;
  for (int k = 0; k < m; ++k) {
    const double s = t0 + h * k;
    rep.envelope = std::max(rep.envelope, value(s, u));
    const double rate = std::abs(scale_dot_(s) / scale_(s));
    const double wgt = (k == 0 || k == m - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    simpson += wgt * rate;
  }
  rep.log_rate_integral = simpson * h / 3.0;
  rep.bound = e0 * std::exp(rep.log_rate_integral);
  return rep;
}

bool EnergyFunctional::separable() const {
  return std::none_of(terms_.begin(), terms_.end(), [](const EnergyTerm& term) {
    return std::holds_alternative<GradientTerm>(term);
  });
}

double EnergyFunctional::nodal_derivative(double t, std::size_t, double x) const {
  double d = 0.0;
  for (const auto& term : terms_) {
    if (const auto* q = std::get_if<QuadraticTerm>(&term)) {
      d += q->lambda * (x - q->center);
    } else if (const auto* dw = std::get_if<DoubleWellTerm>(&term)) {
      d += dw->scale * (x * x * x - x);
    } else {
      throw DomainError("nodal_derivative on a coupled energy");
    }
  }
  return time_factor(t) * d;
}

double EnergyFunctional::nodal_curvature(double t, std::size_t, double x) const {
  double c = 0.0;
  for (const auto& term : terms_) {
    if (const auto* q = std::get_if<QuadraticTerm>(&term)) {
      c += q->lambda;
    } else if (const auto* dw = std::get_if<DoubleWellTerm>(&term)) {
      c += dw->scale * (3.0 * x * x - 1.0);
    } else {
      throw DomainError("nodal_curvature on a coupled energy");
    }
  }
  return time_factor(t) * c;
}

double EnergyFunctional::semiconvexity(double t) const {
  double lambda = 0.0;
  for (const auto& term : terms_) {
    if (const auto* q = std::get_if<QuadraticTerm>(&term)) {
      lambda += std::max(0.0, -q->lambda);
    } else if (const auto* dw = std::get_if<DoubleWellTerm>(&term)) {
      lambda += dw->scale;  // min of 3x^2 - 1
    }
  }
  return time_factor(t) * lambda;
}

double EnergyFunctional::lower_bound(double t) const { return time_factor(t) * offset_; }

}  // namespace orlicz_flow

namespace orlicz_flow {

double integrate_time_slope(const EnergyFunctional& energy, double t0, double t1,
                            std::span<const double> u, std::span<const double> xi) {
  if (energy.autonomous() || t1 == t0) return 0.0;
  static constexpr double kNodes[5] = {0.0, -0.5384693101056831, 0.5384693101056831,
                                       -0.9061798459386640, 0.9061798459386640};
  static constexpr double kWeights[5] = {0.5688888888888889, 0.4786286704993665,
                                         0.4786286704993665, 0.2369268850561891,
                                         0.2369268850561891};
  const double mid = 0.5 * (t0 + t1);
  const double half = 0.5 * (t1 - t0);
  double sum = 0.0;
  for (int k = 0; k < 5; ++k) sum += kWeights[k] * energy.time_slope(mid + half * kNodes[k], u, xi);
  return half * sum;
}

}  // namespace orlicz_flow
