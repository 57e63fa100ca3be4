#include "orlicz_flow/convex_fn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "orlicz_flow/errors.hpp"

namespace orlicz_flow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

std::string fmt_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace

ConvexFn ConvexFn::power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw DomainError("power exponent must be >= 1, got " + fmt_num(p));
  }
  return ConvexFn(ConvexKind::power, p);
}

ConvexFn ConvexFn::power_raw(double p) { return power(p).scaled(p, 1.0); }

ConvexFn ConvexFn::bp_primal() { return ConvexFn(ConvexKind::bp_primal, 0.0); }
ConvexFn ConvexFn::bp_dual() { return ConvexFn(ConvexKind::bp_dual, 0.0); }
ConvexFn ConvexFn::damage_primal() { return ConvexFn(ConvexKind::damage_primal, 0.0); }
ConvexFn ConvexFn::damage_dual() { return ConvexFn(ConvexKind::damage_dual, 0.0); }

ConvexFn ConvexFn::linear_abs(double slope) {
  return ConvexFn(ConvexKind::linear_abs, 0.0).scaled(slope, 1.0);
}

ConvexFn ConvexFn::indicator_ball(double radius) {
  if (!(radius > 0.0)) throw DomainError("indicator radius must be positive");
  return ConvexFn(ConvexKind::indicator_ball, 0.0).scaled(1.0, 1.0 / radius);
}

ConvexFn ConvexFn::custom(CustomFnSpec spec) {
  if (!spec.value) throw DomainError("custom function needs a value callback");
  if (spec.domain_lo > spec.domain_hi) throw DomainError("custom function has empty domain");
  ConvexFn f(ConvexKind::custom, 0.0);
  f.custom_ = std::make_shared<const CustomFnSpec>(std::move(spec));
  return f;
}

ConvexFn ConvexFn::from_name(const std::string& name) {
  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  std::optional<double> arg;
  if (colon != std::string::npos) {
    try {
      std::size_t used = 0;
      arg = std::stod(name.substr(colon + 1), &used);
      if (used != name.size() - colon - 1) throw std::invalid_argument(name);
    } catch (const std::exception&) {
      throw ConfigError("bad numeric parameter in function name '" + name + "'");
    }
  }
  auto need = [&](const char* what) {
    if (!arg) throw ConfigError(std::string(what) + " needs a parameter, e.g. '" + head + ":2'");
    return *arg;
  };
  if (head == "power") return power(need("power"));
  if (head == "power_raw") return power_raw(need("power_raw"));
  if (head == "bp_primal") return bp_primal();
  if (head == "bp_dual") return bp_dual();
  if (head == "damage_primal") return damage_primal();
  if (head == "damage_dual") return damage_dual();
  if (head == "linear_abs") return linear_abs(arg.value_or(1.0));
  if (head == "indicator_ball") return indicator_ball(arg.value_or(1.0));
  throw ConfigError("unknown convex function '" + name + "'");
}

ConvexFn ConvexFn::scaled(double outer, double inner) const {
  if (!(outer > 0.0) || !(inner > 0.0) || !std::isfinite(outer) || !std::isfinite(inner)) {
    throw DomainError("scales must be finite and positive");
  }
  ConvexFn f = *this;
  f.outer_ *= outer;
  f.inner_ *= inner;
  return f;
}

double ConvexFn::base_value(double y) const {
  switch (kind_) {
    case ConvexKind::power:
      return std::pow(std::abs(y), param_) / param_;
    case ConvexKind::bp_primal: {
      // sqrt(y^2 + 1) - 1 rewritten to avoid cancellation near 0.
      const double r = std::hypot(y, 1.0);
      return y * std::asinh(y) - y * y / (r + 1.0);
    }
    case ConvexKind::bp_dual: {
      const double s = std::sinh(0.5 * y);
      return 2.0 * s * s;
    }
    case ConvexKind::damage_primal:
      return y <= 0.0 ? 0.5 * y * y : kInf;
    case ConvexKind::damage_dual:
      return y < 0.0 ? 0.5 * y * y : 0.0;
    case ConvexKind::linear_abs:
      return std::abs(y);
    case ConvexKind::indicator_ball:
      return std::abs(y) <= 1.0 ? 0.0 : kInf;
    case ConvexKind::custom:
      return custom_->value(y);
  }
  return kNaN;
}

Interval ConvexFn::base_subdifferential(double y) const {
  switch (kind_) {
    case ConvexKind::power:
      if (param_ == 1.0) return y == 0.0 ? Interval{-1.0, 1.0} : Interval::point(sign(y));
      return Interval::point(sign(y) * std::pow(std::abs(y), param_ - 1.0));
    case ConvexKind::bp_primal:
      return Interval::point(std::asinh(y));
    case ConvexKind::bp_dual:
      return Interval::point(std::sinh(y));
    case ConvexKind::damage_primal:
      if (y < 0.0) return Interval::point(y);
      if (y == 0.0) return {0.0, kInf};
      return Interval::empty();
    case ConvexKind::damage_dual:
      return Interval::point(std::min(y, 0.0));
    case ConvexKind::linear_abs:
      return y == 0.0 ? Interval{-1.0, 1.0} : Interval::point(sign(y));
    case ConvexKind::indicator_ball:
      if (std::abs(y) < 1.0) return Interval::point(0.0);
      if (y == 1.0) return {0.0, kInf};
      if (y == -1.0) return {-kInf, 0.0};
      return Interval::empty();
    case ConvexKind::custom: {
      const double fy = custom_->value(y);
      if (!std::isfinite(fy)) return Interval::empty();
      if (custom_->derivative) return Interval::point(custom_->derivative(y));
      // One-sided difference quotients enclose [f'_-, f'_+] for convex f.
      const double h = 1e-7 * (1.0 + std::abs(y));
      const double fl = custom_->value(y - h);
      const double fr = custom_->value(y + h);
      const double lo = std::isfinite(fl) ? (fy - fl) / h : -kInf;
      const double hi = std::isfinite(fr) ? (fr - fy) / h : kInf;
      return {lo, hi};
    }
  }
  return Interval::empty();
}

double ConvexFn::base_second(double y) const {
  switch (kind_) {
    case ConvexKind::power:
      if (param_ == 2.0) return 1.0;
      if (param_ == 1.0) return y == 0.0 ? kNaN : 0.0;
      if (y == 0.0) return param_ > 2.0 ? 0.0 : kNaN;
      return (param_ - 1.0) * std::pow(std::abs(y), param_ - 2.0);
    case ConvexKind::bp_primal:
      return 1.0 / std::hypot(y, 1.0);
    case ConvexKind::bp_dual:
      return std::cosh(y);
    case ConvexKind::damage_primal:
      return y <= 0.0 ? 1.0 : kNaN;
    case ConvexKind::damage_dual:
      return y < 0.0 ? 1.0 : (y > 0.0 ? 0.0 : kNaN);
    case ConvexKind::linear_abs:
      return y == 0.0 ? kNaN : 0.0;
    case ConvexKind::indicator_ball:
      return std::abs(y) < 1.0 ? 0.0 : kNaN;
    case ConvexKind::custom:
      return kNaN;
  }
  return kNaN;
}

Interval ConvexFn::base_domain() const {
  switch (kind_) {
    case ConvexKind::damage_primal:
      return {-kInf, 0.0};
    case ConvexKind::indicator_ball:
      return {-1.0, 1.0};
    case ConvexKind::custom:
      return {custom_->domain_lo, custom_->domain_hi};
    default:
      return {-kInf, kInf};
  }
}

double ConvexFn::value(double x) const { return outer_ * base_value(inner_ * x); }

Interval ConvexFn::subdifferential(double x) const {
  return base_subdifferential(inner_ * x).scaled(outer_ * inner_);
}

double ConvexFn::second_derivative(double x) const {
  return outer_ * inner_ * inner_ * base_second(inner_ * x);
}

Interval ConvexFn::domain() const {
  const Interval d = base_domain();
  return {d.lo / inner_, d.hi / inner_};
}

Interval ConvexFn::directional_subdifferential(double x) const {
  const Interval s = subdifferential(x);
  if (!s.is_empty()) return s;
  if (kind_ == ConvexKind::custom && custom_->derivative) {
    const double d = custom_->derivative(inner_ * x);
    return d > 0.0 ? Interval{kInf, kInf} : Interval{-kInf, -kInf};
  }
  const Interval d = domain();
  return x > d.hi ? Interval{kInf, kInf} : Interval{-kInf, -kInf};
}

ConvexFn ConvexFn::conjugate() const {
  // (a g(c .))^*(xi) = a g^*(xi / (a c)).
  const double new_inner = 1.0 / (outer_ * inner_);
  auto with_scales = [&](ConvexFn base) {
    base.outer_ = outer_;
    base.inner_ = new_inner;
    return base;
  };
  switch (kind_) {
    case ConvexKind::power:
      if (param_ == 1.0) return with_scales(ConvexFn(ConvexKind::indicator_ball, 0.0));
      return with_scales(ConvexFn(ConvexKind::power, param_ / (param_ - 1.0)));
    case ConvexKind::bp_primal:
      return with_scales(ConvexFn(ConvexKind::bp_dual, 0.0));
    case ConvexKind::bp_dual:
      return with_scales(ConvexFn(ConvexKind::bp_primal, 0.0));
    case ConvexKind::damage_primal:
      return with_scales(ConvexFn(ConvexKind::damage_dual, 0.0));
    case ConvexKind::damage_dual:
      return with_scales(ConvexFn(ConvexKind::damage_primal, 0.0));
    case ConvexKind::linear_abs:
      return with_scales(ConvexFn(ConvexKind::indicator_ball, 0.0));
    case ConvexKind::indicator_ball:
      return with_scales(ConvexFn(ConvexKind::linear_abs, 0.0));
    case ConvexKind::custom: {
      // Proper: finite somewhere in its domain. Probe the domain point nearest 0.
      const Interval d = domain();
      const double probe = std::clamp(0.0, d.lo, d.hi);
      const double v = value(probe);
      if (!std::isfinite(v)) {
        throw DomainError("conjugate of non-proper function '" + name() + "'");
      }
      return numeric_conjugate(*this);
    }
  }
  throw DomainError("unsupported kind");
}

bool ConvexFn::is_even() const {
  switch (kind_) {
    case ConvexKind::damage_primal:
    case ConvexKind::damage_dual:
      return false;
    case ConvexKind::custom:
      return custom_->even;
    default:
      return true;
  }
}

bool ConvexFn::is_orlicz() const { return is_even(); }

bool ConvexFn::has_derivative() const {
  return kind_ != ConvexKind::custom || static_cast<bool>(custom_->derivative);
}

std::string ConvexFn::name() const {
  std::string base;
  double outer = outer_;
  double inner = inner_;
  switch (kind_) {
    case ConvexKind::power:
      if (outer_ == param_ && inner_ == 1.0) return "power_raw(" + fmt_num(param_) + ")";
      base = "power(" + fmt_num(param_) + ")";
      break;
    case ConvexKind::bp_primal:
      base = "bp_primal";
      break;
    case ConvexKind::bp_dual:
      base = "bp_dual";
      break;
    case ConvexKind::damage_primal:
      base = "damage_primal";
      break;
    case ConvexKind::damage_dual:
      base = "damage_dual";
      break;
    case ConvexKind::linear_abs:
      if (inner_ == 1.0) return "linear_abs(" + fmt_num(outer_) + ")";
      base = "linear_abs";
      break;
    case ConvexKind::indicator_ball:
      // Outer scale does not change an indicator.
      return "indicator_ball(" + fmt_num(1.0 / inner_) + ")";
    case ConvexKind::custom:
      base = custom_->name;
      break;
  }
  if (outer == 1.0 && inner == 1.0) return base;
  return fmt_num(outer) + "*" + base + "(" + fmt_num(inner) + "*x)";
}

LegendreResult legendre_numeric(const ConvexFn& f, double xi, Interval bracket, double tol) {
  if (!(tol > 0.0)) throw DomainError("legendre tolerance must be positive");
  LegendreResult out;
  const Interval dom = f.domain();
  auto tilted = [&](double v) {
    const double fv = f.value(v);
    return std::isfinite(fv) ? xi * v - fv : -kInf;
  };

  if (f.has_derivative()) {
    RootOptions ro;
    ro.residual_tol = 1e-3 * tol;
    ro.domain_lo = dom.lo;
    ro.domain_hi = dom.hi;
    ro.initial_step = std::max(0.5 * (bracket.hi - bracket.lo), 1e-300);
    ro.max_doublings = 60;
    const double start = std::clamp(0.5 * (bracket.lo + bracket.hi), dom.lo, dom.hi);
    const RootResult r = solve_monotone_inclusion(
        [&](double v) { return f.directional_subdifferential(v).shifted(-xi); },
        [&](double v) { return f.second_derivative(v); }, start, ro);
    out.iterations = r.iterations;
    switch (r.status) {
      case RootStatus::converged: {
        out.argmax = r.x;
        out.value = tilted(r.x);
        // Endpoints of the final bracket are admissible competitors.
        for (double c : {r.bracket_lo, r.bracket_hi}) {
          const double tc = tilted(c);
          if (tc > out.value) {
            out.value = tc;
            out.argmax = c;
          }
        }
        return out;
      }
      case RootStatus::unbounded_above:
      case RootStatus::unbounded_below: {
        const Interval s = f.directional_subdifferential(r.x);
        const double slope =
            r.status == RootStatus::unbounded_above ? xi - s.hi : s.lo - xi;
        out.argmax = r.x;
        out.value = slope > tol ? kInf : tilted(r.x);
        return out;
      }
      case RootStatus::max_iterations:
        throw NumericError("legendre_numeric: derivative inversion did not converge for " +
                               f.name(),
                           tilted(r.x));
    }
  }

  const double start = std::clamp(0.5 * (bracket.lo + bracket.hi), dom.lo, dom.hi);
  const MaxResult m = golden_maximize(tilted, start, tol, tol, 60);
  out.iterations = m.iterations;
  out.argmax = m.argmax;
  out.value = m.value;
  if (!m.unbounded && !std::isfinite(m.value)) {
    throw NumericError("legendre_numeric: no finite probe for " + f.name(), m.value);
  }
  return out;
}

ConvexFn numeric_conjugate(const ConvexFn& f, double tol) {
  CustomFnSpec spec;
  spec.name = "conj[" + f.name() + "]";
  spec.even = f.is_even();
  spec.value = [f, tol](double xi) { return legendre_numeric(f, xi, {-1.0, 1.0}, tol).value; };
  spec.derivative = [f, tol](double xi) {
    const LegendreResult r = legendre_numeric(f, xi, {-1.0, 1.0}, tol);
    if (std::isfinite(r.value)) return r.argmax;
    return r.argmax > 0.0 ? kInf : -kInf;
  };
  return ConvexFn::custom(std::move(spec));
}

Delta2Report delta2_probe(const ConvexFn& f, std::span<const double> x_samples,
                          double ratio_ceiling) {
  Delta2Report rep;
  bool finite = true;
  for (double x : x_samples) {
    const double fx = f(x);
    const double f2x = f(2.0 * x);
    if (fx == 0.0) {
      if (f2x == 0.0) continue;
      rep.ratio_trace.push_back(kInf);
      finite = false;
      continue;
    }
    const double ratio = f2x / fx;
    if (!std::isfinite(ratio)) finite = false;
    rep.ratio_trace.push_back(ratio);
  }
  if (rep.ratio_trace.empty()) return rep;
  const double kmax = *std::max_element(rep.ratio_trace.begin(), rep.ratio_trace.end());
  bool growing = rep.ratio_trace.size() >= 2 &&
                 rep.ratio_trace.back() >= 2.0 * rep.ratio_trace.front();
  for (std::size_t i = 1; growing && i < rep.ratio_trace.size(); ++i) {
    growing = rep.ratio_trace[i] > rep.ratio_trace[i - 1];
  }
  rep.passes = finite && kmax <= ratio_ceiling && !growing;
  if (rep.passes) rep.k = kmax;
  return rep;
}

SuperlinearityReport superlinearity_probe(const ConvexFn& f, double v,
                                          std::span<const double> theta_seq,
                                          double threshold) {
  if (v == 0.0) throw DomainError("superlinearity probe needs v != 0");
  SuperlinearityReport rep;
  for (double theta : theta_seq) {
    if (!(theta > 0.0)) throw DomainError("theta sequence must be positive");
    const double fv = f(v / theta);
    rep.trace.push_back(std::isfinite(fv) ? theta * fv : kInf);
  }
  const auto& tr = rep.trace;
  if (tr.empty()) return rep;
  if (tr.back() == kInf) {
    rep.superlinear = true;
    return rep;
  }
  bool increasing = tr.size() >= 2;
  for (std::size_t i = 1; increasing && i < tr.size(); ++i) increasing = tr[i] > tr[i - 1];
  if (!increasing) return rep;
  if (tr.back() >= threshold) {
    rep.superlinear = true;
    return rep;
  }
  if (tr.size() >= 3) {
    const std::size_t n = tr.size();
    const double d_last = tr[n - 1] - tr[n - 2];
    const double d_prev = tr[n - 2] - tr[n - 3];
    rep.superlinear = d_last >= 0.5 * d_prev;
  }
  return rep;
}

double coercivity_probe(const ConvexFn& f, double r) {
  if (!(r > 0.0)) throw DomainError("coercivity probe radius must be positive");
  return std::min(f(r), f(-r));
}

RaySmoothnessReport ray_smoothness_probe(const ConvexFn& f, double v) {
  RaySmoothnessReport rep;
  const Interval s = f.subdifferential(v);
  rep.kink = s.is_empty() || s.lo != s.hi;
  if (v == 0.0) {
    rep.differentiable = true;
    return rep;
  }
  if (s.is_empty()) {
    rep.left_slope = rep.right_slope = kNaN;
    return rep;
  }
  rep.right_slope = v > 0.0 ? v * s.hi : v * s.lo;
  rep.left_slope = v > 0.0 ? v * s.lo : v * s.hi;
  rep.differentiable = std::isfinite(rep.left_slope) && rep.left_slope == rep.right_slope;
  return rep;
}

}  // namespace orlicz_flow
