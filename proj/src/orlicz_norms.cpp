#include "orlicz_flow/orlicz_norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orlicz_flow/errors.hpp"

namespace orlicz_flow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

GridFunction scaled_copy(std::span<const double> u, double c) {
  GridFunction out(u.begin(), u.end());
  for (double& x : out) x *= c;
  return out;
}

}  // namespace

OrliczIntegrand::OrliczIntegrand(GridMeasure grid, std::vector<ConvexFn> per_node)
    : grid_(std::move(grid)), per_node_(std::move(per_node)) {
  if (per_node_.size() != grid_.size()) {
    throw ShapeError("integrand has " + std::to_string(per_node_.size()) +
                     " members for " + std::to_string(grid_.size()) + " nodes");
  }
}

OrliczIntegrand::OrliczIntegrand(GridMeasure grid, const ConvexFn& f)
    : OrliczIntegrand(grid, std::vector<ConvexFn>(grid.size(), f)) {}

OrliczIntegrand OrliczIntegrand::conjugate() const {
  std::vector<ConvexFn> conj;
  conj.reserve(per_node_.size());
  for (const auto& f : per_node_) conj.push_back(f.conjugate());
  return OrliczIntegrand(grid_, std::move(conj));
}

bool OrliczIntegrand::is_orlicz() const {
  return std::all_of(per_node_.begin(), per_node_.end(),
                     [](const ConvexFn& f) { return f.is_orlicz(); });
}

double modular(const OrliczIntegrand& phi, std::span<const double> u) {
  phi.grid().check_shape(u);
  GridFunction vals(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) vals[i] = phi.at(i)(u[i]);
  return integrate(vals, phi.grid());
}

double luxemburg_norm(const OrliczIntegrand& phi, std::span<const double> u, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  phi.grid().check_shape(u);
  const double unorm = sup_norm(u);
  if (unorm == 0.0) return 0.0;
  auto feasible = [&](double alpha) {
    return modular(phi, scaled_copy(u, 1.0 / alpha)) <= 1.0;
  };

  // Geometric bracket grown from ||u||_inf. The bound ||u|| <= 1 + I(u) only
  // helps when it is tighter; for exponential integrands it can be enormous.
  double hi = std::max(unorm, 1e-300);
  for (int k = 0; !feasible(hi); ++k) {
    hi *= 2.0;
    if (k > 2100 || !std::isfinite(hi)) return kInf;
  }
  const double iu = modular(phi, u);
  if (std::isfinite(iu) && 1.0 + iu < hi && feasible(1.0 + iu)) hi = 1.0 + iu;
  double lo = 0.5 * hi;
  while (feasible(lo)) {
    if (lo <= 1e-300) return lo;
    hi = lo;
    lo *= 0.5;
  }
  for (int it = 0; it < 200 && (hi - lo) > tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

AmemiyaResult amemiya(const OrliczIntegrand& phi, std::span<const double> u, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  phi.grid().check_shape(u);
  AmemiyaResult res;
  if (sup_norm(u) == 0.0) {
    res.value = 0.0;
    res.alpha = kInf;
    res.attained = false;
    return res;
  }
  // Minimize over s = log(alpha).
  auto objective = [&](double s) {
    const double alpha = std::exp(s);
    const double m = modular(phi, scaled_copy(u, alpha));
    return (1.0 + m) / alpha;
  };
  double best_s = 0.0;
  double best = kInf;
  auto eval = [&](double s) {
    const double v = objective(s);
    if (v < best) {
      best = v;
      best_s = s;
    }
    return v;
  };

  const double lux = luxemburg_norm(phi, u, tol);
  const double s0 = std::isfinite(lux) && lux > 0.0 ? -std::log(lux) : 0.0;
  // At alpha = 1/||u|| the objective is <= 2 ||u||, which pins the upper sandwich.
  double f0 = eval(s0);
  double a = s0 - 1.0;
  double c = s0 + 1.0;
  double fa = eval(a);
  double fc = eval(c);

  // 3-point bracket validation with outward expansion.
  constexpr int kMaxExpand = 60;
  double step = 1.0;
  int k = 0;
  double mid = s0;
  double fmid = f0;
  // |log alpha - s0| stays below 600 so alpha never overflows.
  constexpr double kMaxSpread = 600.0;
  // A flat right tail counts as decreasing: in floating point 1/alpha + c
  // stops changing long before alpha overflows, up to a few ulps of noise.
  auto not_rising = [](double right, double centre) {
    return right <= centre + 8.0 * std::numeric_limits<double>::epsilon() * std::abs(centre);
  };
  while ((fa < fmid || not_rising(fc, fmid)) && k < kMaxExpand) {
    step = std::min(2.0 * step, kMaxSpread - std::abs(not_rising(fc, fmid) ? c - s0 : a - s0));
    if (step <= 0.0) break;
    if (not_rising(fc, fmid)) {
      a = mid;
      fa = fmid;
      mid = c;
      fmid = fc;
      c = mid + step;
      fc = eval(c);
    } else {
      c = mid;
      fc = fmid;
      mid = a;
      fmid = fa;
      a = mid - step;
      fa = eval(a);
    }
    ++k;
  }
  if (not_rising(fc, fmid)) {
    // Still decreasing as alpha grows: infimum approached at alpha -> infinity.
    res.value = best;
    res.alpha = std::exp(best_s);
    res.attained = false;
    return res;
  }
  if (fa < fmid) {
    // Decreasing towards alpha -> 0 cannot happen for u != 0 (objective ~ 1/alpha);
    // fall back to a scan over the bracket.
    for (int i = 0; i <= 400; ++i) eval(a + (c - a) * i / 400.0);
  }

  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = c - kInvPhi * (c - a);
  double x2 = a + kInvPhi * (c - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  for (int it = 0; it < 300 && (c - a) > 1e-3 * tol; ++it) {
    if (f1 < f2) {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - kInvPhi * (c - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (c - a);
      f2 = eval(x2);
    }
  }
  res.value = best;
  res.alpha = std::exp(best_s);
  return res;
}

double amemiya_norm(const OrliczIntegrand& phi, std::span<const double> u, double tol) {
  return amemiya(phi, u, tol).value;
}

NormReport norm_report(const OrliczIntegrand& phi, std::span<const double> u, double tol) {
  NormReport r;
  r.luxemburg = luxemburg_norm(phi, u, tol);
  r.amemiya = amemiya_norm(phi, u, tol);
  r.modular_at_unit = modular(phi, u);
  return r;
}

HolderReport holder_check(const OrliczIntegrand& phi, std::span<const double> u,
                          std::span<const double> v, double tol) {
  phi.grid().check_shape(u);
  phi.grid().check_shape(v);
  HolderReport rep;
  // One-sided integrands only bound the signed pairing: with u <= 0 and v >= 0
  // the damage pair has ||v||_* = 0 while int |uv| > 0.
  const bool even = phi.is_orlicz();
  GridFunction prod(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) prod[i] = even ? std::abs(u[i] * v[i]) : u[i] * v[i];
  rep.lhs = integrate(prod, phi.grid());
  const double nu = luxemburg_norm(phi, u, tol);
  const double nv = luxemburg_norm(phi.conjugate(), v, tol);
  rep.rhs = (nu == 0.0 || nv == 0.0) ? 0.0 : 2.0 * nv * nu;
  rep.holds = rep.lhs <= rep.rhs + tol;
  return rep;
}

double conjugate_modular_gap(const OrliczIntegrand& phi, std::span<const double> v,
                             double tol) {
  phi.grid().check_shape(v);
  // The supremand sum_i w_i (u_i v_i - phi_i(u_i)) separates node by node.
  GridFunction sup_parts(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    sup_parts[i] = legendre_numeric(phi.at(i), v[i], {-1.0, 1.0}, tol).value;
  }
  const double lhs = integrate(sup_parts, phi.grid());
  const double rhs = modular(phi.conjugate(), v);
  if (lhs == kInf && rhs == kInf) return 0.0;
  return std::abs(lhs - rhs);
}

EmbeddingConstants embedding_constants(const OrliczIntegrand& phi, double tol) {
  const GridMeasure& g = phi.grid();
  EmbeddingConstants ec;
  std::vector<GridFunction> samples;
  samples.emplace_back(g.size(), 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    GridFunction e(g.size(), 0.0);
    e[i] = 1.0;
    samples.push_back(std::move(e));
  }
  for (const auto& u : samples) {
    const double n_phi = luxemburg_norm(phi, u, tol);
    GridFunction absu(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) absu[i] = std::abs(u[i]);
    const double n1 = integrate(absu, g);
    const double ninf = sup_norm(u);
    ec.c_inf_to_phi = std::max(ec.c_inf_to_phi, n_phi / ninf);
    if (n_phi > 0.0) ec.c_phi_to_1 = std::max(ec.c_phi_to_1, n1 / n_phi);
  }
  return ec;
}

}  // namespace orlicz_flow
