#include "orlicz_flow/roots.hpp"

#include <algorithm>
#include <cmath>

namespace orlicz_flow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sign of the set value: -1 if entirely negative, +1 if entirely positive,
// 0 if it contains zero.
int sign_of(const Interval& v) {
  if (v.hi < 0.0) return -1;
  if (v.lo > 0.0) return 1;
  return 0;
}

}  // namespace

double Interval::distance(double x) const {
  if (is_empty()) return kInf;
  if (x < lo) return lo - x;
  if (x > hi) return x - hi;
  return 0.0;
}

double Interval::min_norm() const {
  if (is_empty()) return std::numeric_limits<double>::quiet_NaN();
  if (lo <= 0.0 && 0.0 <= hi) return 0.0;
  return lo > 0.0 ? lo : hi;
}

Interval Interval::scaled(double c) const {
  if (is_empty()) return *this;
  return {lo * c, hi * c};
}

RootResult solve_monotone_inclusion(const MonotoneMap& g, const MonotoneSlope& dg,
                                    double start, const RootOptions& opts) {
  RootResult res;
  double x0 = std::clamp(start, opts.domain_lo, opts.domain_hi);
  Interval g0 = g(x0);
  int s0 = sign_of(g0);
  if (s0 == 0 || g0.distance(0.0) <= opts.residual_tol) {
    res.x = x0;
    res.status = RootStatus::converged;
    res.residual = g0.distance(0.0);
    res.bracket_lo = res.bracket_hi = x0;
    return res;
  }

  // Bracket: walk in the direction that reduces |g|.
  const int dir = s0 < 0 ? 1 : -1;
  double step = opts.initial_step > 0.0 ? opts.initial_step : 1.0;
  double inner = x0;
  double outer = x0;
  bool bracketed = false;
  for (int k = 0; k <= opts.max_doublings; ++k) {
    double trial = inner + dir * step;
    trial = std::clamp(trial, opts.domain_lo, opts.domain_hi);
    const Interval gt = g(trial);
    const int st = sign_of(gt);
    ++res.iterations;
    if (st == 0 || gt.distance(0.0) <= opts.residual_tol) {
      res.x = trial;
      res.status = RootStatus::converged;
      res.residual = gt.distance(0.0);
      res.bracket_lo = res.bracket_hi = trial;
      return res;
    }
    if (st != s0) {
      outer = trial;
      bracketed = true;
      break;
    }
    if (trial == inner) break;  // pinned at a domain edge without sign change
    inner = trial;
    step *= 2.0;
  }
  if (!bracketed) {
    res.x = inner;
    res.residual = g(inner).distance(0.0);
    res.status = dir > 0 ? RootStatus::unbounded_above : RootStatus::unbounded_below;
    return res;
  }

  double lo = dir > 0 ? inner : outer;  // g(lo) < 0
  double hi = dir > 0 ? outer : inner;  // g(hi) > 0
  double x = 0.5 * (lo + hi);
  double dx_old = hi - lo;
  double dx = dx_old;
  for (int it = 0; it < opts.max_iterations; ++it) {
    ++res.iterations;
    const Interval gx = g(x);
    const int sx = sign_of(gx);
    const double r = gx.distance(0.0);
    if (sx == 0 || r <= opts.residual_tol) {
      res.x = x;
      res.status = RootStatus::converged;
      res.residual = r;
      res.bracket_lo = lo;
      res.bracket_hi = hi;
      return res;
    }
    if (sx < 0) {
      lo = x;
    } else {
      hi = x;
    }
    // Newton proposal from a single-valued, finite g with usable slope.
    double proposal = std::numeric_limits<double>::quiet_NaN();
    if (dg && gx.lo == gx.hi && std::isfinite(gx.lo)) {
      const double d = dg(x);
      if (std::isfinite(d) && d > 0.0) proposal = x - gx.lo / d;
    }
    const bool newton_ok = std::isfinite(proposal) && proposal > lo && proposal < hi &&
                           std::abs(proposal - x) < 0.5 * std::abs(dx_old);
    dx_old = dx;
    if (newton_ok) {
      dx = proposal - x;
      x = proposal;
    } else {
      const double mid = 0.5 * (lo + hi);
      dx = mid - x;
      x = mid;
    }
    if (!(lo < x && x < hi)) {
      // Bracket collapsed to adjacent doubles: the root sits between them.
      const Interval glo = g(lo);
      const Interval ghi = g(hi);
      const bool pick_lo = glo.distance(0.0) <= ghi.distance(0.0);
      res.x = pick_lo ? lo : hi;
      res.residual = std::min(glo.distance(0.0), ghi.distance(0.0));
      res.status = RootStatus::converged;
      res.bracket_lo = lo;
      res.bracket_hi = hi;
      return res;
    }
  }
  res.x = x;
  res.residual = g(x).distance(0.0);
  res.status = RootStatus::max_iterations;
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  return res;
}

MaxResult golden_maximize(const std::function<double(double)>& h, double start,
                          double x_tol, double slope_tol, int max_doublings) {
  MaxResult res;
  auto eval = [&](double x) {
    ++res.iterations;
    const double v = h(x);
    if (v > res.value) {
      res.value = v;
      res.argmax = x;
    }
    return v;
  };

  const double hb0 = eval(start);
  double a = start;
  double b = start;
  double c = start;

  // Expand towards the ascent direction. a < b < c with h(b) >= h(a), h(c).
  auto expand = [&](int dir) -> bool {
    double base = start;
    double hbase = hb0;
    double prev = start;
    double step = 1.0;
    for (int k = 0; k < max_doublings; ++k) {
      const double trial = base + dir * step;
      const double ht = eval(trial);
      if (!(ht > hbase)) {
        if (dir > 0) {
          a = prev;
          b = base;
          c = trial;
        } else {
          a = trial;
          b = base;
          c = prev;
        }
        return true;
      }
      prev = base;
      base = trial;
      hbase = ht;
      step *= 2.0;
    }
    // Still ascending after the cap: certify +inf when the slope is material.
    const double trial = base + dir * step;
    const double ht = eval(trial);
    if ((ht - hbase) / step > slope_tol) {
      res.unbounded = true;
      res.value = std::numeric_limits<double>::infinity();
      return false;
    }
    a = std::min(prev, trial);
    c = std::max(prev, trial);
    b = base;
    return true;
  };

  const double right = eval(start + 1.0);
  const double left = eval(start - 1.0);
  if (right > hb0) {
    if (!expand(+1)) return res;
  } else if (left > hb0) {
    if (!expand(-1)) return res;
  } else {
    a = start - 1.0;
    c = start + 1.0;
    b = start;
  }

  // Golden-section search on [a, c]; the incumbent is tracked in res.
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = c - kInvPhi * (c - a);
  double x2 = a + kInvPhi * (c - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  for (int it = 0; it < 400; ++it) {
    const double scale = 1.0 + std::abs(res.argmax);
    if (c - a <= x_tol * scale) break;
    bool go_left;
    if (f1 == f2 && f1 == -kInf) {
      // Both probes outside the effective domain: keep the incumbent's side.
      if (res.argmax < x1) {
        go_left = true;
      } else if (res.argmax > x2) {
        go_left = false;
      } else {
        a = x1;
        c = x2;
        x1 = c - kInvPhi * (c - a);
        x2 = a + kInvPhi * (c - a);
        f1 = eval(x1);
        f2 = eval(x2);
        continue;
      }
    } else {
      go_left = f1 > f2;
    }
    if (go_left) {
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
  (void)b;
  return res;
}

}  // namespace orlicz_flow
