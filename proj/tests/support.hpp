#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace test_support {

inline std::vector<double> uniform_vector(std::mt19937_64& rng, std::size_t n, double lo,
                                          double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

// Brute-force supremum of h on [lo, hi]: dense scan, then repeated local
// refinement around the best sample.
inline double dense_sup(const std::function<double(double)>& h, double lo, double hi,
                        int samples = 2001, int rounds = 40) {
  double best_x = lo;
  double best = -INFINITY;
  double a = lo;
  double b = hi;
  for (int r = 0; r < rounds; ++r) {
    const double step = (b - a) / (samples - 1);
    for (int k = 0; k < samples; ++k) {
      const double x = a + k * step;
      const double y = h(x);
      if (y > best) {
        best = y;
        best_x = x;
      }
    }
    a = best_x - 2 * step;
    b = best_x + 2 * step;
  }
  return best;
}

// Classical fourth-order Runge-Kutta with fixed steps; used as an
// independent reference for scalar ODEs.
inline double rk4(const std::function<double(double, double)>& f, double x0, double t1,
                  int steps) {
  const double h = t1 / steps;
  double x = x0;
  double t = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double k1 = f(t, x);
    const double k2 = f(t + h / 2, x + h / 2 * k1);
    const double k3 = f(t + h / 2, x + h / 2 * k2);
    const double k4 = f(t + h, x + h * k3);
    x += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    t += h;
  }
  return x;
}

// Scalar bisection for a nondecreasing g with g(lo) < 0 < g(hi).
inline double bisect(const std::function<double(double)>& g, double lo, double hi) {
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace test_support
