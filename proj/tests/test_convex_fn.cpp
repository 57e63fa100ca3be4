#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "orlicz_flow/convex_fn.hpp"
#include "orlicz_flow/errors.hpp"
#include "support.hpp"

using namespace orlicz_flow;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<ConvexFn> catalog() {
  return {ConvexFn::power(1.5),     ConvexFn::power(2.0),       ConvexFn::power(3.0),
          ConvexFn::power_raw(2.0), ConvexFn::bp_primal(),      ConvexFn::bp_dual(),
          ConvexFn::damage_primal(), ConvexFn::damage_dual(),   ConvexFn::linear_abs(1.0),
          ConvexFn::indicator_ball(1.0)};
}

// Reference formulas written out independently of the library.
double psi(double v) { return v * std::asinh(v) - std::sqrt(v * v + 1) + 1; }
double psi_star(double xi) { return std::cosh(xi) - 1; }

}  // namespace

TEST_CASE("catalog values") {
  CHECK(ConvexFn::power(2)(3.0) == doctest::Approx(4.5));
  CHECK(ConvexFn::power_raw(3)(-2.0) == doctest::Approx(8.0));
  CHECK(ConvexFn::bp_dual()(0.0) == 0.0);
  CHECK(ConvexFn::bp_primal()(1.0) == doctest::Approx(psi(1.0)).epsilon(1e-14));
  CHECK(ConvexFn::bp_primal()(1.0) == doctest::Approx(0.4672).epsilon(1e-4));
  CHECK(ConvexFn::damage_primal()(1.0) == kInf);
  CHECK(ConvexFn::damage_primal()(-2.0) == doctest::Approx(2.0));
  CHECK(ConvexFn::damage_dual()(-1.0) == doctest::Approx(0.5));
  CHECK(ConvexFn::damage_dual()(3.0) == 0.0);
  CHECK(ConvexFn::linear_abs(2.0)(-1.5) == doctest::Approx(3.0));
  CHECK(ConvexFn::indicator_ball(1.0)(0.7) == 0.0);
  CHECK(ConvexFn::indicator_ball(1.0)(1.2) == kInf);
}

TEST_CASE("bp primal is accurate for large and tiny arguments") {
  for (double v : {1e-8, 1e-3, 0.5, 10.0, 1e3, 1e6}) {
    const double ref = psi(v);
    CHECK(ConvexFn::bp_primal()(v) == doctest::Approx(ref).epsilon(1e-9));
    CHECK(ConvexFn::bp_primal()(-v) == ConvexFn::bp_primal()(v));
  }
  CHECK(ConvexFn::bp_primal()(1e-8) == doctest::Approx(0.5e-16).epsilon(1e-6));
}

TEST_CASE("subdifferentials") {
  const Interval a = ConvexFn::bp_primal().subdifferential(0.8);
  CHECK(a.lo == doctest::Approx(std::asinh(0.8)));
  CHECK(a.hi == doctest::Approx(std::asinh(0.8)));
  const Interval d = ConvexFn::damage_primal().subdifferential(0.0);
  CHECK(d.lo == 0.0);
  CHECK(d.hi == kInf);
  CHECK(ConvexFn::damage_primal().subdifferential(0.5).is_empty());
  const Interval p = ConvexFn::power(2).subdifferential(-1.0);
  CHECK(p.lo == doctest::Approx(-1.0));
  CHECK(p.hi == doctest::Approx(-1.0));
  const Interval l = ConvexFn::linear_abs(1.0).subdifferential(0.0);
  CHECK(l.lo == -1.0);
  CHECK(l.hi == 1.0);
  const Interval b = ConvexFn::indicator_ball(1.0).subdifferential(1.0);
  CHECK(b.lo == 0.0);
  CHECK(b.hi == kInf);
}

TEST_CASE("analytic conjugate pairs") {
  const ConvexFn p2 = ConvexFn::power(2).conjugate();
  CHECK(p2.name() == "power(2)");
  const ConvexFn p3 = ConvexFn::power(3).conjugate();
  for (double xi : {-2.0, 0.3, 1.7}) {
    CHECK(p3(xi) == doctest::Approx(std::pow(std::abs(xi), 1.5) / 1.5));
    CHECK(ConvexFn::bp_primal().conjugate()(xi) == doctest::Approx(psi_star(xi)));
    CHECK(ConvexFn::damage_primal().conjugate()(xi) ==
          doctest::Approx(0.5 * std::pow(std::max(-xi, 0.0), 2)));
  }
  CHECK(ConvexFn::linear_abs(1.0).conjugate().name() == "indicator_ball(1)");
  CHECK(ConvexFn::linear_abs(2.0).conjugate()(1.9) == 0.0);
  CHECK(ConvexFn::linear_abs(2.0).conjugate()(2.1) == kInf);
  // power_raw(2) = x^2 has conjugate xi^2 / 4.
  CHECK(ConvexFn::power_raw(2).conjugate()(3.0) == doctest::Approx(2.25));
}

TEST_CASE("numeric conjugate of a custom function") {
  CustomFnSpec spec;
  spec.name = "quartic";
  spec.value = [](double x) { return x * x * x * x / 4; };
  spec.derivative = [](double x) { return x * x * x; };
  spec.even = true;
  const ConvexFn conj = ConvexFn::custom(spec).conjugate();
  // (x^4/4)^* = (3/4)|xi|^{4/3}
  CHECK(conj(2.0) == doctest::Approx(0.75 * std::pow(2.0, 4.0 / 3.0)).epsilon(1e-9));

  CustomFnSpec nowhere;
  nowhere.value = [](double) { return kInf; };
  CHECK_THROWS_AS(ConvexFn::custom(nowhere).conjugate(), DomainError);
}

TEST_CASE("legendre_numeric against closed forms and a dense-scan oracle") {
  CHECK(legendre_numeric(ConvexFn::power(2), 1.0).value == doctest::Approx(0.5).epsilon(1e-12));

  const double oracle = test_support::dense_sup(
      [](double v) { return 1.0 * v - psi(v); }, -5.0, 5.0);
  const LegendreResult bp = legendre_numeric(ConvexFn::bp_primal(), 1.0);
  CHECK(std::abs(bp.value - oracle) < 1e-10);
  CHECK(bp.value == doctest::Approx(0.5430806348).epsilon(1e-9));
  CHECK(bp.argmax == doctest::Approx(std::sinh(1.0)).epsilon(1e-9));

  CHECK(legendre_numeric(ConvexFn::linear_abs(1.0), 2.0).value == kInf);
  CHECK(legendre_numeric(ConvexFn::linear_abs(1.0), 0.5).value == doctest::Approx(0.0));

  // Derivative-free path through golden-section.
  CustomFnSpec spec;
  spec.value = [](double x) { return std::cosh(x) - 1; };
  spec.even = true;
  const LegendreResult golden = legendre_numeric(ConvexFn::custom(spec), 1.0);
  CHECK(golden.value == doctest::Approx(psi(1.0)).epsilon(1e-9));
}

TEST_CASE("biconjugation reproduces catalog functions") {
  for (const ConvexFn& f : catalog()) {
    const ConvexFn numeric = numeric_conjugate(f);
    for (int k = 0; k <= 20; ++k) {
      const double x = -2.0 + 0.2 * k;
      const double expect = f(x);
      const double got = legendre_numeric(numeric, x).value;
      INFO(f.name() << " at " << x);
      if (std::isinf(expect)) {
        CHECK(got == kInf);
      } else {
        CHECK(std::abs(got - expect) <= 1e-8 * std::max(1.0, std::abs(expect)));
      }
    }
  }
}

TEST_CASE("Fenchel-Young identity on the subdifferential graph") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const ConvexFn& f : catalog()) {
    const ConvexFn fc = f.conjugate();
    for (int trial = 0; trial < 200; ++trial) {
      const double x = -3.0 + 6.0 * unit(rng);
      const Interval s = f.subdifferential(x);
      if (s.is_empty()) continue;
      const double lo = std::isfinite(s.lo) ? s.lo : s.hi - 5.0;
      const double hi = std::isfinite(s.hi) ? s.hi : s.lo + 5.0;
      const double xi = lo + (hi - lo) * unit(rng);
      INFO(f.name() << " x=" << x << " xi=" << xi);
      CHECK(std::abs(f(x) + fc(xi) - xi * x) <= 1e-10 * std::max(1.0, std::abs(xi * x)));
    }
  }
}

TEST_CASE("conjugates of symmetric members are Orlicz functions") {
  for (const ConvexFn& f : catalog()) {
    if (!f.is_even()) {
      CHECK(f.name().rfind("damage", 0) == 0);
      continue;
    }
    const ConvexFn fc = f.conjugate();
    CHECK(fc(0.0) == 0.0);
    CHECK(fc.is_even());
    for (double x : {0.3, 1.0, 2.5}) CHECK(fc(x) == fc(-x));
    CHECK(coercivity_probe(fc, 2.0) > 0.0);
  }
  CHECK_FALSE(ConvexFn::damage_primal().is_orlicz());
}

TEST_CASE("subdifferentials are monotone and functions are convex") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-4.0, 4.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const ConvexFn& f : catalog()) {
    for (int trial = 0; trial < 300; ++trial) {
      double x1 = d(rng);
      double x2 = d(rng);
      if (x1 > x2) std::swap(x1, x2);
      const Interval s1 = f.subdifferential(x1);
      const Interval s2 = f.subdifferential(x2);
      if (!s1.is_empty() && !s2.is_empty() && x1 < x2) CHECK(s1.hi <= s2.lo + 1e-12);
      const double lam = unit(rng);
      const double mid = f(lam * x1 + (1 - lam) * x2);
      const double chord = lam * f(x1) + (1 - lam) * f(x2);
      CHECK(mid <= chord + 1e-12 * std::max(1.0, std::abs(chord)));
      CHECK(f(x1) >= 0.0);
    }
    CHECK(f(0.0) == 0.0);
  }
}

TEST_CASE("delta2 probe") {
  const std::vector<double> xs{0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
  for (double p : {1.5, 2.0, 3.0}) {
    const Delta2Report r = delta2_probe(ConvexFn::power(p), xs);
    CHECK(r.passes);
    REQUIRE(r.k.has_value());
    CHECK(std::abs(*r.k - std::pow(2.0, p)) <= 1e-9);
  }
  const Delta2Report bp = delta2_probe(ConvexFn::bp_dual(), std::vector<double>{5, 10, 20});
  CHECK_FALSE(bp.passes);
  REQUIRE(bp.ratio_trace.size() == 3);
  const double at20 = (std::cosh(40.0) - 1) / (std::cosh(20.0) - 1);
  CHECK(bp.ratio_trace[2] == doctest::Approx(at20).epsilon(1e-12));
  CHECK(bp.ratio_trace[2] > 1e6);
  CHECK(bp.ratio_trace[0] < bp.ratio_trace[1]);

  const Delta2Report ball = delta2_probe(ConvexFn::indicator_ball(1.0), std::vector<double>{0.6, 0.8, 1.0});
  CHECK_FALSE(ball.passes);
}

TEST_CASE("radial superlinearity probe") {
  const std::vector<double> thetas{1e-1, 1e-2, 1e-3};
  const SuperlinearityReport p2 = superlinearity_probe(ConvexFn::power(2), 1.0, thetas);
  CHECK(p2.superlinear);
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    CHECK(p2.trace[k] == doctest::Approx(1.0 / (2 * thetas[k])));
  }
  const SuperlinearityReport lin = superlinearity_probe(ConvexFn::linear_abs(1.0), 1.0, thetas);
  CHECK_FALSE(lin.superlinear);
  for (double t : lin.trace) CHECK(t == doctest::Approx(1.0));

  const SuperlinearityReport bp = superlinearity_probe(ConvexFn::bp_primal(), 1.0, thetas);
  CHECK(bp.superlinear);
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    CHECK(bp.trace[k] == doctest::Approx(thetas[k] * psi(1.0 / thetas[k])).epsilon(1e-12));
    if (k > 0) CHECK(bp.trace[k] > bp.trace[k - 1]);
  }
}

TEST_CASE("coercivity probe") {
  CHECK(coercivity_probe(ConvexFn::power(2), 1.0) == doctest::Approx(0.5));
  CHECK(coercivity_probe(ConvexFn::bp_dual(), 1.0) == doctest::Approx(std::cosh(1.0) - 1));
  CustomFnSpec zero;
  zero.name = "zero";
  zero.value = [](double) { return 0.0; };
  zero.derivative = [](double) { return 0.0; };
  zero.even = true;
  CHECK(coercivity_probe(ConvexFn::custom(zero), 1.0) == 0.0);
}

TEST_CASE("smoothness along rays") {
  for (const ConvexFn& f : {ConvexFn::bp_primal(), ConvexFn::power(2), ConvexFn::power(3)}) {
    for (double v : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
      const RaySmoothnessReport r = ray_smoothness_probe(f, v);
      INFO(f.name() << " v=" << v);
      CHECK(r.differentiable);
      CHECK_FALSE(r.kink);
      // d/dr f(r v) at r = 1 equals v f'(v); compare with a central quotient.
      const double h = 1e-5;
      const double quotient = (f((1 + h) * v) - f((1 - h) * v)) / (2 * h);
      CHECK(r.left_slope == doctest::Approx(quotient).epsilon(1e-7).scale(1));
    }
  }
  const RaySmoothnessReport dmg = ray_smoothness_probe(ConvexFn::damage_primal(), 0.0);
  // The ray through 0 is constant, so only the subdifferential shows the kink.
  CHECK(dmg.kink);
  CHECK(dmg.differentiable);
}

TEST_CASE("from_name") {
  CHECK(ConvexFn::from_name("power:3").name() == "power(3)");
  CHECK(ConvexFn::from_name("power_raw:2").name() == "power_raw(2)");
  CHECK(ConvexFn::from_name("bp_dual").name() == "bp_dual");
  CHECK(ConvexFn::from_name("linear_abs").name() == "linear_abs(1)");
  CHECK_THROWS_AS(ConvexFn::from_name("power"), ConfigError);
  CHECK_THROWS_AS(ConvexFn::from_name("power:x"), ConfigError);
  CHECK_THROWS_AS(ConvexFn::from_name("cubic"), ConfigError);
}
