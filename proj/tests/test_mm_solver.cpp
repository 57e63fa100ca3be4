#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "orlicz_flow/errors.hpp"
#include "orlicz_flow/mm_solver.hpp"
#include "support.hpp"

using namespace orlicz_flow;

namespace {

DissipationPotential quadratic_potential(const GridMeasure& g) {
  return DissipationPotential::autonomous(OrliczIntegrand(g, ConvexFn::power(2)));
}

// (I + tau A) x = b for the Neumann Laplacian A with trapezoid weights, by
// the Thomas algorithm.
std::vector<double> implicit_heat_step(const std::vector<double>& b, double tau, double h) {
  const std::size_t n = b.size();
  const double r = tau / (h * h);
  std::vector<double> lower(n, -r);
  std::vector<double> diag(n, 1 + 2 * r);
  std::vector<double> upper(n, -r);
  upper[0] = -2 * r;
  lower[n - 1] = -2 * r;
  std::vector<double> c(n);
  std::vector<double> d(n);
  c[0] = upper[0] / diag[0];
  d[0] = b[0] / diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double m = diag[i] - lower[i] * c[i - 1];
    c[i] = upper[i] / m;
    d[i] = (b[i] - lower[i] * d[i - 1]) / m;
  }
  std::vector<double> x(n);
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

}  // namespace

TEST_CASE("partition") {
  const Partition p = Partition::uniform(1.0, 0.25);
  CHECK(p.steps() == 4);
  CHECK(p.time(4) == 1.0);
  CHECK(p.nodes()[2] == doctest::Approx(0.5));
  CHECK(Partition::uniform(0.1, 1e-3).steps() == 100);
  CHECK_THROWS_AS(Partition::uniform(1.0, 0.3), DomainError);
  CHECK_THROWS_AS(Partition::uniform(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(Partition::uniform(-1.0, 0.1), DomainError);
}

TEST_CASE("implicit Euler step for the quadratic pair") {
  const GridMeasure g = make_grid({0.5, 0.5});
  const StepResult r = solve_step(quadratic_potential(g), EnergyFunctional::quadratic(g, 1.0, 0.0),
                                  0.1, 0.1, std::vector<double>{1, 1});
  for (double u : r.U) CHECK(std::abs(u - 1 / 1.1) <= 1e-12);
  CHECK(r.xi[0] == doctest::Approx(1 / 1.1));
  CHECK(r.diag.fy_gap <= 1e-12);
  CHECK(r.diag.el_residual <= 1e-10);
}

TEST_CASE("bp step solves the scalar monotone equation") {
  const GridMeasure g = make_grid({1.0});
  const double tau = 0.1;
  const StepResult r = solve_step(DissipationPotential::bp(g), EnergyFunctional::quadratic(g, 1.0, 0.0),
                                  tau, tau, std::vector<double>{2.0});
  const double oracle =
      test_support::bisect([&](double u) { return (u - 2.0) / tau + std::sinh(u); }, 0.0, 2.0);
  CHECK(std::abs(r.U[0] - oracle) <= 1e-10);
  CHECK(r.diag.fy_gap <= 1e-9);
  CHECK(r.diag.j_value <= EnergyFunctional::quadratic(g, 1.0, 0.0).value(tau, std::vector<double>{2.0}));
}

TEST_CASE("damage constraint binds against an upward pull") {
  const GridMeasure g = make_grid({0.5, 0.5});
  const StepResult r = solve_step(DissipationPotential::damage(g),
                                  EnergyFunctional::quadratic(g, 1.0, 1.0, 5.0), 0.1, 0.1,
                                  std::vector<double>{1, 1});
  CHECK(r.U[0] == 1.0);
  CHECK(r.U[1] == 1.0);
  CHECK(r.diag.el_residual <= 1e-10);
  // The same pull on a coupled energy goes through the proximal path.
  const EnergyFunctional coupled = EnergyFunctional::composite(
      g, {QuadraticTerm{1.0, 5.0}, GradientTerm{ConvexFn::power(2), 1.0}});
  const StepResult c = solve_step(DissipationPotential::damage(g), coupled, 0.1, 0.1,
                                  std::vector<double>{1, 2});
  CHECK(c.U[0] <= 1.0);
  CHECK(c.U[1] <= 2.0);
  CHECK(c.diag.el_residual <= 1e-10);
}

TEST_CASE("coupled heat step matches a direct tridiagonal solve") {
  const std::size_t n = 17;
  const double h = 1.0 / (n - 1);
  const GridMeasure g = GridMeasure::uniform_trapezoid(1.0, n);
  std::mt19937_64 rng(8);
  const auto u = test_support::uniform_vector(rng, n, -1, 1);
  for (double tau : {1e-3, 1e-2, 0.1}) {
    const StepResult r = solve_step(quadratic_potential(g), EnergyFunctional::p_dirichlet(g, 2.0, h),
                                    tau, tau, u);
    const auto ref = implicit_heat_step(u, tau, h);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(r.U[i] - ref[i]) <= 1e-9);
    CHECK(r.diag.el_residual <= 1e-10);
    CHECK(r.diag.fy_gap <= 1e-9);
  }
}

TEST_CASE("quadratic trajectory follows the geometric recursion") {
  const GridMeasure g = make_grid({1.0});
  const double lambda = 1.0;
  const double tau = 1e-3;
  const DiscreteSolution sol = run_scheme(quadratic_potential(g), EnergyFunctional::quadratic(g, lambda),
                                          std::vector<double>{1.0}, 1.0, tau);
  REQUIRE(sol.U.size() == 1001);
  CHECK(sol.U[0][0] == 1.0);
  for (std::size_t n = 1; n < sol.U.size(); ++n) {
    CHECK(std::abs(sol.U[n][0] - sol.U[n - 1][0] / (1 + lambda * tau)) <= 1e-10);
  }
  for (double slack : sol.energy_slack) CHECK(slack >= -1e-9);
}

TEST_CASE("bp trajectory converges to the exact ODE solution") {
  const GridMeasure g = make_grid({1.0});
  const DiscreteSolution sol = run_scheme(DissipationPotential::bp(g), EnergyFunctional::quadratic(g, 1.0),
                                          std::vector<double>{2.0}, 1.0, 1e-3);
  const double exact = 2 * std::atanh(std::exp(-1.0) * std::tanh(1.0));
  const double rk = test_support::rk4([](double, double x) { return -std::sinh(x); }, 2.0, 1.0, 20000);
  CHECK(std::abs(exact - rk) <= 1e-12);
  CHECK(std::abs(sol.U.back()[0] - exact) <= 5e-3);
}

TEST_CASE("damage trajectories are monotone") {
  const std::size_t n = 9;
  const GridMeasure g = GridMeasure::uniform_trapezoid(1.0, n);
  std::vector<double> u0(n);
  for (std::size_t i = 0; i < n; ++i) u0[i] = std::cos(std::numbers::pi * g.labels()[i]);
  const EnergyFunctional e = EnergyFunctional::composite(
      g, {QuadraticTerm{1.0, 0.0}, GradientTerm{ConvexFn::power(2), 1.0 / (n - 1)}});
  const DiscreteSolution sol = run_scheme(DissipationPotential::damage(g), e, u0, 0.5, 0.05);
  for (std::size_t k = 1; k < sol.U.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) CHECK(sol.U[k][i] <= sol.U[k - 1][i]);
  }
}

TEST_CASE("step invariants along trajectories") {
  const std::size_t n = 9;
  const GridMeasure g = GridMeasure::uniform_trapezoid(1.0, n);
  std::vector<double> u0(n);
  for (std::size_t i = 0; i < n; ++i) u0[i] = 1.2 + 0.4 * std::cos(std::numbers::pi * g.labels()[i]);
  const EnergyFunctional e = EnergyFunctional::composite(
      g, {DoubleWellTerm{1.0}, GradientTerm{ConvexFn::power(2), 1.0 / (n - 1)}});
  const SolverOptions opts;
  const DiscreteSolution sol = run_scheme(DissipationPotential::bp(g), e, u0, 0.5, 0.05, opts);
  for (std::size_t k = 1; k < sol.U.size(); ++k) {
    const double t = sol.partition.time(k);
    const StepDiagnostics& d = sol.diags[k - 1];
    CHECK(d.el_residual <= 10 * opts.inner_tol);
    CHECK(d.fy_gap <= 10 * opts.inner_tol);
    CHECK(d.j_value <= e.value(t, sol.U[k - 1]) + 10 * opts.inner_tol);
    CHECK(e.value(t, sol.U[k]) <= e.value(sol.partition.time(k - 1), sol.U[k - 1]) + 10 * opts.inner_tol);
  }
}

TEST_CASE("first-order convergence for the quadratic pair") {
  const GridMeasure g = make_grid({1.0});
  auto error = [&](double tau) {
    const DiscreteSolution s = run_scheme(quadratic_potential(g), EnergyFunctional::quadratic(g, 1.0),
                                          std::vector<double>{1.0}, 1.0, tau);
    return std::abs(s.U.back()[0] - std::exp(-1.0));
  };
  double prev = error(0.1);
  for (double tau : {0.05, 0.025, 0.0125}) {
    const double e = error(tau);
    CHECK(prev / e == doctest::Approx(2.0).epsilon(0.2));
    prev = e;
  }
}

TEST_CASE("semiconvexity gate") {
  const GridMeasure g = make_grid({1.0});
  const auto pot = quadratic_potential(g);
  const EnergyFunctional dw = EnergyFunctional::double_well(g, 1.0);
  CHECK_THROWS_AS(solve_step(pot, dw, 1.0, 1.0, std::vector<double>{0.1}), DomainError);
  CHECK_NOTHROW(solve_step(pot, dw, 0.9, 0.9, std::vector<double>{0.1}));
  SolverOptions loose;
  loose.allow_nonconvex_steps = true;
  const StepResult r = solve_step(pot, dw, 1.5, 1.5, std::vector<double>{0.1}, loose);
  CHECK(r.diag.multi_minimizer_warning);
}

TEST_CASE("failures carry the partial solution") {
  const std::size_t n = 17;
  const GridMeasure g = GridMeasure::uniform_trapezoid(1.0, n);
  std::vector<double> u0(n);
  for (std::size_t i = 0; i < n; ++i) u0[i] = std::cos(std::numbers::pi * g.labels()[i]);
  SolverOptions tight;
  tight.max_inner_iterations = 2;
  try {
    (void)run_scheme(quadratic_potential(g), EnergyFunctional::p_dirichlet(g, 2.0, 1.0 / 16), u0, 1.0,
                     0.1, tight);
    FAIL("expected a scheme error");
  } catch (const SchemeError& e) {
    CHECK(e.partial().U.size() == 1);
    CHECK(std::string(e.what()).find("step 1") != std::string::npos);
  }
  CHECK_THROWS_AS(solve_step(quadratic_potential(g), EnergyFunctional::p_dirichlet(g, 2.0, 1.0 / 16),
                             0.1, 0.1, u0, tight),
                  StepError);
}

TEST_CASE("interpolants") {
  const GridMeasure g = make_grid({1.0});
  const double lambda = 2.0;
  const double tau = 0.1;
  const DiscreteSolution sol = run_scheme(quadratic_potential(g), EnergyFunctional::quadratic(g, lambda),
                                          std::vector<double>{1.0}, 1.0, tau);
  for (std::size_t n : {0u, 3u, 10u}) {
    const double t = sol.partition.time(n);
    for (Interpolant w : {Interpolant::left, Interpolant::right, Interpolant::affine}) {
      CHECK(interpolate(sol, t, w)[0] == sol.U[n][0]);
    }
    if (n > 0) CHECK(interpolate(sol, t, Interpolant::variational)[0] == sol.U[n][0]);
  }
  const double mid = 0.35;
  CHECK(interpolate(sol, mid, Interpolant::affine)[0] == doctest::Approx(0.5 * (sol.U[3][0] + sol.U[4][0])));
  CHECK(interpolate(sol, mid, Interpolant::left)[0] == sol.U[4][0]);
  CHECK(interpolate(sol, mid, Interpolant::right)[0] == sol.U[3][0]);
  const double theta = mid - 0.3;
  CHECK(interpolate(sol, mid, Interpolant::variational)[0] ==
        doctest::Approx(sol.U[3][0] / (1 + lambda * theta)).epsilon(1e-12));
  const StepResult vs = variational_step(sol, mid);
  CHECK(vs.xi[0] == doctest::Approx(lambda * vs.U[0]));
  CHECK_THROWS_AS(interpolate(sol, -0.1, Interpolant::left), RangeError);
  CHECK_THROWS_AS(interpolate(sol, 1.2, Interpolant::affine), RangeError);
}
