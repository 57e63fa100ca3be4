#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "orlicz_flow/errors.hpp"
#include "orlicz_flow/measure_grid.hpp"
#include "support.hpp"

using namespace orlicz_flow;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("make_grid sums the weights") {
  CHECK(make_grid({0.5, 0.5}).mass() == doctest::Approx(1.0));
  CHECK(make_grid({0.25, 0.25, 0.5}).size() == 3);
}

TEST_CASE("uniform trapezoid grid on five nodes") {
  const GridMeasure g = GridMeasure::uniform_trapezoid(1.0, 5);
  const std::vector<double> expect{0.125, 0.25, 0.25, 0.25, 0.125};
  for (std::size_t i = 0; i < 5; ++i) CHECK(g.weight(i) == doctest::Approx(expect[i]));
  CHECK(g.mass() == doctest::Approx(1.0));
  REQUIRE(g.has_labels());
  CHECK(g.labels()[2] == doctest::Approx(0.5));
}

TEST_CASE("non-positive or non-finite weights are rejected") {
  CHECK_THROWS_AS(make_grid({0.5, 0.0}), InvalidMeasureError);
  CHECK_THROWS_AS(make_grid({-1.0}), InvalidMeasureError);
  CHECK_THROWS_AS(make_grid({kInf}), InvalidMeasureError);
  CHECK_THROWS_AS(make_grid({}), InvalidMeasureError);
  CHECK_THROWS_AS(make_grid({1.0, 1.0}, {0.0}), InvalidMeasureError);
}

TEST_CASE("integrate over finite and extended values") {
  const GridMeasure unit = make_grid({1.0});
  CHECK(integrate(std::vector<double>{1.0}, unit) == 1.0);
  const GridMeasure quarters = make_grid({0.25, 0.25, 0.25, 0.25});
  CHECK(integrate(std::vector<double>{1, 2, 3, 4}, quarters) == doctest::Approx(2.5));
  CHECK(integrate(std::vector<double>{1, kInf, 3, 4}, quarters) == kInf);
  CHECK(integrate(std::vector<double>{-kInf, kInf, 3, 4}, quarters) == kInf);
  CHECK(integrate(std::vector<double>{-kInf, 1, 3, 4}, quarters) == -kInf);
  CHECK_THROWS_AS(integrate(std::vector<double>{1, 2}, quarters), ShapeError);
}

TEST_CASE("pairing and sup norm") {
  const GridMeasure g = make_grid({0.5, 2.0});
  CHECK(pairing(std::vector<double>{1, 2}, std::vector<double>{3, -1}, g) ==
        doctest::Approx(-2.5));
  CHECK(sup_norm(std::vector<double>{1, -3, 2}) == 3.0);
}

TEST_CASE("integrate is linear, monotone and permutation invariant") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const auto w = test_support::uniform_vector(rng, n, 0.01, 3.0);
    const GridMeasure g = make_grid(w);
    const auto f = test_support::uniform_vector(rng, n, -5, 5);
    const auto h = test_support::uniform_vector(rng, n, -5, 5);
    const double a = std::uniform_real_distribution<double>(-2, 2)(rng);

    std::vector<double> comb(n);
    std::vector<double> upper(n);
    for (std::size_t i = 0; i < n; ++i) {
      comb[i] = a * f[i] + h[i];
      upper[i] = std::max(f[i], h[i]);
    }
    CHECK(integrate(comb, g) ==
          doctest::Approx(a * integrate(f, g) + integrate(h, g)).epsilon(1e-12).scale(10));
    CHECK(integrate(f, g) <= integrate(upper, g) + 1e-12);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> wp(n);
    std::vector<double> fp(n);
    for (std::size_t i = 0; i < n; ++i) {
      wp[i] = w[perm[i]];
      fp[i] = f[perm[i]];
    }
    CHECK(integrate(fp, make_grid(wp)) == doctest::Approx(integrate(f, g)).scale(10));
  }
}
