#include <doctest.h>

#include <cmath>
#include <random>

#include "stefan/errors.hpp"
#include "stefan/profile.hpp"
#include "support/oracles.hpp"

using stefan::ProfileFunction;

TEST_CASE("interpolates nodes exactly and reproduces a constant") {
  std::mt19937_64 rng(1);
  const ProfileFunction u = stefan::testing::random_profile(rng, 0.5, 1.5, 0.0, 1.0);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(u(u.grid()[i]) == u.values()[i]);
  const ProfileFunction c = ProfileFunction::constant(0.5, 1.5, 33, 0.25);
  for (double x = 0.5; x <= 1.5; x += 0.0137) {
    CHECK(c(x) == 0.25);
    CHECK(c.derivative(x) == 0.0);
  }
}

TEST_CASE("no overshoot between nodes") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const ProfileFunction u = stefan::testing::random_profile(rng, 1.0, 2.0, 0.0, 1.0, 40);
    const auto g = u.grid();
    const auto v = u.values();
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      const double lo = std::min(v[i], v[i + 1]);
      const double hi = std::max(v[i], v[i + 1]);
      for (int k = 1; k < 10; ++k) {
        const double x = g[i] + (g[i + 1] - g[i]) * k / 10.0;
        CHECK(u(x) >= lo - 1e-15);
        CHECK(u(x) <= hi + 1e-15);
      }
    }
  }
}

TEST_CASE("smooth data is reproduced to cubic accuracy") {
  const auto grid = ProfileFunction::uniform_grid(0.5, 2.0, 257);
  std::vector<double> vals;
  for (double x : grid) vals.push_back(std::exp(-x * x));
  const ProfileFunction u(grid, vals);
  double worst = 0.0, worst_d = 0.0;
  for (double x = 0.5; x <= 2.0; x += 0.00123) {
    worst = std::max(worst, std::abs(u(x) - std::exp(-x * x)));
    worst_d = std::max(worst_d, std::abs(u.derivative(x) + 2.0 * x * std::exp(-x * x)));
  }
  CHECK(worst < 1e-6);
  CHECK(worst_d < 1e-3);
}

TEST_CASE("evaluation is deterministic") {
  std::mt19937_64 rng(3);
  const ProfileFunction u = stefan::testing::random_profile(rng, 0.2, 0.9, -1.0, 1.0);
  const ProfileFunction w(std::vector<double>(u.grid().begin(), u.grid().end()),
                          std::vector<double>(u.values().begin(), u.values().end()));
  for (double x = 0.2; x < 0.9; x += 0.0071) CHECK(u(x) == w(x));
}

TEST_CASE("construction and domain errors") {
  CHECK_THROWS_AS(ProfileFunction::constant(0.0, 1.0, 32, 0.0), stefan::InvalidParameterError);
  auto grid = ProfileFunction::uniform_grid(0.0, 1.0, 33);
  std::vector<double> vals(33, 0.0);
  grid[5] = grid[4];
  CHECK_THROWS_AS(ProfileFunction(grid, vals), stefan::InvalidParameterError);
  grid = ProfileFunction::uniform_grid(0.0, 1.0, 33);
  vals[3] = std::nan("");
  CHECK_THROWS_AS(ProfileFunction(grid, vals), stefan::InvalidParameterError);
  CHECK_THROWS_AS(ProfileFunction(grid, std::vector<double>(34, 0.0)), stefan::InvalidParameterError);

  const ProfileFunction u = ProfileFunction::constant(0.5, 1.0, 33, 1.0);
  CHECK(u.start() == 0.5);
  CHECK(u.front() == 1.0);
  CHECK_THROWS_AS(u(0.49), stefan::DomainError);
  CHECK_THROWS_AS(u(1.01), stefan::DomainError);
}

TEST_CASE("sup distance sees midpoints") {
  const auto grid = ProfileFunction::uniform_grid(0.0, 1.0, 33);
  std::vector<double> a(33, 0.0), b(33, 0.0);
  b[10] = 0.5;
  const ProfileFunction u(grid, a), w(grid, b);
  CHECK(stefan::sup_distance(u, w) == doctest::Approx(0.5));
  CHECK(stefan::sup_distance(u, u) == 0.0);
  CHECK(stefan::sup_distance_resampled(u, w) == doctest::Approx(0.5));

  const ProfileFunction other = ProfileFunction::constant(0.0, 1.0, 65, 0.0);
  CHECK_THROWS_AS(stefan::sup_distance(u, other), stefan::InvalidParameterError);
  CHECK(stefan::sup_distance_resampled(other, w) >= 0.25);
}
