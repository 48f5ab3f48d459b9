#include <doctest.h>

#include <cmath>
#include <numbers>

#include "stefan/errors.hpp"
#include "stefan/vapor.hpp"

using namespace stefan;

namespace {

PhysicalParams sample_params() {
  PhysicalParams p;
  p.lambda0 = 1.7;
  p.theta_b = 2.0;
  p.theta_im = 5.0;
  p.l_b = 3.0;
  p.gamma_b = 0.8;
  p.P0 = 30.0;
  return p;
}

}  // namespace

TEST_CASE("quadratic roots") {
  CHECK(solve_alpha0(3.0, -4.0).alpha0 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(solve_alpha0(0.0, -9.0).alpha0 == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_THROWS_AS(solve_alpha0(1.0, 1.0), NoRootError);
  CHECK_THROWS_AS(solve_alpha0(3.0, 2.0), NoRootError);

  const VaporSolution two = solve_alpha0(-3.0, 2.0);
  CHECK(two.ambiguous);
  CHECK(two.alpha0 == doctest::Approx(1.0));
  CHECK(two.other_root == doctest::Approx(2.0));
  CHECK_FALSE(solve_alpha0(3.0, -4.0).ambiguous);
}

TEST_CASE("root satisfies the quadratic to round-off") {
  for (double D : {-5.0, -0.3, 0.0, 0.7, 40.0}) {
    for (double E : {-1e-3, -1.0, -25.0}) {
      const VaporSolution v = solve_alpha0(D, E);
      CHECK(v.alpha0 > 0.0);
      CHECK(std::abs(v.alpha0 * v.alpha0 + D * v.alpha0 + E) <= 1e-12 * std::max(1.0, v.alpha0 * v.alpha0));
    }
  }
}

TEST_CASE("boiling-front coefficient from material constants") {
  const PhysicalParams p = sample_params();
  const VaporSolution v = solve_alpha0(p);
  const double sp = std::sqrt(std::numbers::pi);
  CHECK(v.D == doctest::Approx(-p.P0 / (2.0 * p.l_b * p.gamma_b * sp)));
  CHECK(v.E == doctest::Approx(-p.lambda0 * (p.theta_b - p.theta_im) / (p.l_b * p.gamma_b)));
  CHECK(v.B == 0.0);
  CHECK(v.C == p.theta_im);
  for (double t : {0.5, 1.0, 4.0}) CHECK(std::abs(vapor_flux_balance_residual(v, p, t)) <= 1e-10);
  // θ_im > θ_b makes E positive, so both roots are positive here.
  CHECK(v.ambiguous);
  CHECK(v.alpha0 < v.other_root);

  PhysicalParams q = p;
  q.theta_b = 6.0;
  const VaporSolution w = solve_alpha0(q);
  CHECK_FALSE(w.ambiguous);
  for (double t : {0.5, 1.0, 4.0}) CHECK(std::abs(vapor_flux_balance_residual(w, q, t)) <= 1e-10);
}

TEST_CASE("vapor temperature profile") {
  const PhysicalParams p = sample_params();
  const VaporSolution v = solve_alpha0(p);
  for (double t : {0.5, 1.0, 4.0}) {
    const double front = 2.0 * v.alpha0 * std::sqrt(t);
    CHECK(vapor_temperature(v, p, 0.0, t) == p.theta_im);
    CHECK(vapor_temperature(v, p, front, t) == p.theta_b);
    CHECK(vapor_temperature(v, p, 0.5 * front, t) ==
          doctest::Approx((p.theta_b - p.theta_im) / 4.0 + p.theta_im).epsilon(1e-15));
    double prev = vapor_temperature(v, p, 0.0, t);
    for (int k = 1; k <= 20; ++k) {
      const double cur = vapor_temperature(v, p, front * k / 20.0, t);
      CHECK(cur < prev);
      prev = cur;
    }
    CHECK_THROWS_AS(vapor_temperature(v, p, 1.01 * front, t), DomainError);
    CHECK_THROWS_AS(vapor_temperature(v, p, -1e-3, t), DomainError);
  }
  CHECK_THROWS_AS(vapor_temperature(v, p, 0.0, 0.0), DomainError);
}
