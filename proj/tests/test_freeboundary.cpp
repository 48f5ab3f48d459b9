#include <doctest.h>

#include <cmath>

#include "stefan/closedform.hpp"
#include "stefan/errors.hpp"
#include "stefan/freeboundary.hpp"

using namespace stefan;

TEST_CASE("matching value at alpha0") {
  const DimensionlessProblem f = make_flux_problem(1.0, 0.5, 0.5, 2.0, 4.0, CoefficientModel::linear(0.0, 1.0));
  CHECK(matching_at_alpha0(f) == doctest::Approx(2.0 * std::sqrt(0.5) / (4.0 * 1.0)));
  const DimensionlessProblem c = make_convective_problem(2.0, 0.5, 0.5, 3.0, 1.5, CoefficientModel::constant());
  CHECK(matching_at_alpha0(c) == doctest::Approx(0.5 * 2.0 * std::sqrt(0.5) * 3.0 * 1.5));
}

TEST_CASE("matching functions agree with the constant-coefficient formulas") {
  const DimensionlessProblem f = make_flux_problem(1.0, 0.5, 0.5, 1.0, 1.0, CoefficientModel::constant());
  const ClosedFormCase cf{ClosedFormKind::ConstantFlux, 1.0, 0.5, 0.5, 1.0};
  const DimensionlessProblem c = make_convective_problem(1.0, 0.5, 0.5, 2.0, 0.5, CoefficientModel::constant());
  const ClosedFormCase cc{ClosedFormKind::ConstantConvective, 1.0, 0.5, 0.5, 0.0, 2.0, 0.5};
  for (double xi : {0.55, 0.7, 1.0, 1.5}) {
    CHECK(phi_flux(xi, f, {}) == doctest::Approx(constant_flux_matching(cf, 1.0, xi)).epsilon(1e-10));
    CHECK(phi_convective(xi, c, {}) == doctest::Approx(constant_convective_matching(cc, xi)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(phi_flux(0.7, c, {}), InvalidParameterError);
  CHECK_THROWS_AS(phi_convective(0.7, f, {}), InvalidParameterError);
}

TEST_CASE("envelopes sandwich the matching function") {
  const DimensionlessProblem f = make_flux_problem(1.0, 0.5, 0.5, 1.0, 1.0, CoefficientModel::linear(0.5, 0.5));
  const DimensionlessProblem c = make_convective_problem(1.0, 0.5, 0.5, 2.0, 2.0, CoefficientModel::linear(0.5, 0.5));
  for (double xi : {0.55, 0.65, 0.8}) {
    const double pf = phi_flux(xi, f, {});
    CHECK(phi_lower_envelope(f, xi) <= pf * (1 + 1e-12));
    CHECK(pf <= phi_upper_envelope(f, xi) * (1 + 1e-12));
    const double pc = phi_convective(xi, c, {});
    CHECK(phi_lower_envelope(c, xi) <= pc * (1 + 1e-12));
    CHECK(pc <= phi_upper_envelope(c, xi) * (1 + 1e-12));
  }
}

TEST_CASE("bracket roots are ordered and satisfy their equations") {
  const DimensionlessProblem p = make_flux_problem(1.0, 0.5, 0.5, 1.0, 1.0, CoefficientModel::linear(0.1, 1.0));
  const BracketRoots br = bracket_roots(p, false);
  CHECK(br.xi1 > p.alpha0);
  CHECK(br.xi1 <= br.xi2);
  CHECK(phi_lower_envelope(p, br.xi1) == doctest::Approx(std::pow(br.xi1, 1.5)).epsilon(1e-10));
  CHECK(phi_upper_envelope(p, br.xi2) == doctest::Approx(std::pow(br.xi2, 1.5)).epsilon(1e-10));
}

TEST_CASE("front cannot start behind the boiling front") {
  const DimensionlessProblem p = make_flux_problem(1.0, 2.0, 0.5, 0.1, 5.0, CoefficientModel::constant());
  CHECK_THROWS_AS(bracket_roots(p), NoRootError);
  CHECK_THROWS_AS(solve_front(p, {}), NoRootError);
}

TEST_CASE("front solve for constant coefficients") {
  const DimensionlessProblem p = make_flux_problem(1.0, 0.5, 0.5, 1.0, 1.0, CoefficientModel::constant());
  const FrontSolveReport r = solve_front(p, {});
  const double xi = constant_flux_front({ClosedFormKind::ConstantFlux, 1.0, 0.5, 0.5, 1.0}, 1.0);
  CHECK(std::abs(r.xi - xi) < 1e-9);
  CHECK(std::abs(r.defect) <= kFrontDefectTolerance);
  CHECK(r.xi1 <= r.xi + 1e-9);
  CHECK(r.xi <= r.xi2 + 1e-9);
  CHECK(std::isinf(r.xi_star));
  CHECK(r.admissible);
  CHECK(r.latent_heat_ok);
  CHECK(r.monotone_matching);
  CHECK(r.sign_changes == 1);
  CHECK_FALSE(r.multiplicity_warning);
  CHECK(r.solution.xi == r.xi);
  CHECK(!r.phi_values.empty());
}

TEST_CASE("convective front and its residuals") {
  const DimensionlessProblem p = make_convective_problem(1.0, 0.5, 0.5, 2.0, 2.0, CoefficientModel::linear(0.1, 0.1));
  const FrontSolveReport r = solve_front(p, {});
  CHECK(r.xi > p.alpha0);
  CHECK(std::abs(r.defect) <= kFrontDefectTolerance);
  const SolutionResiduals res = solution_residuals(p, r.solution.profile);
  CHECK(res.front_value == 0.0);
  CHECK(res.boundary < 1e-6);
  CHECK(res.stefan < 1e-6);
  CHECK(res.ode < 1e-4);
}

TEST_CASE("residuals flag a wrong profile") {
  const DimensionlessProblem p = make_flux_problem(1.0, 0.5, 0.5, 1.0, 1.0, CoefficientModel::constant());
  const ProfileFunction linear(ProfileFunction::uniform_grid(0.5, 1.0, 33), [] {
    std::vector<double> v(33);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 - static_cast<double>(i) / 32.0;
    return v;
  }());
  const SolutionResiduals res = solution_residuals(p, linear);
  CHECK(res.front_value == 0.0);
  CHECK(res.boundary == doctest::Approx(1.0));  // u' = -2, q* = 1
  CHECK(res.ode > 0.1);
}
