#include <doctest.h>

#include <cmath>
#include <random>

#include "stefan/errors.hpp"
#include "stefan/kernel.hpp"
#include "stefan/specfun.hpp"
#include "support/oracles.hpp"

using namespace stefan;
using stefan::testing::brute_kernels;
using stefan::testing::random_profile;

namespace {

// α₀^ν/2 · e^{α₀²/a} a^{(1−ν)/2} [γ(s,η²/a) − γ(s,α₀²/a)], s = (1−ν)/2
double constant_phi_reference(double a, double nu, double alpha0, double eta) {
  const double s = 0.5 * (1.0 - nu);
  return std::pow(alpha0, nu) / 2.0 * std::exp(alpha0 * alpha0 / a) * std::pow(a, s) *
         (lower_incomplete_gamma(s, eta * eta / a) - lower_incomplete_gamma(s, alpha0 * alpha0 / a));
}

}  // namespace

TEST_CASE("kernels at the lower end are exact") {
  std::mt19937_64 rng(11);
  const ProfileFunction u = random_profile(rng, 0.5, 1.5, 0.0, 1.0);
  const CoefficientModel m = CoefficientModel::linear(0.4, 0.9);
  CHECK(kernel_E(u, m, 1.3, 0.5) == 1.0);
  CHECK(kernel_Phi(u, m, 1.3, 0.5, 0.5, 0.5) == 0.0);
  const KernelTable t = evaluate_kernels(u, m, 1.3, 0.5, 0.5);
  CHECK(t.E.front() == 1.0);
  CHECK(t.Phi.front() == 0.0);
}

TEST_CASE("constant model E is a Gaussian factor") {
  const ProfileFunction u = ProfileFunction::constant(0.5, 1.0, 65, 0.0);
  const CoefficientModel m = CoefficientModel::constant();
  CHECK(kernel_E(u, m, 1.0, 1.0) == doctest::Approx(std::exp(-0.75)).epsilon(1e-13));
  CHECK(kernel_E(u, m, 1.0, 1.0) == doctest::Approx(0.4723665).epsilon(1e-7));
  for (double eta = 0.5; eta <= 1.0; eta += 0.03) {
    CHECK(std::abs(kernel_E(u, m, 2.0, eta) - std::exp(-(eta * eta - 0.25) / 2.0)) < 1e-11);
  }
}

TEST_CASE("constant model Phi matches the incomplete gamma form") {
  const ProfileFunction u = ProfileFunction::constant(0.5, 1.0, 65, 0.0);
  const double want = constant_phi_reference(1.0, 0.5, 0.5, 1.0);
  CHECK(std::abs(kernel_Phi(u, CoefficientModel::constant(), 1.0, 0.5, 0.5, 1.0) - want) < 1e-10);
  for (double a : {0.5, 2.0}) {
    for (double nu : {0.25, 0.75}) {
      const ProfileFunction w = ProfileFunction::constant(1.0, 2.0, 65, 0.3);
      const KernelTable t = evaluate_kernels(w, CoefficientModel::constant(), a, nu, 1.0);
      for (std::size_t i = 0; i < t.eta.size(); i += 8) {
        CHECK(std::abs(t.Phi[i] - constant_phi_reference(a, nu, 1.0, t.eta[i])) < 1e-10);
      }
    }
  }
}

TEST_CASE("linear model kernels against a fine Simpson rule") {
  std::mt19937_64 rng(12);
  const ProfileFunction u = random_profile(rng, 1.0, 1.5, 0.0, 1.0, 33);
  const CoefficientModel m = CoefficientModel::linear(0.7, 0.2);
  const auto ref = brute_kernels([&](double s) { return u(s); }, m, 0.8, 0.5, 1.0, 1.2);
  CHECK(std::abs(kernel_E(u, m, 0.8, 1.2) - ref.E) < 1e-11);
  CHECK(std::abs(kernel_Phi(u, m, 0.8, 0.5, 1.0, 1.2) - ref.Phi) < 1e-10);
}

TEST_CASE("table of kernels agrees with pointwise evaluation") {
  std::mt19937_64 rng(13);
  const ProfileFunction u = random_profile(rng, 0.25, 0.9, 0.0, 1.0, 41);
  const CoefficientModel m = CoefficientModel::linear(1.0, 1.0);
  const KernelTable t = evaluate_kernels(u, m, 1.0, 0.25, 0.25);
  for (std::size_t i = 0; i < t.eta.size(); i += 5) {
    CHECK(std::abs(t.E[i] - kernel_E(u, m, 1.0, t.eta[i])) < 1e-12);
    CHECK(std::abs(t.Phi[i] - kernel_Phi(u, m, 1.0, 0.25, 0.25, t.eta[i])) < 1e-12);
  }
}

TEST_CASE("Phi increases and E decreases along the grid") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 5; ++trial) {
    const ProfileFunction u = random_profile(rng, 0.5, 2.0, 0.0, 1.0);
    const KernelTable t = evaluate_kernels(u, CoefficientModel::linear(0.3, 0.6), 1.0, 0.5, 0.5);
    for (std::size_t i = 1; i < t.eta.size(); ++i) {
      CHECK(t.Phi[i] > t.Phi[i - 1]);
      CHECK(t.E[i] < t.E[i - 1]);
      CHECK(t.E[i] > 0.0);
    }
  }
}

TEST_CASE("kernel argument checks") {
  const ProfileFunction u = ProfileFunction::constant(0.5, 1.0, 33, 0.0);
  const CoefficientModel m = CoefficientModel::constant();
  CHECK_THROWS_AS(kernel_E(u, m, 1.0, 1.2), DomainError);
  CHECK_THROWS_AS(kernel_E(u, m, 0.0, 0.7), InvalidParameterError);
  CHECK_THROWS_AS(kernel_Phi(u, m, 1.0, 1.0, 0.5, 0.7), InvalidParameterError);
  CHECK_THROWS_AS(kernel_Phi(u, m, 1.0, 0.5, 0.6, 0.7), InvalidParameterError);
}

TEST_CASE("envelopes collapse for the constant model") {
  const KernelBounds kb = lemma_bounds(CoefficientModel::constant().bounds_on(0.0, 1.0), 1.5, 0.5, 0.5);
  for (double eta = 0.5; eta <= 2.0; eta += 0.1) {
    const double g = std::exp(-(eta * eta - 0.25) / 1.5);
    CHECK(kb.E_lo(eta) == doctest::Approx(g).epsilon(1e-15));
    CHECK(kb.E_hi(eta) == doctest::Approx(g).epsilon(1e-15));
    CHECK(kb.Phi_lo(eta) == doctest::Approx(kb.Phi_hi(eta)).epsilon(1e-15));
    CHECK(kb.Phi_lo(eta) == doctest::Approx(constant_phi_reference(1.5, 0.5, 0.5, eta)).epsilon(1e-13));
    CHECK(kb.PhiTilde(eta) == 0.0);
    CHECK(kb.E_lipschitz(eta) == 0.0);
  }
}

TEST_CASE("Phi Lipschitz envelope for the unit-slope linear model") {
  const ModelBounds b = CoefficientModel::linear(1.0, 1.0).bounds_on(0.0, 1.0);
  const KernelBounds kb = lemma_bounds(b, 1.0, 0.5, 1.0);
  // L_m = N_m = 1, L_M = N_M = 2, Lipschitz constants 1, at η = 2.
  const double bracket = std::pow(2.0, 2.5) / 2.5 - std::pow(2.0, 0.5) / 0.5 + 2.0 / (2.5 * 0.5);
  const double want = (1.0 + 2.0) * bracket + (std::sqrt(2.0) - 1.0) / 0.5;
  CHECK(kb.PhiTilde(2.0) == doctest::Approx(want).epsilon(1e-14));
  double prev = 0.0;
  for (double z = 1.01; z < 3.0; z += 0.01) {
    CHECK(kb.PhiTilde(z) > prev);
    prev = kb.PhiTilde(z);
  }
}

TEST_CASE("envelopes bracket the kernels of random profiles") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> slope(0.0, 1.5);
  for (int trial = 0; trial < 6; ++trial) {
    const CoefficientModel m = CoefficientModel::linear(slope(rng), slope(rng));
    const KernelBounds kb = lemma_bounds(m.bounds_on(0.0, 1.0), 0.9, 0.4, 0.6);
    const ProfileFunction u = random_profile(rng, 0.6, 1.8, 0.0, 1.0);
    const KernelTable t = evaluate_kernels(u, m, 0.9, 0.4, 0.6);
    for (std::size_t i = 0; i < t.eta.size(); ++i) {
      CHECK(kb.E_lo(t.eta[i]) <= t.E[i] * (1.0 + 1e-12));
      CHECK(t.E[i] <= kb.E_hi(t.eta[i]) * (1.0 + 1e-12));
      CHECK(kb.Phi_lo(t.eta[i]) <= t.Phi[i] + 1e-12);
      CHECK(t.Phi[i] <= kb.Phi_hi(t.eta[i]) + 1e-12);
    }
  }
}

TEST_CASE("Lipschitz envelopes bound kernel differences") {
  std::mt19937_64 rng(16);
  const CoefficientModel m = CoefficientModel::linear(0.8, 0.5);
  const KernelBounds kb = lemma_bounds(m.bounds_on(0.0, 1.0), 1.0, 0.5, 0.5);
  for (int trial = 0; trial < 6; ++trial) {
    const ProfileFunction u = random_profile(rng, 0.5, 1.5, 0.0, 1.0);
    const ProfileFunction w = random_profile(rng, 0.5, 1.5, 0.0, 1.0);
    const double d = sup_distance(u, w);
    const KernelTable tu = evaluate_kernels(u, m, 1.0, 0.5, 0.5);
    const KernelTable tw = evaluate_kernels(w, m, 1.0, 0.5, 0.5);
    for (std::size_t i = 0; i < tu.eta.size(); ++i) {
      CHECK(std::abs(tu.E[i] - tw.E[i]) <= kb.E_lipschitz(tu.eta[i]) * d + 1e-12);
      CHECK(std::abs(tu.Phi[i] - tw.Phi[i]) <= kb.PhiTilde(tu.eta[i]) * d + 1e-12);
    }
  }
}

TEST_CASE("invalid bounds are rejected") {
  ModelBounds b{1.0, 0.5, 1.0, 1.0, 0.0, 0.0};
  CHECK_THROWS_AS(lemma_bounds(b, 1.0, 0.5, 1.0), InvalidParameterError);
  b = ModelBounds{1.0, INFINITY, 1.0, 1.0, 0.0, 0.0};
  CHECK_THROWS_AS(lemma_bounds(b, 1.0, 0.5, 1.0), InvalidParameterError);
}
