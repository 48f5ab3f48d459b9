#include "stefan/closedform.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <string>

#include "stefan/errors.hpp"
#include "stefan/specfun.hpp"

namespace stefan {
namespace {

constexpr double kFrontTolerance = 1e-10;

void require_kind(const ClosedFormCase& c, ClosedFormKind kind, const char* what) {
  c.validate();
  if (c.kind != kind) throw InvalidParameterError(std::string(what) + ": wrong closed-form case kind");
}

void require_span(const ClosedFormCase& c, double xi, double eta, const char* what) {
  if (!(xi > c.alpha0)) throw DomainError(std::string(what) + ": xi must exceed alpha0");
  if (eta < c.alpha0 || eta > xi) {
    throw DomainError(std::string(what) + ": eta=" + std::to_string(eta) + " outside [alpha0, xi]");
  }
}

double gamma_difference(double s, double k, double lo, double hi) {
  return lower_incomplete_gamma(s, k * hi * hi) - lower_incomplete_gamma(s, k * lo * lo);
}

// α₀^ν/(2L) e^{kα₀²} k^{(ν−1)/2} [γ(s,kη²) − γ(s,kα₀²)]
double frozen_phi(double nu, double alpha0, double L, double k, double eta) {
  const double s = 0.5 * (1.0 - nu);
  return std::pow(alpha0, nu) / (2.0 * L) * std::exp(k * alpha0 * alpha0) * std::pow(k, -s) *
         gamma_difference(s, k, alpha0, eta);
}

double linear_phi(const ClosedFormCase& c, double eta) {
  return frozen_phi(c.nu, c.alpha0, 1.0 + c.beta, (1.0 + c.alpha) / (c.a * (1.0 + 2.0 * c.beta)), eta);
}

// Unique crossing of a decreasing φ with ξ^{ν+1} above α₀.
template <class Phi>
double front_root(const ClosedFormCase& c, Phi phi) {
  auto defect = [&](double xi) { return phi(xi) - std::pow(xi, c.nu + 1.0); };
  const double lo = c.alpha0;
  if (!(defect(lo) > 0.0)) {
    throw NoRootError("closed form: phi(alpha0) <= alpha0^(nu+1), no melt front beyond alpha0");
  }
  double hi = 2.0 * lo;
  for (int i = 0; defect(hi) > 0.0; ++i) {
    if (i > 200) throw NoRootError("closed form: matching function never crosses xi^(nu+1)");
    hi *= 2.0;
  }
  const auto r = boost::math::tools::bisect(defect, lo, hi,
                                            [](double a, double b) { return std::abs(b - a) <= 0.5 * kFrontTolerance; });
  return 0.5 * (r.first + r.second);
}

}  // namespace

void ClosedFormCase::validate() const {
  if (!(a > 0.0)) throw InvalidParameterError("closed form: a must be positive");
  if (!(nu > 0.0 && nu < 1.0)) throw InvalidParameterError("closed form: nu must satisfy 0<nu<1");
  if (!(alpha0 > 0.0)) throw InvalidParameterError("closed form: alpha0 must be positive");
  if (alpha < 0.0 || beta < 0.0) throw InvalidParameterError("closed form: alpha, beta must be >= 0");
  if (kind != ClosedFormKind::LinearConvective && (alpha != 0.0 || beta != 0.0)) {
    throw InvalidParameterError("closed form: alpha, beta only apply to the linear case");
  }
  if (kind == ClosedFormKind::ConstantFlux) {
    if (!(qstar > 0.0)) throw InvalidParameterError("closed form: qstar must be positive");
  } else {
    if (!(pstar > 0.0)) throw InvalidParameterError("closed form: pstar must be positive");
    if (!(Ste > 0.0)) throw InvalidParameterError("closed form: Ste must be positive");
  }
}

double constant_phi(double a, double nu, double alpha0, double eta) {
  return frozen_phi(nu, alpha0, 1.0, 1.0 / a, eta);
}

double constant_flux_profile(const ClosedFormCase& c, double xi, double eta) {
  require_kind(c, ClosedFormKind::ConstantFlux, "constant_flux_profile");
  require_span(c, xi, eta, "constant_flux_profile");
  if (eta == xi) return 0.0;
  const double s = 0.5 * (1.0 - c.nu);
  return 0.5 * c.qstar * std::pow(c.alpha0, c.nu) * std::exp(c.alpha0 * c.alpha0 / c.a) * std::pow(c.a, s) *
         gamma_difference(s, 1.0 / c.a, eta, xi);
}

double constant_flux_matching(const ClosedFormCase& c, const PhysicalParams& physical, double xi) {
  require_kind(c, ClosedFormKind::ConstantFlux, "constant_flux_matching");
  return c.qstar * std::pow(c.alpha0, c.nu) * physical.lambda0 *
         std::exp(-(xi * xi - c.alpha0 * c.alpha0) / c.a) / (2.0 * physical.l_m * physical.gamma_m);
}

double constant_flux_matching(const ClosedFormCase& c, double M, double xi) {
  require_kind(c, ClosedFormKind::ConstantFlux, "constant_flux_matching");
  if (!(M > 0.0)) throw InvalidParameterError("constant_flux_matching: M must be positive");
  return c.qstar * std::pow(c.alpha0, c.nu) * std::exp(-(xi * xi - c.alpha0 * c.alpha0) / c.a) / M;
}

double constant_flux_front(const ClosedFormCase& c, const PhysicalParams& physical) {
  physical.validate();
  return front_root(c, [&](double xi) { return constant_flux_matching(c, physical, xi); });
}

double constant_flux_front(const ClosedFormCase& c, double M) {
  return front_root(c, [&](double xi) { return constant_flux_matching(c, M, xi); });
}

double constant_convective_profile(const ClosedFormCase& c, double xi, double eta) {
  require_kind(c, ClosedFormKind::ConstantConvective, "constant_convective_profile");
  require_span(c, xi, eta, "constant_convective_profile");
  if (eta == xi) return 1.0;
  return (1.0 + c.pstar * constant_phi(c.a, c.nu, c.alpha0, eta)) /
         (1.0 + c.pstar * constant_phi(c.a, c.nu, c.alpha0, xi));
}

double constant_convective_matching(const ClosedFormCase& c, double xi) {
  require_kind(c, ClosedFormKind::ConstantConvective, "constant_convective_matching");
  const double E = std::exp(-(xi * xi - c.alpha0 * c.alpha0) / c.a);
  return c.a * std::pow(c.alpha0, c.nu) * c.pstar * c.Ste * E /
         (2.0 * (1.0 + c.pstar * constant_phi(c.a, c.nu, c.alpha0, xi)));
}

double constant_convective_front(const ClosedFormCase& c) {
  return front_root(c, [&](double xi) { return constant_convective_matching(c, xi); });
}

double linear_convective_profile(const ClosedFormCase& c, double xi, double eta) {
  require_kind(c, ClosedFormKind::LinearConvective, "linear_convective_profile");
  require_span(c, xi, eta, "linear_convective_profile");
  if (eta == xi) return 1.0;
  return (1.0 + c.pstar * linear_phi(c, eta)) / (1.0 + c.pstar * linear_phi(c, xi));
}

double linear_convective_matching(const ClosedFormCase& c, double xi) {
  require_kind(c, ClosedFormKind::LinearConvective, "linear_convective_matching");
  const double E = std::exp(-(1.0 + c.alpha) / (c.a * (1.0 + c.beta)) * (xi * xi - c.alpha0 * c.alpha0));
  return c.a * std::pow(c.alpha0, c.nu) * c.pstar * c.Ste * E / (2.0 * (1.0 + c.pstar * linear_phi(c, xi)));
}

double linear_convective_front(const ClosedFormCase& c) {
  return front_root(c, [&](double xi) { return linear_convective_matching(c, xi); });
}

}  // namespace stefan
