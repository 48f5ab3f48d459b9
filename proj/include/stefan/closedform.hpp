#pragma once

#include "stefan/thermal.hpp"

namespace stefan {

enum class ClosedFormKind { ConstantFlux, ConstantConvective, LinearConvective };

/// Constants for the explicit special-case solutions. alpha and beta are the
/// heat-capacity and conductivity slopes of the linear model.
struct ClosedFormCase {
  ClosedFormKind kind = ClosedFormKind::ConstantFlux;
  double a = 1.0;
  double nu = 0.5;
  double alpha0 = 1.0;
  double qstar = 0.0;
  double pstar = 0.0;
  double Ste = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  void validate() const;
};

/// Constant coefficients, heat flux: q*α₀^ν/2 · e^{α₀²/a} a^{(1−ν)/2} [γ(s,ξ²/a) − γ(s,η²/a)], s = (1−ν)/2.
double constant_flux_profile(const ClosedFormCase& c, double xi, double eta);

/// φ(ξ) = q*α₀^ν λ₀ e^{−(ξ²−α₀²)/a} / (2 l_m γ_m), the dimensional form.
double constant_flux_matching(const ClosedFormCase& c, const PhysicalParams& physical, double xi);
/// φ(ξ) = q*α₀^ν e^{−(ξ²−α₀²)/a} / M, the form with the reduced Stefan constant.
double constant_flux_matching(const ClosedFormCase& c, double M, double xi);

/// Root of φ(ξ) = ξ^{ν+1}; NoRootError if φ(α₀) <= α₀^{ν+1}.
double constant_flux_front(const ClosedFormCase& c, const PhysicalParams& physical);
double constant_flux_front(const ClosedFormCase& c, double M);

/// Constant coefficients, convective: (1 + p*Ψ(η)) / (1 + p*Ψ(ξ)) with
/// Ψ(η) = α₀^ν/2 · e^{α₀²/a} a^{(1−ν)/2} [γ(s,η²/a) − γ(s,α₀²/a)].
double constant_convective_profile(const ClosedFormCase& c, double xi, double eta);
/// φ_c(ξ) = a α₀^ν p* Ste e^{−(ξ²−α₀²)/a} / (2[1 + p*Ψ(ξ)]).
double constant_convective_matching(const ClosedFormCase& c, double xi);
double constant_convective_front(const ClosedFormCase& c);

/**
 * Linear coefficients, convective, with the kernels frozen at the bound
 * constants (1+α), (1+β), (1+2β):
 *   E(η) = exp(−(1+α)/(a(1+β)) (η²−α₀²))
 *   Ψ(η) = α₀^ν/(2(1+β)) e^{kα₀²} k^{(ν−1)/2} w(α₀,η),  k = (1+α)/(a(1+2β))
 * These are approximations of the nonlinear kernels, not identities.
 */
double linear_convective_profile(const ClosedFormCase& c, double xi, double eta);
double linear_convective_matching(const ClosedFormCase& c, double xi);
double linear_convective_front(const ClosedFormCase& c);

/// Φ of the constant-coefficient problem (includes the α₀^ν factor).
double constant_phi(double a, double nu, double alpha0, double eta);

}  // namespace stefan
