#pragma once

#include <cstddef>

#include "stefan/profile.hpp"
#include "stefan/thermal.hpp"

namespace stefan {

struct ShootingConfig {
  double rk_tol = 1e-11;            ///< absolute and relative step tolerance
  double shoot_tol = 1e-9;          ///< bound on the Stefan-condition defect
  int max_bisect = 200;             ///< cap on bisections over u(α₀)
  std::size_t output_nodes = 257;   ///< nodes of the returned profile

  void validate() const;
};

struct ShootingResult {
  ProfileFunction profile;
  double xi = 0.0;
  double u_at_alpha0 = 0.0;
  double stefan_defect = 0.0;  ///< residual of the gradient condition at ξ
  int bisections = 0;
  /// max over the path of |w e^{I} − w(α₀)| / |w(α₀)|, with w = L*(u)η^ν u'
  /// and I = (2/a)∫ s N*/L* ds; zero for an exact solution of the ODE.
  double ode_residual = 0.0;
};

/// Shooting on u(α₀) with w(α₀) = −q*α₀^ν until u = 0 and u' = −Mξ meet.
ShootingResult shoot_flux(const DimensionlessProblem& problem, const ShootingConfig& cfg = {});

/// Shooting on u(α₀) with w(α₀) = α₀^ν p* u(α₀) until u = 1 and
/// L*(1)u' = 2ξ/(a Ste) meet.
ShootingResult shoot_convective(const DimensionlessProblem& problem, const ShootingConfig& cfg = {});

/// Dispatch on problem.bc.
ShootingResult shoot(const DimensionlessProblem& problem, const ShootingConfig& cfg = {});

}  // namespace stefan
