#pragma once

#include "stefan/thermal.hpp"

namespace stefan {

/**
 * @brief Vapor zone θ₁(z,t) = A z² + B z + C on 0 < z < 2α₀√t.
 *
 * A is stored time-scaled (A·t), since A = (θ_b − θ_im)/(4α₀² t).
 * D and E are the coefficients of the quadratic α₀² + Dα₀ + E = 0 obtained
 * from the heat balance at the boiling front.
 */
struct VaporSolution {
  double alpha0 = 0.0;
  double A_scaled = 0.0;  ///< A·t [K]
  double B = 0.0;
  double C = 0.0;  ///< θ_im
  double D = 0.0;
  double E = 0.0;
  bool ambiguous = false;   ///< both roots positive; the smaller one was taken
  double other_root = 0.0;  ///< the root not selected
};

/// Root selection for α₀² + Dα₀ + E = 0: the unique positive root, or the
/// smaller of two positive roots (flagged). NoRootError otherwise.
/// A, B, C are left at zero; only alpha0, D, E and the flags are set.
VaporSolution solve_alpha0(double D, double E);

/// Boiling-front coefficient from the dimensional constants.
/// D = −P₀/(2 l_b γ_b √π), E = −λ₀(θ_b − θ_im)/(l_b γ_b).
VaporSolution solve_alpha0(const PhysicalParams& params);

/// θ₁(z,t); DomainError unless t > 0 and 0 <= z <= 2α₀√t.
double vapor_temperature(const VaporSolution& sol, const PhysicalParams& params, double z, double t);

/// −λ₀∂θ₁/∂z − P₀/(2√(πt)) + l_b γ_b dα/dt at z = α(t); zero when α₀ is exact.
double vapor_flux_balance_residual(const VaporSolution& sol, const PhysicalParams& params, double t);

}  // namespace stefan
