#include "stefan/vapor.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "stefan/errors.hpp"

namespace stefan {

VaporSolution solve_alpha0(double D, double E) {
  if (!std::isfinite(D) || !std::isfinite(E)) throw InvalidParameterError("vapor quadratic coefficients must be finite");
  const double disc = D * D - 4.0 * E;
  if (disc < 0.0) {
    throw NoRootError("vapor quadratic has no real root (D^2 - 4E = " + std::to_string(disc) + ")");
  }
  // Cancellation-free pair of roots.
  const double q = -0.5 * (D + std::copysign(std::sqrt(disc), D == 0.0 ? 1.0 : D));
  double r1 = q;
  double r2 = q != 0.0 ? E / q : 0.0;
  if (r1 > r2) std::swap(r1, r2);

  VaporSolution sol;
  sol.D = D;
  sol.E = E;
  if (r2 <= 0.0) throw NoRootError("vapor quadratic has no positive root");
  if (r1 > 0.0) {
    sol.alpha0 = r1;
    sol.other_root = r2;
    sol.ambiguous = r1 != r2;
  } else {
    sol.alpha0 = r2;
    sol.other_root = r1;
  }
  return sol;
}

VaporSolution solve_alpha0(const PhysicalParams& params) {
  params.validate();
  const double lg = params.l_b * params.gamma_b;
  const double D = -params.P0 / (2.0 * lg * std::sqrt(std::numbers::pi));
  const double E = -params.lambda0 * (params.theta_b - params.theta_im) / lg;
  VaporSolution sol = solve_alpha0(D, E);
  sol.A_scaled = (params.theta_b - params.theta_im) / (4.0 * sol.alpha0 * sol.alpha0);
  sol.B = 0.0;
  sol.C = params.theta_im;
  return sol;
}

double vapor_temperature(const VaporSolution& sol, const PhysicalParams& params, double z, double t) {
  if (!(t > 0.0)) throw DomainError("vapor_temperature: t must be positive");
  const double front = 2.0 * sol.alpha0 * std::sqrt(t);
  if (z < 0.0 || z > front * (1.0 + 1e-14)) {
    throw DomainError("vapor_temperature: z=" + std::to_string(z) + " outside the vapor zone [0, " +
                      std::to_string(front) + "]");
  }
  if (z >= front) return params.theta_b;
  const double r = z / front;
  return r * r * (params.theta_b - params.theta_im) + params.theta_im;
}

double vapor_flux_balance_residual(const VaporSolution& sol, const PhysicalParams& params, double t) {
  if (!(t > 0.0)) throw DomainError("vapor_flux_balance_residual: t must be positive");
  const double sqrt_t = std::sqrt(t);
  const double front = 2.0 * sol.alpha0 * sqrt_t;
  const double A = sol.A_scaled / t;
  const double gradient = 2.0 * A * front + sol.B;
  const double front_speed = sol.alpha0 / sqrt_t;
  return -params.lambda0 * gradient - params.P0 / (2.0 * std::sqrt(std::numbers::pi * t)) +
         params.l_b * params.gamma_b * front_speed;
}

}  // namespace stefan
