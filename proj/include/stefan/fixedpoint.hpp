#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "stefan/kernel.hpp"
#include "stefan/profile.hpp"
#include "stefan/thermal.hpp"

namespace stefan {

struct FixedPointConfig {
  double tol = 1e-10;            ///< sup-norm convergence tolerance
  int max_iter = 200;            ///< iteration cap
  std::size_t grid_nodes = 257;  ///< nodes on [α₀, ξ]

  void validate() const;
};

struct FixedPointReport {
  ProfileFunction profile;
  double xi = 0.0;
  int iterations = 0;
  std::vector<double> residual_history;  ///< ‖u_{k+1} − u_k‖ per iteration
  double epsilon_estimate = 0.0;         ///< largest measured ‖Δ_{k+1}‖/‖Δ_k‖ above the noise floor
  double epsilon_bound = 0.0;            ///< analytic contraction constant at ξ
  double xi_star = std::numeric_limits<double>::infinity();
  KernelTable kernels;                   ///< E and Φ of the converged profile
};

/// Heat-flux operator: η ↦ q*[Φ(ξ,u) − Φ(η,u)] on u's grid (which must end at xi).
ProfileFunction apply_W(const ProfileFunction& u, const DimensionlessProblem& problem, double xi);

/// Convective operator: η ↦ (1 + p*Φ(η,u)) / (1 + p*Φ(ξ,u)) on u's grid.
ProfileFunction apply_V(const ProfileFunction& u, const DimensionlessProblem& problem, double xi);

/// W or V according to problem.bc.
ProfileFunction apply_map(const ProfileFunction& u, const DimensionlessProblem& problem, double xi);

/**
 * @brief Picard iteration u_{k+1} = W(u_k) (or V) for a frozen front ξ.
 *
 * Starts from u ≡ 0 (heat flux) or u ≡ 1 (convective), both of which match
 * the front value exactly. Throws NonConvergenceError after max_iter.
 */
FixedPointReport solve_fixed_point(const DimensionlessProblem& problem, double xi, const FixedPointConfig& cfg);

/// Analytic contraction constant at z: ε = 2q*Φ̃(α₀,z) for heat flux,
/// ε̂ = Φ̃(α₀,z)/(1 + p*·Φ_hi(z)) for the convective operator.
double contraction_bound(const DimensionlessProblem& problem, double z);

/// Upper end of the search interval used for ξ*.
double xi_search_limit(const DimensionlessProblem& problem);

/// Root of contraction_bound(z) = 1 on (α₀, z_max]; +inf if the bound stays below one.
double xi_star(const DimensionlessProblem& problem);

}  // namespace stefan
