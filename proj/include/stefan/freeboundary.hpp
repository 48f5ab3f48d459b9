#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "stefan/fixedpoint.hpp"
#include "stefan/thermal.hpp"

namespace stefan {

/// Matching function of the flux problem, φ(ξ) = q*α₀^ν E(ξ,u_ξ)/(M L*(0)),
/// where u_ξ is the fixed point for the frozen front ξ.
double phi_flux(double xi, const DimensionlessProblem& problem, const FixedPointConfig& cfg);

/// Matching function of the convective problem,
/// φ^c(ξ) = a α₀^ν p* Ste E(ξ,u_ξ) / (2[1 + p*Φ(ξ,u_ξ)]).
double phi_convective(double xi, const DimensionlessProblem& problem, const FixedPointConfig& cfg);

/// Matching value reconstructed from a converged fixed-point report.
double matching_value(const DimensionlessProblem& problem, const FixedPointReport& report);

/// φ(α₀⁺): the value the matching function takes as ξ → α₀ (E → 1, Φ → 0).
double matching_at_alpha0(const DimensionlessProblem& problem);

/// Envelopes φ₁ <= φ <= φ₂ built from the bounds on E (and on Φ for the
/// convective lower envelope).
double phi_lower_envelope(const DimensionlessProblem& problem, double xi);
double phi_upper_envelope(const DimensionlessProblem& problem, double xi);

struct BracketRoots {
  double xi1 = 0.0;  ///< root of φ₁(ξ) = ξ^{ν+1}
  double xi2 = 0.0;  ///< root of φ₂(ξ) = ξ^{ν+1}
  double xi_star = std::numeric_limits<double>::infinity();
  /// φ₂(ξ*) < ξ*^{ν+1}, i.e. the latent-heat condition; true when ξ* = +inf.
  bool hypothesis_holds = true;
};

/**
 * @brief Roots of φ₁(ξ) = ξ^{ν+1} and φ₂(ξ) = ξ^{ν+1} by bisection.
 *
 * NoRootError if φ(α₀⁺) <= α₀^{ν+1} (the front cannot move ahead of the
 * boiling front). With require_hypothesis, BracketError if φ₂(ξ*) >= ξ*^{ν+1}.
 */
BracketRoots bracket_roots(const DimensionlessProblem& problem, bool require_hypothesis = true);

/// Condensed record of one outer-bisection probe.
struct CandidateTrace {
  double xi;
  double phi;
  double defect;  ///< φ(ξ) − ξ^{ν+1}
  int iterations;
  double epsilon_estimate;
};

struct FrontSolveReport {
  explicit FrontSolveReport(FixedPointReport converged) : solution(std::move(converged)) {}

  double xi = 0.0;
  double defect = 0.0;
  double xi1 = 0.0;
  double xi2 = 0.0;
  double xi_star = std::numeric_limits<double>::infinity();
  std::vector<CandidateTrace> phi_values;       ///< every probe, in evaluation order
  std::vector<CandidateTrace> fixedpoint_reports;  ///< coarse scan over the bracket
  FixedPointReport solution;                    ///< fixed point at the final ξ
  bool admissible = false;       ///< contraction bound at ξ₂ below one
  bool latent_heat_ok = false;   ///< φ₂(ξ*) < ξ*^{ν+1}
  bool monotone_matching = false;  ///< φ non-increasing on the scan
  bool multiplicity_warning = false;  ///< more than one sign change on the scan
  int sign_changes = 0;
};

/**
 * @brief Melt-front coefficient ξ with φ(ξ) = ξ^{ν+1}.
 *
 * Outer bisection over [ξ₁, ξ₂] (heat flux) or (α₀, ξ₂] (convective) with a
 * fresh inner fixed-point solve per probe. Stops once the bracket is below
 * 1e-10 and the defect below 1e-9.
 */
FrontSolveReport solve_front(const DimensionlessProblem& problem, const FixedPointConfig& cfg);

/// Residuals of a solution profile on [α₀, ξ], from finite differences of
/// the nodal values (fourth order; the grid must be uniform).
struct SolutionResiduals {
  double boundary = 0.0;     ///< flux or Robin condition at α₀
  double front_value = 0.0;  ///< |u(ξ) − front value|
  double stefan = 0.0;       ///< gradient condition at ξ
  double ode = 0.0;          ///< sup over interior nodes of the ODE residual
};

SolutionResiduals solution_residuals(const DimensionlessProblem& problem, const ProfileFunction& u);

inline constexpr double kFrontXiTolerance = 1e-10;
inline constexpr double kFrontDefectTolerance = 1e-9;

}  // namespace stefan
