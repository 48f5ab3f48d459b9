#pragma once

#include <variant>
#include <vector>

#include "stefan/profile.hpp"

namespace stefan {

/// Dimensional material and process constants (SI units, temperatures in K).
struct PhysicalParams {
  double lambda0 = 1.0;     ///< reference thermal conductivity [W/(m K)]
  double c0 = 1.0;          ///< reference specific heat [J/(kg K)]
  double rho0 = 1.0;        ///< reference density [kg/m^3]
  double theta_m = 1.0;     ///< melting temperature
  double theta_b = 1.0;     ///< boiling temperature
  double theta_im = 1.0;    ///< ionization temperature
  double theta_star = 0.0;  ///< reference bulk temperature (convective condition)
  double l_m = 1.0;         ///< latent heat of melting [J/kg]
  double l_b = 1.0;         ///< latent heat of boiling [J/kg]
  double gamma_m = 1.0;     ///< density at melting [kg/m^3]
  double gamma_b = 1.0;     ///< density at boiling [kg/m^3]
  double P0 = 1.0;          ///< arc power constant
  double nu = 0.5;          ///< cross-section exponent, 0 < nu < 1

  /// Throws InvalidParameterError naming the first violated constraint.
  void validate() const;
  double diffusivity() const { return lambda0 / (c0 * rho0); }
};

/// Bounds and Lipschitz constants of (L*, N*) on a working range of u.
struct ModelBounds {
  double L_m, L_M;  ///< L_m <= L*(u) <= L_M
  double N_m, N_M;  ///< N_m <= N*(u) <= N_M
  double Lbar;      ///< Lipschitz constant of L*
  double Nbar;      ///< Lipschitz constant of N*
};

/**
 * @brief Dimensionless conductivity L*(u) and volumetric heat capacity N*(u).
 *
 * Three shapes are supported: constant (L* = N* = 1), linear
 * (L* = 1 + βu, N* = 1 + αu) and a tabulated model with piecewise-linear
 * interpolation and constant extrapolation.
 */
class CoefficientModel {
 public:
  enum class Kind { Constant, Linear, Table };

  static CoefficientModel constant();
  /// alpha is the heat-capacity slope, beta the conductivity slope.
  static CoefficientModel linear(double alpha, double beta);
  static CoefficientModel table(std::vector<double> u, std::vector<double> L, std::vector<double> N);

  Kind kind() const;
  double conductivity(double u) const;  // L*
  double capacity(double u) const;      // N*

  /// Bounds over [u_lo, u_hi]; u_hi may be +inf (then L_M/N_M may be +inf).
  ModelBounds bounds_on(double u_lo, double u_hi) const;

  /// Linear-model slopes; zero for other kinds.
  double alpha() const;
  double beta() const;

 private:
  struct Constant {};
  struct Linear {
    double alpha, beta;
  };
  struct Table {
    std::vector<double> u, L, N;
  };
  explicit CoefficientModel(std::variant<Constant, Linear, Table> impl) : impl_(std::move(impl)) {}

  std::variant<Constant, Linear, Table> impl_;
};

enum class BoundaryKind { HeatFlux, Convective };

/// Orientation of θ_m relative to θ* when the Stefan number is formed.
enum class SteOrientation { MeltAboveReference, MeltBelowReference };

/**
 * @brief Reduced problem on α₀ < η < ξ.
 *
 * Heat flux: L*(u(α₀))u'(α₀) = −q*, u(ξ) = 0, u'(ξ) = −Mξ.
 * Convective: L*(u(α₀))u'(α₀) = p*u(α₀), u(ξ) = 1, L*(1)u'(ξ) = 2ξ/(a Ste).
 * Fields not used by the selected boundary kind are left at zero.
 */
struct DimensionlessProblem {
  double a = 1.0;
  double alpha0 = 1.0;
  double nu = 0.5;
  double qstar = 0.0;
  double pstar = 0.0;
  double M = 0.0;
  double Ste = 0.0;
  CoefficientModel model = CoefficientModel::constant();
  BoundaryKind bc = BoundaryKind::HeatFlux;
  /// Range of u over which model bounds are taken.
  double u_lo = 0.0;
  double u_hi = 1.0;
  SteOrientation ste_orientation = SteOrientation::MeltAboveReference;

  void validate() const;
  ModelBounds bounds() const { return model.bounds_on(u_lo, u_hi); }
  /// u at the melting front: 0 (heat flux) or 1 (convective).
  double front_value() const { return bc == BoundaryKind::HeatFlux ? 0.0 : 1.0; }
  /// L* evaluated at the melting front.
  double front_conductivity() const { return model.conductivity(front_value()); }
};

/// Heat-flux problem from reduced constants; derives the working range of u.
DimensionlessProblem make_flux_problem(double a, double alpha0, double nu, double qstar, double M,
                                       CoefficientModel model);
DimensionlessProblem make_convective_problem(double a, double alpha0, double nu, double pstar, double Ste,
                                             CoefficientModel model);

/// Upper estimate of the melt-front coefficient for the heat-flux problem,
/// (q*α₀^ν / (M L*(0)))^{1/(ν+1)}, valid because E <= 1.
double flux_front_upper_estimate(double alpha0, double nu, double qstar, double M, double front_conductivity);

DimensionlessProblem reduce_flux(const PhysicalParams& params, const CoefficientModel& model, double alpha0);
DimensionlessProblem reduce_convective(const PhysicalParams& params, const CoefficientModel& model, double alpha0);

/// θ at (z, t) from a profile on [α₀, ξ]; DomainError if z/(2√t) leaves it.
double dimensional_temperature(const ProfileFunction& u, const DimensionlessProblem& problem,
                               const PhysicalParams& params, double z, double t);

/// θ as a function of the similarity variable only.
double temperature_from_u(double u, BoundaryKind bc, double theta_m, double theta_star);

}  // namespace stefan
