#include "stefan/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "stefan/errors.hpp"

namespace stefan {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidParameterError(std::string(name) + " must be positive and finite, got " + std::to_string(v));
  }
}

void require_nu(double nu) {
  if (!(nu > 0.0 && nu < 1.0)) {
    throw InvalidParameterError("nu must satisfy 0<nu<1, got " + std::to_string(nu));
  }
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double table_eval(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
  const double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
  return ys[i] + t * (ys[i + 1] - ys[i]);
}

// min, max and max |slope| of a clamped piecewise-linear table over [lo, hi].
struct TableStats {
  double lo, hi, lip;
};

TableStats table_stats(const std::vector<double>& xs, const std::vector<double>& ys, double lo, double hi) {
  double vmin = table_eval(xs, ys, lo);
  double vmax = vmin;
  const double vhi = std::isinf(hi) ? ys.back() : table_eval(xs, ys, hi);
  vmin = std::min(vmin, vhi);
  vmax = std::max(vmax, vhi);
  double lip = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] > lo && xs[i] < hi) {
      vmin = std::min(vmin, ys[i]);
      vmax = std::max(vmax, ys[i]);
    }
    if (i + 1 < xs.size() && xs[i + 1] > lo && xs[i] < hi) {
      lip = std::max(lip, std::abs((ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])));
    }
  }
  return {vmin, vmax, lip};
}

}  // namespace

void PhysicalParams::validate() const {
  require_positive(lambda0, "lambda0");
  require_positive(c0, "c0");
  require_positive(rho0, "rho0");
  require_positive(l_m, "l_m");
  require_positive(l_b, "l_b");
  require_positive(gamma_m, "gamma_m");
  require_positive(gamma_b, "gamma_b");
  require_positive(P0, "P0");
  require_positive(theta_m, "theta_m");
  require_nu(nu);
  for (double t : {theta_b, theta_im, theta_star}) {
    if (!std::isfinite(t)) throw InvalidParameterError("temperatures must be finite");
  }
}

CoefficientModel CoefficientModel::constant() { return CoefficientModel(Constant{}); }

CoefficientModel CoefficientModel::linear(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw InvalidParameterError("linear model slopes must be finite");
  }
  return CoefficientModel(Linear{alpha, beta});
}

CoefficientModel CoefficientModel::table(std::vector<double> u, std::vector<double> L, std::vector<double> N) {
  if (u.size() < 2 || u.size() != L.size() || u.size() != N.size()) {
    throw InvalidParameterError("table model needs >= 2 rows and equal-length u, L, N columns");
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i]) || !(L[i] > 0.0) || !(N[i] > 0.0) || !std::isfinite(L[i]) || !std::isfinite(N[i])) {
      throw InvalidParameterError("table model row " + std::to_string(i) + " must have finite u and positive L, N");
    }
    if (i > 0 && !(u[i] > u[i - 1])) {
      throw InvalidParameterError("table model u column must be strictly increasing");
    }
  }
  return CoefficientModel(Table{std::move(u), std::move(L), std::move(N)});
}

CoefficientModel::Kind CoefficientModel::kind() const {
  return std::visit(overloaded{[](const Constant&) { return Kind::Constant; },
                               [](const Linear&) { return Kind::Linear; },
                               [](const Table&) { return Kind::Table; }},
                    impl_);
}

double CoefficientModel::conductivity(double u) const {
  return std::visit(overloaded{[](const Constant&) { return 1.0; },
                               [u](const Linear& m) { return 1.0 + m.beta * u; },
                               [u](const Table& m) { return table_eval(m.u, m.L, u); }},
                    impl_);
}

double CoefficientModel::capacity(double u) const {
  return std::visit(overloaded{[](const Constant&) { return 1.0; },
                               [u](const Linear& m) { return 1.0 + m.alpha * u; },
                               [u](const Table& m) { return table_eval(m.u, m.N, u); }},
                    impl_);
}

ModelBounds CoefficientModel::bounds_on(double u_lo, double u_hi) const {
  if (!(u_hi >= u_lo) || std::isnan(u_lo)) throw InvalidParameterError("bounds_on: need u_lo <= u_hi");
  return std::visit(
      overloaded{[](const Constant&) { return ModelBounds{1.0, 1.0, 1.0, 1.0, 0.0, 0.0}; },
                 [&](const Linear& m) {
                   auto range = [&](double slope) {
                     const double at_lo = 1.0 + slope * u_lo;
                     if (std::isinf(u_hi)) {
                       if (slope > 0.0) return std::pair{at_lo, kInf};
                       if (slope < 0.0) return std::pair{-kInf, at_lo};
                       return std::pair{at_lo, at_lo};
                     }
                     const double at_hi = 1.0 + slope * u_hi;
                     return std::pair{std::min(at_lo, at_hi), std::max(at_lo, at_hi)};
                   };
                   const auto [Lm, LM] = range(m.beta);
                   const auto [Nm, NM] = range(m.alpha);
                   return ModelBounds{Lm, LM, Nm, NM, std::abs(m.beta), std::abs(m.alpha)};
                 },
                 [&](const Table& m) {
                   const auto l = table_stats(m.u, m.L, u_lo, u_hi);
                   const auto n = table_stats(m.u, m.N, u_lo, u_hi);
                   return ModelBounds{l.lo, l.hi, n.lo, n.hi, l.lip, n.lip};
                 }},
      impl_);
}

double CoefficientModel::alpha() const {
  if (const auto* m = std::get_if<Linear>(&impl_)) return m->alpha;
  return 0.0;
}

double CoefficientModel::beta() const {
  if (const auto* m = std::get_if<Linear>(&impl_)) return m->beta;
  return 0.0;
}

void DimensionlessProblem::validate() const {
  require_positive(a, "a");
  require_positive(alpha0, "alpha0");
  require_nu(nu);
  if (bc == BoundaryKind::HeatFlux) {
    require_positive(qstar, "qstar");
    require_positive(M, "M");
  } else {
    require_positive(pstar, "pstar");
    require_positive(Ste, "Ste");
  }
  if (!(u_hi >= u_lo)) throw InvalidParameterError("working range must satisfy u_lo <= u_hi");
  const ModelBounds b = bounds();
  if (!(b.L_m > 0.0) || !(b.N_m > 0.0) || !std::isfinite(b.L_M) || !std::isfinite(b.N_M)) {
    throw InvalidParameterError("coefficient model must be positive and bounded on the working range [" +
                                std::to_string(u_lo) + ", " + std::to_string(u_hi) + "]");
  }
}

double flux_front_upper_estimate(double alpha0, double nu, double qstar, double M, double front_conductivity) {
  return std::pow(qstar * std::pow(alpha0, nu) / (M * front_conductivity), 1.0 / (nu + 1.0));
}

DimensionlessProblem make_flux_problem(double a, double alpha0, double nu, double qstar, double M,
                                       CoefficientModel model) {
  DimensionlessProblem p;
  p.a = a;
  p.alpha0 = alpha0;
  p.nu = nu;
  p.qstar = qstar;
  p.M = M;
  p.model = std::move(model);
  p.bc = BoundaryKind::HeatFlux;
  require_positive(a, "a");
  require_positive(alpha0, "alpha0");
  require_nu(nu);
  require_positive(qstar, "qstar");
  require_positive(M, "M");

  // u = q*[Φ(ξ) − Φ(η)] with E <= 1 and L* >= L_inf on u >= 0.
  const double L_inf = p.model.bounds_on(0.0, kInf).L_m;
  if (!(L_inf > 0.0)) throw InvalidParameterError("conductivity model must stay positive for u >= 0");
  const double xi_ref = std::max(alpha0, flux_front_upper_estimate(alpha0, nu, qstar, M, p.front_conductivity()));
  p.u_lo = 0.0;
  p.u_hi = qstar * std::pow(alpha0, nu) * (std::pow(xi_ref, 1.0 - nu) - std::pow(alpha0, 1.0 - nu)) /
           ((1.0 - nu) * L_inf);
  p.validate();
  return p;
}

DimensionlessProblem make_convective_problem(double a, double alpha0, double nu, double pstar, double Ste,
                                             CoefficientModel model) {
  DimensionlessProblem p;
  p.a = a;
  p.alpha0 = alpha0;
  p.nu = nu;
  p.pstar = pstar;
  p.Ste = Ste;
  p.model = std::move(model);
  p.bc = BoundaryKind::Convective;
  p.u_lo = 0.0;
  p.u_hi = 1.0;
  p.validate();
  return p;
}

DimensionlessProblem reduce_flux(const PhysicalParams& params, const CoefficientModel& model, double alpha0) {
  params.validate();
  require_positive(alpha0, "alpha0");
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const double qstar = params.P0 * std::exp(-alpha0 * alpha0) / (alpha0 * params.theta_m * sqrt_pi);
  // dimensional λ(θ_m) = λ₀ L*(0)
  const double lambda_melt = params.lambda0 * model.conductivity(0.0);
  const double M = 2.0 * params.l_m * params.gamma_m / (params.lambda0 * params.theta_m * lambda_melt);
  DimensionlessProblem p = make_flux_problem(params.diffusivity(), alpha0, params.nu, qstar, M, model);
  p.pstar = params.P0 * std::exp(-alpha0 * alpha0) / (params.lambda0 * sqrt_pi);
  if (params.theta_star != params.theta_m) {
    p.Ste = std::abs(params.theta_m - params.theta_star) * params.c0 / params.l_m;
    p.ste_orientation = params.theta_m > params.theta_star ? SteOrientation::MeltAboveReference
                                                           : SteOrientation::MeltBelowReference;
  }
  return p;
}

DimensionlessProblem reduce_convective(const PhysicalParams& params, const CoefficientModel& model, double alpha0) {
  params.validate();
  require_positive(alpha0, "alpha0");
  if (params.theta_star == params.theta_m) {
    throw InvalidParameterError("theta_star must differ from theta_m for the convective scaling");
  }
  const double q = params.P0 * std::exp(-alpha0 * alpha0);
  const double pstar = q / (params.lambda0 * std::sqrt(std::numbers::pi));
  const double Ste = std::abs(params.theta_m - params.theta_star) * params.c0 / params.l_m;
  DimensionlessProblem p = make_convective_problem(params.diffusivity(), alpha0, params.nu, pstar, Ste, model);
  p.ste_orientation = params.theta_m > params.theta_star ? SteOrientation::MeltAboveReference
                                                         : SteOrientation::MeltBelowReference;
  p.qstar = q / (alpha0 * params.theta_m * std::sqrt(std::numbers::pi));
  return p;
}

double temperature_from_u(double u, BoundaryKind bc, double theta_m, double theta_star) {
  if (bc == BoundaryKind::HeatFlux) return theta_m * (u + 1.0);
  return theta_star + (theta_m - theta_star) * u;
}

double dimensional_temperature(const ProfileFunction& u, const DimensionlessProblem& problem,
                               const PhysicalParams& params, double z, double t) {
  if (!(t > 0.0)) throw DomainError("dimensional_temperature: t must be positive");
  double eta = z / (2.0 * std::sqrt(t));
  const double slack = 1e-12 * std::max(1.0, u.front());
  if (eta < u.start() - slack || eta > u.front() + slack) {
    throw DomainError("dimensional_temperature: eta=" + std::to_string(eta) + " outside the liquid region [" +
                      std::to_string(u.start()) + ", " + std::to_string(u.front()) + "]");
  }
  eta = std::clamp(eta, u.start(), u.front());
  return temperature_from_u(u(eta), problem.bc, params.theta_m, params.theta_star);
}

}  // namespace stefan
