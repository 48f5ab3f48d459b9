#include "stefan/kernel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "stefan/errors.hpp"
#include "stefan/specfun.hpp"

namespace stefan {
namespace {

using Quadrature = boost::math::quadrature::gauss_kronrod<double, 15>;

constexpr unsigned kMaxDepth = 12;
constexpr double kRelativeTarget = 1e-14;

std::string fmt_sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

// One Gauss–Kronrod rule per leaf, bisected until the leaf error fits its share
// of the budget. The library reports the leaf error on the reference interval
// [-1, 1], so it is rescaled by the half-width here.
template <class F>
Estimate adaptive(F& f, double lo, double hi, double budget, unsigned depth) {
  Estimate e;
  double l1 = 0.0;
  e.value = Quadrature::integrate(f, lo, hi, 0, 0.0, &e.error, &l1);
  const double half = 0.5 * (hi - lo);
  e.error *= half;
  e.l1 = l1;
  const double target = std::max(budget, kRelativeTarget * e.l1);
  if (depth == 0 || e.error <= target || !std::isfinite(e.value)) return e;
  const double mid = lo + half;
  const Estimate left = adaptive(f, lo, mid, 0.5 * budget, depth - 1);
  const Estimate right = adaptive(f, mid, hi, 0.5 * budget, depth - 1);
  return {left.value + right.value, left.error + right.error, left.l1 + right.l1};
}

template <class F>
double integrate_checked(F&& f, double lo, double hi, double abs_budget, const char* what) {
  if (hi == lo) return 0.0;
  const Estimate e = adaptive(f, lo, hi, abs_budget, kMaxDepth);
  if (!std::isfinite(e.value) || e.error > std::max(abs_budget, 64.0 * kRelativeTarget * e.l1)) {
    throw QuadratureError(std::string(what) + ": tolerance not met on [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "], error estimate " + fmt_sci(e.error) + ", value " +
                          fmt_sci(e.value));
  }
  return e.value;
}

// Cumulative evaluation of the inner integral G(η) = ∫ s N*/L* ds and of Φ
// panel by panel, so E inside the Φ integrand only needs a sub-panel integral.
class KernelSweep {
 public:
  KernelSweep(const ProfileFunction& u, const CoefficientModel& model, double a, double nu, double alpha0)
      : u_(u), model_(model), a_(a), nu_(nu), scale_(std::pow(alpha0, nu)), span_(u.front() - u.start()) {
    if (!(a > 0.0)) throw InvalidParameterError("kernel: a must be positive");
    if (!(nu > 0.0 && nu < 1.0)) throw InvalidParameterError("kernel: nu must satisfy 0<nu<1");
    if (!(alpha0 > 0.0)) throw InvalidParameterError("kernel: alpha0 must be positive");
    if (std::abs(alpha0 - u.start()) > 1e-12 * std::max(1.0, alpha0)) {
      throw InvalidParameterError("kernel: profile grid must start at alpha0");
    }
  }

  double g(double s) const {
    const double v = u_(s);
    return s * model_.capacity(v) / model_.conductivity(v);
  }

  double inner(double lo, double hi) const {
    const double budget = 0.5 * a_ * kKernelETolerance * (hi - lo) / span_;
    return integrate_checked([this](double s) { return g(s); }, lo, hi, budget, "kernel_E");
  }

  // Φ increment over [lo, hi] ⊂ one panel whose inner integral starts at g_lo.
  double phi_increment(double lo, double hi, double g_lo) const {
    auto f = [&](double v) {
      const double e = std::exp(-2.0 / a_ * (g_lo + inner(lo, v)));
      return e / (std::pow(v, nu_) * model_.conductivity(u_(v)));
    };
    const double budget = kKernelPhiTolerance * (hi - lo) / (span_ * scale_);
    return scale_ * integrate_checked(f, lo, hi, budget, "kernel_Phi");
  }

  double E_from(double g_value) const { return std::exp(-2.0 / a_ * g_value); }

  const ProfileFunction& profile() const { return u_; }

 private:
  const ProfileFunction& u_;
  const CoefficientModel& model_;
  double a_, nu_, scale_, span_;
};

struct PointValue {
  double G;
  double Phi;
};

PointValue sweep_to(const KernelSweep& sweep, double eta, bool want_phi) {
  const auto& u = sweep.profile();
  const auto grid = u.grid();
  const std::size_t panel = u.interval(eta);
  eta = std::clamp(eta, u.start(), u.front());
  double G = 0.0;
  double Phi = 0.0;
  for (std::size_t i = 0; i < panel; ++i) {
    if (want_phi) Phi += sweep.phi_increment(grid[i], grid[i + 1], G);
    G += sweep.inner(grid[i], grid[i + 1]);
  }
  if (eta > grid[panel]) {
    if (want_phi) Phi += sweep.phi_increment(grid[panel], eta, G);
    G += sweep.inner(grid[panel], eta);
  }
  return {G, Phi};
}

}  // namespace

KernelTable evaluate_kernels(const ProfileFunction& u, const CoefficientModel& model, double a, double nu,
                             double alpha0) {
  const KernelSweep sweep(u, model, a, nu, alpha0);
  const auto grid = u.grid();
  const std::size_t n = grid.size();
  KernelTable table;
  table.eta.assign(grid.begin(), grid.end());
  table.E.assign(n, 1.0);
  table.Phi.assign(n, 0.0);
  double G = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    table.Phi[i + 1] = table.Phi[i] + sweep.phi_increment(grid[i], grid[i + 1], G);
    G += sweep.inner(grid[i], grid[i + 1]);
    table.E[i + 1] = sweep.E_from(G);
  }
  return table;
}

double kernel_E(const ProfileFunction& u, const CoefficientModel& model, double a, double eta) {
  // ν and the α₀^ν scale do not enter E.
  const KernelSweep sweep(u, model, a, 0.5, u.start());
  return sweep.E_from(sweep_to(sweep, eta, false).G);
}

double kernel_Phi(const ProfileFunction& u, const CoefficientModel& model, double a, double nu, double alpha0,
                  double eta) {
  const KernelSweep sweep(u, model, a, nu, alpha0);
  return sweep_to(sweep, eta, true).Phi;
}

KernelBounds::KernelBounds(const ModelBounds& bounds, double a, double nu, double alpha0)
    : bounds_(bounds), a_(a), nu_(nu), alpha0_(alpha0) {
  if (!(bounds.L_m > 0.0) || !(bounds.N_m > 0.0) || !std::isfinite(bounds.L_M) || !std::isfinite(bounds.N_M) ||
      bounds.L_M < bounds.L_m || bounds.N_M < bounds.N_m || bounds.Lbar < 0.0 || bounds.Nbar < 0.0) {
    throw InvalidParameterError("lemma_bounds: model bounds must be finite, positive and ordered");
  }
  if (!(a > 0.0) || !(nu > 0.0 && nu < 1.0) || !(alpha0 > 0.0)) {
    throw InvalidParameterError("lemma_bounds: need a > 0, 0 < nu < 1, alpha0 > 0");
  }
}

double KernelBounds::E_lo(double eta) const {
  return std::exp(-bounds_.N_M / (a_ * bounds_.L_m) * (eta * eta - alpha0_ * alpha0_));
}

double KernelBounds::E_hi(double eta) const {
  return std::exp(-bounds_.N_m / (a_ * bounds_.L_M) * (eta * eta - alpha0_ * alpha0_));
}

double KernelBounds::phi_envelope(double L, double k, double eta) const {
  const double s = 0.5 * (1.0 - nu_);
  const double a2 = alpha0_ * alpha0_;
  const double bracket = lower_incomplete_gamma(s, k * eta * eta) - lower_incomplete_gamma(s, k * a2);
  return std::pow(alpha0_, nu_) / (2.0 * L) * std::exp(k * a2) * std::pow(k, -s) * bracket;
}

double KernelBounds::Phi_lo(double eta) const {
  return phi_envelope(bounds_.L_M, bounds_.N_M / (a_ * bounds_.L_m), eta);
}

double KernelBounds::Phi_hi(double eta) const {
  return phi_envelope(bounds_.L_m, bounds_.N_m / (a_ * bounds_.L_M), eta);
}

double KernelBounds::E_lipschitz(double eta) const {
  const auto& b = bounds_;
  return (b.Nbar + b.N_M * b.Lbar / b.L_m) / (a_ * b.L_m) * (eta * eta - alpha0_ * alpha0_);
}

double KernelBounds::PhiTilde(double eta) const {
  const auto& b = bounds_;
  const double nu = nu_;
  const double a0 = alpha0_;
  const double poly = std::pow(eta, 3.0 - nu) / (3.0 - nu) - a0 * a0 * std::pow(eta, 1.0 - nu) / (1.0 - nu) +
                      2.0 * std::pow(a0, 3.0 - nu) / ((3.0 - nu) * (1.0 - nu));
  const double lip_E = (b.Nbar + b.N_M * b.Lbar / b.L_m) / a_;
  const double lip_L = b.Lbar * (std::pow(eta, 1.0 - nu) - std::pow(a0, 1.0 - nu)) / (1.0 - nu);
  return std::pow(a0, nu) / (b.L_m * b.L_m) * (lip_E * poly + lip_L);
}

KernelBounds lemma_bounds(const ModelBounds& bounds, double a, double nu, double alpha0) {
  return KernelBounds(bounds, a, nu, alpha0);
}

}  // namespace stefan
