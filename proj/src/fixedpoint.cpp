#include "stefan/fixedpoint.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <string>

#include "stefan/errors.hpp"

namespace stefan {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_operator_input(const ProfileFunction& u, const DimensionlessProblem& problem, double xi,
                          BoundaryKind expected, const char* name) {
  if (problem.bc != expected) {
    throw InvalidParameterError(std::string(name) + ": problem has the wrong boundary kind");
  }
  if (!(xi > problem.alpha0)) throw InvalidParameterError(std::string(name) + ": xi must exceed alpha0");
  const double slack = 1e-12 * std::max(1.0, xi);
  if (std::abs(u.front() - xi) > slack || std::abs(u.start() - problem.alpha0) > slack) {
    throw InvalidParameterError(std::string(name) + ": profile grid must span [alpha0, xi]");
  }
}

KernelTable kernels_of(const ProfileFunction& u, const DimensionlessProblem& p) {
  return evaluate_kernels(u, p.model, p.a, p.nu, p.alpha0);
}

ProfileFunction W_from(const ProfileFunction& u, const DimensionlessProblem& p, const KernelTable& k) {
  const std::size_t n = k.Phi.size();
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = p.qstar * (k.Phi[n - 1] - k.Phi[i]);
  values[n - 1] = 0.0;
  return ProfileFunction(std::vector<double>(u.grid().begin(), u.grid().end()), std::move(values));
}

ProfileFunction V_from(const ProfileFunction& u, const DimensionlessProblem& p, const KernelTable& k) {
  const std::size_t n = k.Phi.size();
  const double denom = 1.0 + p.pstar * k.Phi[n - 1];
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = (1.0 + p.pstar * k.Phi[i]) / denom;
  values[n - 1] = 1.0;
  return ProfileFunction(std::vector<double>(u.grid().begin(), u.grid().end()), std::move(values));
}

}  // namespace

void FixedPointConfig::validate() const {
  if (!(tol > 0.0)) throw InvalidParameterError("solver tol must be positive");
  if (max_iter < 1) throw InvalidParameterError("solver max_iter must be >= 1");
  if (grid_nodes < ProfileFunction::kMinNodes) {
    throw InvalidParameterError("solver grid_nodes must be >= " + std::to_string(ProfileFunction::kMinNodes));
  }
}

ProfileFunction apply_W(const ProfileFunction& u, const DimensionlessProblem& problem, double xi) {
  check_operator_input(u, problem, xi, BoundaryKind::HeatFlux, "apply_W");
  return W_from(u, problem, kernels_of(u, problem));
}

ProfileFunction apply_V(const ProfileFunction& u, const DimensionlessProblem& problem, double xi) {
  check_operator_input(u, problem, xi, BoundaryKind::Convective, "apply_V");
  return V_from(u, problem, kernels_of(u, problem));
}

ProfileFunction apply_map(const ProfileFunction& u, const DimensionlessProblem& problem, double xi) {
  return problem.bc == BoundaryKind::HeatFlux ? apply_W(u, problem, xi) : apply_V(u, problem, xi);
}

FixedPointReport solve_fixed_point(const DimensionlessProblem& problem, double xi, const FixedPointConfig& cfg) {
  problem.validate();
  cfg.validate();
  if (!(xi > problem.alpha0) || !std::isfinite(xi)) {
    throw InvalidParameterError("solve_fixed_point: xi must be finite and exceed alpha0");
  }

  ProfileFunction u = ProfileFunction::constant(problem.alpha0, xi, cfg.grid_nodes, problem.front_value());
  FixedPointReport report{.profile = u, .xi = xi, .residual_history = {}, .kernels = {}};
  // Ratios measured below this level are dominated by quadrature noise.
  const double noise_floor = std::max(100.0 * cfg.tol, 1e-12);

  bool converged = false;
  for (int k = 0; k < cfg.max_iter; ++k) {
    ProfileFunction next = apply_map(u, problem, xi);
    const double delta = sup_distance(next, u);
    report.residual_history.push_back(delta);
    report.iterations = k + 1;
    const auto& h = report.residual_history;
    if (h.size() >= 2 && h[h.size() - 2] > noise_floor) {
      report.epsilon_estimate = std::max(report.epsilon_estimate, delta / h[h.size() - 2]);
    }
    u = std::move(next);
    if (!std::isfinite(delta)) break;
    if (delta <= cfg.tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    const auto& h = report.residual_history;
    const double last_ratio = h.size() >= 2 && h[h.size() - 2] > 0.0 ? h.back() / h[h.size() - 2] : 0.0;
    throw NonConvergenceError("fixed point did not converge in " + std::to_string(cfg.max_iter) +
                                  " iterations at xi=" + std::to_string(xi) + " (last residual " +
                                  std::to_string(h.back()) + ", measured ratio " + std::to_string(last_ratio) + ")",
                              std::max(report.epsilon_estimate, last_ratio));
  }
  report.kernels = kernels_of(u, problem);
  report.profile = std::move(u);
  report.epsilon_bound = contraction_bound(problem, xi);
  report.xi_star = xi_star(problem);
  return report;
}

double contraction_bound(const DimensionlessProblem& problem, double z) {
  const KernelBounds kb = lemma_bounds(problem.bounds(), problem.a, problem.nu, problem.alpha0);
  if (problem.bc == BoundaryKind::HeatFlux) return 2.0 * problem.qstar * kb.PhiTilde(z);
  return kb.PhiTilde(z) / (1.0 + problem.pstar * kb.Phi_hi(z));
}

double xi_search_limit(const DimensionlessProblem& problem) {
  const double a0 = problem.alpha0;
  double estimate = 0.0;
  if (problem.bc == BoundaryKind::HeatFlux) {
    estimate = flux_front_upper_estimate(a0, problem.nu, problem.qstar, problem.M, problem.front_conductivity());
  } else {
    estimate = std::pow(0.5 * problem.a * std::pow(a0, problem.nu) * problem.pstar * problem.Ste,
                        1.0 / (problem.nu + 1.0));
  }
  return 4.0 * std::max(a0, estimate);
}

double xi_star(const DimensionlessProblem& problem) {
  const double lo = problem.alpha0;
  const double hi = xi_search_limit(problem);
  auto defect = [&](double z) { return contraction_bound(problem, z) - 1.0; };
  if (defect(hi) < 0.0) return kInf;

  // First crossing on a coarse scan, then bisection inside that cell.
  constexpr int kScan = 256;
  double left = lo;
  for (int i = 1; i <= kScan; ++i) {
    const double z = lo + (hi - lo) * i / kScan;
    if (defect(z) >= 0.0) {
      const auto r = boost::math::tools::bisect(defect, left, z,
                                                [](double a, double b) { return std::abs(b - a) <= 1e-10; });
      return 0.5 * (r.first + r.second);
    }
    left = z;
  }
  return kInf;
}

}  // namespace stefan
