#include "stefan/freeboundary.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>

#include "stefan/errors.hpp"

namespace stefan {
namespace {

constexpr int kScanPoints = 16;

double power_side(const DimensionlessProblem& p, double xi) { return std::pow(xi, p.nu + 1.0); }

KernelBounds bounds_of(const DimensionlessProblem& p) {
  return lemma_bounds(p.bounds(), p.a, p.nu, p.alpha0);
}

// Root of env(ξ) = ξ^{ν+1} for a decreasing envelope with env(α₀) = C > α₀^{ν+1}.
template <class Envelope>
double envelope_root(const DimensionlessProblem& p, Envelope env) {
  auto defect = [&](double xi) { return env(xi) - power_side(p, xi); };
  const double lo = p.alpha0;
  // env <= C everywhere, so the defect is non-positive at C^{1/(ν+1)}.
  double hi = std::max(lo, std::pow(matching_at_alpha0(p), 1.0 / (p.nu + 1.0)));
  if (defect(hi) >= 0.0) return hi;
  const auto r = boost::math::tools::bisect(
      defect, lo, hi, [](double a, double b) { return std::abs(b - a) <= 1e-14 * std::max(1.0, std::abs(b)); });
  return 0.5 * (r.first + r.second);
}

}  // namespace

double matching_at_alpha0(const DimensionlessProblem& p) {
  const double scale = std::pow(p.alpha0, p.nu);
  if (p.bc == BoundaryKind::HeatFlux) return p.qstar * scale / (p.M * p.front_conductivity());
  return 0.5 * p.a * scale * p.pstar * p.Ste;
}

double matching_value(const DimensionlessProblem& p, const FixedPointReport& report) {
  const double E_xi = report.kernels.E.back();
  if (p.bc == BoundaryKind::HeatFlux) return matching_at_alpha0(p) * E_xi;
  return matching_at_alpha0(p) * E_xi / (1.0 + p.pstar * report.kernels.Phi.back());
}

double phi_flux(double xi, const DimensionlessProblem& problem, const FixedPointConfig& cfg) {
  if (problem.bc != BoundaryKind::HeatFlux) throw InvalidParameterError("phi_flux: heat-flux problem required");
  return matching_value(problem, solve_fixed_point(problem, xi, cfg));
}

double phi_convective(double xi, const DimensionlessProblem& problem, const FixedPointConfig& cfg) {
  if (problem.bc != BoundaryKind::Convective) {
    throw InvalidParameterError("phi_convective: convective problem required");
  }
  return matching_value(problem, solve_fixed_point(problem, xi, cfg));
}

double phi_lower_envelope(const DimensionlessProblem& p, double xi) {
  const KernelBounds kb = bounds_of(p);
  if (p.bc == BoundaryKind::HeatFlux) return matching_at_alpha0(p) * kb.E_lo(xi);
  return matching_at_alpha0(p) * kb.E_lo(xi) / (1.0 + p.pstar * kb.Phi_hi(xi));
}

double phi_upper_envelope(const DimensionlessProblem& p, double xi) {
  return matching_at_alpha0(p) * bounds_of(p).E_hi(xi);
}

BracketRoots bracket_roots(const DimensionlessProblem& problem, bool require_hypothesis) {
  problem.validate();
  const double C = matching_at_alpha0(problem);
  if (!(C > power_side(problem, problem.alpha0))) {
    throw NoRootError("matching function at alpha0 (" + std::to_string(C) +
                      ") does not exceed alpha0^(nu+1); the melt front cannot advance past the boiling front");
  }
  BracketRoots br;
  br.xi1 = envelope_root(problem, [&](double xi) { return phi_lower_envelope(problem, xi); });
  br.xi2 = envelope_root(problem, [&](double xi) { return phi_upper_envelope(problem, xi); });
  br.xi2 = std::max(br.xi2, br.xi1);
  br.xi_star = xi_star(problem);
  if (std::isfinite(br.xi_star)) {
    br.hypothesis_holds = phi_upper_envelope(problem, br.xi_star) < power_side(problem, br.xi_star);
  }
  if (require_hypothesis && !br.hypothesis_holds) {
    throw BracketError("phi_2(xi*) >= xi*^(nu+1) at xi*=" + std::to_string(br.xi_star) +
                       ": the upper bracket root lies beyond the contraction threshold");
  }
  return br;
}

FrontSolveReport solve_front(const DimensionlessProblem& problem, const FixedPointConfig& cfg) {
  problem.validate();
  cfg.validate();
  const BracketRoots br = bracket_roots(problem, false);
  std::vector<CandidateTrace> phi_values;

  const double a0 = problem.alpha0;
  std::optional<FixedPointReport> last;
  auto probe = [&](double xi) {
    FixedPointReport fp = solve_fixed_point(problem, xi, cfg);
    const double phi = matching_value(problem, fp);
    CandidateTrace t{xi, phi, phi - power_side(problem, xi), fp.iterations, fp.epsilon_estimate};
    last = std::move(fp);
    return t;
  };
  // The matching function tends to its α₀ value as ξ → α₀⁺; no solve needed there.
  const CandidateTrace at_alpha0{a0, matching_at_alpha0(problem),
                                 matching_at_alpha0(problem) - power_side(problem, a0), 0, 0.0};

  const double pad = 1e-7 * std::max(1.0, br.xi2);
  double lo = problem.bc == BoundaryKind::HeatFlux ? br.xi1 - pad : a0;
  const double hi0 = br.xi2 + pad;
  CandidateTrace lo_trace = at_alpha0;
  if (lo <= a0) {
    lo = a0;
  } else {
    lo_trace = probe(lo);
    phi_values.push_back(lo_trace);
  }
  const double lo0 = lo;
  const CandidateTrace hi_trace = probe(hi0);
  phi_values.push_back(hi_trace);
  if (lo_trace.defect < 0.0 || hi_trace.defect > 0.0) {
    throw BracketError("matching defect does not change sign on [" + std::to_string(lo) + ", " +
                       std::to_string(hi0) + "]");
  }

  double hi = hi0;
  double xi = hi0;
  double defect = hi_trace.defect;
  bool done = false;
  for (int it = 0; it < 200 && !done; ++it) {
    const double mid = 0.5 * (lo + hi);
    const CandidateTrace t = probe(mid);
    phi_values.push_back(t);
    (t.defect > 0.0 ? lo : hi) = mid;
    xi = mid;
    defect = t.defect;
    const bool narrow = hi - lo <= kFrontXiTolerance;
    done = (narrow && std::abs(defect) <= kFrontDefectTolerance) ||
           hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi;
  }
  if (std::abs(defect) > kFrontDefectTolerance) {
    throw NonConvergenceError("front bisection stalled at xi=" + std::to_string(xi) + " with defect " +
                              std::to_string(defect));
  }
  FrontSolveReport report{std::move(*last)};
  report.xi1 = br.xi1;
  report.xi2 = br.xi2;
  report.xi_star = br.xi_star;
  report.latent_heat_ok = br.hypothesis_holds;
  report.admissible = contraction_bound(problem, br.xi2) < 1.0;
  report.phi_values = std::move(phi_values);

  // Coarse scan: monotonicity of φ and number of sign changes of the defect.
  std::vector<CandidateTrace> scan;
  scan.push_back(lo_trace);
  for (int k = 1; k < kScanPoints; ++k) scan.push_back(probe(lo0 + (hi0 - lo0) * k / kScanPoints));
  scan.push_back(hi_trace);
  report.monotone_matching = true;
  for (std::size_t k = 1; k < scan.size(); ++k) {
    const double slack = 1e-10 * std::max(1.0, std::abs(scan[k - 1].phi));
    if (scan[k].phi > scan[k - 1].phi + slack) report.monotone_matching = false;
    if ((scan[k - 1].defect > 0.0) != (scan[k].defect > 0.0)) ++report.sign_changes;
  }
  report.multiplicity_warning = report.sign_changes > 1;
  report.fixedpoint_reports = std::move(scan);

  report.xi = xi;
  report.defect = defect;
  return report;
}

namespace {

// Fourth-order first derivative at node i of uniformly spaced samples.
double fd_derivative(std::span<const double> f, std::size_t i, double h) {
  const std::size_t n = f.size();
  if (i >= 2 && i + 2 < n) return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
  if (i < 2) {
    const double s = (-25.0 * f[i] + 48.0 * f[i + 1] - 36.0 * f[i + 2] + 16.0 * f[i + 3] - 3.0 * f[i + 4]) / 12.0;
    return s / h;
  }
  const double s = (25.0 * f[i] - 48.0 * f[i - 1] + 36.0 * f[i - 2] - 16.0 * f[i - 3] + 3.0 * f[i - 4]) / 12.0;
  return s / h;
}

}  // namespace

SolutionResiduals solution_residuals(const DimensionlessProblem& problem, const ProfileFunction& u) {
  problem.validate();
  const auto eta = u.grid();
  const auto val = u.values();
  const std::size_t n = u.size();
  const double h = (u.front() - u.start()) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(eta[i] - eta[i - 1] - h) > 1e-9 * h) {
      throw InvalidParameterError("solution_residuals: profile grid must be uniform");
    }
  }
  const auto& m = problem.model;
  const double nu = problem.nu;
  const double xi = u.front();

  std::vector<double> du(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    du[i] = fd_derivative(val, i, h);
    w[i] = m.conductivity(val[i]) * std::pow(eta[i], nu) * du[i];
  }

  SolutionResiduals r;
  const double L0 = m.conductivity(val[0]);
  if (problem.bc == BoundaryKind::HeatFlux) {
    r.boundary = std::abs(L0 * du[0] + problem.qstar);
    r.stefan = std::abs(du[n - 1] + problem.M * xi);
  } else {
    r.boundary = std::abs(L0 * du[0] - problem.pstar * val[0]);
    r.stefan = std::abs(m.conductivity(1.0) * du[n - 1] - 2.0 * xi / (problem.a * problem.Ste));
  }
  r.front_value = std::abs(val[n - 1] - problem.front_value());
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double dw = fd_derivative(w, i, h);
    const double res = dw + 2.0 / problem.a * std::pow(eta[i], nu + 1.0) * m.capacity(val[i]) * du[i];
    r.ode = std::max(r.ode, std::abs(res));
  }
  return r;
}

}  // namespace stefan
