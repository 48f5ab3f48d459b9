#include "stefan/oracle.hpp"

#include <array>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "stefan/errors.hpp"

namespace stefan {
namespace {

namespace odeint = boost::numeric::odeint;

// y[0] = u, y[1] = w = L*(u)η^ν u', y[2] = (2/a)∫ s N*/L* ds
using State = std::array<double, 3>;

// Beyond this the flux w has decayed by e^{-60} and u is frozen.
constexpr double kDecayLimit = 60.0;
constexpr int kMaxSteps = 2000000;

struct Rhs {
  const DimensionlessProblem* p;
  void operator()(const State& y, State& dy, double eta) const {
    const double L = p->model.conductivity(y[0]);
    const double N = p->model.capacity(y[0]);
    dy[0] = y[1] / (L * std::pow(eta, p->nu));
    dy[1] = -(2.0 / p->a) * eta * N * y[1] / L;
    dy[2] = (2.0 / p->a) * eta * N / L;
  }
};

struct Crossing {
  double xi;
  State y;
};

struct PathResult {
  std::optional<Crossing> crossing;
  double conservation = 0.0;
  std::vector<double> samples;
};

// Integrates from α₀ until u reaches target. When grid is given, u is
// recorded at each node that lies before the crossing.
PathResult integrate_path(const DimensionlessProblem& p, const ShootingConfig& cfg, State y0, double target,
                          const std::vector<double>* grid) {
  auto stepper = odeint::make_dense_output(cfg.rk_tol, cfg.rk_tol, odeint::runge_kutta_dopri5<State>());
  const Rhs rhs{&p};
  stepper.initialize(y0, p.alpha0, 1e-4 * std::max(p.alpha0, 1.0));

  PathResult out;
  const double w0 = y0[1];
  const double sign0 = y0[0] - target;
  std::size_t next = 0;
  if (grid) out.samples.reserve(grid->size());

  for (int step = 0; step < kMaxSteps; ++step) {
    const auto [t0, t1] = stepper.do_step(rhs);
    const State& y = stepper.current_state();
    auto conserved = [&](const State& s) { return std::abs(s[1] * std::exp(s[2]) - w0) / std::abs(w0); };
    out.conservation = std::max(out.conservation, conserved(y));

    const bool crossed = (y[0] - target) * sign0 <= 0.0;
    double t_end = t1;
    if (crossed) {
      State tmp;
      auto g = [&](double t) {
        stepper.calc_state(t, tmp);
        return tmp[0] - target;
      };
      const auto r = boost::math::tools::bisect(
          g, t0, t1, [](double a, double b) { return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(b); });
      Crossing c;
      c.xi = 0.5 * (r.first + r.second);
      stepper.calc_state(c.xi, c.y);
      out.crossing = c;
      t_end = c.xi;
    }
    if (grid) {
      State tmp;
      while (next < grid->size() && (*grid)[next] <= t_end) {
        const double t = (*grid)[next];
        if (t <= t0) {
          tmp = y0;  // first node is α₀ itself
        } else {
          stepper.calc_state(t, tmp);
        }
        out.samples.push_back(tmp[0]);
        ++next;
      }
    }
    if (crossed || y[2] > kDecayLimit || !std::isfinite(y[0])) return out;
  }
  throw ShootingError("shooting: step limit reached before the front value was met");
}

struct Shot {
  double defect;  // +inf (flux) or −inf (convective) if the front is never met
  double xi;
  double conservation;
};

template <class Setup, class Defect>
ShootingResult run_shooting(const DimensionlessProblem& p, const ShootingConfig& cfg, double lo, double hi,
                            Setup setup, Defect defect_at, double no_crossing, const char* name) {
  const double target = p.front_value();
  auto shot = [&](double c) {
    const PathResult r = integrate_path(p, cfg, setup(c), target, nullptr);
    if (!r.crossing) return Shot{no_crossing, std::numeric_limits<double>::quiet_NaN(), r.conservation};
    return Shot{defect_at(*r.crossing), r.crossing->xi, r.conservation};
  };

  Shot s_lo = shot(lo);
  Shot s_hi = shot(hi);
  if (!(s_lo.defect < 0.0 && s_hi.defect > 0.0)) {
    throw ShootingError(std::string(name) + ": shooting parameter does not bracket the Stefan condition");
  }
  int bisections = 0;
  double c = 0.5 * (lo + hi);
  Shot s_mid = shot(c);
  while (bisections < cfg.max_bisect) {
    ++bisections;
    if (s_mid.defect > 0.0) {
      hi = c;
    } else {
      lo = c;
    }
    const double next = 0.5 * (lo + hi);
    if (next <= lo || next >= hi) break;
    c = next;
    s_mid = shot(c);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(c), 1.0)) break;
  }
  if (!std::isfinite(s_mid.defect) || std::abs(s_mid.defect) > cfg.shoot_tol) {
    throw ShootingError(std::string(name) + ": Stefan defect " + std::to_string(s_mid.defect) +
                        " above shoot_tol after " + std::to_string(bisections) + " bisections");
  }

  const std::vector<double> grid = ProfileFunction::uniform_grid(p.alpha0, s_mid.xi, cfg.output_nodes);
  PathResult path = integrate_path(p, cfg, setup(c), target, &grid);
  if (!path.crossing || path.samples.size() + 1 < grid.size()) {
    throw ShootingError(std::string(name) + ": resampling pass lost the front");
  }
  path.samples.resize(grid.size());
  path.samples.back() = target;

  ShootingResult out{ProfileFunction(grid, std::move(path.samples))};
  out.xi = s_mid.xi;
  out.u_at_alpha0 = c;
  out.stefan_defect = s_mid.defect;
  out.bisections = bisections;
  out.ode_residual = path.conservation;
  return out;
}

}  // namespace

void ShootingConfig::validate() const {
  if (!(rk_tol > 0.0)) throw InvalidParameterError("ShootingConfig: rk_tol must be positive");
  if (!(shoot_tol > 0.0)) throw InvalidParameterError("ShootingConfig: shoot_tol must be positive");
  if (max_bisect <= 0) throw InvalidParameterError("ShootingConfig: max_bisect must be positive");
  if (output_nodes < ProfileFunction::kMinNodes) {
    throw InvalidParameterError("ShootingConfig: output_nodes below " + std::to_string(ProfileFunction::kMinNodes));
  }
}

ShootingResult shoot_flux(const DimensionlessProblem& p, const ShootingConfig& cfg) {
  p.validate();
  cfg.validate();
  if (p.bc != BoundaryKind::HeatFlux) throw InvalidParameterError("shoot_flux: problem is not a heat-flux problem");
  const double w0 = -p.qstar * std::pow(p.alpha0, p.nu);
  const double L0 = p.model.conductivity(0.0);
  auto setup = [&](double c) { return State{c, w0, 0.0}; };
  // u'(ξ) + Mξ grows with u(α₀): a later front with a weaker gradient.
  auto defect = [&](const Crossing& x) { return x.y[1] / (L0 * std::pow(x.xi, p.nu)) + p.M * x.xi; };

  const double lo = 1e-300;
  double hi = std::max(p.u_hi, 1.0);
  for (int i = 0; i < 200; ++i) {
    const PathResult r = integrate_path(p, cfg, setup(hi), 0.0, nullptr);
    if (!r.crossing || defect(*r.crossing) > 0.0) break;
    hi *= 2.0;
  }
  return run_shooting(p, cfg, lo, hi, setup, defect, std::numeric_limits<double>::infinity(), "shoot_flux");
}

ShootingResult shoot_convective(const DimensionlessProblem& p, const ShootingConfig& cfg) {
  p.validate();
  cfg.validate();
  if (p.bc != BoundaryKind::Convective) {
    throw InvalidParameterError("shoot_convective: problem is not a convective problem");
  }
  const double scale = std::pow(p.alpha0, p.nu) * p.pstar;
  auto setup = [&](double c) { return State{c, scale * c, 0.0}; };
  // w(ξ)/ξ^ν − 2ξ/(a Ste) grows with u(α₀): an earlier front with a steeper gradient.
  auto defect = [&](const Crossing& x) { return x.y[1] / std::pow(x.xi, p.nu) - 2.0 * x.xi / (p.a * p.Ste); };
  const double eps = std::numeric_limits<double>::epsilon();
  return run_shooting(p, cfg, eps, 1.0 - eps, setup, defect, -std::numeric_limits<double>::infinity(),
                      "shoot_convective");
}

ShootingResult shoot(const DimensionlessProblem& p, const ShootingConfig& cfg) {
  return p.bc == BoundaryKind::HeatFlux ? shoot_flux(p, cfg) : shoot_convective(p, cfg);
}

}  // namespace stefan
