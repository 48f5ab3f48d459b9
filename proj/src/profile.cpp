#include "stefan/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stefan/errors.hpp"

namespace stefan {
namespace {

double sign(double v) { return (v > 0.0) - (v < 0.0); }

// One-sided three-point end slope, limited so the end interval stays monotone.
double edge_slope(double h0, double h1, double m0, double m1) {
  double d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
  if (sign(d) != sign(m0)) {
    d = 0.0;
  } else if (sign(m0) != sign(m1) && std::abs(d) > std::abs(3.0 * m0)) {
    d = 3.0 * m0;
  }
  return d;
}

}  // namespace

ProfileFunction::ProfileFunction(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  const std::size_t n = grid_.size();
  if (n != values_.size()) throw InvalidParameterError("ProfileFunction: grid and values differ in length");
  if (n < kMinNodes) {
    throw InvalidParameterError("ProfileFunction: need at least " + std::to_string(kMinNodes) + " nodes, got " +
                                std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(grid_[i]) || !std::isfinite(values_[i])) {
      throw InvalidParameterError("ProfileFunction: non-finite node or value at index " + std::to_string(i));
    }
    if (i > 0 && !(grid_[i] > grid_[i - 1])) {
      throw InvalidParameterError("ProfileFunction: grid not strictly increasing at index " + std::to_string(i));
    }
  }

  std::vector<double> h(n - 1), m(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = grid_[i + 1] - grid_[i];
    m[i] = (values_[i + 1] - values_[i]) / h[i];
  }
  slopes_.assign(n, 0.0);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (m[k - 1] == 0.0 || m[k] == 0.0 || sign(m[k - 1]) != sign(m[k])) continue;
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    slopes_[k] = (w1 + w2) / (w1 / m[k - 1] + w2 / m[k]);
  }
  slopes_[0] = edge_slope(h[0], h[1], m[0], m[1]);
  slopes_[n - 1] = edge_slope(h[n - 2], h[n - 3], m[n - 2], m[n - 3]);
}

std::vector<double> ProfileFunction::uniform_grid(double lo, double hi, std::size_t n) {
  if (n < 2 || !(hi > lo)) throw InvalidParameterError("uniform_grid: need hi > lo and n >= 2");
  std::vector<double> g(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + step * static_cast<double>(i);
  g.back() = hi;
  return g;
}

ProfileFunction ProfileFunction::constant(double lo, double hi, std::size_t n, double value) {
  return ProfileFunction(uniform_grid(lo, hi, n), std::vector<double>(n, value));
}

std::size_t ProfileFunction::interval(double eta) const {
  const double lo = grid_.front();
  const double hi = grid_.back();
  const double slack = 1e-13 * std::max(1.0, std::abs(hi));
  if (!(eta >= lo - slack && eta <= hi + slack)) {
    throw DomainError("profile evaluated at eta=" + std::to_string(eta) + " outside [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  auto it = std::upper_bound(grid_.begin(), grid_.end(), eta);
  std::size_t i = it == grid_.begin() ? 0 : static_cast<std::size_t>(it - grid_.begin()) - 1;
  return std::min(i, grid_.size() - 2);
}

double ProfileFunction::operator()(double eta) const {
  const std::size_t i = interval(eta);
  const double h = grid_[i + 1] - grid_[i];
  const double t = (eta - grid_[i]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * values_[i] + h10 * h * slopes_[i] + h01 * values_[i + 1] + h11 * h * slopes_[i + 1];
}

double ProfileFunction::derivative(double eta) const {
  const std::size_t i = interval(eta);
  const double h = grid_[i + 1] - grid_[i];
  const double t = (eta - grid_[i]) / h;
  const double t2 = t * t;
  const double d00 = (6.0 * t2 - 6.0 * t) / h;
  const double d10 = 3.0 * t2 - 4.0 * t + 1.0;
  const double d01 = (-6.0 * t2 + 6.0 * t) / h;
  const double d11 = 3.0 * t2 - 2.0 * t;
  return d00 * values_[i] + d10 * slopes_[i] + d01 * values_[i + 1] + d11 * slopes_[i + 1];
}

double sup_distance(const ProfileFunction& u, const ProfileFunction& w) {
  if (u.size() != w.size() || !std::equal(u.grid().begin(), u.grid().end(), w.grid().begin())) {
    throw InvalidParameterError("sup_distance: profiles must share a grid");
  }
  double best = 0.0;
  const auto g = u.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    best = std::max(best, std::abs(u.values()[i] - w.values()[i]));
    if (i + 1 < g.size()) {
      const double mid = 0.5 * (g[i] + g[i + 1]);
      best = std::max(best, std::abs(u(mid) - w(mid)));
    }
  }
  return best;
}

double sup_distance_resampled(const ProfileFunction& u, const ProfileFunction& w) {
  double best = 0.0;
  const auto g = u.grid();
  const double lo = std::max(u.start(), w.start());
  const double hi = std::min(u.front(), w.front());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = std::clamp(g[i], lo, hi);
    best = std::max(best, std::abs(u(x) - w(x)));
    if (i + 1 < g.size()) {
      const double mid = std::clamp(0.5 * (g[i] + g[i + 1]), lo, hi);
      best = std::max(best, std::abs(u(mid) - w(mid)));
    }
  }
  return best;
}

}  // namespace stefan
