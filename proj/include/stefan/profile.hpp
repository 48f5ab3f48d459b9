#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stefan {

/**
 * @brief Similarity-variable profile u(η) sampled on a grid over [α₀, ξ].
 *
 * Between nodes the profile is the monotone-preserving piecewise cubic
 * Hermite interpolant (Fritsch–Carlson slopes), which is C¹ and never
 * overshoots the nodal values on any interval. Evaluation is a pure function
 * of the stored arrays, so identical inputs give bit-identical results.
 */
class ProfileFunction {
 public:
  static constexpr std::size_t kMinNodes = 33;

  /// Throws InvalidParameterError if the grid is not strictly increasing,
  /// sizes differ, fewer than kMinNodes nodes, or any value is non-finite.
  ProfileFunction(std::vector<double> grid, std::vector<double> values);

  /// n equally spaced nodes with exact end points lo and hi.
  static std::vector<double> uniform_grid(double lo, double hi, std::size_t n);
  static ProfileFunction constant(double lo, double hi, std::size_t n, double value);

  double operator()(double eta) const;
  double derivative(double eta) const;

  std::span<const double> grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return grid_.size(); }
  double start() const { return grid_.front(); }
  double front() const { return grid_.back(); }

  /// Index i such that grid[i] <= eta <= grid[i+1]; DomainError outside the span.
  std::size_t interval(double eta) const;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

/// Supremum of |u − w| over the shared nodes and interval midpoints.
/// Both profiles must live on the same grid.
double sup_distance(const ProfileFunction& u, const ProfileFunction& w);

/// Supremum of |u − w| sampled on u's nodes and midpoints, with w evaluated
/// by interpolation (grids may differ but must cover the same span).
double sup_distance_resampled(const ProfileFunction& u, const ProfileFunction& w);

}  // namespace stefan
