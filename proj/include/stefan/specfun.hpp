#pragma once

namespace stefan {

/// Arguments of the lower incomplete gamma function γ(s, x).
struct GammaArgs {
  double s;  ///< shape, s > 0
  double x;  ///< upper limit, x >= 0
};

/**
 * @brief Lower incomplete gamma function γ(s,x) = ∫₀ˣ t^{s-1} e^{-t} dt.
 *
 * Power series for x < s + 1, Lentz continued fraction for the upper
 * function Γ(s,x) otherwise (γ = Γ(s) − Γ(s,x)). The t^{s-1} singularity at
 * the origin is absorbed analytically by the series prefactor x^s e^{-x}.
 * Relative error is below 1e-12 for 0 < s <= 2, 0 <= x <= 50.
 *
 * Throws DomainError if s <= 0, x < 0 or either argument is not finite
 * (x = +inf is accepted and yields Γ(s)).
 */
double lower_incomplete_gamma(GammaArgs args);

inline double lower_incomplete_gamma(double s, double x) { return lower_incomplete_gamma(GammaArgs{s, x}); }

}  // namespace stefan
