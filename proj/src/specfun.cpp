#include "stefan/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "stefan/errors.hpp"

namespace stefan {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxTerms = 1000;

// x^s e^{-x} / s * Σ x^n / ((s+1)...(s+n))
double gamma_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  for (int n = 1; n < kMaxTerms; ++n) {
    term *= x / (s + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) {
      return sum * std::exp(-x + s * std::log(x));
    }
  }
  throw DomainError("lower_incomplete_gamma: series failed to converge for s=" + std::to_string(s) +
                    ", x=" + std::to_string(x));
}

// Upper incomplete gamma Γ(s,x) by modified Lentz evaluation of the
// Legendre continued fraction; valid for x >= s + 1.
double upper_gamma_cf(double s, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) {
      return std::exp(-x + s * std::log(x)) * h;
    }
  }
  throw DomainError("lower_incomplete_gamma: continued fraction failed to converge for s=" + std::to_string(s) +
                    ", x=" + std::to_string(x));
}

}  // namespace

double lower_incomplete_gamma(GammaArgs args) {
  const auto [s, x] = args;
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw DomainError("lower_incomplete_gamma: shape s must be positive and finite, got " + std::to_string(s));
  }
  if (!(x >= 0.0) || std::isnan(x)) {
    throw DomainError("lower_incomplete_gamma: x must be non-negative, got " + std::to_string(x));
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return std::tgamma(s);
  if (x < s + 1.0) return gamma_series(s, x);
  return std::tgamma(s) - upper_gamma_cf(s, x);
}

}  // namespace stefan
