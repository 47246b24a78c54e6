#pragma once

// Log-gamma, digamma and trigamma on the positive real axis.
//
// All three shift the argument upward with the functional recurrence until
// x >= 8 and then sum the Stirling / Bernoulli asymptotic series.  Eight
// terms of each series leave a truncation error below 1e-15 at x = 8.

#include <cmath>
#include <numbers>

#include "objprior/errors.hpp"

namespace objprior::numerics {

namespace detail {

inline constexpr double kAsymptoticStart = 8.0;

inline void require_positive(double x, const char* name) {
  if (!(x > 0.0)) throw DomainError(std::string(name) + ": argument must be positive");
}

// Stirling series for log Gamma(x), x >= kAsymptoticStart.
inline double log_gamma_asymptotic(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 1.0 / 156.0;
  series = series * inv2 - 691.0 / 360360.0;
  series = series * inv2 + 1.0 / 1188.0;
  series = series * inv2 - 1.0 / 1680.0;
  series = series * inv2 + 1.0 / 1260.0;
  series = series * inv2 - 1.0 / 360.0;
  series = series * inv2 + 1.0 / 12.0;
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series * inv;
}

}  // namespace detail

inline double log_gamma(double x) {
  detail::require_positive(x, "log_gamma");
  if (std::isinf(x)) return x;
  double product = 1.0;
  while (x < detail::kAsymptoticStart) {
    product *= x;
    x += 1.0;
  }
  return detail::log_gamma_asymptotic(x) - std::log(product);
}

inline double digamma(double x) {
  detail::require_positive(x, "digamma");
  double shift = 0.0;
  while (x < detail::kAsymptoticStart) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  double series = -1.0 / 12.0;
  series = series * inv2 + 691.0 / 32760.0;
  series = series * inv2 - 1.0 / 132.0;
  series = series * inv2 + 1.0 / 240.0;
  series = series * inv2 - 1.0 / 252.0;
  series = series * inv2 + 1.0 / 120.0;
  series = series * inv2 - 1.0 / 12.0;
  return shift + std::log(x) - 0.5 / x + series * inv2;
}

inline double trigamma(double x) {
  detail::require_positive(x, "trigamma");
  double shift = 0.0;
  while (x < detail::kAsymptoticStart) {
    shift += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 7.0 / 6.0;
  series = series * inv2 - 691.0 / 2730.0;
  series = series * inv2 + 5.0 / 66.0;
  series = series * inv2 - 1.0 / 30.0;
  series = series * inv2 + 1.0 / 42.0;
  series = series * inv2 - 1.0 / 30.0;
  series = series * inv2 + 1.0 / 6.0;
  return shift + inv + 0.5 * inv2 + series * inv2 * inv;
}

/// log of the binomial coefficient C(n, k).
inline double log_choose(double n, double k) {
  if (k < 0.0 || k > n) throw DomainError("log_choose: k outside [0, n]");
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

}  // namespace objprior::numerics
