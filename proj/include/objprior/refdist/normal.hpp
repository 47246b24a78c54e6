#pragma once

// Normal model N(mu, sigma) with the relatively invariant prior family
// sigma^{-a}.  a = 1 is the reference prior for mu and for sigma; a = 2 is the
// Jeffreys-rule prior.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "objprior/errors.hpp"
#include "objprior/numerics/special.hpp"

namespace objprior::refdist {

namespace detail {

inline void require_normal_risk_domain(double a, std::int64_t n, const char* name) {
  if (n < 2) throw DomainError(std::string(name) + ": need n >= 2");
  if (!(a > 0.0)) throw DomainError(std::string(name) + ": a must be positive");
  if (!(a + static_cast<double>(n) > 2.0)) throw DomainError(std::string(name) + ": need a + n > 2");
}

}  // namespace detail

/// Expected loss for mu of sigma^{-a} relative to the Student reference posterior.
inline double d_mu(double a, std::int64_t n) {
  detail::require_normal_risk_domain(a, n, "d_mu");
  using numerics::digamma;
  using numerics::log_gamma;
  const double nd = static_cast<double>(n);
  const double half_n = 0.5 * nd;
  const double half_nm1 = 0.5 * (nd - 1.0);
  const double log_ratio = (log_gamma(half_n) - log_gamma(half_nm1)) +
                           (log_gamma(0.5 * (a + nd) - 1.0) - log_gamma(0.5 * (a + nd - 1.0)));
  return log_ratio - 0.5 * (a - 1.0) * (digamma(half_nm1) - digamma(half_n));
}

/// Expected loss for sigma of sigma^{-a} relative to the square-root inverted gamma reference posterior.
inline double d_sigma(double a, std::int64_t n) {
  detail::require_normal_risk_domain(a, n, "d_sigma");
  using numerics::digamma;
  using numerics::log_gamma;
  const double nd = static_cast<double>(n);
  const double half_nm1 = 0.5 * (nd - 1.0);
  return (log_gamma(0.5 * (a + nd) - 1.0) - log_gamma(half_nm1)) - 0.5 * (a - 1.0) * digamma(half_nm1);
}

struct NormalDraw {
  double mu;
  double sigma;
};

struct NormalSummary {
  double mean;    // x-bar
  double s;       // n s^2 = sum (x_i - x-bar)^2
  std::int64_t n;
};

inline NormalSummary summarize_normal(std::span<const double> data) {
  if (data.size() < 2) throw PreconditionError("normal posterior: need at least two observations");
  double mean = 0.0;
  for (double x : data) mean += x;
  mean /= static_cast<double>(data.size());
  double ss = 0.0;
  for (double x : data) ss += (x - mean) * (x - mean);
  const double s2 = ss / static_cast<double>(data.size());
  if (!(s2 > 0.0)) throw PreconditionError("normal posterior: data are constant, posterior is degenerate");
  return {mean, std::sqrt(s2), static_cast<std::int64_t>(data.size())};
}

/// Exact draws from the posterior under sigma^{-a}:
///   sigma^{-2} ~ Ga((a + n)/2 - 1, rate n s^2 / 2),  mu | sigma ~ N(x-bar, sigma / sqrt n).
/// The mu-marginal is Student with a + n - 2 degrees of freedom, location x-bar
/// and scale s / sqrt(a + n - 2).
inline std::vector<NormalDraw> normal_posterior_sample(std::span<const double> data, double a, std::size_t size,
                                                       std::uint64_t seed) {
  if (!(a > 0.0)) throw DomainError("normal_posterior_sample: a must be positive");
  const NormalSummary st = summarize_normal(data);
  const double nd = static_cast<double>(st.n);
  const double shape = 0.5 * (a + nd) - 1.0;
  const double rate = 0.5 * nd * st.s * st.s;
  std::mt19937_64 gen(seed);
  std::gamma_distribution<double> gamma(shape, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<NormalDraw> draws;
  draws.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    const double precision = gamma(gen) / rate;
    const double sigma = 1.0 / std::sqrt(precision);
    const double mu = st.mean + sigma / std::sqrt(nd) * normal(gen);
    draws.push_back({mu, sigma});
  }
  return draws;
}

/// Standardized mean phi = mu / sigma for every draw.
inline std::vector<double> phi_posterior_from_sample(std::span<const NormalDraw> draws) {
  std::vector<double> phi;
  phi.reserve(draws.size());
  for (const auto& d : draws) {
    if (!(d.sigma > 0.0)) throw DomainError("phi_posterior_from_sample: sigma must be positive");
    phi.push_back(d.mu / d.sigma);
  }
  return phi;
}

}  // namespace objprior::refdist
