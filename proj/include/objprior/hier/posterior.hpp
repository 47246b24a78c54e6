#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "objprior/errors.hpp"
#include "objprior/hier/count_table.hpp"
#include "objprior/hier/marginal.hpp"
#include "objprior/hier/reference_prior.hpp"
#include "objprior/numerics/optimize.hpp"

namespace objprior::hier {

/// log p(x | a) + log pi(a), unnormalized.
inline double posterior_log_density_a(double a, const CountTable& x, PriorKind prior) {
  const auto m = static_cast<std::int64_t>(x.m());
  const auto n = static_cast<std::int64_t>(x.n());
  return marginal_log_likelihood(x, a) + log_prior(prior, a, m, n);
}

/// Same, with the exact prior read from a cache built for (x.m(), x.n()).
inline double posterior_log_density_a(double a, const CountTable& x, const PriorCache& cache) {
  return marginal_log_likelihood(x, a) + cache.log_density(a);
}

struct ModeSearch {
  double a_lo = 1e-8;   // multiplied by 1/m
  double a_hi = 1e6;
  std::size_t scan_points = 241;
  double rel_tol = 1e-9;
};

namespace detail {

template <typename LogDensity>
double log_scale_argmax(LogDensity&& g, double lo, double hi, const ModeSearch& opt, const char* what) {
  auto neg = [&g](double a) { return -g(a); };
  const auto r = numerics::minimize_log_scale(neg, lo, hi, opt.rel_tol, opt.scan_points);
  const double cell = (std::log(hi) - std::log(lo)) / static_cast<double>(opt.scan_points - 1);
  if (std::log(r.argmin) > std::log(hi) - cell)
    throw BoundaryModeError(std::string(what) + ": density increases toward a -> infinity; no interior mode");
  if (std::log(r.argmin) < std::log(lo) + cell)
    throw BoundaryModeError(std::string(what) + ": mode at a = 0, which cannot be used");
  return r.argmin;
}

}  // namespace detail

/// Maximizer of the marginal posterior of a.  When only one cell is occupied
/// the posterior mode is a = 0 and BoundaryModeError is raised.
inline double posterior_mode_a(const CountTable& x, PriorKind prior, const ModeSearch& opt = {}) {
  if (x.r0() <= 1) throw BoundaryModeError("posterior_mode_a: a single occupied cell puts the posterior mode at a = 0");
  const double m = static_cast<double>(x.m());
  return detail::log_scale_argmax([&](double a) { return posterior_log_density_a(a, x, prior); }, opt.a_lo / m,
                                  opt.a_hi, opt, "posterior_mode_a");
}

/// Maximizer of p(x | a) alone (type-II maximum likelihood).
inline double likelihood_mode_a(const CountTable& x, const ModeSearch& opt = {}) {
  if (x.r0() <= 1) throw BoundaryModeError("likelihood_mode_a: a single occupied cell puts the mode at a = 0");
  const double m = static_cast<double>(x.m());
  return detail::log_scale_argmax([&](double a) { return marginal_log_likelihood(x, a); }, opt.a_lo / m, opt.a_hi,
                                  opt, "likelihood_mode_a");
}

/// d^2/da^2 log[p(x | a) pi*(a | m, n)]
///   = sum_j m^2/(ma+j)^2 - sum_j r_j/(a+j)^2 + 1/(2a^2) + 3/(2(a+n/m)^2).
inline double log_posterior_second_derivative(const CountTable& x, double a) {
  if (!(a > 0.0)) throw DomainError("log_posterior_second_derivative: a must be positive");
  const double m = static_cast<double>(x.m());
  const double c = static_cast<double>(x.n()) / m;
  const auto& r = x.r_profile();
  double s = 0.5 / (a * a) + 1.5 / ((a + c) * (a + c));
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double jd = static_cast<double>(j);
    s += m * m / ((m * a + jd) * (m * a + jd)) - static_cast<double>(r[j]) / ((a + jd) * (a + jd));
  }
  return s;
}

/// True iff the second derivative above is negative at every grid point.
inline bool log_concavity_certificate(const CountTable& x, const std::vector<double>& a_grid) {
  if (x.r0() < 3) throw PreconditionError("log_concavity_certificate: need at least three occupied cells");
  for (double a : a_grid)
    if (!(log_posterior_second_derivative(x, a) < 0.0)) return false;
  return true;
}

/// First grid point where the certificate fails, if any.
inline std::optional<double> log_concavity_violation(const CountTable& x, const std::vector<double>& a_grid) {
  if (x.r0() < 3) throw PreconditionError("log_concavity_violation: need at least three occupied cells");
  for (double a : a_grid)
    if (!(log_posterior_second_derivative(x, a) < 0.0)) return a;
  return std::nullopt;
}

}  // namespace objprior::hier
