#pragma once

// Directed logarithmic (Kullback-Leibler) divergences.
//
// kl(p0 | p) = int p log(p / p0): the loss of using the approximation p0
// when p is the target.  Argument order follows that convention throughout:
// the approximating density comes first.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "objprior/errors.hpp"
#include "objprior/numerics/grid.hpp"
#include "objprior/numerics/special.hpp"

namespace objprior::numerics {

inline constexpr double kInfiniteDivergence = std::numeric_limits<double>::infinity();

/// kl{ Be(alpha0, beta0) | Be(alpha, beta) } in closed form.
inline double kl_beta(double alpha0, double beta0, double alpha, double beta) {
  if (!(alpha0 > 0.0 && beta0 > 0.0 && alpha > 0.0 && beta > 0.0))
    throw DomainError("kl_beta: all shape parameters must be positive");
  if (alpha0 == alpha && beta0 == beta) return 0.0;
  const double sum0 = alpha0 + beta0;
  const double sum = alpha + beta;
  const double log_ratio = (log_gamma(sum) - log_gamma(sum0)) + (log_gamma(alpha0) - log_gamma(alpha)) +
                           (log_gamma(beta0) - log_gamma(beta));
  const double value = log_ratio + (alpha - alpha0) * digamma(alpha) + (beta - beta0) * digamma(beta) -
                       (sum - sum0) * digamma(sum);
  return std::max(value, 0.0);
}

namespace detail {

inline void require_same_support(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("kl_numeric: grids differ in length");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
    if (std::abs(a[i] - b[i]) > 1e-12 * scale) throw DomainError("kl_numeric: grids have different abscissae");
  }
}

inline void require_unit_mass(double mass) {
  if (std::abs(mass - 1.0) > 1e-2) throw DomainError("kl_numeric: p does not integrate to 1");
}

}  // namespace detail

/// Trapezoid estimate of kl{q | p} = int p log(p/q) for densities tabulated on a common grid.
/// Returns kInfiniteDivergence when q vanishes where p has mass.
inline double kl_numeric(const Grid1D& p, const Grid1D& q) {
  detail::require_same_support(p.points(), q.points());
  if (p.size() < 2) throw DomainError("kl_numeric: need at least two grid points");
  const auto x = p.points();
  const auto pv = p.values();
  const auto qv = q.values();
  detail::require_unit_mass(trapezoid(x, pv));
  std::vector<double> integrand(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (pv[i] < 0.0 || qv[i] < 0.0) throw DomainError("kl_numeric: negative density value");
    if (pv[i] == 0.0) {
      integrand[i] = 0.0;
    } else if (qv[i] == 0.0) {
      return kInfiniteDivergence;
    } else {
      integrand[i] = pv[i] * std::log(pv[i] / qv[i]);
    }
  }
  return std::max(trapezoid(x, integrand), 0.0);
}

/// Same estimate from log-densities; avoids underflow when the two densities
/// have very different tails.  -inf entries denote zero density.
inline double kl_numeric_log(std::span<const double> points, std::span<const double> log_p,
                             std::span<const double> log_q) {
  if (points.size() != log_p.size() || points.size() != log_q.size())
    throw DomainError("kl_numeric_log: grids differ in length");
  std::vector<double> p(points.size());
  std::vector<double> integrand(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && !(points[i] > points[i - 1])) throw DomainError("kl_numeric_log: points must increase");
    p[i] = std::exp(log_p[i]);
    if (p[i] == 0.0) {
      integrand[i] = 0.0;
    } else if (log_q[i] == -std::numeric_limits<double>::infinity()) {
      return kInfiniteDivergence;
    } else {
      integrand[i] = p[i] * (log_p[i] - log_q[i]);
    }
  }
  detail::require_unit_mass(trapezoid(points, p));
  return std::max(trapezoid(points, integrand), 0.0);
}

}  // namespace objprior::numerics
