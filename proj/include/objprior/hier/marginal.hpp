#pragma once

// Marginal model of the multinomial under a symmetric Dirichlet Di(a, ..., a):
// the table likelihood p(x | a) and the beta-binomial law of one cell count.

#include <cmath>
#include <cstdint>
#include <vector>

#include "objprior/errors.hpp"
#include "objprior/hier/count_table.hpp"
#include "objprior/numerics/special.hpp"

namespace objprior::hier {

/// log p(x | a) including the multinomial coefficient.  Uses
///   prod_i Gamma(x_i + a) / Gamma(a) = prod_j (a + j)^{r_j}
///   Gamma(m a) / Gamma(n + m a)      = prod_j (m a + j)^{-1}
/// so that empty cells never enter and large a loses no precision.
inline double marginal_log_likelihood(const CountTable& x, double a) {
  if (!(a > 0.0)) throw DomainError("marginal_log_likelihood: a must be positive");
  double log_coef = numerics::log_gamma(static_cast<double>(x.n()) + 1.0);
  for (const auto& [cell, count] : x.counts()) log_coef -= numerics::log_gamma(static_cast<double>(count) + 1.0);
  const double m = static_cast<double>(x.m());
  const auto& r = x.r_profile();
  double sum = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double jd = static_cast<double>(j);
    sum += static_cast<double>(r[j]) * std::log(a + jd) - std::log(m * a + jd);
  }
  return log_coef + sum;
}

namespace detail {

inline void require_single_cell_domain(double a, std::int64_t m, std::int64_t n, const char* name) {
  if (!(a > 0.0)) throw DomainError(std::string(name) + ": a must be positive");
  if (m < 2) throw DomainError(std::string(name) + ": need m >= 2");
  if (n < 1) throw DomainError(std::string(name) + ": need n >= 1");
}

// sum_{j=1}^{n-1} log(1 - a / (m a + j)) = log[p(0) m / (m - 1)]
inline double log_empty_cell_excess(double a, double m, std::int64_t n) {
  double s = 0.0;
  for (std::int64_t j = 1; j < n; ++j) s += std::log1p(-a / (m * a + static_cast<double>(j)));
  return s;
}

}  // namespace detail

/// log p(x | a, m, n) for x = 0..n: beta-binomial with shapes (a, (m-1) a),
/// by the ratio recurrence from p(0).  O(n).
inline std::vector<double> single_cell_log_pmf(double a, std::int64_t m, std::int64_t n) {
  detail::require_single_cell_domain(a, m, n, "single_cell_log_pmf");
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  const double rest = (md - 1.0) * a;
  std::vector<double> lp(static_cast<std::size_t>(n) + 1);
  lp[0] = std::log1p(-1.0 / md) + detail::log_empty_cell_excess(a, md, n);
  for (std::int64_t x = 0; x < n; ++x) {
    const double xd = static_cast<double>(x);
    lp[static_cast<std::size_t>(x) + 1] =
        lp[static_cast<std::size_t>(x)] + std::log((nd - xd) / (xd + 1.0)) + std::log((xd + a) / (nd - xd - 1.0 + rest));
  }
  return lp;
}

inline double marginal_pmf_single(std::int64_t x, double a, std::int64_t m, std::int64_t n) {
  if (x < 0 || x > n) throw DomainError("marginal_pmf_single: need 0 <= x <= n");
  return std::exp(single_cell_log_pmf(a, m, n)[static_cast<std::size_t>(x)]);
}

/// Q(j) = P(X > j) for j = 0..n-1 under the single-cell marginal.  Q(0) is
/// formed as 1 - p(0) without cancellation.
inline std::vector<double> tail_table(double a, std::int64_t m, std::int64_t n) {
  const auto lp = single_cell_log_pmf(a, m, n);
  std::vector<double> q(static_cast<std::size_t>(n));
  double running = 0.0;
  for (std::int64_t j = n - 1; j >= 1; --j) {
    running += std::exp(lp[static_cast<std::size_t>(j) + 1]);
    q[static_cast<std::size_t>(j)] = running;
  }
  const double md = static_cast<double>(m);
  q[0] = 1.0 / md - (md - 1.0) / md * std::expm1(detail::log_empty_cell_excess(a, md, n));
  return q;
}

inline double tail_Q(std::int64_t j, double a, std::int64_t m, std::int64_t n) {
  if (j < 0 || j > n - 1) throw DomainError("tail_Q: need 0 <= j <= n-1");
  return tail_table(a, m, n)[static_cast<std::size_t>(j)];
}

}  // namespace objprior::hier
