#pragma once

// Large-m limit of the posterior of v = m a under the exact reference prior,
//   Psi(v) = Gamma(v+1)/Gamma(v+n) v^{r0 - 3/2} [sum_{i=1}^{n-1} i/(v+i)^2]^{1/2},
// and the location of its mode.

#include <cmath>
#include <cstdint>

#include "objprior/errors.hpp"
#include "objprior/hier/count_table.hpp"
#include "objprior/numerics/optimize.hpp"

namespace objprior::hier {

struct LimitProfile {
  std::int64_t n = 0;
  std::int64_t r0 = 0;

  LimitProfile(std::int64_t n_, std::int64_t r0_) : n(n_), r0(r0_) {
    if (r0 < 1 || r0 > n) throw DomainError("LimitProfile: need 1 <= r0 <= n");
  }
  explicit LimitProfile(const CountTable& x)
      : LimitProfile(static_cast<std::int64_t>(x.n()), static_cast<std::int64_t>(x.r0())) {}
};

inline double limit_log_density_psi(double v, const LimitProfile& p) {
  if (!(v > 0.0)) throw DomainError("limit_density_psi: v must be positive");
  if (p.n < 2) throw DomainError("limit_density_psi: need n >= 2");
  double log_ratio = 0.0;  // log Gamma(v+1) - log Gamma(v+n)
  double s = 0.0;
  for (std::int64_t i = 1; i < p.n; ++i) {
    const double id = static_cast<double>(i);
    log_ratio -= std::log(v + id);
    s += id / ((v + id) * (v + id));
  }
  return log_ratio + (static_cast<double>(p.r0) - 1.5) * std::log(v) + 0.5 * std::log(s);
}

inline double limit_density_psi(double v, const LimitProfile& p) { return std::exp(limit_log_density_psi(v, p)); }

/// Sparse regime (r0/n -> 0): v = (r0 - 3/2) / log(1 + n/r0).
inline double mode_asymptotic_sparse(const LimitProfile& p) {
  if (p.r0 < 2) throw DomainError("mode_asymptotic: need r0 >= 2");
  if (p.r0 >= p.n) throw DomainError("mode_asymptotic: need r0 < n");
  const double r0 = static_cast<double>(p.r0);
  return (r0 - 1.5) / std::log1p(static_cast<double>(p.n) / r0);
}

/// c* solving c log(1 + 1/c) = rho for rho in (0, 1).  The left side increases
/// from 0 to 1 in c.
inline double c_star(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("c_star: need 0 < rho < 1");
  auto h = [rho](double log_c) {
    const double c = std::exp(log_c);
    return c * std::log1p(1.0 / c) - rho;
  };
  const double lo = std::log(rho) - 7.0;
  double hi = std::log(1.0 / (1.0 - rho) + 1.0);
  while (h(hi) < 0.0) hi += 1.0;
  return std::exp(numerics::find_root(h, lo, hi, 1e-15));
}

/// Dense regime (r0/n -> c in (0,1)): v = c* n.
inline double mode_asymptotic_dense(const LimitProfile& p) {
  if (p.r0 < 2) throw DomainError("mode_asymptotic: need r0 >= 2");
  if (p.r0 >= p.n) throw DomainError("mode_asymptotic: need r0 < n");
  return c_star(static_cast<double>(p.r0) / static_cast<double>(p.n)) * static_cast<double>(p.n);
}

/// Asymptotic mode of v, choosing the sparse formula when r0 <= sqrt(n).
inline double mode_asymptotic(const LimitProfile& p) {
  const bool sparse = static_cast<double>(p.r0) <= std::sqrt(static_cast<double>(p.n));
  return sparse ? mode_asymptotic_sparse(p) : mode_asymptotic_dense(p);
}

/// Argmax of Psi by scan plus Brent in log v.
inline double psi_mode_numeric(const LimitProfile& p) {
  if (p.r0 < 2) throw DomainError("psi_mode_numeric: Psi is unbounded at v = 0 when r0 < 2");
  auto neg = [&p](double v) { return -limit_log_density_psi(v, p); };
  return numerics::minimize_log_scale(neg, 1e-6, 1e3 * static_cast<double>(p.n), 1e-10, 241).argmin;
}

}  // namespace objprior::hier
