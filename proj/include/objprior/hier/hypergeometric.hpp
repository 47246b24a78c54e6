#pragma once

// Multivariate hypergeometric sampling of n items from a population of N with
// k tagged categories, and the Dirichlet-multinomial overall prior on the
// category totals.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "objprior/errors.hpp"
#include "objprior/numerics/special.hpp"

namespace objprior::hier {

using IntVec = std::vector<std::int64_t>;

namespace detail {

inline double log_choose_int(std::int64_t n, std::int64_t k) {
  return numerics::log_choose(static_cast<double>(n), static_cast<double>(k));
}

inline std::int64_t checked_total(const IntVec& v, const char* name) {
  std::int64_t s = 0;
  for (auto e : v) {
    if (e < 0) throw DomainError(std::string(name) + ": negative component");
    s += e;
  }
  return s;
}

}  // namespace detail

/// Hy(r | n, R, N) = prod_{j<=k+1} C(R_j, r_j) / C(N, n), with the complement
/// category R_{k+1} = N - sum R and r_{k+1} = n - sum r.
inline double hypergeometric_pmf(const IntVec& r, std::int64_t n, const IntVec& R, std::int64_t N) {
  if (r.size() != R.size()) throw DomainError("hypergeometric_pmf: r and R differ in length");
  const auto sr = detail::checked_total(r, "hypergeometric_pmf");
  const auto sR = detail::checked_total(R, "hypergeometric_pmf");
  if (n < 0 || n > N) throw DomainError("hypergeometric_pmf: need 0 <= n <= N");
  if (sr > n || sR > N) throw DomainError("hypergeometric_pmf: totals exceed n or N");
  for (std::size_t j = 0; j < r.size(); ++j)
    if (r[j] > R[j]) throw DomainError("hypergeometric_pmf: r_j exceeds R_j");
  const auto rest_r = n - sr;
  const auto rest_R = N - sR;
  if (rest_r > rest_R) return 0.0;
  double lp = detail::log_choose_int(rest_R, rest_r) - detail::log_choose_int(N, n);
  for (std::size_t j = 0; j < r.size(); ++j) lp += detail::log_choose_int(R[j], r[j]);
  return std::exp(lp);
}

/// Multinomial probability of counts r (plus complement) in n trials with
/// cell probabilities p (plus complement 1 - sum p).
inline double multinomial_pmf(const IntVec& r, std::int64_t n, const std::vector<double>& p) {
  if (r.size() != p.size()) throw DomainError("multinomial_pmf: r and p differ in length");
  const auto sr = detail::checked_total(r, "multinomial_pmf");
  if (sr > n) throw DomainError("multinomial_pmf: counts exceed n");
  const double rest_p = 1.0 - std::accumulate(p.begin(), p.end(), 0.0);
  if (rest_p < -1e-12) throw DomainError("multinomial_pmf: probabilities exceed 1");
  double lp = numerics::log_gamma(static_cast<double>(n) + 1.0);
  auto term = [&lp](std::int64_t count, double prob) {
    if (count == 0) return true;
    if (prob <= 0.0) return false;
    lp += static_cast<double>(count) * std::log(prob) - numerics::log_gamma(static_cast<double>(count) + 1.0);
    return true;
  };
  for (std::size_t j = 0; j < r.size(); ++j)
    if (!term(r[j], p[j])) return 0.0;
  if (!term(n - sr, std::max(rest_p, 0.0))) return 0.0;
  return std::exp(lp);
}

/// Dirichlet-multinomial pmf of (R_1..R_k, N - sum R) with every parameter 1/k.
inline double hypergeometric_overall_prior(const IntVec& R, std::int64_t N, std::int64_t k) {
  if (k < 1 || static_cast<std::size_t>(k) != R.size())
    throw DomainError("hypergeometric_overall_prior: k must equal the length of R");
  const auto sR = detail::checked_total(R, "hypergeometric_overall_prior");
  if (sR > N) throw DomainError("hypergeometric_overall_prior: sum R exceeds N");
  using numerics::log_gamma;
  const double alpha = 1.0 / static_cast<double>(k);
  const double total_alpha = alpha * static_cast<double>(k + 1);
  const double Nd = static_cast<double>(N);
  double lp = log_gamma(Nd + 1.0) + log_gamma(total_alpha) - log_gamma(Nd + total_alpha);
  auto cell = [&](std::int64_t c) {
    const double cd = static_cast<double>(c);
    lp += log_gamma(cd + alpha) - log_gamma(alpha) - log_gamma(cd + 1.0);
  };
  for (auto c : R) cell(c);
  cell(N - sR);
  return std::exp(lp);
}

/// Visit every nonnegative integer k-vector with component sum <= total.
inline void for_each_lattice_point(std::size_t k, std::int64_t total, const std::function<void(const IntVec&)>& visit) {
  IntVec v(k, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t pos, std::int64_t left) {
    if (pos == k) {
      visit(v);
      return;
    }
    for (std::int64_t c = 0; c <= left; ++c) {
      v[pos] = c;
      rec(pos + 1, left - c);
    }
    v[pos] = 0;
  };
  rec(0, total);
}

}  // namespace objprior::hier
