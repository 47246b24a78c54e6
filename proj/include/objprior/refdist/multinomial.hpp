#pragma once

// Reference-distance choice of a symmetric Dirichlet prior Di(a, ..., a) for
// the m-cell multinomial.  The loss of a candidate a is the predictive
// expectation, under the Be(1/2, 1/2) reference predictive of one cell count,
// of the divergence of Be(x + a, n - x + (m-1) a) from the reference posterior
// Be(x + 1/2, n - x + 1/2).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include "objprior/errors.hpp"
#include "objprior/numerics/divergence.hpp"
#include "objprior/numerics/grid.hpp"
#include "objprior/numerics/optimize.hpp"
#include "objprior/numerics/special.hpp"

namespace objprior::refdist {

class RefDistConfig {
 public:
  RefDistConfig(std::int64_t m, std::int64_t n, std::vector<double> weights) : m_(m), n_(n), weights_(std::move(weights)) {
    if (m_ < 2) throw DomainError("RefDistConfig: need m >= 2 cells");
    if (n_ < 1) throw DomainError("RefDistConfig: need n >= 1");
    if (weights_.size() != static_cast<std::size_t>(m_)) throw DomainError("RefDistConfig: need one weight per cell");
    double total = 0.0;
    for (double w : weights_) {
      if (!(w >= 0.0)) throw DomainError("RefDistConfig: weights must be nonnegative");
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw DomainError("RefDistConfig: weights must sum to 1");
    const double first = weights_.front();
    uniform_ = std::all_of(weights_.begin(), weights_.end(), [first](double w) { return w == first; });
  }

  static RefDistConfig uniform(std::int64_t m, std::int64_t n) {
    if (m < 2) throw DomainError("RefDistConfig: need m >= 2 cells");
    return RefDistConfig(m, n, std::vector<double>(static_cast<std::size_t>(m), 1.0 / static_cast<double>(m)));
  }

  std::int64_t m() const noexcept { return m_; }
  std::int64_t n() const noexcept { return n_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  bool uniform_weights() const noexcept { return uniform_; }

 private:
  std::int64_t m_;
  std::int64_t n_;
  std::vector<double> weights_;
  bool uniform_ = true;
};

struct LossCurve {
  numerics::Grid1D grid;  // abscissa a, value d(a | m, n)
  std::int64_t m = 0;
  std::int64_t n = 0;
};

/// Dense vector of multinomial cell counts.
class CountVector {
 public:
  explicit CountVector(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw DomainError("CountVector: need at least one cell");
    n_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
  }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  std::uint64_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return counts_.size(); }

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t n_ = 0;
};

/// p(x | n) = int Bi(x | n, t) Be(t | 1/2, 1/2) dt.
inline double reference_predictive(std::int64_t x, std::int64_t n) {
  if (n < 0 || x < 0 || x > n) throw DomainError("reference_predictive: need 0 <= x <= n");
  using numerics::log_gamma;
  const double xd = static_cast<double>(x);
  const double nd = static_cast<double>(n);
  const double lp = log_gamma(xd + 0.5) + log_gamma(nd - xd + 0.5) - log_gamma(xd + 1.0) - log_gamma(nd - xd + 1.0);
  return std::exp(lp) / std::numbers::pi;
}

namespace detail {

inline std::vector<double> reference_predictive_table(std::int64_t n) {
  std::vector<double> p(static_cast<std::size_t>(n) + 1);
  for (std::int64_t x = 0; x <= n; ++x) p[static_cast<std::size_t>(x)] = reference_predictive(x, n);
  return p;
}

// Expected loss for one cell; identical for every cell of a symmetric Dirichlet.
inline double cell_loss(double a, std::int64_t m, std::int64_t n, const std::vector<double>& predictive) {
  const double nd = static_cast<double>(n);
  const double rest = static_cast<double>(m - 1) * a;
  double total = 0.0;
  for (std::int64_t x = 0; x <= n; ++x) {
    const double xd = static_cast<double>(x);
    total += numerics::kl_beta(xd + a, nd - xd + rest, xd + 0.5, nd - xd + 0.5) * predictive[static_cast<std::size_t>(x)];
  }
  return total;
}

}  // namespace detail

/// d(a | m, n): weighted average expected logarithmic loss of Di(a, ..., a).
inline double expected_loss(double a, const RefDistConfig& cfg) {
  if (!(a > 0.0)) throw DomainError("expected_loss: a must be positive");
  const auto predictive = detail::reference_predictive_table(cfg.n());
  const double per_cell = detail::cell_loss(a, cfg.m(), cfg.n(), predictive);
  if (cfg.uniform_weights()) return per_cell;
  double total = 0.0;
  for (double w : cfg.weights()) total += w * per_cell;
  return total;
}

inline constexpr double kBracketLowFactor = 1e-4;  // lower bracket is kBracketLowFactor / m
inline constexpr double kBracketHigh = 10.0;

/// a* = arg min d(a | m, n), searched in log(a) over [1e-4/m, 10].
/// `tol` is relative (the bracket width in log a).
inline numerics::OptimResult optimal_a(const RefDistConfig& cfg, double tol = 1e-6) {
  const auto predictive = detail::reference_predictive_table(cfg.n());
  auto loss = [&](double a) { return detail::cell_loss(a, cfg.m(), cfg.n(), predictive); };
  const double lo = kBracketLowFactor / static_cast<double>(cfg.m());
  auto result = numerics::minimize_log_scale(loss, lo, kBracketHigh, tol, 96);
  if (!result.converged) throw AccuracyError("optimal_a: optimizer did not converge", result.argmin);
  return result;
}

inline LossCurve loss_curve(const RefDistConfig& cfg, const std::vector<double>& a_grid) {
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    if (!(a_grid[i] > 0.0)) throw DomainError("loss_curve: grid values must be positive");
    if (i > 0 && !(a_grid[i] > a_grid[i - 1])) throw DomainError("loss_curve: grid must be increasing");
  }
  const auto predictive = detail::reference_predictive_table(cfg.n());
  std::vector<double> values;
  values.reserve(a_grid.size());
  for (double a : a_grid) values.push_back(detail::cell_loss(a, cfg.m(), cfg.n(), predictive));
  return LossCurve{numerics::Grid1D(a_grid, std::move(values)), cfg.m(), cfg.n()};
}

/// Posterior means (x_i + a) / (n + m a) under Di(a, ..., a).
inline std::vector<double> dirichlet_posterior_means(const CountVector& x, double a) {
  if (!(a > 0.0)) throw DomainError("dirichlet_posterior_means: a must be positive");
  const double total = static_cast<double>(x.n()) + static_cast<double>(x.m()) * a;
  std::vector<double> means;
  means.reserve(x.m());
  for (auto c : x.counts()) means.push_back((static_cast<double>(c) + a) / total);
  return means;
}

/// Marginal Be(x_i + a, n - x_i + (m-1) a) variances under Di(a, ..., a).
inline std::vector<double> dirichlet_posterior_variances(const CountVector& x, double a) {
  if (!(a > 0.0)) throw DomainError("dirichlet_posterior_variances: a must be positive");
  const double total = static_cast<double>(x.n()) + static_cast<double>(x.m()) * a;
  std::vector<double> vars;
  vars.reserve(x.m());
  for (auto c : x.counts()) {
    const double alpha = static_cast<double>(c) + a;
    const double beta = total - alpha;
    vars.push_back(alpha * beta / (total * total * (total + 1.0)));
  }
  return vars;
}

}  // namespace objprior::refdist
