#pragma once

// Posterior sampling of (a, theta) for the hierarchical multinomial.
//
// a is updated on t = log a, either by a random-walk Metropolis step whose
// scale is tuned during a discarded warm-up, or by a stepping-out slice move.
// Given a, theta | x, a ~ Dirichlet(x_1 + a, ..., x_m + a).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "objprior/errors.hpp"
#include "objprior/hier/count_table.hpp"
#include "objprior/hier/posterior.hpp"
#include "objprior/hier/reference_prior.hpp"

namespace objprior::hier {

struct HierChain {
  std::vector<double> a_samples;
  std::vector<std::vector<double>> theta_samples;  // empty unless requested
  std::uint64_t seed = 0;
  double acceptance_rate = 0.0;
  double proposal_scale = 0.0;  // final random-walk scale on log a
};

enum class AMove { metropolis, slice };

struct SamplerOptions {
  std::size_t warmup = 2000;
  bool with_theta = false;
  AMove move = AMove::metropolis;
  double target_low = 0.30;
  double target_high = 0.45;
  std::size_t adapt_batch = 50;
  double slice_width = 1.0;
};

namespace detail {

inline std::vector<double> dirichlet_draw(const CountTable& x, double a, std::mt19937_64& rng) {
  const auto m = static_cast<std::size_t>(x.m());
  std::vector<double> theta(m);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    std::gamma_distribution<double> g(static_cast<double>(x.count(i + 1)) + a, 1.0);
    theta[i] = g(rng);
    total += theta[i];
  }
  for (double& v : theta) v /= total;
  return theta;
}

// Neal's stepping-out and shrinkage on a univariate log density.
template <typename LogDensity>
double slice_step(LogDensity& g, double t0, double g0, double width, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  const double level = g0 - expo(rng);
  double left = t0 - width * unif(rng);
  double right = left + width;
  constexpr int kMaxSteps = 64;
  for (int i = 0; i < kMaxSteps && g(left) > level; ++i) left -= width;
  for (int i = 0; i < kMaxSteps && g(right) > level; ++i) right += width;
  for (;;) {
    const double t1 = left + (right - left) * unif(rng);
    if (g(t1) > level) return t1;
    if (t1 < t0) left = t1; else right = t1;
  }
}

}  // namespace detail

/// Draw `length` post-warm-up states.  The chain is a deterministic function
/// of (x, length, seed, prior, options).
inline HierChain sample_posterior(const CountTable& x, std::size_t length, std::uint64_t seed, PriorKind prior,
                                  const SamplerOptions& opt = {}) {
  if (length < 1) throw PreconditionError("sample_posterior: chain length must be at least 1");
  std::optional<PriorCache> cache;
  if (prior == PriorKind::exact) cache.emplace(static_cast<std::int64_t>(x.m()), static_cast<std::int64_t>(x.n()));

  // density of t = log a, including the Jacobian a
  auto g = [&](double t) {
    const double a = std::exp(t);
    const double lp = cache ? posterior_log_density_a(a, x, *cache) : posterior_log_density_a(a, x, prior);
    return std::isfinite(lp) ? lp + t : -std::numeric_limits<double>::infinity();
  };

  double t = -std::log(static_cast<double>(x.m()));
  if (x.r0() >= 2) {
    try {
      t = std::log(posterior_mode_a(x, prior));
    } catch (const std::exception&) {
    }
  }
  double gt = g(t);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> step(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  HierChain chain;
  chain.seed = seed;
  chain.a_samples.reserve(length);
  if (opt.with_theta) chain.theta_samples.reserve(length);

  double scale = 1.0;
  std::size_t batch_accepted = 0, batch_total = 0, accepted = 0;
  const std::size_t total_steps = opt.warmup + length;
  for (std::size_t it = 0; it < total_steps; ++it) {
    const bool warm = it < opt.warmup;
    if (opt.move == AMove::slice) {
      t = detail::slice_step(g, t, gt, opt.slice_width, rng);
      gt = g(t);
      if (!warm) ++accepted;
    } else {
      const double proposal = t + scale * step(rng);
      const double gp = g(proposal);
      const bool accept = std::log(unif(rng)) < gp - gt;
      if (accept) {
        t = proposal;
        gt = gp;
      }
      if (warm) {
        batch_accepted += accept;
        if (++batch_total == opt.adapt_batch) {
          const double rate = static_cast<double>(batch_accepted) / static_cast<double>(batch_total);
          if (rate < opt.target_low) scale *= 0.8;
          else if (rate > opt.target_high) scale *= 1.25;
          batch_accepted = batch_total = 0;
        }
      } else {
        accepted += accept;
      }
    }
    if (warm) continue;
    const double a = std::exp(t);
    chain.a_samples.push_back(a);
    if (opt.with_theta) chain.theta_samples.push_back(detail::dirichlet_draw(x, a, rng));
  }
  chain.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(length);
  chain.proposal_scale = opt.move == AMove::slice ? opt.slice_width : scale;
  return chain;
}

}  // namespace objprior::hier
