#pragma once

// Independent unit-variance normal means x_i ~ N(mu_i, 1), i = 1..m, under
// the scale-mixture prior mu_i | tau^2 ~ N(0, tau^2), pi(tau^2) = 1/(1+tau^2),
// and under the reference prior |mu|^{-(m-1)} for the norm |mu|.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "objprior/errors.hpp"
#include "objprior/numerics/integrate.hpp"
#include "objprior/numerics/optimize.hpp"
#include "objprior/numerics/special.hpp"

namespace objprior::shrinkage {

class MeansData {
 public:
  explicit MeansData(std::vector<double> x) : x_(std::move(x)) {
    if (x_.empty()) throw DomainError("MeansData: need at least one observation");
    for (double v : x_)
      if (!std::isfinite(v)) throw DomainError("MeansData: entries must be finite");
  }
  const std::vector<double>& x() const noexcept { return x_; }
  std::size_t m() const noexcept { return x_.size(); }
  double sum_squares() const {
    double s = 0.0;
    for (double v : x_) s += v * v;
    return s;
  }

 private:
  std::vector<double> x_;
};

/// Whitespace-separated reals.
inline MeansData read_means_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open vector file '" + path + "'");
  std::vector<double> x;
  for (std::string line; std::getline(in, line);) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    for (std::string token; fields >> token;) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != token.size()) throw ParseError("vector file: '" + token + "' is not a number");
      x.push_back(v);
    }
  }
  if (x.empty()) throw ParseError("vector file: no values");
  try {
    return MeansData(std::move(x));
  } catch (const DomainError& e) {
    throw ParseError(std::string("vector file: ") + e.what());
  }
}

/// Posterior mean of theta = |mu|^2 / m under the flat prior on mu.
inline double flat_prior_theta_mean(const MeansData& data) {
  return 1.0 + data.sum_squares() / static_cast<double>(data.m());
}

inline double squared_norm(const std::vector<double>& mu) {
  double s = 0.0;
  for (double v : mu) s += v * v;
  return s;
}

namespace detail {

// log of int_0^inf (2 pi tau^2)^{-m/2} exp(-r^2 / (2 tau^2)) w(tau^2) dtau^2 with
// tau^2 = r^2 e^u; log_weight receives log tau^2.  The log-integrand in u is
// concave, so it is centred at its peak and rescaled by its curvature.
template <typename LogWeight>
double log_tau_mixture(double r, std::size_t m, LogWeight&& log_weight, double tol) {
  const double md = static_cast<double>(m);
  const double log_r2 = 2.0 * std::log(r);
  auto h = [&](double u) {
    return -(0.5 * md - 1.0) * u - 0.5 * std::exp(-u) + log_weight(log_r2 + u);
  };
  const double centre0 = -std::log(std::max(md - 2.0, 1.0));
  const double span = 60.0 + std::abs(log_r2);
  const auto peak = numerics::minimize_scalar([&](double u) { return -h(u); }, centre0 - span, centre0 + span, 1e-10);
  const double u0 = peak.argmin;
  const double h0 = h(u0);
  const double d = 1e-3;
  const double curvature = -(h(u0 + d) - 2.0 * h0 + h(u0 - d)) / (d * d);
  const double width = curvature > 0.0 ? 1.0 / std::sqrt(curvature) : 1.0;
  auto g = [&](double z) { return std::exp(h(u0 + width * z) - h0); };
  const double right = numerics::integrate(g, 0.0, numerics::kInfinity, tol);
  const double left = numerics::integrate([&](double z) { return g(-z); }, 0.0, numerics::kInfinity, tol);
  // dtau^2 = tau^2 du, (tau^2)^{-m/2} = r^{-m} e^{-mu/2}
  return -0.5 * md * std::log(2.0 * std::numbers::pi) + (1.0 - 0.5 * md) * log_r2 + h0 + std::log(width) +
         std::log(left + right);
}

inline double checked_norm(const std::vector<double>& mu, const char* name) {
  if (mu.empty()) throw DomainError(std::string(name) + ": empty vector");
  for (double v : mu)
    if (!std::isfinite(v)) throw DomainError(std::string(name) + ": entries must be finite");
  return std::sqrt(squared_norm(mu));
}

}  // namespace detail

/// log of int (2 pi tau^2)^{-m/2} exp(-|mu|^2 / 2tau^2) (1+tau^2)^{-1} dtau^2.
inline double log_hierarchical_prior_density(const std::vector<double>& mu, double tol = 1e-11) {
  const double r = detail::checked_norm(mu, "hierarchical_prior_density");
  const std::size_t m = mu.size();
  if (r == 0.0) {
    if (m >= 2) return std::numeric_limits<double>::infinity();
    // m = 1: int (2 pi s)^{-1/2} / (1 + s) ds = sqrt(pi / 2)
    return 0.5 * std::log(0.5 * std::numbers::pi);
  }
  // -log(1 + tau^2) from log tau^2, without overflow
  auto weight = [](double lt) { return lt > 0.0 ? -lt - std::log1p(std::exp(-lt)) : -std::log1p(std::exp(lt)); };
  return detail::log_tau_mixture(r, m, weight, tol);
}

inline double hierarchical_prior_density(const std::vector<double>& mu, double tol = 1e-11) {
  return std::exp(log_hierarchical_prior_density(mu, tol));
}

/// |mu|^{-(m-1)}.
inline double reference_prior_density(const std::vector<double>& mu) {
  const double r = detail::checked_norm(mu, "reference_prior_density");
  if (r == 0.0) throw DomainError("reference_prior_density: singular at mu = 0");
  return std::pow(r, -(static_cast<double>(mu.size()) - 1.0));
}

/// The same prior written as a normal scale mixture with weight 1/tau on dtau^2,
/// evaluated by quadrature.  Equals c_m |mu|^{-(m-1)} with
/// c_m = (2 pi)^{-m/2} Gamma((m-1)/2) 2^{(m-1)/2}.  Needs m >= 2.
inline double reference_prior_mixture_density(const std::vector<double>& mu, double tol = 1e-11) {
  const double r = detail::checked_norm(mu, "reference_prior_mixture_density");
  if (mu.size() < 2) throw DomainError("reference_prior_mixture_density: mixture diverges for m = 1");
  if (r == 0.0) throw DomainError("reference_prior_mixture_density: singular at mu = 0");
  return std::exp(detail::log_tau_mixture(r, mu.size(), [](double lt) { return -0.5 * lt; }, tol));
}

inline double reference_mixture_constant(std::size_t m) {
  const double md = static_cast<double>(m);
  return std::exp(-0.5 * md * std::log(2.0 * std::numbers::pi) + numerics::log_gamma(0.5 * (md - 1.0)) +
                  0.5 * (md - 1.0) * std::log(2.0));
}

struct ShrinkChain {
  std::vector<std::vector<double>> mu_samples;  // empty when not kept
  std::vector<double> tau2_samples;
  std::vector<double> theta_samples;  // |mu|^2 / m per draw
  std::uint64_t seed = 0;
  double rejection_rate = 0.0;
};

struct GibbsOptions {
  std::size_t burn_in = 100;
  bool keep_mu = true;
};

inline constexpr std::size_t kMaxRejections = 1'000'000;

/// One draw of tau^2 | mu given S = |mu|^2: propose 1/tau^2 ~ Gamma(m/2, rate S/2),
/// accept with probability tau^2/(1+tau^2).  The accepted law has density
/// proportional to (tau^2)^{-m/2} exp(-S/2tau^2) / (1+tau^2).
inline double sample_tau2(double S, std::size_t m, std::mt19937_64& rng, std::size_t* rejected = nullptr) {
  if (!(S > 0.0)) throw DomainError("sample_tau2: need |mu|^2 > 0");
  std::gamma_distribution<double> precision(0.5 * static_cast<double>(m), 2.0 / S);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::size_t i = 0; i < kMaxRejections; ++i) {
    const double tau2 = 1.0 / precision(rng);
    if (unif(rng) < tau2 / (1.0 + tau2)) return tau2;
    if (rejected) ++*rejected;
  }
  throw NumericalConsistencyError("sample_tau2: rejection cap reached");
}

/// Gibbs sampler alternating mu | x, tau^2 and tau^2 | mu.
inline ShrinkChain gibbs_sample(const MeansData& data, std::size_t length, std::uint64_t seed,
                                const GibbsOptions& opt = {}) {
  const std::size_t m = data.m();
  if (m < 3) throw PreconditionError("gibbs_sample: need m >= 3");
  if (length < 1) throw PreconditionError("gibbs_sample: chain length must be at least 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);

  ShrinkChain chain;
  chain.seed = seed;
  chain.tau2_samples.reserve(length);
  chain.theta_samples.reserve(length);
  if (opt.keep_mu) chain.mu_samples.reserve(length);

  double tau2 = std::max(data.sum_squares() / static_cast<double>(m) - 1.0, 0.1);
  std::vector<double> mu(m);
  std::size_t rejected = 0, proposals = 0;
  for (std::size_t it = 0; it < opt.burn_in + length; ++it) {
    const double shrink = tau2 / (1.0 + tau2);
    const double sd = std::sqrt(shrink);
    for (std::size_t i = 0; i < m; ++i) mu[i] = data.x()[i] * shrink + sd * z(rng);
    const double S = squared_norm(mu);
    std::size_t rej = 0;
    tau2 = sample_tau2(S, m, rng, &rej);
    rejected += rej;
    proposals += rej + 1;
    if (it < opt.burn_in) continue;
    chain.tau2_samples.push_back(tau2);
    chain.theta_samples.push_back(S / static_cast<double>(m));
    if (opt.keep_mu) chain.mu_samples.push_back(mu);
  }
  chain.rejection_rate = static_cast<double>(rejected) / static_cast<double>(proposals);
  return chain;
}

/// theta = |mu|^2 / m for every draw.
inline std::vector<double> theta_posterior_samples(const ShrinkChain& chain) {
  if (!chain.mu_samples.empty()) {
    std::vector<double> out;
    out.reserve(chain.mu_samples.size());
    for (const auto& mu : chain.mu_samples) out.push_back(squared_norm(mu) / static_cast<double>(mu.size()));
    return out;
  }
  if (chain.theta_samples.empty()) throw PreconditionError("theta_posterior_samples: empty chain");
  return chain.theta_samples;
}

struct ThetaSummary {
  double mean = 0.0;
  double lower = 0.0;  // 5% quantile
  double upper = 0.0;  // 95% quantile
};

inline ThetaSummary summarize_theta(std::vector<double> draws) {
  if (draws.empty()) throw PreconditionError("summarize_theta: no draws");
  ThetaSummary s;
  for (double v : draws) s.mean += v;
  s.mean /= static_cast<double>(draws.size());
  std::sort(draws.begin(), draws.end());
  auto quantile = [&draws](double p) {
    const double pos = p * static_cast<double>(draws.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return i + 1 < draws.size() ? draws[i] * (1.0 - frac) + draws[i + 1] * frac : draws[i];
  };
  s.lower = quantile(0.05);
  s.upper = quantile(0.95);
  return s;
}

}  // namespace objprior::shrinkage
