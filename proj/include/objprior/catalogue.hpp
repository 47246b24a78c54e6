#pragma once

// Closed-form reference priors with a common form for every parameter of
// interest, and the bivariate-normal right-Haar family with its averages.
// Kernels are unnormalized; `proper` records whether the kernel integrates.
//
// The unnatural bivariate-normal parameterization, whose reference prior fails
// as an overall prior, is deliberately absent.

#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "objprior/errors.hpp"
#include "objprior/numerics/special.hpp"

namespace objprior::catalogue {

// ---------------------------------------------------------------------------
// Diagonal Fisher information with separable factors f_i(theta_i)

struct DiagFisherSpec {
  std::vector<std::function<double(double)>> f_list;
};

/// sqrt(prod_i f_i(theta_i)).
inline double theorem1_prior(const DiagFisherSpec& spec, std::span<const double> theta) {
  if (theta.size() != spec.f_list.size()) throw DomainError("theorem1_prior: dimension mismatch");
  double prod = 1.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double f = spec.f_list[i](theta[i]);
    if (!(f > 0.0) || !std::isfinite(f)) throw DomainError("theorem1_prior: theta outside the domain of f_" +
                                                           std::to_string(i + 1));
    prod *= f;
  }
  return std::sqrt(prod);
}

namespace detail {

inline void require_open_unit(double t, const char* name) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError(std::string(name) + ": argument must lie in (0, 1)");
}

inline void require_positive(double t, const char* name) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(name) + ": argument must be positive");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bivariate binomial: r ~ Bi(n, theta1), s | r ~ Bi(r, theta2)

inline double bivariate_binomial_prior(double theta1, double theta2) {
  detail::require_open_unit(theta1, "bivariate_binomial_prior");
  detail::require_open_unit(theta2, "bivariate_binomial_prior");
  return 1.0 / std::sqrt(theta1 * (1.0 - theta1) * theta2 * (1.0 - theta2));
}

/// Score vector of one (r, s) observation with n trials.
inline std::pair<double, double> bivariate_binomial_score(int r, int s, int n, double theta1, double theta2) {
  const double d1 = r / theta1 - (n - r) / (1.0 - theta1);
  const double d2 = s / theta2 - (r - s) / (1.0 - theta2);
  return {d1, d2};
}

// ---------------------------------------------------------------------------
// Ordered-cell multinomial: xi_j = theta_j / (theta_j + ... + theta_m)

inline std::vector<double> theta_to_xi(std::span<const double> theta) {
  if (theta.size() < 2) throw DomainError("theta_to_xi: need m >= 2 cells");
  std::vector<double> xi(theta.size() - 1);
  double remaining = 0.0;
  for (double t : theta) {
    if (!(t > 0.0)) throw DomainError("theta_to_xi: cell probabilities must be positive");
    remaining += t;
  }
  for (std::size_t j = 0; j + 1 < theta.size(); ++j) {
    xi[j] = theta[j] / remaining;
    remaining -= theta[j];
  }
  return xi;
}

inline std::vector<double> xi_to_theta(std::span<const double> xi) {
  std::vector<double> theta(xi.size() + 1);
  double survive = 1.0;
  for (std::size_t j = 0; j < xi.size(); ++j) {
    detail::require_open_unit(xi[j], "xi_to_theta");
    theta[j] = xi[j] * survive;
    survive *= 1.0 - xi[j];
  }
  theta.back() = survive;
  return theta;
}

inline double directional_multinomial_prior(std::span<const double> xi) {
  if (xi.empty()) throw DomainError("directional_multinomial_prior: need at least one xi");
  double k = 1.0;
  for (double x : xi) {
    detail::require_open_unit(x, "directional_multinomial_prior");
    k /= std::sqrt(x * (1.0 - x));
  }
  return k;
}

/// Prior induced on (theta_1, ..., theta_{m-1}): the xi kernel times the
/// triangular Jacobian prod_j 1 / (1 - theta_1 - ... - theta_{j-1}).
inline double directional_induced_theta_prior(std::span<const double> theta) {
  const auto xi = theta_to_xi(theta);
  double jac = 1.0, used = 0.0;
  for (std::size_t j = 0; j < xi.size(); ++j) {
    jac /= 1.0 - used;
    used += theta[j];
  }
  return directional_multinomial_prior(xi) * jac;
}

// ---------------------------------------------------------------------------
// Two-parameter exponential family with natural-type parameters (theta1, theta2)

inline double expfam_prior(const std::function<double(double)>& G1pp, const std::function<double(double)>& G2pp,
                           double theta1, double theta2) {
  const double g1 = G1pp(theta1);
  const double g2 = G2pp(theta2);
  if (!(g1 > 0.0) || !(g2 > 0.0)) throw DomainError("expfam_prior: second derivatives must be positive");
  return std::sqrt(g1 * g2);
}

/// One family member: G'' functions, the map from its usual parameters
/// (p1, p2) to (theta1, theta2), and the absolute Jacobian of that map.
struct ExpFamInstance {
  std::string name;
  std::string p1_name, p2_name;
  std::function<double(double)> G1pp, G2pp;
  std::function<std::pair<double, double>(double, double)> to_theta;
  std::function<double(double, double)> jacobian;

  /// Kernel in the (p1, p2) parameterization.
  double prior(double p1, double p2) const {
    const auto [t1, t2] = to_theta(p1, p2);
    return expfam_prior(G1pp, G2pp, t1, t2) * jacobian(p1, p2);
  }
};

namespace detail {

inline double normal_g1pp(double t1) {
  if (!(t1 < 0.0)) throw DomainError("expfam: theta1 must be negative");
  return 0.5 / (t1 * t1);
}

// h(t) = -t + t log(-t) + log Gamma(-t);  h''(t) = 1/t + trigamma(-t)
inline double gamma_g1pp(double t1) {
  if (!(t1 < 0.0)) throw DomainError("expfam: theta1 must be negative");
  return 1.0 / t1 + numerics::trigamma(-t1);
}

}  // namespace detail

/// Normal(mu, sigma): theta1 = -1/(2 sigma^2), theta2 = mu.  Kernel 2/sigma.
inline ExpFamInstance expfam_normal() {
  return {"normal", "mu", "sigma", detail::normal_g1pp, [](double) { return 2.0; },
          [](double mu, double sigma) {
            detail::require_positive(sigma, "expfam_normal");
            return std::pair{-0.5 / (sigma * sigma), mu};
          },
          [](double, double sigma) { return 1.0 / (sigma * sigma * sigma); }};
}

/// Inverse Gaussian(alpha, psi): theta1 = -alpha/2, theta2 = E X = 1/psi.
/// Kernel 1/(alpha sqrt(psi)).
inline ExpFamInstance expfam_inverse_gaussian() {
  return {"inverse-gaussian", "alpha", "psi", detail::normal_g1pp,
          [](double t2) {
            detail::require_positive(t2, "expfam_inverse_gaussian");
            return 2.0 / (t2 * t2 * t2);
          },
          [](double alpha, double psi) {
            detail::require_positive(alpha, "expfam_inverse_gaussian");
            detail::require_positive(psi, "expfam_inverse_gaussian");
            return std::pair{-0.5 * alpha, 1.0 / psi};
          },
          [](double, double psi) { return 0.5 / (psi * psi); }};
}

/// Gamma(alpha, mu): theta1 = -alpha, theta2 = mu.
/// Kernel sqrt(alpha trigamma(alpha) - 1) / (sqrt(alpha) mu).
inline ExpFamInstance expfam_gamma() {
  return {"gamma", "alpha", "mu", detail::gamma_g1pp,
          [](double t2) {
            detail::require_positive(t2, "expfam_gamma");
            return 1.0 / (t2 * t2);
          },
          [](double alpha, double mu) {
            detail::require_positive(alpha, "expfam_gamma");
            detail::require_positive(mu, "expfam_gamma");
            return std::pair{-alpha, mu};
          },
          [](double, double) { return 1.0; }};
}

/// Inverse gamma(alpha, mu): same G functions and parameter map as the gamma
/// row (U1 = log x, U2 = 1/x).
inline ExpFamInstance expfam_inverse_gamma() {
  auto inst = expfam_gamma();
  inst.name = "inverse-gamma";
  return inst;
}

// ---------------------------------------------------------------------------
// Stress-strength: X ~ Exp(mean eta1) (m draws), Y ~ Exp(mean eta2) (n draws)

inline double stress_strength_prior(double theta, double psi) {
  detail::require_open_unit(theta, "stress_strength_prior");
  detail::require_positive(psi, "stress_strength_prior");
  return 1.0 / (theta * (1.0 - theta) * psi);
}

/// (eta1, eta2) -> (theta, psi) with theta = eta1/(eta1+eta2) and
/// psi = eta1^{(m+n)/n} eta2^{(m+n)/m}.
inline std::pair<double, double> eta_to_theta_psi(double eta1, double eta2, double m, double n) {
  detail::require_positive(eta1, "eta_to_theta_psi");
  detail::require_positive(eta2, "eta_to_theta_psi");
  const double psi = std::exp((m + n) / n * std::log(eta1) + (m + n) / m * std::log(eta2));
  return {eta1 / (eta1 + eta2), psi};
}

inline std::pair<double, double> theta_psi_to_eta(double theta, double psi, double m, double n) {
  detail::require_open_unit(theta, "theta_psi_to_eta");
  detail::require_positive(psi, "theta_psi_to_eta");
  const double p = (m + n) / n;
  const double q = (m + n) / m;
  const double log_s = (std::log(psi) - p * std::log(theta) - q * std::log1p(-theta)) / (p + q);
  const double s = std::exp(log_s);
  return {theta * s, (1.0 - theta) * s};
}

// ---------------------------------------------------------------------------
// Bivariate normal right-Haar priors

struct BvnParams {
  double mu1 = 0.0, mu2 = 0.0;
  double sigma1 = 1.0, sigma2 = 1.0;
  double rho = 0.0;

  void validate() const {
    if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) throw DomainError("BvnParams: scales must be positive");
    if (!(std::abs(rho) < 1.0)) throw DomainError("BvnParams: need |rho| < 1");
  }
};

/// Right-Haar prior from the data rotated by beta.  beta = pi/2 gives
/// 1/[sigma2^2 (1-rho^2)], beta = 0 gives 1/[sigma1^2 (1-rho^2)].
inline double right_haar_density(const BvnParams& p, double beta) {
  p.validate();
  const double s = std::sin(beta), c = std::cos(beta);
  const double s1 = p.sigma1, s2 = p.sigma2;
  return (s * s * s1 * s1 + c * c * s2 * s2 + 2.0 * s * c * p.rho * s1 * s2) /
         (s1 * s1 * s2 * s2 * (1.0 - p.rho * p.rho));
}

inline double haar_arithmetic_average(const BvnParams& p) {
  p.validate();
  const double q = 1.0 - p.rho * p.rho;
  return 0.5 / (p.sigma1 * p.sigma1 * q) + 0.5 / (p.sigma2 * p.sigma2 * q);
}

inline double haar_geometric_average(const BvnParams& p) {
  p.validate();
  return 1.0 / (p.sigma1 * p.sigma2 * (1.0 - p.rho * p.rho));
}

// ---------------------------------------------------------------------------
// Registry

struct CatalogueEntry {
  std::string name;
  std::vector<std::string> parameters;  // empty: any number >= 1 (named in `domain`)
  std::string domain;
  bool proper = false;
  std::function<double(std::span<const double>)> kernel;
};

inline std::vector<CatalogueEntry> catalogue_entries() {
  auto expfam_entry = [](ExpFamInstance inst) {
    CatalogueEntry e;
    e.name = inst.name + "-expfam";
    e.parameters = {inst.p1_name, inst.p2_name};
    e.domain = inst.name == "normal" ? "mu real, sigma > 0" : inst.p1_name + " > 0, " + inst.p2_name + " > 0";
    e.proper = false;
    e.kernel = [inst](std::span<const double> v) { return inst.prior(v[0], v[1]); };
    return e;
  };
  auto bvn = [](std::span<const double> v) { return BvnParams{0.0, 0.0, v[0], v[1], v[2]}; };
  std::vector<CatalogueEntry> out;
  out.push_back({"bivariate-binomial", {"theta1", "theta2"}, "theta1, theta2 in (0,1)", true,
                 [](std::span<const double> v) { return bivariate_binomial_prior(v[0], v[1]); }});
  out.push_back({"directional-multinomial", {}, "xi_1..xi_{m-1} in (0,1)", true,
                 [](std::span<const double> v) { return directional_multinomial_prior(v); }});
  out.push_back({"location-scale", {"mu", "sigma"}, "mu real, sigma > 0", false,
                 [](std::span<const double> v) {
                   detail::require_positive(v[1], "location-scale");
                   return 1.0 / v[1];
                 }});
  out.push_back(expfam_entry(expfam_normal()));
  out.push_back(expfam_entry(expfam_inverse_gaussian()));
  out.push_back(expfam_entry(expfam_gamma()));
  out.push_back(expfam_entry(expfam_inverse_gamma()));
  out.push_back({"stress-strength", {"theta", "psi"}, "theta in (0,1), psi > 0", false,
                 [](std::span<const double> v) { return stress_strength_prior(v[0], v[1]); }});
  out.push_back({"right-haar", {"sigma1", "sigma2", "rho", "beta"}, "sigma1, sigma2 > 0, |rho| < 1, beta in (-pi/2, pi/2]",
                 false, [bvn](std::span<const double> v) { return right_haar_density(bvn(v), v[3]); }});
  out.push_back({"arithmetic-average", {"sigma1", "sigma2", "rho"}, "sigma1, sigma2 > 0, |rho| < 1", false,
                 [bvn](std::span<const double> v) { return haar_arithmetic_average(bvn(v)); }});
  out.push_back({"geometric-average", {"sigma1", "sigma2", "rho"}, "sigma1, sigma2 > 0, |rho| < 1", false,
                 [bvn](std::span<const double> v) { return haar_geometric_average(bvn(v)); }});
  return out;
}

inline const CatalogueEntry* find_entry(const std::vector<CatalogueEntry>& entries, const std::string& name) {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

/// Evaluate an entry, checking the argument count.
inline double evaluate_entry(const CatalogueEntry& e, std::span<const double> point) {
  if (e.parameters.empty() ? point.empty() : point.size() != e.parameters.size())
    throw DomainError(e.name + ": expected " +
                      (e.parameters.empty() ? std::string("at least one value")
                                            : std::to_string(e.parameters.size()) + " values"));
  return e.kernel(point);
}

}  // namespace objprior::catalogue
