#pragma once

// Adaptive double-exponential (tanh-sinh) quadrature.
//
// The tanh-sinh substitution clusters nodes doubly-exponentially toward both
// endpoints, so integrable endpoint singularities such as x^{-1/2} need no
// special treatment.  A semi-infinite range [lo, inf) is first mapped to
// [0, 1) with u = t / (1 + t), t = x - lo.  Nodes carry their exact distance to
// each endpoint so that the mapped integrand never forms 1 - u by cancellation.
// When the level refinement stalls, the interval is bisected.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "objprior/errors.hpp"

namespace objprior::numerics {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct IntegrationOptions {
  int max_level = 7;   // step h = 2^-max_level at the finest level
  int max_depth = 14;  // bisection depth
  double t_max = 4.5;  // truncation of the tanh-sinh abscissa
};

namespace detail {

struct QuadEstimate {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;  // estimate of int |f|, the scale the tolerance refers to
};

// g(x, dist_lo, dist_hi) on [lo, hi]; dist_* are the exact distances to the
// global endpoints of the original interval.
template <typename G>
QuadEstimate tanh_sinh_level_sweep(G& g, double lo, double hi, double glo_offset, double ghi_offset,
                                   const IntegrationOptions& opt, double rel_tol) {
  const double half = 0.5 * (hi - lo);
  constexpr double kHalfPi = 0.5 * std::numbers::pi;

  auto node = [&](double t, double& sum, double& abs_sum) {
    // s = (pi/2) sinh t;  x = (lo + hi)/2 + half * tanh s
    const double s = kHalfPi * std::sinh(t);
    const double e = std::exp(-2.0 * std::abs(s));
    const double delta = half * 2.0 * e / (1.0 + e);  // half * (1 - tanh|s|)
    const double weight = half * kHalfPi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
    if (weight == 0.0 || delta == 0.0) return;
    double x, dlo, dhi;
    if (s >= 0.0) {
      x = hi - delta;
      dhi = ghi_offset + delta;
      dlo = glo_offset + (x - lo);
    } else {
      x = lo + delta;
      dlo = glo_offset + delta;
      dhi = ghi_offset + (hi - x);
    }
    if (!(x > lo && x < hi)) return;
    const double y = g(x, dlo, dhi);
    if (!std::isfinite(y)) throw EvaluationError("integrand is not finite", x);
    sum += weight * y;
    abs_sum += weight * std::abs(y);
  };

  double h = 1.0;
  double sum = 0.0;
  double abs_sum = 0.0;
  node(0.0, sum, abs_sum);
  for (double t = h; t <= opt.t_max; t += h) {
    node(t, sum, abs_sum);
    node(-t, sum, abs_sum);
  }
  double estimate = sum * h;
  double previous = estimate;
  double err = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= opt.max_level; ++level) {
    h *= 0.5;
    for (double t = h; t <= opt.t_max; t += 2.0 * h) {
      node(t, sum, abs_sum);
      node(-t, sum, abs_sum);
    }
    estimate = sum * h;
    err = std::abs(estimate - previous);
    if (level >= 3 && err <= rel_tol * abs_sum * h) break;
    previous = estimate;
  }
  return {estimate, err, abs_sum * h};
}

template <typename G>
QuadEstimate adaptive(G& g, double lo, double hi, double glo, double ghi, double tol, int depth,
                      const IntegrationOptions& opt) {
  QuadEstimate whole = tanh_sinh_level_sweep(g, lo, hi, glo, ghi, opt, tol);
  if (whole.error <= tol * whole.l1 || depth >= opt.max_depth) return whole;
  const double mid = 0.5 * (lo + hi);
  QuadEstimate left = adaptive(g, lo, mid, glo, ghi + (hi - mid), tol, depth + 1, opt);
  QuadEstimate right = adaptive(g, mid, hi, glo + (mid - lo), ghi, tol, depth + 1, opt);
  return {left.value + right.value, left.error + right.error, left.l1 + right.l1};
}

}  // namespace detail

/// int_lo^hi f(x) dx; `tol` is relative to int |f|.  `hi` may be +infinity.
/// Throws AccuracyError (carrying the best estimate) when the tolerance is not met.
template <typename F>
double integrate(F&& f, double lo, double hi, double tol = 1e-10, IntegrationOptions opt = {}) {
  if (!std::isfinite(lo)) throw DomainError("integrate: lower limit must be finite");
  if (!(hi > lo)) throw DomainError("integrate: need lo < hi");
  if (!(tol > 0.0)) throw DomainError("integrate: tolerance must be positive");

  detail::QuadEstimate result;
  if (std::isinf(hi)) {
    // x = lo + u / (1 - u), dx = du / (1 - u)^2 ; dist_hi is exactly 1 - u
    auto g = [&f, lo](double u, double, double one_minus_u) {
      const double x = lo + u / one_minus_u;
      if (std::isinf(x)) return 0.0;
      const double fx = f(x);
      if (fx == 0.0) return 0.0;
      return fx / (one_minus_u * one_minus_u);
    };
    result = detail::adaptive(g, 0.0, 1.0, 0.0, 0.0, tol, 0, opt);
  } else {
    auto g = [&f](double x, double, double) { return f(x); };
    result = detail::adaptive(g, lo, hi, 0.0, 0.0, tol, 0, opt);
  }
  if (!(result.error <= tol * result.l1))
    throw AccuracyError("integrate: tolerance not reached", result.value);
  return result.value;
}

}  // namespace objprior::numerics
