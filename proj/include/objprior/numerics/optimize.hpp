#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>

#include "objprior/errors.hpp"
#include "objprior/numerics/grid.hpp"

namespace objprior::numerics {

struct OptimResult {
  double argmin = 0.0;
  double min_value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;  // final bracket width <= requested tolerance
};

namespace detail {

template <typename F>
double checked_eval(F& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) throw EvaluationError("objective is not finite", x);
  return y;
}

}  // namespace detail

/// Brent's bracketing minimizer (golden section with parabolic steps) on [lo, hi].
/// `tol` is the absolute width the final bracket must reach.
template <typename F>
OptimResult minimize_scalar(F&& f, double lo, double hi, double tol, std::size_t max_iter = 500) {
  if (!(lo < hi)) throw DomainError("minimize_scalar: need lo < hi");
  if (!(tol > 0.0)) throw DomainError("minimize_scalar: tolerance must be positive");

  constexpr double kGolden = 0.3819660112501051;  // (3 - sqrt 5) / 2
  const double tol1 = 0.25 * tol;
  const double tol2 = 2.0 * tol1;

  double a = lo, b = hi;
  double x = a + kGolden * (b - a);
  double w = x, v = x;
  double fx = detail::checked_eval(f, x);
  double fw = fx, fv = fx;
  double d = 0.0, e = 0.0;

  std::size_t iter = 0;
  for (; iter < max_iter; ++iter) {
    const double mid = 0.5 * (a + b);
    if (std::abs(x - mid) <= tol2 - 0.5 * (b - a)) break;

    bool golden = true;
    if (std::abs(e) > tol1) {
      // trial parabola through x, w, v
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (x < mid) ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x < mid) ? b - x : a - x;
      d = kGolden * e;
    }

    const double u = (std::abs(d) >= tol1) ? x + d : x + (d > 0.0 ? tol1 : -tol1);
    const double fu = detail::checked_eval(f, u);

    if (fu <= fx) {
      if (u < x) b = x; else a = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return OptimResult{x, fx, iter, (b - a) <= tol};
}

/// Scan f on `scan_points` equally spaced abscissae, take the first (smallest-x)
/// grid minimum and polish it with Brent inside its neighbouring cells.  Handles
/// non-unimodal objectives and breaks ties toward the left.
template <typename F>
OptimResult scan_minimize(F&& f, double lo, double hi, double tol, std::size_t scan_points = 64) {
  if (!(lo < hi)) throw DomainError("scan_minimize: need lo < hi");
  if (scan_points < 3) scan_points = 3;
  const auto xs = linspace(lo, hi, scan_points);
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double y = detail::checked_eval(f, xs[i]);
    if (y < best_value) {
      best_value = y;
      best = i;
    }
  }
  const double left = xs[best == 0 ? 0 : best - 1];
  const double right = xs[best + 1 == xs.size() ? best : best + 1];
  OptimResult polished = minimize_scalar(f, left, right, tol);
  polished.iterations += scan_points;
  if (best_value < polished.min_value) {
    polished.argmin = xs[best];
    polished.min_value = best_value;
  }
  return polished;
}

/// Minimize over a positive range in log coordinates.  The returned argmin is on
/// the original scale; `rel_tol` bounds the final bracket in log space, i.e. it
/// is a relative tolerance on the argmin.
template <typename F>
OptimResult minimize_log_scale(F&& f, double lo, double hi, double rel_tol, std::size_t scan_points = 64) {
  if (!(lo > 0.0)) throw DomainError("minimize_log_scale: lower bound must be positive");
  auto g = [&f](double t) { return f(std::exp(t)); };
  OptimResult r = scan_minimize(g, std::log(lo), std::log(hi), rel_tol, scan_points);
  r.argmin = std::exp(r.argmin);
  return r;
}

/// Bisection root finder for a continuous f with a sign change on [lo, hi].
template <typename F>
double find_root(F&& f, double lo, double hi, double tol = 1e-14, std::size_t max_iter = 400) {
  double flo = detail::checked_eval(f, lo);
  const double fhi = detail::checked_eval(f, hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw DomainError("find_root: no sign change on bracket");
  for (std::size_t i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= tol * std::max(1.0, std::abs(mid))) return mid;
    const double fm = detail::checked_eval(f, mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  throw AccuracyError("find_root: bisection did not converge", 0.5 * (lo + hi));
}

}  // namespace objprior::numerics
