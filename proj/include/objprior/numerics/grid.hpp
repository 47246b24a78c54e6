#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "objprior/errors.hpp"

namespace objprior::numerics {

/// Tabulated function: strictly increasing abscissae with finite values.
class Grid1D {
 public:
  Grid1D() = default;
  Grid1D(std::vector<double> points, std::vector<double> values)
      : points_(std::move(points)), values_(std::move(values)) {
    if (points_.size() != values_.size()) throw DomainError("Grid1D: points and values differ in length");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (!std::isfinite(points_[i]) || !std::isfinite(values_[i]))
        throw DomainError("Grid1D: non-finite entry");
      if (i > 0 && !(points_[i] > points_[i - 1])) throw DomainError("Grid1D: points must be strictly increasing");
    }
  }

  template <typename F>
  static Grid1D tabulate(std::vector<double> points, F&& f) {
    std::vector<double> values;
    values.reserve(points.size());
    for (double x : points) values.push_back(f(x));
    return Grid1D(std::move(points), std::move(values));
  }

  std::span<const double> points() const noexcept { return points_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }

 private:
  std::vector<double> points_;
  std::vector<double> values_;
};

inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count < 2) return {lo};
  std::vector<double> out(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

inline std::vector<double> logspace(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > 0.0)) throw DomainError("logspace: bounds must be positive");
  auto out = linspace(std::log(lo), std::log(hi), count);
  for (double& x : out) x = std::exp(x);
  out.front() = lo;
  if (count >= 2) out.back() = hi;
  return out;
}

/// Composite trapezoid rule over an arbitrary (non-uniform) grid.
inline double trapezoid(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return sum;
}

inline double trapezoid(const Grid1D& g) { return trapezoid(g.points(), g.values()); }

/// Running trapezoid integral, normalized so the last entry is 1.
inline std::vector<double> normalized_cdf(std::span<const double> x, std::span<const double> density) {
  std::vector<double> cdf(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); ++i)
    cdf[i] = cdf[i - 1] + 0.5 * (x[i] - x[i - 1]) * (density[i] + density[i - 1]);
  const double total = cdf.back();
  if (!(total > 0.0)) throw DomainError("normalized_cdf: density has no mass");
  for (double& c : cdf) c /= total;
  return cdf;
}

}  // namespace objprior::numerics
