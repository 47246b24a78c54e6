#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "objprior/errors.hpp"

namespace objprior::numerics {

/// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson slopes).
/// Preserves monotonicity of the data on every interval and never overshoots.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw DomainError("MonotoneCubic: need at least two matching points");
    std::vector<double> secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double h = x_[i + 1] - x_[i];
      if (!(h > 0.0)) throw DomainError("MonotoneCubic: abscissae must increase");
      secant[i] = (y_[i + 1] - y_[i]) / h;
    }
    slope_.assign(n, 0.0);
    slope_.front() = secant.front();
    slope_.back() = secant.back();
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (secant[i - 1] * secant[i] <= 0.0) continue;
      // weighted harmonic mean (Fritsch-Butland form used by PCHIP)
      const double h0 = x_[i] - x_[i - 1];
      const double h1 = x_[i + 1] - x_[i];
      const double w0 = 2.0 * h1 + h0;
      const double w1 = h1 + 2.0 * h0;
      slope_[i] = (w0 + w1) / (w0 / secant[i - 1] + w1 / secant[i]);
    }
  }

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

  /// Interpolated value; outside the table the end segments extend linearly.
  double operator()(double t) const {
    if (t <= x_.front()) return y_.front() + slope_.front() * (t - x_.front());
    if (t >= x_.back()) return y_.back() + slope_.back() * (t - x_.back());
    const auto it = std::upper_bound(x_.begin(), x_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double s = (t - x_[i]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y_[i] + (s3 - 2 * s2 + s) * h * slope_[i] + (-2 * s3 + 3 * s2) * y_[i + 1] +
           (s3 - s2) * h * slope_[i + 1];
  }

 private:
  std::vector<double> x_, y_, slope_;
};

}  // namespace objprior::numerics
