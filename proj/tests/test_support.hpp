#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace objprior::testing {

/// Two-sided Kolmogorov-Smirnov distance between a sample and a CDF.
inline double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

/// Piecewise-linear CDF through tabulated (x, F) pairs, clamped to [0, 1].
inline std::function<double(double)> tabulated_cdf(std::vector<double> x, std::vector<double> F) {
  return [x = std::move(x), F = std::move(F)](double t) {
    if (t <= x.front()) return 0.0;
    if (t >= x.back()) return 1.0;
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
    const double w = (t - x[i]) / (x[i + 1] - x[i]);
    return F[i] + w * (F[i + 1] - F[i]);
  };
}

inline double relative_error(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace objprior::testing
