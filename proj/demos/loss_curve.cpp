// Expected logarithmic loss d(a | m, n) of Di(a, ..., a) and its minimizer
// for a few table sizes; m a* stays close to 0.8.

#include <cstdio>

#include "objprior/numerics/grid.hpp"
#include "objprior/refdist.hpp"

int main() {
  using namespace objprior;
  for (std::int64_t m : {10, 100, 1000}) {
    for (std::int64_t n : {10, 100}) {
      const auto cfg = refdist::RefDistConfig::uniform(m, n);
      const auto best = refdist::optimal_a(cfg);
      std::printf("m = %4lld  n = %3lld  a* = %-10.4g m a* = %.3f  d(a*) = %.4f\n", static_cast<long long>(m),
                  static_cast<long long>(n), best.argmin, static_cast<double>(m) * best.argmin, best.min_value);
    }
  }
  const auto cfg = refdist::RefDistConfig::uniform(10, 100);
  const auto curve = refdist::loss_curve(cfg, numerics::logspace(1e-3, 2.0, 12));
  std::printf("\nd(a | 10, 100)\n");
  for (std::size_t i = 0; i < curve.grid.size(); ++i)
    std::printf("  %10.4g  %.4f\n", curve.grid.points()[i], curve.grid.values()[i]);
  return 0;
}
