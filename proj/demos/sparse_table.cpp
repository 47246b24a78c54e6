// Sparse table with m = 1000 cells and counts (2, 1, 0, ..., 0).
// Compares cell estimates under the Jeffreys prior, the overall prior a = 1/m,
// the marginal-likelihood mode and the hierarchical posterior.

#include <cstdio>

#include "objprior/hier.hpp"
#include "objprior/refdist.hpp"

int main() {
  using namespace objprior;
  const std::uint64_t m = 1000;
  const auto table = hier::CountTable::with_nonzero(m, {2, 1});
  std::vector<std::uint64_t> dense(m, 0);
  dense[0] = 2;
  dense[1] = 1;
  const refdist::CountVector x(dense);

  auto show = [&](const char* label, double a) {
    const auto means = refdist::dirichlet_posterior_means(x, a);
    std::printf("%-22s a = %-12.6g  E[theta_1] = %.5f  E[theta_2] = %.5f  empty cell = %.3g\n", label, a, means[0],
                means[1], means[2]);
  };
  show("Jeffreys", 0.5);
  show("overall a = 1/m", 1.0 / static_cast<double>(m));
  show("likelihood mode", hier::likelihood_mode_a(table));
  show("posterior mode", hier::posterior_mode_a(table, hier::PriorKind::exact));

  const auto chain = hier::sample_posterior(table, 20000, 42, hier::PriorKind::exact);
  double mean_a = 0.0, t1 = 0.0;
  for (double a : chain.a_samples) {
    mean_a += a;
    t1 += (2.0 + a) / (3.0 + static_cast<double>(m) * a);
  }
  const double k = static_cast<double>(chain.a_samples.size());
  std::printf("hierarchical chain     E[a] = %.6g  E[theta_1] = %.5f  acceptance %.2f\n", mean_a / k, t1 / k,
              chain.acceptance_rate);
  return 0;
}
