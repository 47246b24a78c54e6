// One PASS/FAIL line per acceptance criterion.
//   acceptance               run every criterion
//   acceptance --criterion N run criterion N only
// Exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "objprior/catalogue.hpp"
#include "objprior/hier.hpp"
#include "objprior/numerics.hpp"
#include "objprior/refdist.hpp"
#include "objprior/shrinkage.hpp"
#include "test_support.hpp"

using namespace objprior;
using objprior::testing::ks_distance;
using objprior::testing::tabulated_cdf;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

double harmonic(std::int64_t n) {
  double c = 0.0;
  for (std::int64_t j = 1; j < n; ++j) c += 1.0 / static_cast<double>(j);
  return c;
}

// n split as evenly as possible over r0 occupied cells
hier::CountTable even_table(std::uint64_t m, std::uint64_t n, std::uint64_t r0) {
  std::vector<std::uint64_t> nz(r0, n / r0);
  for (std::uint64_t i = 0; i < n % r0; ++i) ++nz[i];
  return hier::CountTable::with_nonzero(m, nz);
}

std::vector<double> normalize_log_density(const std::vector<double>& x, const std::vector<double>& logd) {
  const double top = *std::max_element(logd.begin(), logd.end());
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = std::exp(logd[i] - top);
  const double z = numerics::trapezoid(x, d);
  for (double& e : d) e /= z;
  return d;
}

template <typename T>
bool bytes_equal(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() && (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0);
}

// --- 1 ---------------------------------------------------------------------
void reference_distance_optimum(Outcome& out) {
  using refdist::RefDistConfig;
  const double a10 = refdist::optimal_a(RefDistConfig::uniform(10, 100)).argmin;
  const double a1000 = refdist::optimal_a(RefDistConfig::uniform(1000, 100)).argmin;
  out.detail << "a*(10,100)=" << a10 << " a*(1000,100)=" << a1000;
  out.check(rel(a10, 0.083) <= 0.05, "a*(10,100) within 5% of 0.083");
  out.check(rel(a1000, 0.00076) <= 0.10, "a*(1000,100) within 10% of 0.00076");
  double lo = INFINITY, hi = -INFINITY, slowest = 0.0;
  for (std::int64_t m : {10, 100, 200, 1000})
    for (std::int64_t n : {5, 10, 25, 100, 500}) {
      const auto t0 = std::chrono::steady_clock::now();
      const double ma = static_cast<double>(m) * refdist::optimal_a(RefDistConfig::uniform(m, n)).argmin;
      slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      lo = std::min(lo, ma);
      hi = std::max(hi, ma);
      if (ma < 0.7 || ma > 0.9) out.check(false, "m a* in [0.7, 0.9] at m=" + std::to_string(m) + " n=" + std::to_string(n));
    }
  out.detail << " m*a* range [" << lo << ", " << hi << "] slowest " << slowest << "s";
  out.check(slowest < 10.0, "seconds per (m, n)");
}

// --- 2 ---------------------------------------------------------------------
void exact_solution_degeneracy(Outcome& out) {
  double worst_loss = 0.0, worst_a = 0.0;
  for (std::int64_t n : {1, 5, 30, 200}) {
    const auto cfg = refdist::RefDistConfig::uniform(2, n);
    worst_loss = std::max(worst_loss, std::abs(refdist::expected_loss(0.5, cfg)));
    worst_a = std::max(worst_a, std::abs(refdist::optimal_a(cfg).argmin - 0.5));
  }
  out.detail << "max |d(1/2)|=" << worst_loss << " max |a*-1/2|=" << worst_a;
  out.check(worst_loss <= 1e-12, "loss at a = 1/2 is zero");
  out.check(worst_a <= 0.5 * 1e-5, "optimal_a returns 1/2");
}

// --- 3 ---------------------------------------------------------------------
void normal_closed_forms(Outcome& out) {
  double worst = 0.0;
  for (std::int64_t n = 2; n <= 50; ++n)
    worst = std::max({worst, std::abs(refdist::d_mu(1.0, n)), std::abs(refdist::d_sigma(1.0, n))});
  out.detail << "max |d(1, n)|=" << worst;
  out.check(worst <= 1e-12, "d_mu(1, n) = d_sigma(1, n) = 0");
  const auto grid = numerics::linspace(0.05, 4.0, 400);
  for (std::int64_t n : {2, 3, 5, 10, 25, 50}) {
    for (auto [name, d] : std::vector<std::pair<const char*, std::function<double(double)>>>{
             {"d_mu", [n](double a) { return refdist::d_mu(a, n); }},
             {"d_sigma", [n](double a) { return refdist::d_sigma(a, n); }}}) {
      std::vector<double> deriv;
      for (double a : grid) {
        const double h = 1e-5 * a;
        deriv.push_back((d(a + h) - d(a - h)) / (2.0 * h));
      }
      int changes = 0;
      double where = NAN;
      for (std::size_t i = 1; i < deriv.size(); ++i)
        if ((deriv[i - 1] < 0.0) != (deriv[i] < 0.0)) {
          ++changes;
          where = 0.5 * (grid[i - 1] + grid[i]);
        }
      const double cell = grid[1] - grid[0];
      if (changes != 1 || std::abs(where - 1.0) > cell)
        out.check(false, std::string(name) + " single sign change at 1 for n=" + std::to_string(n));
    }
  }
}

// --- 4 ---------------------------------------------------------------------
void sparse_table_means(Outcome& out) {
  std::vector<std::uint64_t> counts(1000, 0);
  counts[0] = 2;
  counts[1] = 1;
  const refdist::CountVector x(counts);
  const auto jeff = refdist::dirichlet_posterior_means(x, 0.5);
  const auto overall = refdist::dirichlet_posterior_means(x, 1.0 / 1000.0);
  out.detail << "Jeffreys " << jeff[0] << ", " << jeff[1] << "; overall " << overall[0] << ", " << overall[1];
  out.check(rel(jeff[0], 2.5 / 503.0) < 1e-14 && rel(jeff[1], 1.5 / 503.0) < 1e-14, "Jeffreys means");
  out.check(rel(overall[0], 2.001 / 4.0) < 1e-14 && rel(overall[1], 1.001 / 4.0) < 1e-14, "overall-prior means");
  out.check(rel(jeff[2], 0.5 / 503.0) < 1e-14 && rel(overall[2], 0.001 / 4.0) < 1e-14, "empty-cell means");
}

// --- 5 ---------------------------------------------------------------------
void hierarchical_prior_propriety(Outcome& out) {
  for (auto [m, n] : std::vector<std::pair<std::int64_t, std::int64_t>>{{10, 5}, {150, 10}, {500, 10}}) {
    const std::string tag = " (" + std::to_string(m) + "," + std::to_string(n) + ")";
    const double total = hier::reference_prior_mass(m, n);
    std::vector<double> masses;
    for (double upper = 1e3; upper <= 1.6e4; upper *= 2.0) masses.push_back(hier::reference_prior_mass(m, n, upper));
    bool stable = std::isfinite(total);
    for (std::size_t i = 2; i < masses.size(); ++i)
      stable = stable && masses[i] > masses[i - 1] && (total - masses[i]) < 0.75 * (total - masses[i - 1]);
    stable = stable && rel(masses.back(), total) < 1e-4;
    out.check(stable, "finite normalizer stable under doubling" + tag);

    std::vector<double> la, lp;
    for (double a : numerics::logspace(1e-8, 1e-6, 21)) {
      la.push_back(std::log(a));
      lp.push_back(hier::log_reference_prior_exact(a, m, n));
    }
    const double slope = (lp.back() - lp.front()) / (la.back() - la.front());
    out.check(std::abs(slope + 0.5) <= 0.05, "small-a slope" + tag);

    const double limit = std::sqrt((m - 1.0) * harmonic(n) / static_cast<double>(m));
    const double got = hier::reference_prior_exact(1e-10, m, n) * std::sqrt(1e-10);
    out.check(rel(got, limit) <= 0.02, "sqrt(a) pi(a) limit" + tag);
    out.detail << tag << " mass=" << total << " slope=" << slope << " ratio=" << got / limit;
  }
}

// --- 6 ---------------------------------------------------------------------
void likelihood_mode(Outcome& out) {
  for (std::uint64_t m : {100u, 1000u}) {
    const double ma = static_cast<double>(m) * hier::likelihood_mode_a(hier::CountTable::with_nonzero(m, {2, 1}));
    out.detail << "m=" << m << " m*a=" << ma << ' ';
    out.check(ma >= 1.35 && ma <= 1.48, "m a-hat in [1.35, 1.48] for m=" + std::to_string(m));
  }
}

// --- 7 ---------------------------------------------------------------------
void log_concavity(Outcome& out) {
  std::mt19937_64 rng(7001);
  const auto grid = numerics::logspace(1e-6, 1e3, 300);
  int certified = 0;
  double first_violation = INFINITY;
  double worst_fd = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    std::uniform_int_distribution<int> cells(3, 12), cnt(1, 8);
    std::vector<std::uint64_t> nz(static_cast<std::size_t>(cells(rng)));
    for (auto& c : nz) c = static_cast<std::uint64_t>(cnt(rng));
    std::uniform_int_distribution<std::uint64_t> extra(0, 500);
    const auto x = hier::CountTable::with_nonzero(nz.size() + extra(rng), nz);
    if (hier::log_concavity_certificate(x, grid)) {
      ++certified;
    } else if (auto bad = hier::log_concavity_violation(x, grid)) {
      first_violation = std::min(first_violation, *bad);
    }
    for (double a : {1e-5, 1e-3, 0.05, 1.0, 20.0}) {
      const double h = 1e-3 * a;
      auto f = [&x](double t) { return hier::posterior_log_density_a(t, x, hier::PriorKind::approx); };
      const double fd = (f(a + h) - 2.0 * f(a) + f(a - h)) / (h * h);
      const double exact = hier::log_posterior_second_derivative(x, a);
      worst_fd = std::max(worst_fd, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
    }
  }
  out.detail << "certified " << certified << "/100, smallest a with positive second derivative " << first_violation
             << ", worst finite-difference error " << worst_fd;
  out.check(certified == 100, "certificate on a in [1e-6, 1e3]");
  out.check(worst_fd <= 1e-5, "second derivative matches finite differences");
}

// --- 8 ---------------------------------------------------------------------
void large_m_limit(Outcome& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto v = numerics::logspace(1e-4, 1e4, 4000);
  for (auto [n, r0] : std::vector<std::pair<std::int64_t, std::int64_t>>{{10, 2}, {10, 5}, {50, 10}}) {
    const hier::LimitProfile prof(n, r0);
    std::vector<double> lpsi;
    for (double t : v) lpsi.push_back(hier::limit_log_density_psi(t, prof));
    const auto psi = normalize_log_density(v, lpsi);
    std::vector<double> sups;
    for (std::uint64_t m : {100u, 1000u, 10000u}) {
      const auto x = even_table(m, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r0));
      const hier::PriorCache cache(static_cast<std::int64_t>(m), n);
      std::vector<double> lp;
      for (double t : v) lp.push_back(hier::posterior_log_density_a(t / static_cast<double>(m), x, cache));
      const auto post = normalize_log_density(v, lp);
      double sup = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) sup = std::max(sup, std::abs(post[i] - psi[i]));
      sups.push_back(sup);
    }
    const std::string tag = " (" + std::to_string(n) + "," + std::to_string(r0) + ")";
    out.detail << tag << " sup " << sups[0] << " > " << sups[1] << " > " << sups[2];
    out.check(sups[2] < 0.02, "sup-norm < 0.02 at m=1e4" + tag);
    out.check(sups[0] > sups[1] && sups[1] > sups[2], "monotone decrease" + tag);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.detail << " runtime " << secs << "s";
  out.check(secs < 60.0, "runtime under one minute");
}

// --- 9 ---------------------------------------------------------------------
void mode_asymptotics(Outcome& out) {
  const std::int64_t n = 10000;
  for (std::int64_t r0 : {5, 20, 100}) {
    const hier::LimitProfile p(n, r0);
    const double numeric = hier::psi_mode_numeric(p);
    const double formula = hier::mode_asymptotic_sparse(p);
    out.detail << "r0=" << r0 << " argmax/formula=" << numeric / formula << ' ';
    out.check(rel(numeric, formula) <= 0.2, "sparse formula within 20% at r0=" + std::to_string(r0));
  }
  const hier::LimitProfile dense(n, n / 2);
  const double numeric = hier::psi_mode_numeric(dense);
  const double formula = hier::mode_asymptotic_dense(dense);
  out.detail << "r0=n/2 argmax/(c* n)=" << numeric / formula << " c*=" << hier::c_star(0.5);
  out.check(rel(numeric, formula) <= 0.2, "c* n within 20% at r0=n/2");
}

// --- 10 --------------------------------------------------------------------
hier::CountTable synthetic_table(std::int64_t m, std::int64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> g(0.2, 1.0);
  std::vector<double> p(static_cast<std::size_t>(m));
  for (double& e : p) e = g(rng);
  std::discrete_distribution<std::size_t> cell(p.begin(), p.end());
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(m), 0);
  for (std::int64_t i = 0; i < n; ++i) ++counts[cell(rng)];
  return hier::CountTable::from_dense(counts);
}

void mcmc_correctness(Outcome& out) {
  const auto x = synthetic_table(50, 20, 17);
  const auto chain = hier::sample_posterior(x, 100000, 2024, hier::PriorKind::exact);
  const double mode = std::log(hier::posterior_mode_a(x, hier::PriorKind::exact));
  const auto t = numerics::linspace(mode - 30.0, mode + 30.0, 60001);
  std::vector<double> lg;
  for (double e : t) lg.push_back(hier::posterior_log_density_a(std::exp(e), x, hier::PriorKind::exact) + e);
  const auto dens = normalize_log_density(t, lg);
  std::vector<double> log_a;
  for (double a : chain.a_samples) log_a.push_back(std::log(a));
  const double ks_a = ks_distance(log_a, tabulated_cdf(t, numerics::normalized_cdf(t, dens)));

  const std::size_t m = 6;
  const double S = 4.5;
  std::mt19937_64 rng(31);
  std::vector<double> log_tau;
  for (int i = 0; i < 100000; ++i) log_tau.push_back(std::log(shrinkage::sample_tau2(S, m, rng, nullptr)));
  const auto u = numerics::linspace(-12.0, 25.0, 200001);
  std::vector<double> tau_dens;
  for (double e : u) tau_dens.push_back(std::exp((1.0 - 0.5 * m) * e - S / (2.0 * std::exp(e)) - std::log1p(std::exp(e))));
  const double ks_tau = ks_distance(log_tau, tabulated_cdf(u, numerics::normalized_cdf(u, tau_dens)));

  out.detail << "KS a-chain=" << ks_a << " KS tau2-step=" << ks_tau;
  out.check(ks_a < 0.03, "a-chain KS");
  out.check(ks_tau < 0.03, "tau2-step KS");

  hier::SamplerOptions opt;
  opt.with_theta = true;
  const auto h1 = hier::sample_posterior(x, 2000, 77, hier::PriorKind::exact, opt);
  const auto h2 = hier::sample_posterior(x, 2000, 77, hier::PriorKind::exact, opt);
  bool same = bytes_equal(h1.a_samples, h2.a_samples) && h1.theta_samples.size() == h2.theta_samples.size();
  for (std::size_t i = 0; same && i < h1.theta_samples.size(); ++i)
    same = bytes_equal(h1.theta_samples[i], h2.theta_samples[i]);
  const shrinkage::MeansData data({1.2, -0.4, 2.2, 0.1, -1.7});
  const auto g1 = shrinkage::gibbs_sample(data, 2000, 5);
  const auto g2 = shrinkage::gibbs_sample(data, 2000, 5);
  same = same && bytes_equal(g1.tau2_samples, g2.tau2_samples);
  for (std::size_t i = 0; same && i < g1.mu_samples.size(); ++i) same = bytes_equal(g1.mu_samples[i], g2.mu_samples[i]);
  out.check(same, "fixed seeds give identical chains");
}

// --- 11 --------------------------------------------------------------------
shrinkage::MeansData simulate_means(std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> x(m);
  for (double& e : x) e = 1.0 + z(rng);  // every mu_i = 1, so |mu|^2 / m = 1
  return shrinkage::MeansData(std::move(x));
}

void multinormal_means(Outcome& out) {
  const double flat = shrinkage::flat_prior_theta_mean(simulate_means(100000, 1));
  shrinkage::GibbsOptions opt;
  opt.keep_mu = false;
  const auto chain = shrinkage::gibbs_sample(simulate_means(200, 7), 20000, 11, opt);
  const auto s = shrinkage::summarize_theta(shrinkage::theta_posterior_samples(chain));
  out.detail << "flat mean=" << flat << " hierarchical mean=" << s.mean << " [" << s.lower << ", " << s.upper << "]";
  out.check(std::abs(flat - 3.0) <= 0.05, "flat-prior mean 3.0 +- 0.05");
  out.check(s.mean >= 0.7 && s.mean <= 1.3, "hierarchical mean in [0.7, 1.3]");
}

// --- 12 --------------------------------------------------------------------
void hypergeometric_reduction(Outcome& out) {
  std::mt19937_64 rng(12);
  std::gamma_distribution<double> g(1.0, 1.0);
  double worst = 0.0;
  std::size_t identities = 0;
  for (std::size_t k = 1; k <= 3; ++k)
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<double> w(k + 1);
      double s = 0.0;
      for (double& e : w) s += (e = g(rng));
      std::vector<double> p(k);
      for (std::size_t j = 0; j < k; ++j) p[j] = w[j] / s;
      for (std::int64_t N = 1; N <= 8; ++N)
        for (std::int64_t n = 0; n <= N; ++n)
          hier::for_each_lattice_point(k, n, [&](const hier::IntVec& r) {
            double mix = 0.0;
            hier::for_each_lattice_point(k, N, [&](const hier::IntVec& R) {
              for (std::size_t j = 0; j < k; ++j)
                if (R[j] < r[j]) return;
              if (N - std::accumulate(R.begin(), R.end(), std::int64_t{0}) < n - std::accumulate(r.begin(), r.end(), std::int64_t{0}))
                return;
              mix += hier::hypergeometric_pmf(r, n, R, N) * hier::multinomial_pmf(R, N, p);
            });
            worst = std::max(worst, std::abs(mix - hier::multinomial_pmf(r, n, p)));
            ++identities;
          });
    }
  out.detail << identities << " identities, max residual " << worst;
  out.check(worst <= 1e-12, "sum_R Hy Mu = Mu");
}

// --- 13 --------------------------------------------------------------------
void beta_average(Outcome& out) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> scale(0.1, 10.0), corr(-0.95, 0.95), loc(-5.0, 5.0);
  std::vector<double> ratios;
  for (int rep = 0; rep < 100; ++rep) {
    const catalogue::BvnParams p{loc(rng), loc(rng), scale(rng), scale(rng), corr(rng)};
    const double avg = numerics::integrate([&p](double b) { return catalogue::right_haar_density(p, b); },
                                           -0.5 * std::numbers::pi, 0.5 * std::numbers::pi, 1e-14) /
                       std::numbers::pi;
    ratios.push_back(avg / catalogue::haar_arithmetic_average(p));
  }
  double worst = 0.0;
  for (double r : ratios) worst = std::max(worst, std::abs(r - ratios.front()) / ratios.front());
  out.detail << "constant=" << ratios.front() << " max relative residual " << worst;
  out.check(worst < 1e-10, "uniform-beta average matches arithmetic average");
}

struct Criterion {
  const char* title;
  void (*run)(Outcome&);
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"reference-distance optimum", reference_distance_optimum},
      {"exact-solution degeneracy at m = 2", exact_solution_degeneracy},
      {"normal closed forms", normal_closed_forms},
      {"sparse-table posterior means", sparse_table_means},
      {"hierarchical prior propriety", hierarchical_prior_propriety},
      {"empirical-Bayes likelihood mode", likelihood_mode},
      {"log-concavity certificate", log_concavity},
      {"large-m limit", large_m_limit},
      {"mode asymptotics", mode_asymptotics},
      {"MCMC correctness", mcmc_correctness},
      {"multi-normal means", multinormal_means},
      {"hypergeometric reduction", hypergeometric_reduction},
      {"beta-average identity", beta_average},
  };
  return all;
}

bool run_one(std::size_t index) {
  const auto& c = criteria()[index - 1];
  Outcome out;
  try {
    c.run(out);
  } catch (const std::exception& e) {
    out.check(false, std::string("exception: ") + e.what());
  }
  std::printf("criterion %2zu %s: %s  %s\n", index, out.pass ? "PASS" : "FAIL", c.title, out.detail.str().c_str());
  std::fflush(stdout);
  return out.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      const long k = std::strtol(argv[++i], nullptr, 10);
      if (k < 1 || static_cast<std::size_t>(k) > criteria().size()) {
        std::fprintf(stderr, "unknown criterion %s\n", argv[i]);
        return 2;
      }
      selected.push_back(static_cast<std::size_t>(k));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (selected.empty())
    for (std::size_t k = 1; k <= criteria().size(); ++k) selected.push_back(k);
  bool ok = true;
  for (std::size_t k : selected) ok = run_one(k) && ok;
  return ok ? 0 : 1;
}
