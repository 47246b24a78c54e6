#pragma once

// Reference hyperprior for the symmetric Dirichlet parameter a of an m-cell
// multinomial with n observations, and its proper Be(1/2, 1) approximation.

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "objprior/errors.hpp"
#include "objprior/hier/marginal.hpp"
#include "objprior/numerics/integrate.hpp"
#include "objprior/numerics/interp.hpp"

namespace objprior::hier {

enum class PriorKind { exact, approx };

inline PriorKind parse_prior_kind(std::string_view name) {
  if (name == "exact") return PriorKind::exact;
  if (name == "approx") return PriorKind::approx;
  throw DomainError("unknown prior kind '" + std::string(name) + "' (expected exact|approx)");
}

inline const char* to_string(PriorKind kind) { return kind == PriorKind::exact ? "exact" : "approx"; }

/// Counts bracket values that fell in [-kBracketFloor, 0) and were set to zero.
struct PriorDiagnostics {
  std::size_t clamped = 0;
};

inline constexpr double kBracketFloor = 1e-10;

/// F(a) = sum_{j<n} [Q(j)/(a+j)^2 - m/(ma+j)^2].
///
/// For a <= 1 the sum is evaluated as written (the j = 0 term uses Q(0) - 1/m
/// formed without cancellation).  For a > 1 the O(1/a^2) and O(1/a^3) parts
/// cancel analytically; they are removed using
///   1/(a+j)^2 = 1/a^2 - 2j/a^3 + j^2(3a+2j) / (a^3 (a+j)^2),
///   sum_j Q(j) = n/m,   sum_j j Q(j) = E[X(X-1)]/2 = n(n-1)(a+1) / (2m(ma+1)),
/// which leaves only O(1/a^4) terms.
inline double reference_prior_bracket(double a, std::int64_t m, std::int64_t n) {
  detail::require_single_cell_domain(a, m, n, "reference_prior_bracket");
  const auto q = tail_table(a, m, n);
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  double sum = 0.0;
  if (a <= 1.0) {
    // Q(0) - 1/m = -((m-1)/m) expm1(L'); formed directly so it survives when Q(0) rounds to 1/m
    const double excess = -(md - 1.0) / md * std::expm1(detail::log_empty_cell_excess(a, md, n));
    sum = excess / a / a;
    for (std::int64_t j = 1; j < n; ++j) {
      const double jd = static_cast<double>(j);
      sum += q[static_cast<std::size_t>(j)] / ((a + jd) * (a + jd)) - md / ((md * a + jd) * (md * a + jd));
    }
    return sum;
  }
  const double a3 = a * a * a;
  auto remainder = [a, a3](double j) { return j * j * (3.0 * a + 2.0 * j) / (a3 * (a + j) * (a + j)); };
  double cell = 0.0, uniform = 0.0;
  for (std::int64_t j = 1; j < n; ++j) {
    const double jd = static_cast<double>(j);
    cell += q[static_cast<std::size_t>(j)] * remainder(jd);
    uniform += remainder(jd / md);
  }
  sum = cell - uniform / md - nd * (nd - 1.0) * (md - 1.0) / (md * md * a3 * (md * a + 1.0));
  return sum;
}

/// Unnormalized pi^R(a | m, n) = sqrt(F(a)).  For n = 1 the bracket vanishes
/// identically and the value is 0 for every a.
inline double reference_prior_exact(double a, std::int64_t m, std::int64_t n, PriorDiagnostics* diag = nullptr) {
  const double f = reference_prior_bracket(a, m, n);
  if (f >= 0.0) return std::sqrt(f);
  if (f >= -kBracketFloor) {
    if (diag) ++diag->clamped;
    return 0.0;
  }
  throw NumericalConsistencyError("reference prior bracket is negative (" + std::to_string(f) + ") at a=" +
                                  std::to_string(a));
}

inline double log_reference_prior_exact(double a, std::int64_t m, std::int64_t n, PriorDiagnostics* diag = nullptr) {
  const double v = reference_prior_exact(a, m, n, diag);
  return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
}

/// pi*(a | m, n) = (1/2)(n/m) a^{-1/2} (a + n/m)^{-3/2}; normalized.
/// Equivalently a / (a + n/m) ~ Be(1/2, 1).
inline double reference_prior_approx(double a, std::int64_t m, std::int64_t n) {
  detail::require_single_cell_domain(a, m, n, "reference_prior_approx");
  const double c = static_cast<double>(n) / static_cast<double>(m);
  return 0.5 * c / (std::sqrt(a) * std::pow(a + c, 1.5));
}

inline double log_reference_prior_approx(double a, std::int64_t m, std::int64_t n) {
  detail::require_single_cell_domain(a, m, n, "log_reference_prior_approx");
  const double c = static_cast<double>(n) / static_cast<double>(m);
  return std::log(0.5 * c) - 0.5 * std::log(a) - 1.5 * std::log(a + c);
}

/// Median of pi*: a / (a + n/m) has median 1/4 under Be(1/2, 1).
inline double reference_prior_approx_median(std::int64_t m, std::int64_t n) {
  return static_cast<double>(n) / static_cast<double>(m) / 3.0;
}

inline double log_prior(PriorKind kind, double a, std::int64_t m, std::int64_t n) {
  return kind == PriorKind::exact ? log_reference_prior_exact(a, m, n) : log_reference_prior_approx(a, m, n);
}

/// Integral of pi^R over (0, upper]; upper may be infinite.
inline double reference_prior_mass(std::int64_t m, std::int64_t n, double upper = numerics::kInfinity,
                                   double tol = 1e-9) {
  return numerics::integrate([m, n](double a) { return reference_prior_exact(a, m, n); }, 0.0, upper, tol);
}

/// log pi^R tabulated on a uniform grid in log a and interpolated by PCHIP.
/// Outside the table the exact value is computed directly.
class PriorCache {
 public:
  PriorCache(std::int64_t m, std::int64_t n, double a_lo = 1e-10, double a_hi = 1e7, double log_step = 0.005)
      : m_(m), n_(n) {
    if (n < 2) throw DomainError("PriorCache: the exact prior is degenerate for n < 2");
    if (!(a_lo > 0.0 && a_lo < a_hi && log_step > 0.0)) throw DomainError("PriorCache: invalid table range");
    t_lo_ = std::log(a_lo);
    t_hi_ = std::log(a_hi);
    const auto count = static_cast<std::size_t>(std::ceil((t_hi_ - t_lo_) / log_step)) + 1;
    std::vector<double> t(count), y(count);
    for (std::size_t i = 0; i < count; ++i) {
      t[i] = t_lo_ + (t_hi_ - t_lo_) * static_cast<double>(i) / static_cast<double>(count - 1);
      y[i] = log_reference_prior_exact(std::exp(t[i]), m, n);
      if (!std::isfinite(y[i]))
        throw NumericalConsistencyError("PriorCache: reference prior vanishes inside the table range");
    }
    table_ = numerics::MonotoneCubic(std::move(t), std::move(y));
  }

  double log_density(double a) const {
    const double t = std::log(a);
    if (t < t_lo_ || t > t_hi_) return log_reference_prior_exact(a, m_, n_);
    return table_(t);
  }

  std::int64_t m() const noexcept { return m_; }
  std::int64_t n() const noexcept { return n_; }

 private:
  std::int64_t m_, n_;
  double t_lo_ = 0.0, t_hi_ = 0.0;
  numerics::MonotoneCubic table_;
};

}  // namespace objprior::hier
