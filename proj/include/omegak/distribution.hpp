#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "omegak/field.hpp"

namespace omegak {

/// Standard normal CDF.
long double phi_cdf(long double t);

enum class Statistic { omega, omega1 };
enum class Provenance { full, sample };

/// How M_n is visited: every polynomial, or `samples` uniform draws from
/// `seed` (sample i uses derive_seed(seed, i)).
struct SampleMode {
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;

  static SampleMode full() { return {}; }
  static SampleMode sample(std::uint64_t m, std::uint64_t seed) { return {m, seed}; }
};

/// Histograms of omega(f) and omega_1(f) over M_n (index = value).
struct OmegaHistograms {
  std::uint64_t q = 0;
  int n = 0;
  std::uint64_t total = 0;
  Provenance provenance = Provenance::full;
  std::vector<std::uint64_t> omega;
  std::vector<std::uint64_t> omega1;

  const std::vector<std::uint64_t>& of(Statistic s) const { return s == Statistic::omega ? omega : omega1; }
};

/// Full mode requires q^n <= 2^26; sample mode requires samples >= 1. The
/// result does not depend on the worker count.
OmegaHistograms omega_histograms(const FieldContext& ctx, int n, const SampleMode& mode);

/// Weighted step function. Points are distinct and ascending; cumulative[i]
/// is the weight fraction at or below points[i].
struct EmpiricalCDF {
  std::vector<long double> points;
  std::vector<long double> cumulative;
  std::uint64_t sample_size = 0;
  Provenance provenance = Provenance::full;

  /// Right-continuous evaluation.
  long double at(long double a) const;
};

EmpiricalCDF ecdf_from_weighted(std::vector<std::pair<long double, long double>> point_weights, std::uint64_t sample_size,
                                Provenance provenance);
EmpiricalCDF ecdf_from_values(std::vector<long double> values, Provenance provenance);

/// ECDF of (stat - log n) / sqrt(log n) over M_n; n >= 2.
EmpiricalCDF empirical_cdf(const OmegaHistograms& h, Statistic s);
EmpiricalCDF empirical_cdf(const FieldContext& ctx, int n, Statistic s, const SampleMode& mode);

/// The same over all degrees 2 <= m <= n, each degree normalized by its own
/// log m and weighted by q^m. Degree 1 is skipped (log 1 = 0). In sample
/// mode every degree gets `samples` draws.
EmpiricalCDF all_degrees_cdf(const FieldContext& ctx, int n, Statistic s, const SampleMode& mode);

/// sup_a |F(a) - Phi(a)|, checking both one-sided limits at every point.
long double ks_distance(const EmpiricalCDF& ecdf);

struct NormalOrderReport {
  int n = 0;
  long double epsilon_prime = 0.0L;
  std::uint64_t count = 0;  // f with |omega_1 - log n| / sqrt(log n) >= (log n)^eps'
  std::uint64_t total = 0;
  long double fraction = 0.0L;
};

NormalOrderReport normal_order_report(const OmegaHistograms& h, long double epsilon_prime);
NormalOrderReport normal_order_report(const FieldContext& ctx, int n, long double epsilon_prime, const SampleMode& mode);

struct VarianceReport {
  std::uint64_t q = 0;
  int n = 0;
  long double exact = 0.0L;      // sum over M_n of (omega_1 - log n)^2
  long double main_term = 0.0L;  // q^n log n + c3 q^n
  long double residual = 0.0L;
  long double normalization = 0.0L;  // q^n log n / n
  long double normalized_residual = 0.0L;
};

/// Assembled from the exact first and second moments of omega_1; n >= 2.
VarianceReport variance_report(std::uint64_t q, int n);

}  // namespace omegak
