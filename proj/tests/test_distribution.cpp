#include <doctest.h>

#include <cmath>

#include "omegak/distribution.hpp"
#include "omegak/error.hpp"
#include "omegak/parallel.hpp"
#include "omegak/stats.hpp"

using namespace omegak;

namespace {

// Composite Simpson rule for 1/2 + int_0^t exp(-u^2/2)/sqrt(2 pi) du.
long double phi_simpson(long double t) {
  const int steps = 20000;
  const long double h = t / steps;
  long double s = 0.0L;
  for (int i = 0; i <= steps; ++i) {
    const long double u = i * h;
    const long double w = (i == 0 || i == steps) ? 1.0L : (i % 2 ? 4.0L : 2.0L);
    s += w * std::exp(-u * u / 2.0L);
  }
  return 0.5L + s * h / 3.0L / std::sqrt(2.0L * 3.14159265358979323846264338327950288L);
}

long double sup_gap(const EmpiricalCDF& a, const EmpiricalCDF& b) {
  long double worst = 0.0L;
  for (const auto* e : {&a, &b})
    for (long double x : e->points) worst = std::max(worst, std::fabs(a.at(x) - b.at(x)));
  return worst;
}

}  // namespace

TEST_CASE("phi") {
  CHECK(std::fabs(phi_cdf(0.0L) - 0.5L) <= 1e-12L);
  CHECK(std::fabs(phi_cdf(1.9599639845L) - 0.975L) <= 1e-6L);
  for (long double t : {0.5L, 1.0L, 2.0L, 4.0L}) CHECK(std::fabs(phi_cdf(t) + phi_cdf(-t) - 1.0L) <= 2e-9L);
  for (long double t : {-6.0L, -3.3L, -1.0L, 0.25L, 1.9599639845L, 2.7L, 5.5L})
    CHECK(std::fabs(phi_cdf(t) - phi_simpson(t)) <= 1e-9L);
  CHECK(phi_cdf(-40.0L) >= 0.0L);
  CHECK(phi_cdf(40.0L) <= 1.0L);
}

TEST_CASE("full-enumeration ECDF over M_3") {
  const auto f2 = FieldContext::build(2, 1);
  const auto h = omega_histograms(f2, 3, SampleMode::full());
  CHECK(h.omega1 == std::vector<std::uint64_t>{2, 4, 2, 0});
  const auto e = empirical_cdf(h, Statistic::omega1);
  const long double ln = std::log(3.0L), root = std::sqrt(ln);
  REQUIRE(e.points.size() == 3);
  CHECK(e.points[0] == -ln / root);
  CHECK(e.at((0 - ln) / root) == 0.25L);
  CHECK(e.at((1 - ln) / root) == 0.75L);
  CHECK(e.at((2 - ln) / root) == 1.0L);
  CHECK(e.at(-10.0L) == 0.0L);
  CHECK(e.sample_size == 8);
  CHECK(e.provenance == Provenance::full);
  CHECK_THROWS_AS(empirical_cdf(f2, 1, Statistic::omega1, SampleMode::full()), DomainError);
  CHECK_THROWS_AS(empirical_cdf(f2, 27, Statistic::omega1, SampleMode::full()), CapacityError);
}

TEST_CASE("ECDF is a non-decreasing step function into [0, 1]") {
  const auto e = empirical_cdf(FieldContext::build(3, 1), 9, Statistic::omega, SampleMode::full());
  for (std::size_t i = 0; i < e.points.size(); ++i) {
    CHECK(e.cumulative[i] >= 0.0L);
    CHECK(e.cumulative[i] <= 1.0L);
    if (i) {
      CHECK(e.points[i - 1] < e.points[i]);
      CHECK(e.cumulative[i - 1] <= e.cumulative[i]);
    }
  }
}

TEST_CASE("omega dominates omega_1 pointwise") {
  for (const auto& [ctx, nmax] : std::vector<std::pair<FieldContext, int>>{
           {FieldContext::build(2, 1), 16}, {FieldContext::build(3, 1), 10}, {FieldContext::build(5, 1), 6}}) {
    for (int n = 2; n <= nmax; ++n) {
      const auto h = omega_histograms(ctx, n, SampleMode::full());
      const auto a = empirical_cdf(h, Statistic::omega), b = empirical_cdf(h, Statistic::omega1);
      for (const auto* e : {&a, &b})
        for (long double x : e->points) CHECK(a.at(x) <= b.at(x));
    }
  }
}

TEST_CASE("sampling is reproducible and independent of workers") {
  const auto f2 = FieldContext::build(2, 1);
  const auto f3 = FieldContext::build(3, 1);
  for (const auto* ctx : {&f2, &f3}) {
    set_worker_cap(1);
    const auto a = omega_histograms(*ctx, 70, SampleMode::sample(3000, 5));
    set_worker_cap(3);
    const auto b = omega_histograms(*ctx, 70, SampleMode::sample(3000, 5));
    set_worker_cap(0);
    CHECK(a.omega == b.omega);
    CHECK(a.omega1 == b.omega1);
    CHECK(a.total == 3000);
    const auto c = omega_histograms(*ctx, 70, SampleMode::sample(3000, 6));
    CHECK(c.omega1 != a.omega1);
  }
}

TEST_CASE("sampled and full ECDFs agree within the DKW band") {
  for (const auto& [ctx, n] : std::vector<std::pair<FieldContext, int>>{{FieldContext::build(2, 1), 14},
                                                                        {FieldContext::build(3, 1), 8}}) {
    const std::uint64_t m = 20000;
    const auto full = empirical_cdf(ctx, n, Statistic::omega1, SampleMode::full());
    const auto sampled = empirical_cdf(ctx, n, Statistic::omega1, SampleMode::sample(m, 3));
    CHECK(sampled.provenance == Provenance::sample);
    CHECK(sup_gap(full, sampled) <= 3.0L / std::sqrt(static_cast<long double>(m)));
  }
}

TEST_CASE("KS distance") {
  CHECK(ks_distance(ecdf_from_values({0.0L}, Provenance::sample)) == doctest::Approx(0.5));
  const auto e = empirical_cdf(FieldContext::build(2, 1), 12, Statistic::omega1, SampleMode::full());
  const long double ks = ks_distance(e);
  CHECK(ks >= 0.0L);
  CHECK(ks <= 1.0L);
  // Brute sup over a fine grid never exceeds the point-wise evaluation.
  long double grid = 0.0L;
  for (long double a = -5.0L; a <= 5.0L; a += 0.001L) grid = std::max(grid, std::fabs(e.at(a) - phi_cdf(a)));
  CHECK(grid <= ks + 1e-15L);
  CHECK(grid >= ks - 1e-2L);
  CHECK_THROWS_AS(ecdf_from_values({}, Provenance::sample), DomainError);
}

TEST_CASE("all-degree aggregation weights each degree by q^m") {
  const auto f2 = FieldContext::build(2, 1);
  const auto agg = all_degrees_cdf(f2, 8, Statistic::omega, SampleMode::full());
  // Direct construction from per-degree histograms.
  std::vector<long double> values;
  for (int m = 2; m <= 8; ++m) {
    const auto h = omega_histograms(f2, m, SampleMode::full());
    const long double ln = std::log(static_cast<long double>(m));
    for (std::size_t v = 0; v < h.omega.size(); ++v)
      for (std::uint64_t i = 0; i < h.omega[v]; ++i) values.push_back((static_cast<long double>(v) - ln) / std::sqrt(ln));
  }
  const auto direct = ecdf_from_values(values, Provenance::full);
  CHECK(agg.sample_size == values.size());
  CHECK(sup_gap(agg, direct) <= 1e-15L);
  CHECK_THROWS_AS(all_degrees_cdf(f2, 1, Statistic::omega, SampleMode::full()), DomainError);
}

TEST_CASE("normal order report") {
  const auto f2 = FieldContext::build(2, 1);
  // |w - log 3| / sqrt(log 3) >= (log 3)^0.25 only for omega_1 = 0.
  const auto r = normal_order_report(f2, 3, 0.25L, SampleMode::full());
  CHECK(r.count == 2);
  CHECK(r.total == 8);
  CHECK(r.fraction == 0.25L);
  const auto h = omega_histograms(f2, 14, SampleMode::full());
  std::uint64_t previous = UINT64_MAX;
  for (long double eps : {0.01L, 0.1L, 0.2L, 0.3L, 0.4L, 0.49L}) {
    const auto x = normal_order_report(h, eps);
    CHECK(x.count <= previous);
    previous = x.count;
  }
  CHECK_THROWS_AS(normal_order_report(h, 0.5L), DomainError);
  CHECK_THROWS_AS(normal_order_report(h, 0.0L), DomainError);
}

TEST_CASE("variance identity against enumeration") {
  const auto f2 = FieldContext::build(2, 1);
  for (int n = 2; n <= 10; ++n) {
    const auto h = omega_histograms(f2, n, SampleMode::full());
    const long double ln = std::log(static_cast<long double>(n));
    long double direct = 0.0L;
    for (std::size_t v = 0; v < h.omega1.size(); ++v)
      direct += h.omega1[v] * (static_cast<long double>(v) - ln) * (static_cast<long double>(v) - ln);
    const auto r = variance_report(2, n);
    CHECK(std::fabs(r.exact - direct) <= 1e-14L * direct);
    CHECK(r.normalized_residual == doctest::Approx(static_cast<double>(r.residual / r.normalization)));
  }
  CHECK_THROWS_AS(variance_report(2, 1), DomainError);
}
