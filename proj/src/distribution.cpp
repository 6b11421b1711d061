#include "omegak/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "omegak/constants.hpp"
#include "omegak/error.hpp"
#include "omegak/exact.hpp"
#include "omegak/factor.hpp"
#include "omegak/gf2.hpp"
#include "omegak/parallel.hpp"
#include "omegak/prime_count.hpp"
#include "omegak/random.hpp"
#include "omegak/stats.hpp"

namespace omegak {

long double phi_cdf(long double t) { return 0.5L * std::erfc(-t / std::sqrt(2.0L)); }

namespace {

struct Pair {
  int omega = 0;
  int omega1 = 0;
};

Pair sample_pair(const FieldContext& ctx, int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  if (ctx.order() == 2) {
    std::vector<std::uint64_t> w(static_cast<std::size_t>(n) / 64 + 1);
    for (auto& x : w) x = rng();
    w.back() &= (std::uint64_t{1} << (n % 64)) - 1;
    w.back() |= std::uint64_t{1} << (n % 64);
    const auto p = gf2::omega_pair(gf2::Poly2(std::move(w)));
    return {p.omega, p.omega1};
  }
  std::vector<FieldElement> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = {static_cast<std::uint32_t>(uniform_below(rng, ctx.order()))};
  c.back() = ctx.one();
  Pair p;
  for (const auto& [k, count] : multiplicity_profile(ctx, Poly(std::move(c)))) {
    p.omega += count;
    if (k == 1) p.omega1 = count;
  }
  return p;
}

std::vector<std::uint64_t> to_counts(const std::vector<mpz_class>& v) {
  std::vector<std::uint64_t> out;
  for (const auto& x : v) out.push_back(mpz_get_ui(x.get_mpz_t()));
  return out;
}

long double log_degree(int n) {
  if (n < 2) throw DomainError("normalization by log n requires n >= 2");
  return std::log(static_cast<long double>(n));
}

}  // namespace

OmegaHistograms omega_histograms(const FieldContext& ctx, int n, const SampleMode& mode) {
  if (n < 1) throw DomainError("degree must be >= 1");
  OmegaHistograms h;
  h.q = ctx.order();
  h.n = n;
  if (!mode.samples) {
    const Census c = brute_census(ctx, n, 1);
    h.provenance = Provenance::full;
    h.total = mpz_get_ui(c.total.get_mpz_t());
    h.omega = to_counts(c.histogram[0]);
    h.omega1 = to_counts(c.histogram[1]);
    return h;
  }
  const std::uint64_t m = *mode.samples;
  if (m < 1) throw DomainError("sample mode needs at least one sample");
  h.provenance = Provenance::sample;
  h.total = m;
  const std::size_t V = static_cast<std::size_t>(n) + 1;
  const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(m, 256));
  std::vector<std::vector<std::uint64_t>> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    auto& local = partial[c];
    local.assign(2 * V, 0);
    const std::uint64_t lo = m * c / chunks, hi = m * (c + 1) / chunks;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const Pair p = sample_pair(ctx, n, derive_seed(mode.seed, i));
      ++local[static_cast<std::size_t>(p.omega)];
      ++local[V + static_cast<std::size_t>(p.omega1)];
    }
  });
  h.omega.assign(V, 0);
  h.omega1.assign(V, 0);
  for (const auto& local : partial) {
    for (std::size_t v = 0; v < V; ++v) {
      h.omega[v] += local[v];
      h.omega1[v] += local[V + v];
    }
  }
  return h;
}

long double EmpiricalCDF::at(long double a) const {
  const auto it = std::upper_bound(points.begin(), points.end(), a);
  if (it == points.begin()) return 0.0L;
  return cumulative[static_cast<std::size_t>(it - points.begin()) - 1];
}

EmpiricalCDF ecdf_from_weighted(std::vector<std::pair<long double, long double>> point_weights, std::uint64_t sample_size,
                                Provenance provenance) {
  std::erase_if(point_weights, [](const auto& pw) { return pw.second <= 0.0L; });
  if (point_weights.empty()) throw DomainError("empirical CDF of an empty sample");
  std::sort(point_weights.begin(), point_weights.end());
  EmpiricalCDF e;
  e.sample_size = sample_size;
  e.provenance = provenance;
  long double total = 0.0L;
  for (const auto& [x, w] : point_weights) total += w;
  long double running = 0.0L;
  for (const auto& [x, w] : point_weights) {
    running += w;
    if (!e.points.empty() && e.points.back() == x) {
      e.cumulative.back() = running / total;
    } else {
      e.points.push_back(x);
      e.cumulative.push_back(running / total);
    }
  }
  e.cumulative.back() = 1.0L;
  return e;
}

EmpiricalCDF ecdf_from_values(std::vector<long double> values, Provenance provenance) {
  std::vector<std::pair<long double, long double>> pw;
  pw.reserve(values.size());
  for (long double v : values) pw.emplace_back(v, 1.0L);
  return ecdf_from_weighted(std::move(pw), values.size(), provenance);
}

EmpiricalCDF empirical_cdf(const OmegaHistograms& h, Statistic s) {
  const long double ln = log_degree(h.n);
  const long double root = std::sqrt(ln);
  std::vector<std::pair<long double, long double>> pw;
  const auto& counts = h.of(s);
  for (std::size_t v = 0; v < counts.size(); ++v)
    if (counts[v]) pw.emplace_back((static_cast<long double>(v) - ln) / root, static_cast<long double>(counts[v]));
  return ecdf_from_weighted(std::move(pw), h.total, h.provenance);
}

EmpiricalCDF empirical_cdf(const FieldContext& ctx, int n, Statistic s, const SampleMode& mode) {
  log_degree(n);
  return empirical_cdf(omega_histograms(ctx, n, mode), s);
}

EmpiricalCDF all_degrees_cdf(const FieldContext& ctx, int n, Statistic s, const SampleMode& mode) {
  log_degree(n);
  if (!mode.samples) checked_count(ctx.order(), n);
  std::vector<std::pair<long double, long double>> pw;
  std::uint64_t size = 0;
  for (int m = 2; m <= n; ++m) {
    // Distinct seeds per degree so the degrees are sampled independently.
    SampleMode per_degree = mode;
    per_degree.seed = derive_seed(mode.seed, static_cast<std::uint64_t>(m) << 40);
    const auto h = omega_histograms(ctx, m, per_degree);
    const long double ln = std::log(static_cast<long double>(m));
    const long double weight = std::pow(static_cast<long double>(ctx.order()), static_cast<long double>(m)) /
                               static_cast<long double>(h.total);
    const auto& counts = h.of(s);
    for (std::size_t v = 0; v < counts.size(); ++v)
      if (counts[v])
        pw.emplace_back((static_cast<long double>(v) - ln) / std::sqrt(ln), weight * static_cast<long double>(counts[v]));
    size += h.total;
  }
  return ecdf_from_weighted(std::move(pw), size, mode.samples ? Provenance::sample : Provenance::full);
}

long double ks_distance(const EmpiricalCDF& ecdf) {
  if (ecdf.points.empty()) throw DomainError("KS distance of an empty sample");
  long double worst = 0.0L, below = 0.0L;
  for (std::size_t i = 0; i < ecdf.points.size(); ++i) {
    const long double phi = phi_cdf(ecdf.points[i]);
    worst = std::max({worst, std::fabs(ecdf.cumulative[i] - phi), std::fabs(below - phi)});
    below = ecdf.cumulative[i];
  }
  return worst;
}

NormalOrderReport normal_order_report(const OmegaHistograms& h, long double epsilon_prime) {
  if (!(epsilon_prime > 0.0L && epsilon_prime < 0.5L)) throw DomainError("epsilon' must lie in (0, 1/2)");
  const long double ln = log_degree(h.n);
  const long double threshold = std::pow(ln, epsilon_prime);
  NormalOrderReport r;
  r.n = h.n;
  r.epsilon_prime = epsilon_prime;
  r.total = h.total;
  for (std::size_t v = 0; v < h.omega1.size(); ++v)
    if (std::fabs(static_cast<long double>(v) - ln) / std::sqrt(ln) >= threshold) r.count += h.omega1[v];
  r.fraction = static_cast<long double>(r.count) / static_cast<long double>(r.total);
  return r;
}

NormalOrderReport normal_order_report(const FieldContext& ctx, int n, long double epsilon_prime, const SampleMode& mode) {
  if (!(epsilon_prime > 0.0L && epsilon_prime < 0.5L)) throw DomainError("epsilon' must lie in (0, 1/2)");
  log_degree(n);
  return normal_order_report(omega_histograms(ctx, n, mode), epsilon_prime);
}

VarianceReport variance_report(std::uint64_t q, int n) {
  const long double ln = log_degree(n);
  const mpz_class qn = truncated_power(q, n);
  const long double s1 = to_long_double(ratio(exact_first_moment(q, n, 1), qn));
  const long double s2 = to_long_double(ratio(exact_second_moment(q, n, 1), qn));
  // Everything per q^n: sum (w - log n)^2 / q^n = S2 - 2 log n S1 + log^2 n.
  const long double rel = s2 - 2.0L * ln * s1 + ln * ln;
  const long double main_rel = ln + c3_constant(q, default_terms()).value;
  const long double scale = std::pow(static_cast<long double>(q), static_cast<long double>(n));
  VarianceReport r;
  r.q = q;
  r.n = n;
  r.exact = rel * scale;
  r.main_term = main_rel * scale;
  r.residual = (rel - main_rel) * scale;
  r.normalization = scale * ln / n;
  r.normalized_residual = (rel - main_rel) * n / ln;
  return r;
}

}  // namespace omegak
