#include "omegak/stats.hpp"

#include <algorithm>
#include <cmath>

#include "omegak/constants.hpp"
#include "omegak/error.hpp"
#include "omegak/exact.hpp"
#include "omegak/gf2.hpp"
#include "omegak/parallel.hpp"
#include "omegak/prime_count.hpp"

namespace omegak {

int OmegaProfile::omega_k(int k) const {
  const auto it = profile.find(k);
  return it == profile.end() ? 0 : it->second;
}

OmegaProfile omega_profile(const std::map<int, int>& multiplicity_profile) {
  OmegaProfile p;
  for (const auto& [k, count] : multiplicity_profile) {
    if (count == 0) continue;
    p.profile[k] = count;
    p.omega += count;
    p.Omega += k * count;
  }
  return p;
}

OmegaProfile omega_profile(const Factorization& f) {
  std::map<int, int> m;
  for (const auto& factor : f.factors) ++m[factor.multiplicity];
  return omega_profile(m);
}

mpz_class exact_divisibility_count(std::uint64_t q, int n, int d, int k) {
  if (q < 2 || n < 1 || d < 1 || k < 1) throw DomainError("exact_divisibility_count requires q >= 2 and n, d, k >= 1");
  return truncated_power(q, n - k * d) - truncated_power(q, n - (k + 1) * d);
}

mpz_class exact_first_moment(std::uint64_t q, int n, int k) {
  if (n < 1) throw DomainError("moments require n >= 1");
  if (k < 0) throw DomainError("k must be >= 0");
  const auto table = prime_counts(q, n);
  mpz_class sum = 0;
  if (k == 0) {
    for (int d = 1; d <= n; ++d) sum += table->count(d) * truncated_power(q, n - d);
    return sum;
  }
  for (int d = 1; k * d <= n; ++d) sum += table->count(d) * exact_divisibility_count(q, n, d, k);
  return sum;
}

mpz_class exact_second_moment(std::uint64_t q, int n, int k) {
  if (n < 1) throw DomainError("moments require n >= 1");
  if (k < 1) throw DomainError("second moment requires k >= 1");
  const auto table = prime_counts(q, n);
  auto T = [q](int m) { return truncated_power(q, m); };
  mpz_class sum = exact_first_moment(q, n, k);
  // Ordered pairs of distinct irreducibles l, h with l^k || f and h^k || f.
  for (int d1 = 1; k * (d1 + 1) <= n; ++d1) {
    for (int d2 = 1; k * (d1 + d2) <= n; ++d2) {
      const mpz_class pair = T(n - k * (d1 + d2)) - T(n - (k + 1) * d1 - k * d2) - T(n - k * d1 - (k + 1) * d2) +
                             T(n - (k + 1) * (d1 + d2));
      mpz_class pairs = table->count(d1) * table->count(d2);
      if (d1 == d2) pairs -= table->count(d1);
      sum += pairs * pair;
    }
  }
  return sum;
}

Census brute_census(const FieldContext& ctx, int n, int kmax, int chunks) {
  if (n < 1) throw DomainError("census requires n >= 1");
  if (kmax < 0) throw DomainError("kmax must be >= 0");
  if (chunks < 1) throw DomainError("chunks must be >= 1");
  const std::uint64_t total = checked_count(ctx.order(), n);
  const std::size_t K = static_cast<std::size_t>(kmax) + 1;
  const std::size_t V = static_cast<std::size_t>(n) + 1;

  // 64-bit partials are exact: every entry is at most 2^26 * n^2.
  struct Partial {
    std::vector<std::uint64_t> first, second, hist;
  };
  const std::size_t parts = static_cast<std::size_t>(std::min<std::uint64_t>(total, static_cast<std::uint64_t>(chunks)));
  std::vector<Partial> partial(parts);
  const bool binary = ctx.order() == 2;

  parallel_for(parts, [&](std::size_t c) {
    Partial& p = partial[c];
    p.first.assign(K, 0);
    p.second.assign(K, 0);
    p.hist.assign(K * V, 0);
    const std::uint64_t lo = total * c / parts, hi = total * (c + 1) / parts;
    std::vector<int> value(K);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      const auto profile = binary ? gf2::multiplicity_profile(gf2::Poly2::from_bits(idx | (std::uint64_t{1} << n)))
                                  : multiplicity_profile(ctx, monic_from_index(ctx, idx, n));
      std::fill(value.begin(), value.end(), 0);
      for (const auto& [k, count] : profile) {
        value[0] += count;
        if (static_cast<std::size_t>(k) < K && k >= 1) value[static_cast<std::size_t>(k)] = count;
      }
      for (std::size_t k = 0; k < K; ++k) {
        const auto v = static_cast<std::uint64_t>(value[k]);
        p.first[k] += v;
        p.second[k] += v * v;
        ++p.hist[k * V + v];
      }
    }
  });

  Census census;
  census.q = ctx.order();
  census.n = n;
  census.kmax = kmax;
  census.total = mpz_class(static_cast<unsigned long>(total));
  census.first.assign(K, 0);
  census.second.assign(K, 0);
  census.histogram.assign(K, std::vector<mpz_class>(V, 0));
  for (const auto& p : partial) {
    for (std::size_t k = 0; k < K; ++k) {
      census.first[k] += mpz_class(static_cast<unsigned long>(p.first[k]));
      census.second[k] += mpz_class(static_cast<unsigned long>(p.second[k]));
      for (std::size_t v = 0; v < V; ++v) census.histogram[k][v] += mpz_class(static_cast<unsigned long>(p.hist[k * V + v]));
    }
  }
  return census;
}

mpz_class count_value_census(std::uint64_t q, int n, int k, int value) {
  if (n < 1) throw DomainError("census requires n >= 1");
  if (k < 2) throw DomainError("count_value_census requires k >= 2");
  if (value != 0 && value != 1) throw DomainError("value must be 0 or 1");
  const auto table = prime_counts(q, n);
  // Local factor of one irreducible of degree d: every exponent except k.
  std::vector<TruncatedSeries> local;
  TruncatedSeries G = TruncatedSeries::one(n);
  for (int d = 1; d <= n; ++d) {
    TruncatedSeries P(n);
    for (int j = 0; j * d <= n; ++j)
      if (j != k) P[j * d] = 1;
    G = G * pow(P, table->count(d));
    local.push_back(std::move(P));
  }
  if (value == 0) return G[n].get_num();
  // Exactly one irreducible carries exponent k: replace its local factor by u^{kd}.
  TruncatedSeries marked(n);
  for (int d = 1; k * d <= n; ++d) {
    TruncatedSeries term = reciprocal(local[static_cast<std::size_t>(d - 1)]);
    TruncatedSeries shifted(n);
    for (int i = 0; i + k * d <= n; ++i) shifted[i + k * d] = term[i];
    marked = marked + mpq_class(table->count(d)) * shifted;
  }
  const mpq_class c = (G * marked)[n];
  if (c.get_den() != 1) throw std::logic_error("non-integral census coefficient");
  return c.get_num();
}

mpq_class a_gk_value(const Factorization& f, const Weight& g, int k) {
  if (k < 1) throw DomainError("a_{g,k} requires k >= 1");
  mpq_class sum = 0;
  for (const auto& [l, nu] : f.factors) {
    if (nu < k + 1) continue;
    const mpq_class gl = g(l.degree());
    mpq_class power = 1;
    for (int j = 0; j <= nu - (k + 1); ++j) {
      sum += power;
      power *= gl;
    }
  }
  return sum;
}

bool omega1_decomposition_check(const Factorization& f) {
  const auto g = constant_weight(-1);
  const OmegaProfile p = omega_profile(f);
  return mpq_class(p.omega_k(1)) == p.omega - a_gk_value(f, g, 1) - a_gk_value(f, g, 2);
}

namespace {

struct MainTerm {
  long double per_qn = 0.0L;             // main / q^n, used for k <= 1
  std::optional<mpq_class> exact_coeff;  // main / q^n as a rational, for k >= 2
  long double normalization = 0.0L;
};

MainTerm main_term(std::uint64_t q, int n, int k, int order) {
  const long double ln = std::log(static_cast<long double>(n));
  const long double qn = std::pow(static_cast<long double>(q), static_cast<long double>(n));
  MainTerm m;
  if (k >= 2) {
    const int R = std::max(default_terms(), n + 32);
    m.exact_coeff = order == 1 ? *L_constant(q, k, R).exact - *L_constant(q, k + 1, R).exact
                               : *c_prime_constant(q, k, R).exact;
    m.per_qn = to_long_double(*m.exact_coeff);
    m.normalization = n * std::pow(static_cast<long double>(q), static_cast<long double>(n) / k);
    return m;
  }
  const int R = default_terms();
  const long double a1 = A1_constant(q, R).value;
  if (order == 1) {
    m.per_qn = ln + a1 - (k == 1 ? L_constant(q, 2, R).value : 0.0L);
    m.normalization = qn / n;
  } else {
    m.per_qn = ln * ln + c2_constant(q, R).value * ln + c3_constant(q, R).value;
    m.normalization = qn * ln / n;
  }
  return m;
}

}  // namespace

MomentReport moment_report(std::uint64_t q, int n, int k, int order, MomentMethod method, const FieldContext* ctx) {
  if (order != 1 && order != 2) throw DomainError("moment order must be 1 or 2");
  if (n < 1) throw DomainError("moments require n >= 1");
  if (k < 0 || (order == 2 && k < 1)) throw DomainError("invalid k for this moment order");
  if (order == 2 && k == 1 && n < 2) throw DomainError("the k = 1 second-moment scale needs n >= 2");

  MomentReport r;
  r.q = q;
  r.n = n;
  r.k = k;
  r.order = order;
  const MainTerm m = main_term(q, n, k, order);
  const mpz_class qn = truncated_power(q, n);
  r.normalization = m.normalization;
  r.main_term = m.exact_coeff ? to_long_double(mpq_class(*m.exact_coeff * qn))
                              : m.per_qn * std::pow(static_cast<long double>(q), static_cast<long double>(n));
  if (method == MomentMethod::asymptotic) return r;

  if (method == MomentMethod::brute) {
    if (!ctx || ctx->order() != q) throw DomainError("brute method needs the field context");
    const Census c = brute_census(*ctx, n, k);
    r.exact = order == 1 ? c.first[static_cast<std::size_t>(k)] : c.second[static_cast<std::size_t>(k)];
  } else {
    r.exact = order == 1 ? exact_first_moment(q, n, k) : exact_second_moment(q, n, k);
  }

  if (m.exact_coeff) {
    r.residual = to_long_double(mpq_class(*r.exact - *m.exact_coeff * qn));
  } else {
    // Work relative to q^n so the subtraction keeps full precision.
    const long double rel = to_long_double(ratio(*r.exact, qn)) - m.per_qn;
    r.residual = rel * std::pow(static_cast<long double>(q), static_cast<long double>(n));
  }
  r.normalized_residual = r.residual / r.normalization;
  return r;
}

}  // namespace omegak
