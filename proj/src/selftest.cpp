#include "omegak/selftest.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "omegak/constants.hpp"
#include "omegak/distribution.hpp"
#include "omegak/factor.hpp"
#include "omegak/gf2.hpp"
#include "omegak/prime_count.hpp"
#include "omegak/series.hpp"
#include "omegak/stats.hpp"

namespace omegak {

namespace {

// A check body returns an empty string on success, a short reason otherwise.
using Body = std::function<std::string()>;

std::string field_axioms() {
  for (const auto& ctx : {FieldContext::build(2, 2), FieldContext::build(5, 1), FieldContext::build(3, 2)}) {
    const std::uint32_t q = ctx.order();
    for (std::uint32_t a = 0; a < q; ++a) {
      const FieldElement x{a};
      if (a && ctx.mul(x, ctx.inv(x)) != ctx.one()) return ctx.spec() + ": inverse of " + std::to_string(a);
      for (std::uint32_t b = 0; b < q; ++b) {
        const FieldElement y{b};
        if (ctx.add(x, y) != ctx.add(y, x) || ctx.mul(x, y) != ctx.mul(y, x)) return ctx.spec() + ": commutativity";
        for (std::uint32_t c = 0; c < q; ++c) {
          const FieldElement z{c};
          if (ctx.mul(x, ctx.add(y, z)) != ctx.add(ctx.mul(x, y), ctx.mul(x, z))) return ctx.spec() + ": distributivity";
        }
      }
    }
  }
  return {};
}

std::string factor_round_trip() {
  std::mt19937_64 rng(7);
  for (const auto& ctx : {FieldContext::build(2, 1), FieldContext::build(3, 1), FieldContext::build(2, 2)}) {
    for (int i = 0; i < 200; ++i) {
      const int n = 1 + static_cast<int>(rng() % 20);
      std::vector<FieldElement> c(static_cast<std::size_t>(n) + 1);
      for (auto& x : c) x = {static_cast<std::uint32_t>(rng() % ctx.order())};
      c.back() = ctx.one();
      const Poly f(std::move(c));
      const auto fa = factor(ctx, f, rng());
      if (fa.expand(ctx) != f) return ctx.spec() + ": product of factors differs from " + format_poly(f);
      for (const auto& [l, m] : fa.factors)
        if (!is_irreducible(ctx, l)) return ctx.spec() + ": reducible factor " + format_poly(l);
      if (factor(ctx, f, rng()) != fa) return ctx.spec() + ": seed dependence on " + format_poly(f);
    }
  }
  return {};
}

std::string gf2_agrees_with_generic() {
  const auto f2 = FieldContext::build(2, 1);
  for (std::uint64_t i = 0; i < 1024; ++i) {
    const Poly f = monic_from_index(f2, i, 10);
    if (gf2::multiplicity_profile(gf2::from_poly(f)) != multiplicity_profile(f2, f))
      return "profile mismatch at " + format_poly(f);
  }
  return {};
}

std::string gauss_identity(bool corrupt) {
  for (std::uint64_t q : {2, 3, 5}) {
    std::vector<mpz_class> counts;
    for (int d = 1; d <= 60; ++d) counts.push_back(pi_q_exact(q, d));
    if (corrupt && q == 2) counts[6] += 1;
    const int bad = PrimeCountTable::from_counts(q, std::move(counts)).first_gauss_violation();
    if (bad) return "q=" + std::to_string(q) + " fails at n=" + std::to_string(bad);
  }
  return {};
}

std::string irreducible_enumeration() {
  for (const auto& [ctx, D] : std::vector<std::pair<FieldContext, int>>{{FieldContext::build(2, 1), 10},
                                                                       {FieldContext::build(3, 1), 6}}) {
    mpz_class expected = 0;
    for (int d = 1; d <= D; ++d) expected += pi_q_exact(ctx.order(), d);
    if (expected != irreducibles_up_to(ctx, D).size()) return ctx.spec() + ": enumeration count differs";
  }
  return {};
}

std::string moment_oracle(int order) {
  const auto f2 = FieldContext::build(2, 1);
  for (int n = 1; n <= 8; ++n) {
    const auto c = brute_census(f2, n, 4);
    for (int k = order == 1 ? 0 : 1; k <= 4; ++k) {
      const auto& brute = order == 1 ? c.first : c.second;
      const mpz_class exact = order == 1 ? exact_first_moment(2, n, k) : exact_second_moment(2, n, k);
      if (brute[static_cast<std::size_t>(k)] != exact) return "n=" + std::to_string(n) + " k=" + std::to_string(k);
    }
  }
  return {};
}

std::string series_vs_brute() {
  const auto f2 = FieldContext::build(2, 1);
  const int N = 8;
  std::vector<std::vector<Factorization>> by_degree(N + 1);
  for (int n = 1; n <= N; ++n)
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) by_degree[static_cast<std::size_t>(n)].push_back(factor(f2, monic_from_index(f2, i, n)));
  for (int g : {-1, 0, 1}) {
    for (int k : {1, 2}) {
      const auto a = a_series(2, constant_weight(g), k, N);
      for (int n = 1; n <= N; ++n) {
        mpq_class sum = 0;
        for (const auto& fa : by_degree[static_cast<std::size_t>(n)]) sum += a_gk_value(fa, constant_weight(g), k);
        if (a[n] != sum) return "g=" + std::to_string(g) + " k=" + std::to_string(k) + " n=" + std::to_string(n);
      }
    }
  }
  return {};
}

std::string omega1_decomposition() {
  const auto f3 = FieldContext::build(3, 1);
  for (std::uint64_t i = 0; i < 729; ++i) {
    const Poly f = monic_from_index(f3, i, 6);
    if (!omega1_decomposition_check(factor(f3, f))) return "fails at " + format_poly(f);
  }
  return {};
}

std::string euler_product_census() {
  const auto f2 = FieldContext::build(2, 1);
  for (int n = 1; n <= 10; ++n) {
    const auto c = brute_census(f2, n, 4);
    for (int k = 2; k <= 4; ++k)
      for (int v : {0, 1})
        if (count_value_census(2, n, k, v) != c.histogram[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)])
          return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " value=" + std::to_string(v);
  }
  return {};
}

std::string constants_identities() {
  const int R = 60;
  for (std::uint64_t q : {2, 3}) {
    const auto C1 = C_gk_constant(q, -1, 1, R), C2 = C_gk_constant(q, -1, 2, R);
    const auto L2 = L_constant(q, 2, R);
    if (*C1.exact + *C2.exact != *L2.exact) return "C1 + C2 != L(2) at q=" + std::to_string(q);
    for (int k = 2; k <= 5; ++k) {
      const mpq_class lhs = *C_gk_constant(q, -1, k - 1, R).exact - *C_gk_constant(q, -1, k + 1, R).exact;
      const mpq_class rhs = *L_constant(q, k, R).exact - *L_constant(q, k + 1, R).exact;
      if (lhs != rhs) return "C(k-1) - C(k+1) != L(k) - L(k+1) at q=" + std::to_string(q) + " k=" + std::to_string(k);
    }
  }
  return {};
}

std::string mertens_exact() {
  const auto f2 = FieldContext::build(2, 1);
  mpq_class direct = 0;
  for (const auto& l : irreducibles_up_to(f2, 12)) direct += mpq_class(1, mpz_class(1) << l.degree());
  if (mertens_sum(2, 12).exact != direct) return "enumerated sum differs at n=12";
  if (mertens_sum(3, 2).exact != mpq_class(4, 3)) return "q=3 n=2 is not 4/3";
  return {};
}

std::string phi_values() {
  if (std::fabs(phi_cdf(0.0L) - 0.5L) > 1e-12L) return "Phi(0)";
  if (std::fabs(phi_cdf(1.9599639845L) - 0.975L) > 1e-6L) return "Phi(1.96)";
  for (long double t = 0.0L; t <= 6.0L; t += 0.25L)
    if (std::fabs(phi_cdf(t) + phi_cdf(-t) - 1.0L) > 2e-9L) return "symmetry";
  return {};
}

std::string variance_identity() {
  const auto f2 = FieldContext::build(2, 1);
  for (int n = 2; n <= 8; ++n) {
    const auto h = omega_histograms(f2, n, SampleMode::full());
    const long double ln = std::log(static_cast<long double>(n));
    long double direct = 0.0L;
    for (std::size_t v = 0; v < h.omega1.size(); ++v)
      direct += h.omega1[v] * (static_cast<long double>(v) - ln) * (static_cast<long double>(v) - ln);
    if (std::fabs(variance_report(2, n).exact - direct) > 1e-13L * direct) return "n=" + std::to_string(n);
  }
  return {};
}

}  // namespace

std::vector<SelftestCheck> run_selftest(const SelftestOptions& options) {
  const std::vector<std::pair<std::string, Body>> checks = {
      {"field-axioms", field_axioms},
      {"gauss-identity", [&] { return gauss_identity(options.corrupt_prime_table); }},
      {"irreducible-enumeration", irreducible_enumeration},
      {"factor-round-trip", factor_round_trip},
      {"gf2-generic-agreement", gf2_agrees_with_generic},
      {"first-moment-oracle", [] { return moment_oracle(1); }},
      {"second-moment-oracle", [] { return moment_oracle(2); }},
      {"series-brute-agreement", series_vs_brute},
      {"omega1-decomposition", omega1_decomposition},
      {"euler-product-census", euler_product_census},
      {"constant-identities", constants_identities},
      {"mertens-exact", mertens_exact},
      {"phi-values", phi_values},
      {"variance-identity", variance_identity},
  };
  std::vector<SelftestCheck> out;
  for (const auto& [name, body] : checks) {
    SelftestCheck c{name, false, {}};
    try {
      c.detail = body();
      c.passed = c.detail.empty();
    } catch (const std::exception& e) {
      c.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace omegak
