#include <doctest.h>

#include <chrono>
#include <random>

#include "omegak/error.hpp"
#include "omegak/parallel.hpp"
#include "omegak/prime_count.hpp"
#include "omegak/stats.hpp"

using namespace omegak;

namespace {

Factorization make(std::vector<std::pair<Poly, int>> parts) {
  Factorization f;
  for (auto& [p, m] : parts) f.factors.push_back({p, m});
  return f;
}

const Poly t{0, 1};
const Poly t1{1, 1};

}  // namespace

TEST_CASE("omega profile examples") {
  auto p = omega_profile(make({{t, 1}, {t1, 1}}));
  CHECK(p.omega == 2);
  CHECK(p.profile == std::map<int, int>{{1, 2}});
  p = omega_profile(make({{t1, 3}}));
  CHECK(p.omega == 1);
  CHECK(p.profile == std::map<int, int>{{3, 1}});
  CHECK(p.Omega == 3);
  CHECK(p.Omega_k(3) == 3);
  p = omega_profile(make({{t, 2}, {t1, 1}}));
  CHECK(p.profile == std::map<int, int>{{1, 1}, {2, 1}});
  CHECK(p.omega == 2);
  CHECK(p.Omega == 3);
  CHECK(p.omega_k(5) == 0);
}

TEST_CASE("divisibility counts and exact moments") {
  CHECK(exact_divisibility_count(2, 2, 1, 2) == 1);
  CHECK(exact_divisibility_count(2, 3, 1, 1) == 2);
  CHECK(exact_divisibility_count(3, 4, 3, 2) == 0);

  CHECK(exact_first_moment(2, 2, 0) == 5);
  CHECK(exact_first_moment(2, 3, 0) == 12);
  CHECK(exact_first_moment(2, 3, 1) == 8);
  CHECK(exact_first_moment(2, 3, 2) == 2);
  CHECK(exact_first_moment(2, 3, 3) == 2);
  CHECK(exact_first_moment(2, 2, 1) == 3);
  CHECK(exact_second_moment(2, 3, 1) == 12);
  CHECK(exact_second_moment(2, 2, 2) == 2);
  for (std::uint64_t q : {2, 3, 5})
    for (int n = 1; n <= 12; ++n)
      for (int k = n / 2 + 1; k <= n + 2; ++k) CHECK(exact_second_moment(q, n, k) == exact_first_moment(q, n, k));
  CHECK_THROWS_AS(exact_second_moment(2, 3, 0), DomainError);
  CHECK_THROWS_AS(exact_first_moment(2, 0, 1), DomainError);
}

TEST_CASE("brute census examples") {
  const auto f2 = FieldContext::build(2, 1);
  const auto f3 = FieldContext::build(3, 1);
  CHECK(brute_census(f2, 1, 1).first[1] == 2);
  CHECK(brute_census(f3, 2, 2).first[2] == 3);
  const auto c = brute_census(f2, 3, 3);
  CHECK(c.total == 8);
  CHECK(c.first[0] == 12);
  CHECK(c.first[1] == 8);
  CHECK(c.second[1] == 12);
  CHECK(c.first[2] == 2);
  CHECK(c.first[3] == 2);
  // omega_1 over M_3 is (0,2,1,1,1,2,0,1).
  CHECK(c.histogram[1] == std::vector<mpz_class>{2, 4, 2, 0});
  CHECK_THROWS_AS(brute_census(f2, 27, 1), CapacityError);
}

TEST_CASE("exact moments equal enumeration for q^n <= 2^20, k <= 5") {
  const auto start = std::chrono::steady_clock::now();
  for (auto [p, e, nmax] : std::vector<std::tuple<int, unsigned, int>>{{2, 1, 20}, {3, 1, 12}, {2, 2, 10}, {5, 1, 8}, {7, 1, 7}}) {
    const auto ctx = FieldContext::build(p, e);
    for (int n = 1; n <= nmax; ++n) {
      const auto c = brute_census(ctx, n, 5);
      CAPTURE(ctx.order());
      CAPTURE(n);
      CHECK(c.first[0] == exact_first_moment(ctx.order(), n, 0));
      for (int k = 1; k <= 5; ++k) {
        CHECK(c.first[static_cast<std::size_t>(k)] == exact_first_moment(ctx.order(), n, k));
        CHECK(c.second[static_cast<std::size_t>(k)] == exact_second_moment(ctx.order(), n, k));
      }
    }
  }
  MESSAGE("enumeration sweep took "
          << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s");
}

TEST_CASE("census does not depend on chunking or worker count") {
  const auto f3 = FieldContext::build(3, 1);
  const auto f2 = FieldContext::build(2, 1);
  for (const auto& [ctx, n] : std::vector<std::pair<FieldContext, int>>{{f3, 7}, {f2, 13}}) {
    set_worker_cap(1);
    const auto base = brute_census(ctx, n, 4, 1);
    for (int chunks : {3, 64, 1000}) {
      for (int workers : {1, 4}) {
        set_worker_cap(workers);
        const auto c = brute_census(ctx, n, 4, chunks);
        CHECK(c.first == base.first);
        CHECK(c.second == base.second);
        CHECK(c.histogram == base.histogram);
      }
    }
  }
  set_worker_cap(0);
}

TEST_CASE("Euler product census") {
  CHECK(count_value_census(2, 2, 2, 0) == 2);
  CHECK(count_value_census(2, 3, 2, 1) == 2);
  CHECK(count_value_census(2, 2, 2, 1) == 2);
  CHECK_THROWS_AS(count_value_census(2, 4, 1, 0), DomainError);
  CHECK_THROWS_AS(count_value_census(2, 4, 2, 2), DomainError);

  for (const auto& [ctx, nmax] : std::vector<std::pair<FieldContext, int>>{
           {FieldContext::build(2, 1), 14}, {FieldContext::build(3, 1), 8}, {FieldContext::build(2, 2), 7}}) {
    for (int n = 1; n <= nmax; ++n) {
      const auto c = brute_census(ctx, n, 4);
      for (int k = 2; k <= 4; ++k) {
        const auto& h = c.histogram[static_cast<std::size_t>(k)];
        CHECK(count_value_census(ctx.order(), n, k, 0) == h[0]);
        CHECK(count_value_census(ctx.order(), n, k, 1) == h[1]);
        mpz_class all = 0;
        for (const auto& v : h) all += v;
        CHECK(all == truncated_power(ctx.order(), n));
      }
    }
  }
}

TEST_CASE("a_{g,k} values") {
  const auto minus = constant_weight(-1);
  CHECK(a_gk_value(make({{t, 2}}), minus, 1) == 1);
  CHECK(a_gk_value(make({{t, 3}}), minus, 1) == 0);
  CHECK(a_gk_value(make({{t, 1}, {t1, 1}}), minus, 1) == 0);
  CHECK(a_gk_value(make({{t, 1}, {t1, 1}}), constant_weight(1), 2) == 0);
  CHECK(a_gk_value(make({{t, 5}}), constant_weight(1), 1) == 4);
  CHECK(a_gk_value(make({{t, 5}}), [](int) { return mpq_class(1, 2); }, 2) == mpq_class(7, 4));
}

TEST_CASE("omega_1 = omega - a_1 - a_2 with g = -1") {
  CHECK(omega1_decomposition_check(make({{t, 2}})));
  CHECK(omega1_decomposition_check(make({{t, 1}, {t1, 1}})));
  CHECK(omega1_decomposition_check(make({{t, 3}})));

  std::mt19937_64 rng(99);
  for (const auto& ctx : {FieldContext::build(2, 1), FieldContext::build(3, 1), FieldContext::build(2, 2)}) {
    int failures = 0;
    for (int i = 0; i < 10000; ++i) {
      // Products of small random factors so that high multiplicities occur.
      Poly f = Poly::constant(ctx.one());
      const int parts = 1 + static_cast<int>(rng() % 4);
      for (int j = 0; j < parts; ++j) {
        const int d = 1 + static_cast<int>(rng() % 3);
        const Poly base = monic_from_index(ctx, rng() % checked_count(ctx.order(), d), d);
        const int m = 1 + static_cast<int>(rng() % 5);
        for (int r = 0; r < m; ++r) f = mul(ctx, f, base);
      }
      failures += !omega1_decomposition_check(factor(ctx, f));
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("moment reports") {
  const auto f2 = FieldContext::build(2, 1);
  const auto r = moment_report(2, 3, 1, 1, MomentMethod::exact);
  REQUIRE(r.exact);
  CHECK(*r.exact == 8);
  CHECK(r.normalization > 0);
  CHECK(r.normalized_residual == doctest::Approx(static_cast<double>(r.residual / r.normalization)));

  for (int k = 0; k <= 3; ++k) {
    for (int order = 1; order <= 2; ++order) {
      if (order == 2 && k == 0) continue;
      const auto exact = moment_report(2, 12, k, order, MomentMethod::exact);
      const auto brute = moment_report(2, 12, k, order, MomentMethod::brute, &f2);
      CHECK(*exact.exact == *brute.exact);
      CHECK(exact.residual == brute.residual);
      const auto asym = moment_report(2, 12, k, order, MomentMethod::asymptotic);
      CHECK_FALSE(asym.exact);
      CHECK(asym.main_term == exact.main_term);
      CHECK(exact.residual == doctest::Approx(static_cast<double>(mpz_class(*exact.exact).get_d() - exact.main_term)));
    }
  }
  CHECK_THROWS_AS(moment_report(2, 12, 1, 3, MomentMethod::exact), DomainError);
  CHECK_THROWS_AS(moment_report(2, 12, 0, 2, MomentMethod::exact), DomainError);
  CHECK_THROWS_AS(moment_report(2, 12, 1, 1, MomentMethod::brute), DomainError);
}
