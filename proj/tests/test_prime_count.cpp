#include <doctest.h>

#include "omegak/error.hpp"
#include "omegak/factor.hpp"
#include "omegak/prime_count.hpp"

using namespace omegak;

TEST_CASE("pi_q examples") {
  CHECK(pi_q_exact(2, 2) == 1);
  CHECK(pi_q_exact(2, 4) == 3);
  CHECK(pi_q_exact(3, 1) == 3);
  CHECK(pi_q_exact(2, 6) == 9);
  CHECK(pi_q_exact(4, 1) == 4);
  CHECK_THROWS_AS(pi_q_exact(2, 0), DomainError);
}

TEST_CASE("Gauss identity up to degree 200") {
  for (std::uint64_t q : {2, 3, 5}) {
    const auto table = PrimeCountTable::build(q, 200);
    CHECK(table.first_gauss_violation() == 0);
    CHECK(table.count(1) == static_cast<long>(q));
  }
  auto counts = PrimeCountTable::build(2, 10);
  std::vector<mpz_class> bad;
  for (int d = 1; d <= 10; ++d) bad.push_back(counts.count(d));
  bad[6] += 1;
  CHECK(PrimeCountTable::from_counts(2, bad).first_gauss_violation() == 7);
}

TEST_CASE("prime number theorem bound used by the tail estimates") {
  for (std::uint64_t q : {2, 3, 4, 5, 7}) {
    for (int r = 1; r <= 60; ++r) {
      // |r pi_q(r) - q^r| <= 2 q^{r/2}, squared to stay in integers.
      const mpz_class dev = abs(r * pi_q_exact(q, r) - truncated_power(q, r));
      CHECK(dev * dev <= 4 * truncated_power(q, r));
    }
  }
}

TEST_CASE("exhaustive irreducible counts") {
  const auto f2 = FieldContext::build(2, 1);
  const auto small = irreducibles_up_to(f2, 2);
  REQUIRE(small.size() == 3);
  CHECK(small[0] == Poly{0, 1});
  CHECK(small[1] == Poly{1, 1});
  CHECK(small[2] == Poly{1, 1, 1});
  CHECK(irreducibles_up_to(f2, 3).size() == 5);
  const auto f3 = FieldContext::build(3, 1);
  CHECK(irreducibles_up_to(f3, 1) == std::vector<Poly>{Poly{0, 1}, Poly{1, 1}, Poly{2, 1}});

  for (const auto& [ctx, D] : std::vector<std::pair<FieldContext, int>>{
           {f2, 12}, {f3, 7}, {FieldContext::build(2, 2), 6}, {FieldContext::build(5, 1), 5}}) {
    const auto all = irreducibles_up_to(ctx, D);
    mpz_class expected = 0;
    for (int d = 1; d <= D; ++d) expected += pi_q_exact(ctx.order(), d);
    CHECK(mpz_class(static_cast<unsigned long>(all.size())) == expected);
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] < all[i]);
  }
  CHECK_THROWS_AS(irreducibles_up_to(f2, 27), CapacityError);
  CHECK_THROWS_AS(irreducibles_up_to(FieldContext::build(65521, 1), 3), CapacityError);
}

TEST_CASE("mertens sums") {
  CHECK(mertens_sum(2, 2).exact == mpq_class(5, 4));
  CHECK(mertens_sum(2, 1).exact == 1);
  CHECK(mertens_sum(3, 2).exact == mpq_class(4, 3));
  const auto m = mertens_sum(3, 40);
  CHECK(std::abs(m.value - m.exact.get_d()) <= 1e-15 * m.value);
  CHECK_THROWS_AS(mertens_sum(2, 0), DomainError);
}

TEST_CASE("memoized tables grow and stay consistent") {
  const auto a = prime_counts(7, 5);
  const auto b = prime_counts(7, 40);
  CHECK(b->max_degree() >= 40);
  for (int d = 1; d <= 5; ++d) CHECK(a->count(d) == b->count(d));
  CHECK(b->count(40) == pi_q_exact(7, 40));
}
