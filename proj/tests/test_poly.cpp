#include <doctest.h>

#include <random>

#include "omegak/error.hpp"
#include "omegak/poly.hpp"

using namespace omegak;

TEST_CASE("poly arithmetic examples") {
  const auto f2 = FieldContext::build(2, 1);
  const auto f3 = FieldContext::build(3, 1);
  // (t+1)^2 = t^2 + 1 in characteristic 2.
  CHECK(mul(f2, Poly{1, 1}, Poly{1, 1}) == Poly{1, 0, 1});
  CHECK(gcd(f2, Poly{0, 1, 1}, Poly{1, 0, 1}) == Poly{1, 1});
  // 3t^2 vanishes in characteristic 3.
  CHECK(derivative(f3, Poly{1, 1, 0, 1}) == Poly{1});
}

TEST_CASE("canonical form and degree sentinel") {
  CHECK(Poly{1, 0, 0}.degree() == 0);
  CHECK(Poly{0, 0}.is_zero());
  CHECK(Poly{}.degree() == kZeroDegree);
  CHECK(Poly{0, 1} < Poly{1, 1});
  CHECK(Poly{1, 1} < Poly{0, 0, 1});
  CHECK(Poly{2, 0, 1} < Poly{0, 1, 1});
}

TEST_CASE("divrem contract") {
  const auto f5 = FieldContext::build(5, 1);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint32_t> coef(0, 4);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<FieldElement> a(1 + trial % 17), b(1 + trial % 7);
    for (auto& c : a) c = {coef(rng)};
    for (auto& c : b) c = {coef(rng)};
    const Poly pa(a), pb(b);
    if (pb.is_zero()) continue;
    const auto [quot, r] = divrem(f5, pa, pb);
    CHECK(r.degree() < pb.degree());
    CHECK(add(f5, mul(f5, quot, pb), r) == pa);
  }
  CHECK_THROWS_AS(divrem(f5, Poly{1, 2}, Poly{}), DomainError);
}

TEST_CASE("ring axioms over an extension field") {
  const auto f9 = FieldContext::build(3, 2);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint32_t> coef(0, 8);
  auto random_poly = [&](int deg) {
    std::vector<FieldElement> c(static_cast<std::size_t>(deg) + 1);
    for (auto& x : c) x = {coef(rng)};
    return Poly(c);
  };
  for (int i = 0; i < 200; ++i) {
    const Poly a = random_poly(i % 9), b = random_poly(i % 5), c = random_poly(i % 4);
    CHECK(mul(f9, a, mul(f9, b, c)) == mul(f9, mul(f9, a, b), c));
    CHECK(mul(f9, a, add(f9, b, c)) == add(f9, mul(f9, a, b), mul(f9, a, c)));
    CHECK(sub(f9, add(f9, a, b), b) == a);
    // Leibniz rule for the formal derivative.
    CHECK(derivative(f9, mul(f9, a, b)) == add(f9, mul(f9, derivative(f9, a), b), mul(f9, a, derivative(f9, b))));
  }
}

TEST_CASE("powmod and frobenius agree") {
  for (const auto& ctx : {FieldContext::build(2, 1), FieldContext::build(3, 1), FieldContext::build(2, 2),
                          FieldContext::build(101, 1)}) {
    const Poly modulus = monic_from_index(ctx, 12345 % (ctx.order() * ctx.order() * ctx.order()), 7);
    const Poly h{1, 2 % ctx.order(), 0, 1};
    CHECK(frobenius(ctx, h, modulus) == powmod(ctx, h, std::uint64_t{ctx.order()}, modulus));
    CHECK(powmod(ctx, h, mpz_class(ctx.order()), modulus) == powmod(ctx, h, std::uint64_t{ctx.order()}, modulus));
  }
}

TEST_CASE("text formats") {
  const auto f2 = FieldContext::build(2, 1);
  const Poly f = parse_poly(f2, "0,1,1");
  CHECK(f == Poly{0, 1, 1});
  CHECK(format_poly(f) == "0,1,1");
  CHECK(pretty_poly(f) == "t^2+t");
  CHECK(pretty_poly(Poly{1, 2, 1}) == "t^2+2t+1");
  CHECK(format_poly(Poly{}) == "0");
  CHECK_THROWS_AS(parse_poly(f2, "0,2"), ParseError);
  CHECK_THROWS_AS(parse_poly(f2, "0,,1"), ParseError);
  CHECK_THROWS_AS(parse_poly(f2, ""), ParseError);
  CHECK_THROWS_AS(parse_poly(f2, "a"), ParseError);
}

TEST_CASE("monic enumeration index") {
  const auto f3 = FieldContext::build(3, 1);
  CHECK(monic_from_index(f3, 0, 2) == Poly{0, 0, 1});
  CHECK(monic_from_index(f3, 5, 2) == Poly{2, 1, 1});
  // Index order matches canonical order within a degree.
  for (std::uint64_t i = 0; i + 1 < 27; ++i) CHECK(monic_from_index(f3, i, 3) < monic_from_index(f3, i + 1, 3));
}
