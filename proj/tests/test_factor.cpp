#include <doctest.h>

#include <random>
#include <set>

#include "omegak/error.hpp"
#include "omegak/factor.hpp"
#include "omegak/gf2.hpp"

using namespace omegak;

namespace {

Factorization make(std::vector<std::pair<Poly, int>> parts) {
  Factorization f;
  for (auto& [p, m] : parts) f.factors.push_back({p, m});
  return f;
}

Poly random_monic(const FieldContext& ctx, int degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> coef(0, ctx.order() - 1);
  std::vector<FieldElement> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = {coef(rng)};
  c.back() = ctx.one();
  return Poly(c);
}

// Product of random irreducible powers, so that high multiplicities (and
// multiplicities divisible by p) actually occur.
Poly random_structured(const FieldContext& ctx, int max_degree, std::mt19937_64& rng) {
  Poly f = Poly::constant(ctx.one());
  std::uniform_int_distribution<int> deg(1, 3), mult(1, 5);
  while (true) {
    const Poly base = random_monic(ctx, deg(rng), rng);
    const int m = mult(rng);
    if (f.degree() + m * base.degree() > max_degree) break;
    for (int i = 0; i < m; ++i) f = mul(ctx, f, base);
  }
  if (f.degree() < 1) f = Poly::x();
  return f;
}

}  // namespace

TEST_CASE("is_irreducible examples") {
  const auto f2 = FieldContext::build(2, 1);
  const auto f3 = FieldContext::build(3, 1);
  CHECK(is_irreducible(f2, Poly{1, 1, 1}));
  CHECK_FALSE(is_irreducible(f2, Poly{1, 0, 1}));
  CHECK(is_irreducible(f3, Poly{1, 0, 1}));
  CHECK(is_irreducible(f2, Poly{0, 1}));
  CHECK_THROWS_AS(is_irreducible(f2, Poly{1}), DomainError);
  CHECK_THROWS_AS(is_irreducible(f3, Poly{1, 2}), DomainError);
}

TEST_CASE("squarefree decomposition examples") {
  const auto f2 = FieldContext::build(2, 1);
  auto sq = squarefree_decomposition(f2, Poly{1, 0, 1});
  REQUIRE(sq.size() == 1);
  CHECK(sq[0].part == Poly{1, 1});
  CHECK(sq[0].multiplicity == 2);

  sq = squarefree_decomposition(f2, Poly{0, 1, 1});
  REQUIRE(sq.size() == 1);
  CHECK(sq[0].part == Poly{0, 1, 1});
  CHECK(sq[0].multiplicity == 1);

  sq = squarefree_decomposition(f2, Poly{0, 0, 1, 0, 1});
  REQUIRE(sq.size() == 1);
  CHECK(sq[0].part == Poly{0, 1, 1});
  CHECK(sq[0].multiplicity == 2);
}

TEST_CASE("factor examples") {
  const auto f2 = FieldContext::build(2, 1);
  const auto f3 = FieldContext::build(3, 1);
  CHECK(factor(f2, Poly{0, 1, 1}) == make({{Poly{0, 1}, 1}, {Poly{1, 1}, 1}}));
  CHECK(factor(f2, Poly{1, 1, 1, 1}) == make({{Poly{1, 1}, 3}}));
  CHECK(factor(f3, Poly{1, 2, 1}) == make({{Poly{1, 1}, 2}}));
}

TEST_CASE("factorization matches trial division for q = 2, deg <= 6") {
  const auto f2 = FieldContext::build(2, 1);
  // Irreducibles of degree <= 6 by sieving out products of smaller monics.
  std::set<Poly> reducible;
  for (int da = 1; da <= 6; ++da)
    for (int db = da; da + db <= 6; ++db)
      for (std::uint64_t ia = 0; ia < (1u << da); ++ia)
        for (std::uint64_t ib = 0; ib < (1u << db); ++ib)
          reducible.insert(mul(f2, monic_from_index(f2, ia, da), monic_from_index(f2, ib, db)));
  std::vector<Poly> irreducibles;
  for (int d = 1; d <= 6; ++d)
    for (std::uint64_t i = 0; i < (1u << d); ++i) {
      Poly f = monic_from_index(f2, i, d);
      if (!reducible.count(f)) irreducibles.push_back(f);
    }
  CHECK(irreducibles.size() == 2 + 1 + 2 + 3 + 6 + 9);

  for (int n = 1; n <= 6; ++n) {
    for (std::uint64_t idx = 0; idx < (1u << n); ++idx) {
      const Poly f = monic_from_index(f2, idx, n);
      Factorization expected;
      Poly rest = f;
      for (const auto& l : irreducibles) {
        int m = 0;
        while (rest.degree() >= l.degree() && rem(f2, rest, l).is_zero()) {
          rest = quo(f2, rest, l);
          ++m;
        }
        if (m > 0) expected.factors.push_back({l, m});
      }
      CHECK(rest.is_one());
      CHECK(factor(f2, f, idx) == expected);
      CHECK(is_irreducible(f2, f) == (expected.factors.size() == 1 && expected.factors[0].multiplicity == 1));
    }
  }
}

TEST_CASE("round trip, degree count and seed independence") {
  std::mt19937_64 rng(2024);
  int samples = 0;
  for (const auto& ctx : {FieldContext::build(2, 1), FieldContext::build(3, 1), FieldContext::build(2, 2),
                          FieldContext::build(5, 1)}) {
    for (int i = 0; i < 260; ++i) {
      const int degree = 1 + static_cast<int>(rng() % 30);
      const Poly f = (i % 2 == 0) ? random_monic(ctx, degree, rng) : random_structured(ctx, 30, rng);
      const auto fac = factor(ctx, f, 1);
      CHECK(fac.expand(ctx) == f);
      CHECK(fac.total_degree() == f.degree());
      std::set<Poly> distinct;
      for (const auto& [irr, m] : fac.factors) {
        CHECK(irr.is_monic());
        CHECK(m >= 1);
        CHECK(is_irreducible(ctx, irr));
        distinct.insert(irr);
      }
      CHECK(distinct.size() == fac.factors.size());
      CHECK(factor(ctx, f, 99) == fac);

      // Squarefree parts are squarefree and pairwise coprime.
      const auto sq = squarefree_decomposition(ctx, f);
      Poly rebuilt = Poly::constant(ctx.one());
      for (std::size_t a = 0; a < sq.size(); ++a) {
        CHECK(gcd(ctx, sq[a].part, derivative(ctx, sq[a].part)).is_one());
        for (std::size_t b = a + 1; b < sq.size(); ++b) CHECK(gcd(ctx, sq[a].part, sq[b].part).is_one());
        for (int m = 0; m < sq[a].multiplicity; ++m) rebuilt = mul(ctx, rebuilt, sq[a].part);
      }
      CHECK(rebuilt == f);

      // Count-only profile agrees with the full factorization.
      std::map<int, int> profile;
      for (const auto& [irr, m] : fac.factors) ++profile[m];
      CHECK(multiplicity_profile(ctx, f) == profile);
      ++samples;
    }
  }
  CHECK(samples >= 1000);
}

TEST_CASE("factorization over larger fields") {
  std::mt19937_64 rng(7);
  for (const auto& ctx : {FieldContext::build(3, 2), FieldContext::build(2, 4), FieldContext::build(65521, 1),
                          FieldContext::build(2147483647, 1)}) {
    for (int i = 0; i < 20; ++i) {
      const Poly f = (i % 2) ? random_monic(ctx, 2 + i, rng) : random_structured(ctx, 16, rng);
      const auto fac = factor(ctx, f, static_cast<std::uint64_t>(i));
      CHECK(fac.expand(ctx) == f);
      for (const auto& [irr, m] : fac.factors) CHECK(is_irreducible(ctx, irr));
    }
  }
}

TEST_CASE("bit-packed F2 path agrees with the generic path") {
  const auto f2 = FieldContext::build(2, 1);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 400; ++i) {
    const int degree = 1 + static_cast<int>(rng() % 200);
    const Poly f = (i % 3 == 0) ? random_structured(f2, degree, rng) : random_monic(f2, degree, rng);
    const auto packed = gf2::from_poly(f);
    CHECK(gf2::to_poly(packed) == f);
    CHECK(gf2::multiplicity_profile(packed) == multiplicity_profile(f2, f));
    const auto pair = gf2::omega_pair(packed);
    const auto profile = multiplicity_profile(f2, f);
    int omega = 0;
    for (auto [k, c] : profile) omega += c;
    CHECK(pair.omega == omega);
    CHECK(pair.omega1 == (profile.count(1) ? profile.at(1) : 0));
    const auto g = random_monic(f2, 1 + static_cast<int>(rng() % 90), rng);
    const auto pg = gf2::from_poly(g);
    CHECK(gf2::to_poly(gf2::mul(packed, pg)) == mul(f2, f, g));
    CHECK(gf2::to_poly(gf2::rem(packed, pg)) == rem(f2, f, g));
    CHECK(gf2::to_poly(gf2::quo(packed, pg)) == quo(f2, f, g));
    CHECK(gf2::to_poly(gf2::gcd(packed, pg)) == gcd(f2, f, g));
    CHECK(gf2::to_poly(gf2::square(packed)) == mul(f2, f, f));
    CHECK(gf2::to_poly(gf2::derivative(packed)) == derivative(f2, f));
    CHECK(gf2::sqrt(gf2::square(packed)) == packed);
  }
}
