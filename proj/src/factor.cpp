#include "omegak/factor.hpp"

#include <algorithm>
#include <random>

#include "omegak/error.hpp"
#include "omegak/random.hpp"

namespace omegak {

namespace {

void require_monic_nonconstant(const Poly& f) {
  if (f.degree() < 1 || !f.is_monic()) throw DomainError("expected a monic polynomial of degree >= 1");
}

std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int r = 2; r * r <= n; ++r) {
    if (n % r != 0) continue;
    out.push_back(r);
    while (n % r == 0) n /= r;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Inverse of the p-power map on coefficients, for f with f' = 0.
Poly pth_root(const FieldContext& ctx, const Poly& f) {
  const std::size_t p = ctx.characteristic();
  std::vector<FieldElement> c(f.coeffs().size() / p + 1);
  for (std::size_t j = 0; j * p < f.coeffs().size(); ++j) c[j] = ctx.pth_root(f[j * p]);
  return Poly(std::move(c));
}

Poly random_below_degree(const FieldContext& ctx, int degree, std::mt19937_64& rng) {
  std::vector<FieldElement> c(static_cast<std::size_t>(degree));
  for (auto& x : c) x = {static_cast<std::uint32_t>(uniform_below(rng, ctx.order()))};
  return Poly(std::move(c));
}

// Splitting polynomial for equal-degree factorization of f into degree-d
// irreducibles: a^((q^d-1)/2) - 1 for odd q, the absolute trace for even q.
Poly splitter(const FieldContext& ctx, const Poly& a, const Poly& f, int d) {
  if (ctx.characteristic() == 2) {
    const int steps = static_cast<int>(ctx.degree()) * d;
    Poly term = rem(ctx, a, f);
    Poly trace = term;
    for (int i = 1; i < steps; ++i) {
      term = mulmod(ctx, term, term, f);
      trace = add(ctx, trace, term);
    }
    return trace;
  }
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), ctx.order(), static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  return sub(ctx, powmod(ctx, a, e, f), Poly::constant(ctx.one()));
}

void equal_degree_split(const FieldContext& ctx, const Poly& f, int d, std::mt19937_64& rng,
                        std::vector<Poly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  while (true) {
    const Poly a = random_below_degree(ctx, f.degree(), rng);
    if (a.degree() < 1) continue;
    const Poly g = gcd(ctx, splitter(ctx, a, f, d), f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(ctx, g, d, rng, out);
      equal_degree_split(ctx, quo(ctx, f, g), d, rng, out);
      return;
    }
  }
}

void squarefree_into(const FieldContext& ctx, const Poly& f, int scale, std::vector<SquarefreePart>& out) {
  Poly c = gcd(ctx, f, derivative(ctx, f));
  Poly w = quo(ctx, f, c);
  int i = 1;
  while (!w.is_one()) {
    Poly y = gcd(ctx, w, c);
    Poly fac = quo(ctx, w, y);
    if (!fac.is_one()) out.push_back({std::move(fac), i * scale});
    c = quo(ctx, c, y);
    w = std::move(y);
    ++i;
  }
  if (!c.is_one()) squarefree_into(ctx, pth_root(ctx, c), scale * static_cast<int>(ctx.characteristic()), out);
}

}  // namespace

Poly Factorization::expand(const FieldContext& ctx) const {
  Poly out = Poly::constant(ctx.one());
  for (const auto& [irr, m] : factors)
    for (int i = 0; i < m; ++i) out = mul(ctx, out, irr);
  return out;
}

int Factorization::total_degree() const {
  int total = 0;
  for (const auto& f : factors) total += f.multiplicity * f.irreducible.degree();
  return total;
}

bool is_irreducible(const FieldContext& ctx, const Poly& f) {
  require_monic_nonconstant(f);
  const int d = f.degree();
  const Poly x = rem(ctx, Poly::x(), f);
  std::vector<Poly> powers;  // powers[i] = x^(q^i) mod f
  powers.reserve(static_cast<std::size_t>(d) + 1);
  powers.push_back(x);
  for (int i = 1; i <= d; ++i) powers.push_back(frobenius(ctx, powers.back(), f));
  if (powers[static_cast<std::size_t>(d)] != x) return false;
  for (int r : prime_divisors(d)) {
    if (!gcd(ctx, sub(ctx, powers[static_cast<std::size_t>(d / r)], x), f).is_one()) return false;
  }
  return true;
}

std::vector<SquarefreePart> squarefree_decomposition(const FieldContext& ctx, const Poly& f) {
  require_monic_nonconstant(f);
  std::vector<SquarefreePart> out;
  squarefree_into(ctx, f, 1, out);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.multiplicity < b.multiplicity; });
  return out;
}

std::vector<DegreePart> distinct_degree(const FieldContext& ctx, const Poly& f) {
  require_monic_nonconstant(f);
  std::vector<DegreePart> out;
  const Poly x = Poly::x();
  Poly rest = f;
  Poly h = rem(ctx, x, rest);
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    h = frobenius(ctx, h, rest);
    Poly g = gcd(ctx, sub(ctx, h, x), rest);
    if (g.degree() > 0) {
      rest = quo(ctx, rest, g);
      h = rem(ctx, h, rest);
      out.push_back({std::move(g), d});
    }
  }
  if (rest.degree() > 0) {
    const int d = rest.degree();
    out.push_back({std::move(rest), d});
  }
  return out;
}

int count_irreducible_factors(const FieldContext& ctx, const Poly& squarefree) {
  int count = 0;
  for (const auto& [part, d] : distinct_degree(ctx, squarefree)) count += part.degree() / d;
  return count;
}

Factorization factor(const FieldContext& ctx, const Poly& f, std::uint64_t seed) {
  require_monic_nonconstant(f);
  std::mt19937_64 rng(seed);
  Factorization result;
  for (const auto& [part, mult] : squarefree_decomposition(ctx, f)) {
    for (const auto& [same_degree, d] : distinct_degree(ctx, part)) {
      std::vector<Poly> irreducibles;
      equal_degree_split(ctx, same_degree, d, rng, irreducibles);
      for (auto& irr : irreducibles) result.factors.push_back({std::move(irr), mult});
    }
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const Factor& a, const Factor& b) { return a.irreducible < b.irreducible; });
  return result;
}

std::map<int, int> multiplicity_profile(const FieldContext& ctx, const Poly& f) {
  std::map<int, int> profile;
  for (const auto& [part, mult] : squarefree_decomposition(ctx, f))
    profile[mult] = count_irreducible_factors(ctx, part);
  return profile;
}

}  // namespace omegak
