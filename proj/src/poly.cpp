#include "omegak/poly.hpp"

#include <algorithm>
#include <charconv>

#include "omegak/error.hpp"

namespace omegak {

Poly::Poly(std::vector<FieldElement> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Poly::Poly(std::initializer_list<std::uint32_t> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (auto c : coeffs) coeffs_.push_back({c});
  normalize();
}

Poly Poly::constant(FieldElement c) { return Poly(std::vector<FieldElement>{c}); }

Poly Poly::monomial(FieldElement c, std::size_t degree) {
  std::vector<FieldElement> v(degree + 1);
  v[degree] = c;
  return Poly(std::move(v));
}

void Poly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().index == 0) coeffs_.pop_back();
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = a.coeffs_.size(); i-- > 0;) {
    if (auto c = a.coeffs_[i] <=> b.coeffs_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Poly add(const FieldContext& ctx, const Poly& a, const Poly& b) {
  const auto& big = a.degree() >= b.degree() ? a : b;
  const auto& small = a.degree() >= b.degree() ? b : a;
  std::vector<FieldElement> out(big.coeffs().begin(), big.coeffs().end());
  for (std::size_t i = 0; i < small.coeffs().size(); ++i) out[i] = ctx.add(out[i], small[i]);
  return Poly(std::move(out));
}

Poly sub(const FieldContext& ctx, const Poly& a, const Poly& b) {
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<FieldElement> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = ctx.sub(a[i], b[i]);
  return Poly(std::move(out));
}

Poly mul(const FieldContext& ctx, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto ac = a.coeffs();
  const auto bc = b.coeffs();
  std::vector<FieldElement> out(ac.size() + bc.size() - 1);
  if (ctx.is_prime_field()) {
    // Inline mod-p arithmetic; the generic calls dominate factoring time.
    const std::uint64_t p = ctx.characteristic();
    for (std::size_t i = 0; i < ac.size(); ++i) {
      const std::uint64_t x = ac[i].index;
      if (x == 0) continue;
      for (std::size_t j = 0; j < bc.size(); ++j)
        out[i + j].index = static_cast<std::uint32_t>((out[i + j].index + x * bc[j].index) % p);
    }
    return Poly(std::move(out));
  }
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (ac[i].index == 0) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) out[i + j] = ctx.add(out[i + j], ctx.mul(ac[i], bc[j]));
  }
  return Poly(std::move(out));
}

Poly scale(const FieldContext& ctx, const Poly& a, FieldElement c) {
  std::vector<FieldElement> out(a.coeffs().begin(), a.coeffs().end());
  for (auto& x : out) x = ctx.mul(x, c);
  return Poly(std::move(out));
}

Poly make_monic(const FieldContext& ctx, const Poly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return scale(ctx, a, ctx.inv(a.leading()));
}

Poly derivative(const FieldContext& ctx, const Poly& a) {
  if (a.degree() < 1) return {};
  std::vector<FieldElement> out(a.coeffs().size() - 1);
  for (std::size_t i = 1; i < a.coeffs().size(); ++i)
    out[i - 1] = ctx.mul(ctx.from_integer(static_cast<std::int64_t>(i % ctx.characteristic())), a[i]);
  return Poly(std::move(out));
}

namespace {

// Long division in place: on return `r` holds the remainder coefficients
// (not normalized) and, if `q` is non-null, the quotient.
void long_divide(const FieldContext& ctx, std::vector<FieldElement>& r, const Poly& b,
                 std::vector<FieldElement>* q) {
  const auto bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  if (r.size() <= db) {
    if (q) q->clear();
    return;
  }
  const FieldElement lead_inv = ctx.inv(b.leading());
  const bool monic = b.is_monic();
  if (q) q->assign(r.size() - db, FieldElement{});
  for (std::size_t i = r.size(); i-- > db;) {
    FieldElement c = r[i];
    if (c.index == 0) continue;
    if (!monic) c = ctx.mul(c, lead_inv);
    if (q) (*q)[i - db] = c;
    const std::size_t shift = i - db;
    if (ctx.is_prime_field()) {
      const std::uint64_t p = ctx.characteristic();
      const std::uint64_t neg_c = p - c.index;
      for (std::size_t j = 0; j < db; ++j)
        r[shift + j].index = static_cast<std::uint32_t>((r[shift + j].index + neg_c * bc[j].index) % p);
      r[i] = FieldElement{};
      continue;
    }
    for (std::size_t j = 0; j < db; ++j) {
      if (bc[j].index != 0) r[shift + j] = ctx.sub(r[shift + j], ctx.mul(c, bc[j]));
    }
    r[i] = FieldElement{};
  }
  r.resize(db);
}

}  // namespace

std::pair<Poly, Poly> divrem(const FieldContext& ctx, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  std::vector<FieldElement> r(a.coeffs().begin(), a.coeffs().end());
  std::vector<FieldElement> q;
  long_divide(ctx, r, b, &q);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly rem(const FieldContext& ctx, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (a.degree() < b.degree()) return a;
  std::vector<FieldElement> r(a.coeffs().begin(), a.coeffs().end());
  long_divide(ctx, r, b, nullptr);
  return Poly(std::move(r));
}

Poly quo(const FieldContext& ctx, const Poly& a, const Poly& b) { return divrem(ctx, a, b).first; }

Poly gcd(const FieldContext& ctx, const Poly& a, const Poly& b) {
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly r = rem(ctx, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(ctx, x);
}

Poly mulmod(const FieldContext& ctx, const Poly& a, const Poly& b, const Poly& modulus) {
  return rem(ctx, mul(ctx, a, b), modulus);
}

Poly powmod(const FieldContext& ctx, const Poly& base, const mpz_class& exponent, const Poly& modulus) {
  if (modulus.is_zero()) throw DomainError("division by the zero polynomial");
  if (sgn(exponent) < 0) throw DomainError("negative exponent");
  Poly result = rem(ctx, Poly::constant(ctx.one()), modulus);
  const Poly b = rem(ctx, base, modulus);
  const std::size_t bits = mpz_sizeinbase(exponent.get_mpz_t(), 2);
  if (sgn(exponent) == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = mulmod(ctx, result, result, modulus);
    if (mpz_tstbit(exponent.get_mpz_t(), i)) result = mulmod(ctx, result, b, modulus);
  }
  return result;
}

Poly powmod(const FieldContext& ctx, const Poly& base, std::uint64_t exponent, const Poly& modulus) {
  if (modulus.is_zero()) throw DomainError("division by the zero polynomial");
  Poly result = rem(ctx, Poly::constant(ctx.one()), modulus);
  Poly b = rem(ctx, base, modulus);
  while (exponent != 0) {
    if (exponent & 1) result = mulmod(ctx, result, b, modulus);
    exponent >>= 1;
    if (exponent != 0) b = mulmod(ctx, b, b, modulus);
  }
  return result;
}

Poly frobenius(const FieldContext& ctx, const Poly& h, const Poly& modulus) {
  // h^q = h(t^q) since every coefficient is fixed by the q-power map.
  const Poly r = rem(ctx, h, modulus);
  if (r.degree() < 1) return r;
  const std::size_t q = ctx.order();
  if (q > 64) return powmod(ctx, r, std::uint64_t{q}, modulus);
  std::vector<FieldElement> spread((r.coeffs().size() - 1) * q + 1);
  for (std::size_t i = 0; i < r.coeffs().size(); ++i) spread[i * q] = r[i];
  return rem(ctx, Poly(std::move(spread)), modulus);
}

Poly monic_from_index(const FieldContext& ctx, std::uint64_t index, int degree) {
  std::vector<FieldElement> c(static_cast<std::size_t>(degree) + 1);
  const std::uint64_t q = ctx.order();
  for (int i = 0; i < degree; ++i) {
    c[i] = {static_cast<std::uint32_t>(index % q)};
    index /= q;
  }
  c[degree] = ctx.one();
  return Poly(std::move(c));
}

Poly parse_poly(const FieldContext& ctx, std::string_view text) {
  std::vector<FieldElement> coeffs;
  std::size_t pos = 0;
  if (text.empty()) throw ParseError("empty polynomial string");
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      throw ParseError("malformed polynomial coefficient '" + std::string(tok) + "'");
    if (v >= ctx.order())
      throw ParseError("coefficient " + std::to_string(v) + " out of range for F_" + ctx.spec());
    coeffs.push_back({static_cast<std::uint32_t>(v)});
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Poly(std::move(coeffs));
}

std::string format_poly(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(f[i].index);
  }
  return out;
}

std::string pretty_poly(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    const std::uint32_t c = f[i].index;
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (c != 1 || i == 0) out += std::to_string(c);
    if (i >= 1) out += 't';
    if (i >= 2) out += '^' + std::to_string(i);
  }
  return out;
}

}  // namespace omegak
