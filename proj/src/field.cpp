#include "omegak/field.hpp"

#include <charconv>
#include <limits>
#include <utility>

#include "omegak/error.hpp"

namespace omegak {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod64(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mul_mod64(r, a, m);
    a = mul_mod64(a, a, m);
    e >>= 1;
  }
  return r;
}

// Dense polynomials over F_p used only while building extension tables.
using Digits = std::vector<std::uint32_t>;

Digits to_digits(std::uint32_t index, std::uint32_t p, unsigned e) {
  Digits d(e, 0);
  for (unsigned i = 0; i < e; ++i) {
    d[i] = index % p;
    index /= p;
  }
  return d;
}

std::uint32_t from_digits(const Digits& d, std::uint32_t p) {
  std::uint32_t index = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) index = index * p + *it;
  return index;
}

// Remainder of a modulo the monic polynomial m (both low degree first).
Digits reduce(Digits a, const Digits& m, std::uint32_t p) {
  const std::size_t dm = m.size() - 1;
  for (std::size_t i = a.size(); i-- > dm;) {
    const std::uint32_t c = a[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dm; ++j) {
      const u64 sub = static_cast<u64>(c) * m[j] % p;
      a[i - dm + j] = static_cast<std::uint32_t>((a[i - dm + j] + p - sub) % p);
    }
  }
  a.resize(dm);
  return a;
}

Digits mul_reduce(const Digits& a, const Digits& b, const Digits& m, std::uint32_t p) {
  Digits prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<u64>(a[i]) * b[j]) % p);
  }
  return reduce(std::move(prod), m, p);
}

bool all_zero(const Digits& d) {
  for (auto c : d)
    if (c != 0) return false;
  return true;
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool irreducible_by_trial(const Digits& m, std::uint32_t p) {
  const unsigned deg = static_cast<unsigned>(m.size() - 1);
  for (unsigned d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Digits divisor = to_digits(static_cast<std::uint32_t>(idx), p, d);
      divisor.push_back(1);
      if (all_zero(reduce(m, divisor, p))) return false;
    }
  }
  return true;
}

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (u64 r = 2; r * r <= n; ++r) {
    if (n % r != 0) continue;
    out.push_back(r);
    while (n % r == 0) n /= r;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic for all 64-bit n.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = pow_mod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldContext FieldContext::build(std::uint64_t p, unsigned e) {
  if (e == 0) throw ConstructionError("extension degree must be >= 1");
  if (!is_prime(p)) throw ConstructionError("characteristic " + std::to_string(p) + " is not prime");
  if (e == 1) {
    if (p > kMaxPrime) throw CapacityError("prime field order must be below 2^31");
  } else {
    u64 q = 1;
    for (unsigned i = 0; i < e; ++i) {
      q *= p;
      if (q > kMaxTableOrder) throw CapacityError("extension field order must be at most 2^16");
    }
  }
  FieldContext ctx;
  ctx.p_ = static_cast<std::uint32_t>(p);
  ctx.e_ = e;
  u64 q = 1;
  for (unsigned i = 0; i < e; ++i) q *= p;
  ctx.q_ = static_cast<std::uint32_t>(q);
  if (e > 1) ctx.build_tables();
  return ctx;
}

void FieldContext::build_tables() {
  // Lexicographically smallest monic irreducible of degree e: candidates are
  // visited in increasing index order of their lower coefficients.
  for (std::uint32_t idx = 0; idx < q_; ++idx) {
    Digits cand = to_digits(idx, p_, e_);
    cand.push_back(1);
    if (cand[0] != 0 && irreducible_by_trial(cand, p_)) {
      modulus_ = std::move(cand);
      break;
    }
  }

  const std::uint32_t units = q_ - 1;
  const auto divisors = prime_divisors(units);
  auto power = [&](const Digits& base, u64 m) {
    Digits result = to_digits(1, p_, e_);
    Digits b = base;
    while (m != 0) {
      if (m & 1) result = mul_reduce(result, b, modulus_, p_);
      b = mul_reduce(b, b, modulus_, p_);
      m >>= 1;
    }
    return result;
  };

  Digits generator;
  for (std::uint32_t idx = 2; idx < q_; ++idx) {
    Digits g = to_digits(idx, p_, e_);
    bool primitive = true;
    for (u64 r : divisors) {
      if (from_digits(power(g, units / r), p_) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator = std::move(g);
      break;
    }
  }

  exp_.assign(2 * static_cast<std::size_t>(units), 0);
  log_.assign(q_, 0);
  Digits cur = to_digits(1, p_, e_);
  for (std::uint32_t i = 0; i < units; ++i) {
    const std::uint32_t index = from_digits(cur, p_);
    exp_[i] = index;
    exp_[i + units] = index;
    log_[index] = i;
    cur = mul_reduce(cur, generator, modulus_, p_);
  }

  if (p_ != 2) {
    neg_.assign(q_, 0);
    for (std::uint32_t idx = 0; idx < q_; ++idx) {
      Digits d = to_digits(idx, p_, e_);
      for (auto& c : d) c = (p_ - c) % p_;
      neg_[idx] = from_digits(d, p_);
    }
    zech_.assign(units, -1);
    for (std::uint32_t d = 0; d < units; ++d) {
      Digits x = to_digits(exp_[d], p_, e_);
      x[0] = (x[0] + 1) % p_;
      const std::uint32_t index = from_digits(x, p_);
      zech_[d] = index == 0 ? -1 : static_cast<std::int32_t>(log_[index]);
    }
  }
}

std::string FieldContext::spec() const {
  return e_ == 1 ? std::to_string(p_) : std::to_string(p_) + "^" + std::to_string(e_);
}

FieldElement FieldContext::from_integer(std::int64_t n) const noexcept {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint32_t>(r)};
}

FieldElement FieldContext::add(FieldElement a, FieldElement b) const noexcept {
  if (e_ == 1) {
    const u64 s = static_cast<u64>(a.index) + b.index;
    return {static_cast<std::uint32_t>(s >= p_ ? s - p_ : s)};
  }
  if (p_ == 2) return {a.index ^ b.index};
  if (a.index == 0) return b;
  if (b.index == 0) return a;
  const std::uint32_t units = q_ - 1;
  const std::uint32_t la = log_[a.index];
  const std::uint32_t d = (log_[b.index] + units - la) % units;
  const std::int32_t z = zech_[d];
  if (z < 0) return {0};
  return {exp_[la + static_cast<std::uint32_t>(z)]};
}

FieldElement FieldContext::neg(FieldElement a) const noexcept {
  if (e_ == 1) return {a.index == 0 ? 0 : p_ - a.index};
  if (p_ == 2) return a;
  return {neg_[a.index]};
}

FieldElement FieldContext::sub(FieldElement a, FieldElement b) const noexcept {
  if (e_ == 1) return {a.index >= b.index ? a.index - b.index : a.index + (p_ - b.index)};
  return add(a, neg(b));
}

FieldElement FieldContext::mul(FieldElement a, FieldElement b) const noexcept {
  if (e_ == 1) return {static_cast<std::uint32_t>(static_cast<u64>(a.index) * b.index % p_)};
  if (a.index == 0 || b.index == 0) return {0};
  return {exp_[log_[a.index] + log_[b.index]]};
}

FieldElement FieldContext::inv(FieldElement a) const {
  if (a.index == 0) throw DomainError("inverse of zero");
  if (e_ == 1) {
    // Extended Euclid on (a, p).
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a.index;
    while (new_r != 0) {
      const std::int64_t quot = r / new_r;
      t = std::exchange(new_t, t - quot * new_t);
      r = std::exchange(new_r, r - quot * new_r);
    }
    if (t < 0) t += p_;
    return {static_cast<std::uint32_t>(t)};
  }
  const std::uint32_t units = q_ - 1;
  return {exp_[(units - log_[a.index]) % units]};
}

FieldElement FieldContext::div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

FieldElement FieldContext::pow(FieldElement a, std::uint64_t m) const noexcept {
  if (m == 0) return one();
  if (a.index == 0) return zero();
  if (e_ == 1) return {static_cast<std::uint32_t>(pow_mod64(a.index, m, p_))};
  const std::uint32_t units = q_ - 1;
  const u64 l = static_cast<u64>(log_[a.index]) * (m % units) % units;
  return {exp_[l]};
}

FieldElement FieldContext::pth_root(FieldElement a) const noexcept {
  if (e_ == 1) return a;
  return pow(a, q_ / p_);
}

namespace {

struct FieldSpec {
  std::uint64_t p = 0;
  std::uint64_t e = 1;
};

FieldSpec split_field_spec(std::string_view spec) {
  auto parse_uint = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
      throw ParseError("malformed field spec '" + std::string(spec) + "'");
    return v;
  };
  const auto caret = spec.find('^');
  if (caret == std::string_view::npos) return {parse_uint(spec), 1};
  return {parse_uint(spec.substr(0, caret)), parse_uint(spec.substr(caret + 1))};
}

}  // namespace

FieldContext parse_field(std::string_view spec) {
  const auto [p, e] = split_field_spec(spec);
  if (e > std::numeric_limits<unsigned>::max()) throw CapacityError("extension degree too large");
  return FieldContext::build(p, static_cast<unsigned>(e));
}

std::uint64_t parse_field_order(std::string_view spec) {
  const auto [p, e] = split_field_spec(spec);
  if (p < 2 || !is_prime(p)) throw ConstructionError("characteristic " + std::to_string(p) + " is not prime");
  if (e == 0) throw ConstructionError("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (q > kMaxFieldOrder / p) throw CapacityError("field order exceeds 2^32");
    q *= p;
  }
  return q;
}

}  // namespace omegak
