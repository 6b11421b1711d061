#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace omegak {

/// An element of F_q stored by index in [0, q). For prime fields the index is
/// the residue; for extension fields it is sum c_i p^i where (c_0, ..., c_{e-1})
/// are the coordinates over F_p in the basis 1, x, ..., x^{e-1}.
struct FieldElement {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

bool is_prime(std::uint64_t n);

/// F_q with q = p^e. Immutable after construction; all arithmetic is const
/// and safe to share across threads.
///
/// Prime fields (e = 1) use direct modular arithmetic and accept p < 2^31.
/// Extension fields use exp/log tables over the lexicographically smallest
/// monic irreducible modulus of degree e and accept q <= 2^16.
class FieldContext {
 public:
  static constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 31) - 1;
  static constexpr std::uint64_t kMaxTableOrder = std::uint64_t{1} << 16;

  /// Throws ConstructionError if p is not prime or e == 0, CapacityError if
  /// the field exceeds the supported bounds.
  static FieldContext build(std::uint64_t p, unsigned e);

  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return e_; }
  std::uint32_t order() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return e_ == 1; }

  /// Modulus of the extension over F_p, low degree first, monic; empty for
  /// prime fields.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  /// "p" or "p^e".
  std::string spec() const;

  FieldElement zero() const noexcept { return {0}; }
  FieldElement one() const noexcept { return {1}; }
  bool contains(FieldElement a) const noexcept { return a.index < q_; }

  /// Image of an integer under Z -> F_p -> F_q.
  FieldElement from_integer(std::int64_t n) const noexcept;

  FieldElement add(FieldElement a, FieldElement b) const noexcept;
  FieldElement sub(FieldElement a, FieldElement b) const noexcept;
  FieldElement neg(FieldElement a) const noexcept;
  FieldElement mul(FieldElement a, FieldElement b) const noexcept;
  /// Throws DomainError on zero.
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const;
  FieldElement pow(FieldElement a, std::uint64_t m) const noexcept;

  /// Unique b with b^p = a (the inverse Frobenius, a^(q/p)).
  FieldElement pth_root(FieldElement a) const noexcept;

 private:
  FieldContext() = default;
  void build_tables();

  std::uint32_t p_ = 2;
  unsigned e_ = 1;
  std::uint32_t q_ = 2;
  std::vector<std::uint32_t> modulus_;
  // Extension fields only.
  std::vector<std::uint32_t> exp_;   // size 2(q-1)
  std::vector<std::uint32_t> log_;   // size q, log_[0] unused
  std::vector<std::int32_t> zech_;   // log(1 + g^d), -1 when 1 + g^d = 0 (odd p)
  std::vector<std::uint32_t> neg_;   // odd p
};

/// Parses "p" or "p^e" and builds the field.
FieldContext parse_field(std::string_view spec);

/// Largest q accepted where only the order matters (exact counting).
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 32;

/// Parses "p" or "p^e" and returns q without building tables.
std::uint64_t parse_field_order(std::string_view spec);

}  // namespace omegak
