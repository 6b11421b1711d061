#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "omegak/field.hpp"

namespace omegak {

/// Degree reported for the zero polynomial.
inline constexpr int kZeroDegree = -1;

/// Polynomial over F_q, coefficient i multiplying t^i. Always canonical: no
/// trailing zero coefficients, so the zero polynomial has no coefficients.
///
/// Ordering is canonical as well: by degree, then coefficient by coefficient
/// from the leading term down. For monic polynomials of a fixed degree this
/// coincides with the enumeration index of monic_from_index().
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<FieldElement> coeffs);
  Poly(std::initializer_list<std::uint32_t> coeffs);

  static Poly constant(FieldElement c);
  static Poly monomial(FieldElement c, std::size_t degree);
  static Poly x() { return Poly{0, 1}; }

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0].index == 1; }
  bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back().index == 1; }
  FieldElement leading() const noexcept { return coeffs_.empty() ? FieldElement{} : coeffs_.back(); }
  FieldElement operator[](std::size_t i) const noexcept {
    return i < coeffs_.size() ? coeffs_[i] : FieldElement{};
  }
  std::span<const FieldElement> coeffs() const noexcept { return coeffs_; }

  friend bool operator==(const Poly&, const Poly&) = default;
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

 private:
  void normalize();
  std::vector<FieldElement> coeffs_;
};

Poly add(const FieldContext& ctx, const Poly& a, const Poly& b);
Poly sub(const FieldContext& ctx, const Poly& a, const Poly& b);
Poly mul(const FieldContext& ctx, const Poly& a, const Poly& b);
Poly scale(const FieldContext& ctx, const Poly& a, FieldElement c);
Poly make_monic(const FieldContext& ctx, const Poly& a);
/// Formal derivative, i * c_i with i reduced mod p.
Poly derivative(const FieldContext& ctx, const Poly& a);

/// (quotient, remainder) with deg remainder < deg divisor. Throws DomainError
/// when the divisor is zero.
std::pair<Poly, Poly> divrem(const FieldContext& ctx, const Poly& a, const Poly& b);
Poly rem(const FieldContext& ctx, const Poly& a, const Poly& b);
/// Quotient of an exact division; the remainder is not checked.
Poly quo(const FieldContext& ctx, const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const FieldContext& ctx, const Poly& a, const Poly& b);

Poly mulmod(const FieldContext& ctx, const Poly& a, const Poly& b, const Poly& modulus);
Poly powmod(const FieldContext& ctx, const Poly& base, const mpz_class& exponent, const Poly& modulus);
Poly powmod(const FieldContext& ctx, const Poly& base, std::uint64_t exponent, const Poly& modulus);
/// h^q mod modulus.
Poly frobenius(const FieldContext& ctx, const Poly& h, const Poly& modulus);

/// Monic polynomial of the given degree whose lower coefficients are the
/// base-q digits of index (index < q^degree).
Poly monic_from_index(const FieldContext& ctx, std::uint64_t index, int degree);

/// Text format: comma-separated coefficient indices, low degree first
/// ("0,1,1" is t^2 + t). The zero polynomial formats as "0".
Poly parse_poly(const FieldContext& ctx, std::string_view text);
std::string format_poly(const Poly& f);
/// Human-readable rendering such as "t^2+2t+1" (coefficients by index).
std::string pretty_poly(const Poly& f);

}  // namespace omegak
