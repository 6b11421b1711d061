#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "omegak/poly.hpp"

// Bit-packed arithmetic over F_2, used where millions of polynomials have to
// be profiled (Erdős–Kac sampling, full enumeration at q = 2). Only the
// operations needed by the squarefree/distinct-degree pipeline are provided.
namespace omegak::gf2 {

/// Bit i of words[i / 64] is the coefficient of t^i; no zero top words.
class Poly2 {
 public:
  Poly2() = default;
  explicit Poly2(std::vector<std::uint64_t> words);
  static Poly2 from_bits(std::uint64_t bits) { return Poly2({bits}); }

  int degree() const noexcept;
  bool is_zero() const noexcept { return words_.empty(); }
  bool is_one() const noexcept { return words_.size() == 1 && words_[0] == 1; }
  bool bit(int i) const noexcept;
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const Poly2&, const Poly2&) = default;

  std::vector<std::uint64_t>& raw() noexcept { return words_; }
  void trim() noexcept;

 private:
  std::vector<std::uint64_t> words_;
};

Poly2 from_poly(const Poly& f);
Poly to_poly(const Poly2& f);

Poly2 add(const Poly2& a, const Poly2& b);
Poly2 mul(const Poly2& a, const Poly2& b);
Poly2 rem(Poly2 a, const Poly2& m);
Poly2 quo(Poly2 a, const Poly2& m);
Poly2 gcd(Poly2 a, Poly2 b);
Poly2 square(const Poly2& a);
Poly2 derivative(const Poly2& a);
/// h with h^2 = a; requires derivative(a) == 0.
Poly2 sqrt(const Poly2& a);

/// Number of irreducible factors of a squarefree polynomial.
int count_irreducible_factors(const Poly2& squarefree);

/// multiplicity k -> omega_k(f) for a monic f of degree >= 1.
std::map<int, int> multiplicity_profile(const Poly2& f);

/// (omega(f), omega_1(f)) without building the profile map.
struct OmegaPair {
  int omega = 0;
  int omega1 = 0;
};
OmegaPair omega_pair(const Poly2& f);

}  // namespace omegak::gf2
