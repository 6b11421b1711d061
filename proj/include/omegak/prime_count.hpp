#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <gmpxx.h>

#include "omegak/field.hpp"
#include "omegak/poly.hpp"

namespace omegak {

/// Exact number of monic irreducibles of degree n over F_q, by Möbius
/// inversion of sum_{d|n} d pi_q(d) = q^n.
mpz_class pi_q_exact(std::uint64_t q, int n);

/// q^m as a big integer; 0 for m < 0 (the truncated power T(m)).
mpz_class truncated_power(std::uint64_t q, int m);

/// pi_q(1..D) as exact big integers. Immutable once built.
class PrimeCountTable {
 public:
  static PrimeCountTable build(std::uint64_t q, int max_degree);
  /// Wraps externally supplied counts (counts[d - 1] = pi_q(d)) without
  /// checking them; verify with first_gauss_violation().
  static PrimeCountTable from_counts(std::uint64_t q, std::vector<mpz_class> counts);

  std::uint64_t q() const noexcept { return q_; }
  int max_degree() const noexcept { return static_cast<int>(counts_.size()); }
  /// pi_q(d) for 1 <= d <= max_degree().
  const mpz_class& count(int d) const;

  /// Smallest n <= max_degree() with sum_{d|n} d pi_q(d) != q^n, or 0 if the
  /// Gauss identity holds throughout.
  int first_gauss_violation() const;

 private:
  std::uint64_t q_ = 0;
  std::vector<mpz_class> counts_;
};

/// Process-wide memoized table covering at least `max_degree`.
std::shared_ptr<const PrimeCountTable> prime_counts(std::uint64_t q, int max_degree);

/// Upper bound on q^D checked by enumerating operations.
inline constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 26;

/// q^n if it does not exceed `limit`, otherwise throws CapacityError.
std::uint64_t checked_count(std::uint64_t q, int n, std::uint64_t limit = kEnumerationLimit);

/// All monic irreducibles of degree <= D in canonical order. Requires
/// q^D <= 2^26.
std::vector<Poly> irreducibles_up_to(const FieldContext& ctx, int max_degree);

struct MertensSum {
  mpq_class exact;  // sum_{d <= n} pi_q(d) q^{-d}
  double value = 0.0;
};

/// Sum of 1/|l| over monic irreducibles l of degree <= n.
MertensSum mertens_sum(std::uint64_t q, int n);

}  // namespace omegak
