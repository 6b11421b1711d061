#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "omegak/field.hpp"
#include "omegak/poly.hpp"

namespace omegak {

struct Factor {
  Poly irreducible;
  int multiplicity = 0;

  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Multiset of monic irreducibles with multiplicities, canonically ordered
/// (by the canonical Poly order of the irreducible parts).
struct Factorization {
  std::vector<Factor> factors;

  /// Product of irreducible^multiplicity.
  Poly expand(const FieldContext& ctx) const;
  /// Sum of multiplicity * degree.
  int total_degree() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Squarefree part g_i appearing with multiplicity exactly i.
struct SquarefreePart {
  Poly part;
  int multiplicity = 0;
};

/// Product of all irreducible factors of degree `degree`.
struct DegreePart {
  Poly part;
  int degree = 0;
};

/// Throws DomainError unless f is monic of degree >= 1.
bool is_irreducible(const FieldContext& ctx, const Poly& f);

/// f = prod g_i^i with each g_i squarefree and pairwise coprime, sorted by i,
/// trivial parts omitted. Handles f' = 0 by p-th root descent.
std::vector<SquarefreePart> squarefree_decomposition(const FieldContext& ctx, const Poly& f);

/// Splits a squarefree monic f into products of equal-degree irreducibles.
std::vector<DegreePart> distinct_degree(const FieldContext& ctx, const Poly& f);

/// Number of irreducible factors of a squarefree monic polynomial.
int count_irreducible_factors(const FieldContext& ctx, const Poly& squarefree);

/// Complete factorization: squarefree decomposition, distinct-degree split,
/// then randomized equal-degree splitting (trace map in characteristic 2).
/// The result does not depend on `seed`.
Factorization factor(const FieldContext& ctx, const Poly& f, std::uint64_t seed = 0);

/// multiplicity k -> omega_k(f), computed from the squarefree decomposition
/// and distinct-degree counts without equal-degree splitting.
std::map<int, int> multiplicity_profile(const FieldContext& ctx, const Poly& f);

}  // namespace omegak
