#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "omegak/factor.hpp"
#include "omegak/series.hpp"

namespace omegak {

struct OmegaProfile {
  int omega = 0;
  std::map<int, int> profile;  // k -> omega_k, zero entries omitted
  int Omega = 0;

  int omega_k(int k) const;
  int Omega_k(int k) const { return k * omega_k(k); }
};

OmegaProfile omega_profile(const Factorization& f);
OmegaProfile omega_profile(const std::map<int, int>& multiplicity_profile);

/// #{f in M_n : l^k || f} for a fixed irreducible l of degree d:
/// T(n - kd) - T(n - (k+1)d).
mpz_class exact_divisibility_count(std::uint64_t q, int n, int d, int k);

/// Sum of omega_k over M_n; k = 0 gives plain omega.
mpz_class exact_first_moment(std::uint64_t q, int n, int k);
/// Sum of omega_k^2 over M_n, k >= 1.
mpz_class exact_second_moment(std::uint64_t q, int n, int k);

/// Everything accumulated by enumerating M_n. Index k = 0 is omega, k >= 1 is
/// omega_k.
struct Census {
  std::uint64_t q = 0;
  int n = 0;
  int kmax = 0;
  mpz_class total;
  std::vector<mpz_class> first;
  std::vector<mpz_class> second;
  std::vector<std::vector<mpz_class>> histogram;  // [k][value] -> count
};

/// Enumerates all of M_n (q^n <= 2^26). `chunks` fixes the work partition;
/// the result does not depend on it or on the worker count.
Census brute_census(const FieldContext& ctx, int n, int kmax, int chunks = 64);

/// |{f in M_n : omega_k(f) = value}| for k >= 2 and value in {0, 1}, from the
/// truncated Euler product.
mpz_class count_value_census(std::uint64_t q, int n, int k, int value);

/// sum over l | f with nu_l(f) >= k+1 of 1 + g(l) + ... + g(l)^{nu - (k+1)}.
mpq_class a_gk_value(const Factorization& f, const Weight& g, int k);

/// omega_1(f) = omega(f) - a_1(f) - a_2(f) with g = -1.
bool omega1_decomposition_check(const Factorization& f);

enum class MomentMethod { exact, brute, asymptotic };

struct MomentReport {
  std::uint64_t q = 0;
  int n = 0;
  int k = 0;
  int order = 1;
  std::optional<mpz_class> exact;  // absent for the asymptotic method
  long double main_term = 0.0L;
  long double residual = 0.0L;
  long double normalization = 0.0L;
  long double normalized_residual = 0.0L;
};

/// Main terms and error scales:
///   order 1, k = 0: q^n (log n + A1),           scale q^n / n
///   order 1, k = 1: q^n (log n + A1 - L(2)),    scale q^n / n
///   order 1, k > 1: (L(k) - L(k+1)) q^n,        scale n q^{n/k}
///   order 2, k = 1: q^n (log^2 n + c2 log n + c3), scale q^n log n / n
///   order 2, k > 1: c_k' q^n,                   scale n q^{n/k}
/// Constants for k > 1 use exact partial sums deep enough that truncation is
/// invisible at this scale. The brute method needs a FieldContext of order q.
MomentReport moment_report(std::uint64_t q, int n, int k, int order, MomentMethod method,
                           const FieldContext* ctx = nullptr);

}  // namespace omegak
