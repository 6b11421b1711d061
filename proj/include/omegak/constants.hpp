#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace omegak {

inline constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;
inline constexpr long double kPiSquared = 9.869604401089358618834490999876151135L;

/// A truncated series constant. `tail_bound` bounds |true value - value|
/// coming from truncation at `terms_used` degrees; `exact` holds the
/// rational partial sum when the constant is a rational combination of
/// prime sums.
struct ConstantValue {
  std::string name;
  long double value = 0.0L;
  long double tail_bound = 0.0L;
  int terms_used = 0;
  std::optional<mpq_class> exact;
};

/// Default truncation degree: OMEGAK_TERMS if set to a positive integer,
/// otherwise 80.
int default_terms();

ConstantValue euler_gamma();
/// H_N - log N - 1/(2N) + 1/(12N^2); error O(N^-4).
long double euler_gamma_oracle(long N);

/// c_1 = sum_r (pi_q(r) - q^r/r) q^-r truncated at r = R (R >= 2).
ConstantValue c1_constant(std::uint64_t q, int R);
/// A_1 = gamma + c_1.
ConstantValue A1_constant(std::uint64_t q, int R);
/// L(m) = sum_r pi_q(r) q^{-rm}, m >= 2.
ConstantValue L_constant(std::uint64_t q, int m, int R);
/// C_{g,k} = sum_r pi_q(r) / (q^{rk} (q^r - g)) for constant g in {-1, 0, 1}.
ConstantValue C_gk_constant(std::uint64_t q, int g, int k, int R);

ConstantValue c2_constant(std::uint64_t q, int R);
ConstantValue c3_constant(std::uint64_t q, int R);
/// c_k' for k >= 2; exact rational partial sum available.
ConstantValue c_prime_constant(std::uint64_t q, int k, int R);

struct MainTermConstants {
  ConstantValue gamma, c1, A1, L2, L3, L4, c2, c3;
  std::vector<ConstantValue> c_prime;  // one per requested k
};

MainTermConstants main_term_constants(std::uint64_t q, const std::vector<int>& ks, int R);

/// mertens_sum(q, n) - log n - A_1.
long double mertens_residual(std::uint64_t q, int n, int R);

struct HarmonicSums {
  int n = 0;
  mpq_class first;       // sum_{m<n} 1/(m(n-m))
  mpq_class second;      // sum_{m<n} 1/(m^2(n-m))
  long double third = 0.0L;  // sum_{m<n} q^{-m/2}/(m(n-m))
  long double first_residual = 0.0L;   // - 2 log n / n - 2 gamma / n
  long double second_residual = 0.0L;  // - pi^2/(6n) - 2 log n / n^2
  long double third_residual = 0.0L;   // - log(1 + 1/(sqrt q - 1)) / n
};

/// Direct summation at a single n >= 2.
HarmonicSums harmonic_sums(std::uint64_t q, int n);

struct HarmonicResiduals {
  int n = 0;
  long double first = 0.0L, second = 0.0L, third = 0.0L;
};

/// Residuals for every n in [lo, hi], computed incrementally from exact
/// harmonic numbers.
std::vector<HarmonicResiduals> harmonic_sweep(std::uint64_t q, int lo, int hi);

}  // namespace omegak
