#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace omegak {

/// Power series in u truncated after u^N, exact rational coefficients.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int N);
  TruncatedSeries(int N, std::vector<mpq_class> coeffs);

  static TruncatedSeries one(int N);

  int truncation() const noexcept { return N_; }
  const mpq_class& operator[](int n) const { return c_[static_cast<std::size_t>(n)]; }
  mpq_class& operator[](int n) { return c_[static_cast<std::size_t>(n)]; }
  const std::vector<mpq_class>& coeffs() const noexcept { return c_; }
  /// Smallest n with a nonzero coefficient, or N + 1 for the zero series.
  int valuation() const;

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  int N_;
  std::vector<mpq_class> c_;
};

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(const mpq_class& s, const TruncatedSeries& a);
/// 1/a; throws DomainError when the constant term is zero.
TruncatedSeries reciprocal(const TruncatedSeries& a);
/// a^e for a with constant term 1, by the binomial series in (a - 1).
TruncatedSeries pow(const TruncatedSeries& a, const mpz_class& e);

/// Weight g(l) as a function of deg l. Values must satisfy |g| <= 1.
using Weight = std::function<mpq_class(int degree)>;
Weight constant_weight(int g);

/// 1/(1 - qu) = sum q^n u^n.
TruncatedSeries zeta_series(std::uint64_t q, int N);
/// sum over irreducibles l of u^{(k+1) deg l} / (1 - g(l) u^{deg l}).
TruncatedSeries b_series(std::uint64_t q, const Weight& g, int k, int N);
/// zeta_series * b_series; coefficient n is sum over M_n of a_{g,k}.
TruncatedSeries a_series(std::uint64_t q, const Weight& g, int k, int N);

struct SeriesResidual {
  int n = 0;
  mpq_class coeff;
  long double main_term = 0.0L;  // C_{g,k} q^n
  long double residual = 0.0L;
  long double normalized_residual = 0.0L;  // residual / (n q^{n/(k+1)})
};

/// Coefficient n of a_series against C_{g,k} q^n for constant g in
/// {-1, 0, 1}. `constant_override` replaces C_{g,k}.
SeriesResidual main_term_residual(std::uint64_t q, int g, int k, int n,
                                  std::optional<mpq_class> constant_override = std::nullopt);

/// Same for every n <= N from one series expansion.
std::vector<SeriesResidual> main_term_residuals(std::uint64_t q, int g, int k, int N);

}  // namespace omegak
