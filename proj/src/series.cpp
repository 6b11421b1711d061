#include "omegak/series.hpp"

#include <algorithm>
#include <cmath>

#include "omegak/constants.hpp"
#include "omegak/error.hpp"
#include "omegak/exact.hpp"
#include "omegak/prime_count.hpp"

namespace omegak {

TruncatedSeries::TruncatedSeries(int N) : N_(N) {
  if (N < 0) throw DomainError("series truncation must be >= 0");
  c_.assign(static_cast<std::size_t>(N) + 1, mpq_class(0));
}

TruncatedSeries::TruncatedSeries(int N, std::vector<mpq_class> coeffs) : TruncatedSeries(N) {
  const std::size_t m = std::min(coeffs.size(), c_.size());
  for (std::size_t i = 0; i < m; ++i) c_[i] = std::move(coeffs[i]);
}

TruncatedSeries TruncatedSeries::one(int N) {
  TruncatedSeries s(N);
  s[0] = 1;
  return s;
}

int TruncatedSeries::valuation() const {
  for (int n = 0; n <= N_; ++n)
    if (c_[static_cast<std::size_t>(n)] != 0) return n;
  return N_ + 1;
}

namespace {

void check_same(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.truncation() != b.truncation()) throw DomainError("series truncations differ");
}

}  // namespace

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_same(a, b);
  TruncatedSeries out = a;
  for (int n = 0; n <= a.truncation(); ++n) out[n] += b[n];
  return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_same(a, b);
  TruncatedSeries out = a;
  for (int n = 0; n <= a.truncation(); ++n) out[n] -= b[n];
  return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_same(a, b);
  const int N = a.truncation();
  TruncatedSeries out(N);
  const int va = a.valuation(), vb = b.valuation();
  for (int i = va; i <= N; ++i) {
    if (a[i] == 0) continue;
    for (int j = vb; i + j <= N; ++j)
      if (b[j] != 0) out[i + j] += a[i] * b[j];
  }
  return out;
}

TruncatedSeries operator*(const mpq_class& s, const TruncatedSeries& a) {
  TruncatedSeries out = a;
  for (int n = 0; n <= a.truncation(); ++n) out[n] *= s;
  return out;
}

TruncatedSeries reciprocal(const TruncatedSeries& a) {
  if (a[0] == 0) throw DomainError("reciprocal of a series with zero constant term");
  const int N = a.truncation();
  TruncatedSeries out(N);
  const mpq_class inv0 = 1 / a[0];
  out[0] = inv0;
  for (int n = 1; n <= N; ++n) {
    mpq_class s = 0;
    for (int i = 1; i <= n; ++i)
      if (a[i] != 0) s += a[i] * out[n - i];
    out[n] = -s * inv0;
  }
  return out;
}

TruncatedSeries pow(const TruncatedSeries& a, const mpz_class& e) {
  if (a[0] != 1) throw DomainError("series power requires constant term 1");
  const int N = a.truncation();
  TruncatedSeries h = a;
  h[0] = 0;
  const int v = h.valuation();
  TruncatedSeries out = TruncatedSeries::one(N);
  if (v > N) return out;
  // (1 + h)^e = sum_j binom(e, j) h^j; h^j vanishes past j = N / v.
  TruncatedSeries hj = TruncatedSeries::one(N);
  mpz_class binom = 1;
  for (int j = 1; j * v <= N; ++j) {
    binom = binom * (e - (j - 1)) / j;
    if (binom == 0) break;
    hj = hj * h;
    out = out + mpq_class(binom) * hj;
  }
  return out;
}

Weight constant_weight(int g) {
  if (g < -1 || g > 1) throw DomainError("constant weight must be -1, 0 or 1");
  return [g](int) { return mpq_class(g); };
}

TruncatedSeries zeta_series(std::uint64_t q, int N) {
  TruncatedSeries s(N);
  for (int n = 0; n <= N; ++n) s[n] = truncated_power(q, n);
  return s;
}

TruncatedSeries b_series(std::uint64_t q, const Weight& g, int k, int N) {
  if (k < 1) throw DomainError("b_series requires k >= 1");
  TruncatedSeries s(N);
  const int dmax = N / (k + 1);
  if (dmax < 1) return s;
  const auto table = prime_counts(q, dmax);
  for (int d = 1; d <= dmax; ++d) {
    const mpq_class gd = g(d);
    if (abs(gd) > 1) throw DomainError("weight must satisfy |g| <= 1");
    mpq_class power = 1;
    for (int e = (k + 1) * d; e <= N; e += d) {
      s[e] += table->count(d) * power;
      power *= gd;
      if (power == 0) break;
    }
  }
  return s;
}

TruncatedSeries a_series(std::uint64_t q, const Weight& g, int k, int N) {
  return zeta_series(q, N) * b_series(q, g, k, N);
}

namespace {

SeriesResidual residual_at(std::uint64_t q, int k, int n, const mpq_class& coeff, const mpq_class& constant) {
  SeriesResidual r;
  r.n = n;
  r.coeff = coeff;
  const mpq_class main = constant * truncated_power(q, n);
  r.main_term = to_long_double(main);
  r.residual = to_long_double(mpq_class(coeff - main));
  const long double scale =
      std::max(n, 1) * std::pow(static_cast<long double>(q), static_cast<long double>(n) / (k + 1));
  r.normalized_residual = r.residual / scale;
  return r;
}

// Enough terms that C_{g,k} q^n is exact far below n q^{n/(k+1)}.
int terms_for(int n) { return std::max(default_terms(), n + 32); }

}  // namespace

SeriesResidual main_term_residual(std::uint64_t q, int g, int k, int n, std::optional<mpq_class> constant_override) {
  if (n < 0) throw DomainError("n must be >= 0");
  const auto a = a_series(q, constant_weight(g), k, n);
  const mpq_class constant =
      constant_override ? *constant_override : *C_gk_constant(q, g, k, terms_for(n)).exact;
  return residual_at(q, k, n, a[n], constant);
}

std::vector<SeriesResidual> main_term_residuals(std::uint64_t q, int g, int k, int N) {
  const auto a = a_series(q, constant_weight(g), k, N);
  const mpq_class constant = *C_gk_constant(q, g, k, terms_for(N)).exact;
  std::vector<SeriesResidual> out;
  for (int n = 0; n <= N; ++n) out.push_back(residual_at(q, k, n, a[n], constant));
  return out;
}

}  // namespace omegak
