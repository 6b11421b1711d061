#include "omegak/constants.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <tuple>

#include "omegak/error.hpp"
#include "omegak/exact.hpp"
#include "omegak/prime_count.hpp"

namespace omegak {

namespace {

// Value with an absolute error radius.
struct Approx {
  long double v = 0.0L;
  long double r = 0.0L;
};

Approx approx(const ConstantValue& c) { return {c.value, c.tail_bound}; }
Approx operator+(Approx a, Approx b) { return {a.v + b.v, a.r + b.r}; }
Approx operator-(Approx a, Approx b) { return {a.v - b.v, a.r + b.r}; }
Approx operator*(long double s, Approx a) { return {s * a.v, std::fabs(s) * a.r}; }
Approx operator*(Approx a, Approx b) {
  return {a.v * b.v, std::fabs(a.v) * b.r + std::fabs(b.v) * a.r + a.r * b.r};
}

// Float rounding allowance folded into every reported bound.
long double rounding(long double v) { return std::ldexp(std::fabs(v), -60); }

ConstantValue from_approx(std::string name, Approx a, int R) {
  return {std::move(name), a.v, a.r + rounding(a.v), R, std::nullopt};
}

ConstantValue from_exact(std::string name, mpq_class exact, long double tail, int R) {
  const long double v = to_long_double(exact);
  ConstantValue c{std::move(name), v, tail + rounding(v), R, std::nullopt};
  c.exact = std::move(exact);
  return c;
}

// Literal rounding for gamma and pi^2 stored as long double.
constexpr long double kLiteralError = 1e-18L;

using Key = std::tuple<std::uint64_t, std::string, int>;

template <class F>
ConstantValue memoized(std::uint64_t q, const std::string& name, int R, F compute) {
  static std::mutex mutex;
  static std::map<Key, ConstantValue> cache;
  const Key key{q, name, R};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  ConstantValue value = compute();
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(value)).first->second;
}

void check_terms(int R, int minimum) {
  if (R < minimum) throw DomainError("truncation degree must be >= " + std::to_string(minimum));
}

long double qpow(std::uint64_t q, long double e) { return std::pow(static_cast<long double>(q), e); }

}  // namespace

int default_terms() {
  if (const char* env = std::getenv("OMEGAK_TERMS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 100000) return static_cast<int>(v);
  }
  return 80;
}

ConstantValue euler_gamma() { return {"gamma", kEulerGamma, kLiteralError, 0, std::nullopt}; }

long double euler_gamma_oracle(long N) {
  long double h = 0.0L;
  for (long m = N; m >= 1; --m) h += 1.0L / static_cast<long double>(m);
  const long double n = static_cast<long double>(N);
  return h - std::log(n) - 1.0L / (2.0L * n) + 1.0L / (12.0L * n * n);
}

ConstantValue c1_constant(std::uint64_t q, int R) {
  check_terms(R, 2);
  return memoized(q, "c1", R, [&] {
    const auto table = prime_counts(q, R);
    // sum_r pi(r) q^{-r} over the common denominator q^R, minus H_R.
    mpz_class num = 0;
    for (int r = 1; r <= R; ++r) num += table->count(r) * truncated_power(q, R - r);
    mpq_class sum = ratio(num, truncated_power(q, R));
    for (int r = 1; r <= R; ++r) sum -= mpq_class(1, r);
    const long double tail = (2.0L / R) * qpow(q, -R / 2.0L) / (1.0L - qpow(q, -0.5L));
    return from_exact("c1", std::move(sum), tail, R);
  });
}

ConstantValue A1_constant(std::uint64_t q, int R) {
  return from_approx("A1", approx(euler_gamma()) + approx(c1_constant(q, R)), R);
}

ConstantValue L_constant(std::uint64_t q, int m, int R) {
  if (m < 2) throw DomainError("L(m) diverges for m < 2");
  check_terms(R, 1);
  const std::string name = "L(" + std::to_string(m) + ")";
  return memoized(q, name, R, [&] {
    const auto table = prime_counts(q, R);
    mpz_class num = 0;
    for (int r = 1; r <= R; ++r) num += table->count(r) * truncated_power(q, (R - r) * m);
    const long double tail = 2.0L * qpow(q, -static_cast<long double>(R) * (m - 1)) / (1.0L - qpow(q, -(m - 1)));
    return from_exact(name, ratio(num, truncated_power(q, R * m)), tail, R);
  });
}

ConstantValue C_gk_constant(std::uint64_t q, int g, int k, int R) {
  if (g < -1 || g > 1) throw DomainError("g must be -1, 0 or 1");
  if (k < 1) throw DomainError("C_{g,k} requires k >= 1");
  check_terms(R, 1);
  const std::string name = "C(" + std::to_string(g) + "," + std::to_string(k) + ")";
  return memoized(q, name, R, [&] {
    const auto table = prime_counts(q, R);
    mpq_class sum = 0;
    for (int r = 1; r <= R; ++r)
      sum += ratio(table->count(r), truncated_power(q, r * k) * (truncated_power(q, r) - g));
    // pi(r) <= q^r and q^r - g >= q^r / 2 give terms <= 2 q^{-rk}.
    const long double tail = 2.0L * qpow(q, -static_cast<long double>(R + 1) * k) / (1.0L - qpow(q, -k));
    return from_exact(name, std::move(sum), tail, R);
  });
}

ConstantValue c2_constant(std::uint64_t q, int R) {
  const Approx a1 = approx(A1_constant(q, R));
  const Approx l2 = approx(L_constant(q, 2, R));
  return from_approx("c2", Approx{1.0L, 0.0L} + 2.0L * a1 - 2.0L * l2, R);
}

ConstantValue c3_constant(std::uint64_t q, int R) {
  const Approx a1 = approx(A1_constant(q, R));
  const Approx l2 = approx(L_constant(q, 2, R));
  const Approx l3 = approx(L_constant(q, 3, R));
  const Approx l4 = approx(L_constant(q, 4, R));
  const Approx zeta2{kPiSquared / 6.0L, kLiteralError};
  const Approx c3 = (a1 - 2.0L * l2) * (a1 + Approx{1.0L, 0.0L}) - zeta2 + l2 * l2 + 2.0L * l3 - l4;
  return from_approx("c3", c3, R);
}

ConstantValue c_prime_constant(std::uint64_t q, int k, int R) {
  if (k < 2) throw DomainError("c_k' requires k >= 2");
  const auto lk = L_constant(q, k, R), lk1 = L_constant(q, k + 1, R);
  const auto l2k = L_constant(q, 2 * k, R), l2k1 = L_constant(q, 2 * k + 1, R), l2k2 = L_constant(q, 2 * k + 2, R);
  const mpq_class x = *lk.exact - *lk1.exact;
  mpq_class exact = x * (x + 1) - *l2k.exact + 2 * *l2k1.exact - *l2k2.exact;
  const Approx dx = approx(lk) - approx(lk1);
  const Approx bound = dx * (dx + Approx{1.0L, 0.0L}) - approx(l2k) + 2.0L * approx(l2k1) - approx(l2k2);
  return from_exact("c_prime(" + std::to_string(k) + ")", std::move(exact), bound.r, R);
}

MainTermConstants main_term_constants(std::uint64_t q, const std::vector<int>& ks, int R) {
  MainTermConstants t;
  t.gamma = euler_gamma();
  t.c1 = c1_constant(q, R);
  t.A1 = A1_constant(q, R);
  t.L2 = L_constant(q, 2, R);
  t.L3 = L_constant(q, 3, R);
  t.L4 = L_constant(q, 4, R);
  t.c2 = c2_constant(q, R);
  t.c3 = c3_constant(q, R);
  for (int k : ks) t.c_prime.push_back(c_prime_constant(q, k, R));
  return t;
}

long double mertens_residual(std::uint64_t q, int n, int R) {
  const auto m = mertens_sum(q, n);
  return to_long_double(m.exact) - std::log(static_cast<long double>(n)) - A1_constant(q, R).value;
}

namespace {

long double third_main(std::uint64_t q) { return std::log1p(1.0L / (std::sqrt(static_cast<long double>(q)) - 1.0L)); }

long double third_sum(std::uint64_t q, int n) {
  long double sum = 0.0L;
  for (int m = 1; m < n; ++m) sum += qpow(q, -m / 2.0L) / (static_cast<long double>(m) * (n - m));
  return sum;
}

}  // namespace

HarmonicSums harmonic_sums(std::uint64_t q, int n) {
  if (n < 2) throw DomainError("harmonic sums require n >= 2");
  if (q < 2) throw DomainError("q must be >= 2");
  HarmonicSums h;
  h.n = n;
  h.first = 0;
  h.second = 0;
  for (int m = 1; m < n; ++m) {
    h.first += mpq_class(1, static_cast<unsigned long>(m) * static_cast<unsigned long>(n - m));
    h.second += mpq_class(1, static_cast<unsigned long>(m) * m * static_cast<unsigned long>(n - m));
  }
  h.third = third_sum(q, n);
  const long double ln = std::log(static_cast<long double>(n));
  const long double nn = n;
  h.first_residual = to_long_double(h.first) - 2.0L * ln / nn - 2.0L * kEulerGamma / nn;
  h.second_residual = to_long_double(h.second) - kPiSquared / (6.0L * nn) - 2.0L * ln / (nn * nn);
  h.third_residual = h.third - third_main(q) / nn;
  return h;
}

std::vector<HarmonicResiduals> harmonic_sweep(std::uint64_t q, int lo, int hi) {
  if (lo < 2 || hi < lo) throw DomainError("harmonic sweep requires 2 <= lo <= hi");
  if (q < 2) throw DomainError("q must be >= 2");
  std::vector<HarmonicResiduals> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  // H = H_{n-1} and S = sum_{m<n} 1/m^2, both exact.
  mpq_class H = 0, S = 0;
  const long double main3 = third_main(q);
  for (int n = 2; n <= hi; ++n) {
    H += mpq_class(1, n - 1);
    S += mpq_class(1, static_cast<unsigned long>(n - 1) * static_cast<unsigned long>(n - 1));
    if (n < lo) continue;
    const mpq_class first = 2 * H / n;
    const mpq_class second = (first + S) / n;
    const long double ln = std::log(static_cast<long double>(n));
    const long double nn = n;
    out.push_back({n, to_long_double(first) - 2.0L * ln / nn - 2.0L * kEulerGamma / nn,
                   to_long_double(second) - kPiSquared / (6.0L * nn) - 2.0L * ln / (nn * nn),
                   third_sum(q, n) - main3 / nn});
  }
  return out;
}

}  // namespace omegak
