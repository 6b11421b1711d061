#include "omegak/exact.hpp"

#include <cmath>
#include <cstdio>

namespace omegak {

mpq_class ratio(const mpz_class& num, const mpz_class& den) {
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

long double to_long_double(const mpz_class& x) {
  if (x == 0) return 0.0L;
  const long bits = static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 2));
  const long shift = bits > 64 ? bits - 64 : 0;
  mpz_class top;
  mpz_tdiv_q_2exp(top.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  mpz_class mag = abs(top);
  const unsigned long long hi = mpz_get_ui(mpz_class(mag >> 32).get_mpz_t());
  const unsigned long long lo = mpz_get_ui(mpz_class(mag & 0xffffffffUL).get_mpz_t());
  long double v = static_cast<long double>((hi << 32) | lo);
  if (sgn(x) < 0) v = -v;
  return std::ldexp(v, static_cast<int>(shift));
}

long double to_long_double(const mpq_class& x) {
  if (x == 0) return 0.0L;
  const long nb = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2));
  const long db = static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
  // Scale so the integer quotient carries at least 66 significant bits.
  const long k = 66 - (nb - db);
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  if (k > 0)
    num <<= static_cast<mp_bitcnt_t>(k);
  else if (k < 0)
    den <<= static_cast<mp_bitcnt_t>(-k);
  mpz_class quot;
  mpz_tdiv_q(quot.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return std::ldexp(to_long_double(quot), static_cast<int>(-k));
}

std::string format_real(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", x);
  return buf;
}

std::string format_rational(const mpq_class& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace omegak
