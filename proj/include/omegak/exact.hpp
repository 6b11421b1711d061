#pragma once

#include <string>

#include <gmpxx.h>

namespace omegak {

/// num/den in canonical form.
mpq_class ratio(const mpz_class& num, const mpz_class& den);

/// Nearest-below extended-precision value (64-bit mantissa) of a big integer
/// or rational; exact quantities are converted at the last possible moment.
long double to_long_double(const mpz_class& x);
long double to_long_double(const mpq_class& x);

/// Floats with 17 significant digits, as emitted by the CLI.
std::string format_real(long double x);
/// "num/den" (or just "num" for integers).
std::string format_rational(const mpq_class& x);

}  // namespace omegak
