#include "omegak/prime_count.hpp"

#include <map>
#include <mutex>

#include "omegak/error.hpp"
#include "omegak/exact.hpp"
#include "omegak/factor.hpp"

namespace omegak {

namespace {

int mobius(int n) {
  int result = 1;
  for (int r = 2; r * r <= n; ++r) {
    if (n % r != 0) continue;
    n /= r;
    if (n % r == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

}  // namespace

mpz_class truncated_power(std::uint64_t q, int m) {
  if (m < 0) return 0;
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), q, static_cast<unsigned long>(m));
  return out;
}

mpz_class pi_q_exact(std::uint64_t q, int n) {
  if (n < 1) throw DomainError("pi_q(n) requires n >= 1");
  mpz_class sum = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const int mu = mobius(d);
    if (mu == 0) continue;
    const mpz_class term = truncated_power(q, n / d);
    if (mu > 0)
      sum += term;
    else
      sum -= term;
  }
  return sum / n;
}

PrimeCountTable PrimeCountTable::build(std::uint64_t q, int max_degree) {
  if (q < 2) throw DomainError("q must be >= 2");
  PrimeCountTable t;
  t.q_ = q;
  t.counts_.reserve(static_cast<std::size_t>(std::max(max_degree, 0)));
  for (int d = 1; d <= max_degree; ++d) t.counts_.push_back(pi_q_exact(q, d));
  return t;
}

PrimeCountTable PrimeCountTable::from_counts(std::uint64_t q, std::vector<mpz_class> counts) {
  PrimeCountTable t;
  t.q_ = q;
  t.counts_ = std::move(counts);
  return t;
}

const mpz_class& PrimeCountTable::count(int d) const {
  if (d < 1 || d > max_degree()) throw DomainError("degree outside the prime count table");
  return counts_[static_cast<std::size_t>(d - 1)];
}

int PrimeCountTable::first_gauss_violation() const {
  for (int n = 1; n <= max_degree(); ++n) {
    mpz_class sum = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) sum += d * count(d);
    if (sum != truncated_power(q_, n)) return n;
  }
  return 0;
}

std::shared_ptr<const PrimeCountTable> prime_counts(std::uint64_t q, int max_degree) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::shared_ptr<const PrimeCountTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[q];
  if (!slot || slot->max_degree() < max_degree) {
    // Grow geometrically so sweeps over n do not rebuild every step.
    const int target = std::max(max_degree, slot ? 2 * slot->max_degree() : max_degree);
    slot = std::make_shared<const PrimeCountTable>(PrimeCountTable::build(q, target));
  }
  return slot;
}

std::uint64_t checked_count(std::uint64_t q, int n, std::uint64_t limit) {
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > limit / q) throw CapacityError("enumeration of q^n = " + std::to_string(q) + "^" + std::to_string(n) + " exceeds the limit");
    total *= q;
  }
  if (total > limit) throw CapacityError("enumeration exceeds the limit");
  return total;
}

std::vector<Poly> irreducibles_up_to(const FieldContext& ctx, int max_degree) {
  checked_count(ctx.order(), max_degree);
  std::vector<Poly> out;
  std::uint64_t count = 1;
  for (int d = 1; d <= max_degree; ++d) {
    count *= ctx.order();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly f = monic_from_index(ctx, idx, d);
      if (is_irreducible(ctx, f)) out.push_back(std::move(f));
    }
  }
  return out;
}

MertensSum mertens_sum(std::uint64_t q, int n) {
  if (n < 1) throw DomainError("mertens_sum requires n >= 1");
  const auto table = prime_counts(q, n);
  MertensSum out;
  out.exact = 0;
  for (int d = 1; d <= n; ++d) out.exact += ratio(table->count(d), truncated_power(q, d));
  out.value = out.exact.get_d();
  return out;
}

}  // namespace omegak
