#include "omegak/gf2.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <utility>

#include "omegak/error.hpp"

namespace omegak::gf2 {

namespace {

constexpr std::array<std::uint16_t, 256> make_spread_table() {
  std::array<std::uint16_t, 256> t{};
  for (unsigned b = 0; b < 256; ++b) {
    std::uint16_t s = 0;
    for (unsigned i = 0; i < 8; ++i)
      if (b & (1u << i)) s |= static_cast<std::uint16_t>(1u << (2 * i));
    t[b] = s;
  }
  return t;
}

constexpr auto kSpread = make_spread_table();

std::uint64_t spread32(std::uint32_t x) {
  std::uint64_t out = 0;
  for (int byte = 0; byte < 4; ++byte) out |= static_cast<std::uint64_t>(kSpread[(x >> (8 * byte)) & 0xff]) << (16 * byte);
  return out;
}

// Gathers the even-position bits of x into the low 32 bits.
std::uint64_t compress_even(std::uint64_t x) {
  x &= 0x5555555555555555ULL;
  x = (x | (x >> 1)) & 0x3333333333333333ULL;
  x = (x | (x >> 2)) & 0x0f0f0f0f0f0f0f0fULL;
  x = (x | (x >> 4)) & 0x00ff00ff00ff00ffULL;
  x = (x | (x >> 8)) & 0x0000ffff0000ffffULL;
  x = (x | (x >> 16)) & 0x00000000ffffffffULL;
  return x;
}

// a ^= m << shift, where the shifted m is known to fit inside a.
void xor_shifted(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& m, int shift) {
  const std::size_t wo = static_cast<std::size_t>(shift) / 64;
  const unsigned bo = static_cast<unsigned>(shift) % 64;
  if (bo == 0) {
    for (std::size_t j = 0; j < m.size(); ++j) a[j + wo] ^= m[j];
    return;
  }
  for (std::size_t j = 0; j < m.size(); ++j) {
    a[j + wo] ^= m[j] << bo;
    if (j + wo + 1 < a.size()) a[j + wo + 1] ^= m[j] >> (64 - bo);
  }
}

// Reduces `a` modulo m in place; if `q` is given it receives the quotient.
void divide(std::vector<std::uint64_t>& a, const Poly2& m, std::vector<std::uint64_t>* q) {
  const int dm = m.degree();
  if (dm < 0) throw DomainError("division by the zero polynomial");
  int da = -1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != 0) {
      da = static_cast<int>(i * 64 + 63 - std::countl_zero(a[i]));
      break;
    }
  }
  if (q) q->assign(da >= dm ? static_cast<std::size_t>(da - dm) / 64 + 1 : 0, 0);
  for (int i = da; i >= dm; --i) {
    if ((a[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1) {
      xor_shifted(a, m.words(), i - dm);
      if (q) (*q)[static_cast<std::size_t>(i - dm) / 64] |= std::uint64_t{1} << ((i - dm) % 64);
    }
  }
}

}  // namespace

Poly2::Poly2(std::vector<std::uint64_t> words) : words_(std::move(words)) { trim(); }

void Poly2::trim() noexcept {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

int Poly2::degree() const noexcept {
  if (words_.empty()) return kZeroDegree;
  return static_cast<int>((words_.size() - 1) * 64 + 63 - std::countl_zero(words_.back()));
}

bool Poly2::bit(int i) const noexcept {
  const std::size_t w = static_cast<std::size_t>(i) / 64;
  return w < words_.size() && ((words_[w] >> (i % 64)) & 1);
}

Poly2 from_poly(const Poly& f) {
  std::vector<std::uint64_t> w((f.coeffs().size() + 63) / 64, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i)
    if (f[i].index & 1) w[i / 64] |= std::uint64_t{1} << (i % 64);
  return Poly2(std::move(w));
}

Poly to_poly(const Poly2& f) {
  std::vector<FieldElement> c(static_cast<std::size_t>(f.degree() + 1));
  for (int i = 0; i <= f.degree(); ++i) c[static_cast<std::size_t>(i)] = {f.bit(i) ? 1u : 0u};
  return Poly(std::move(c));
}

Poly2 add(const Poly2& a, const Poly2& b) {
  std::vector<std::uint64_t> w = a.words().size() >= b.words().size() ? a.words() : b.words();
  const auto& other = a.words().size() >= b.words().size() ? b.words() : a.words();
  for (std::size_t i = 0; i < other.size(); ++i) w[i] ^= other[i];
  return Poly2(std::move(w));
}

Poly2 mul(const Poly2& a, const Poly2& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<std::uint64_t> out(a.words().size() + b.words().size(), 0);
  for (int i = 0; i <= a.degree(); ++i)
    if (a.bit(i)) xor_shifted(out, b.words(), i);
  return Poly2(std::move(out));
}

Poly2 rem(Poly2 a, const Poly2& m) {
  divide(a.raw(), m, nullptr);
  a.trim();
  return a;
}

Poly2 quo(Poly2 a, const Poly2& m) {
  std::vector<std::uint64_t> q;
  divide(a.raw(), m, &q);
  return Poly2(std::move(q));
}

Poly2 gcd(Poly2 a, Poly2 b) {
  while (!b.is_zero()) {
    a = rem(std::move(a), b);
    std::swap(a, b);
  }
  return a;
}

Poly2 square(const Poly2& a) {
  std::vector<std::uint64_t> out(2 * a.words().size());
  for (std::size_t i = 0; i < a.words().size(); ++i) {
    out[2 * i] = spread32(static_cast<std::uint32_t>(a.words()[i]));
    out[2 * i + 1] = spread32(static_cast<std::uint32_t>(a.words()[i] >> 32));
  }
  return Poly2(std::move(out));
}

Poly2 derivative(const Poly2& a) {
  std::vector<std::uint64_t> out(a.words().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a.words()[i] >> 1) & 0x5555555555555555ULL;
  return Poly2(std::move(out));
}

Poly2 sqrt(const Poly2& a) {
  std::vector<std::uint64_t> out((a.words().size() + 1) / 2, 0);
  for (std::size_t i = 0; i < a.words().size(); ++i)
    out[i / 2] |= compress_even(a.words()[i]) << (32 * (i % 2));
  return Poly2(std::move(out));
}

namespace {

// Rank of an n x n GF(2) matrix stored as rows of W words. Columns left of
// the current pivot are never read again, so rows are xored whole; with W a
// compile-time constant the row update unrolls.
template <std::size_t W>
int rank_fixed(std::uint64_t* rows, int n) {
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    const std::size_t w = static_cast<std::size_t>(col) / 64;
    const unsigned shift = static_cast<unsigned>(col % 64);
    int pivot = rank;
    while (pivot < n && !((rows[static_cast<std::size_t>(pivot) * W + w] >> shift) & 1)) ++pivot;
    if (pivot == n) continue;
    std::uint64_t* prow = rows + static_cast<std::size_t>(rank) * W;
    if (pivot != rank) std::swap_ranges(prow, prow + W, rows + static_cast<std::size_t>(pivot) * W);
    // Branch-free: the bit test is unpredictable and dominates otherwise.
    for (int r = pivot + 1; r < n; ++r) {
      std::uint64_t* row = rows + static_cast<std::size_t>(r) * W;
      const std::uint64_t mask = std::uint64_t{0} - ((row[w] >> shift) & 1);
      for (std::size_t j = 0; j < W; ++j) row[j] ^= prow[j] & mask;
    }
    ++rank;
  }
  return rank;
}

int rank_dynamic(std::uint64_t* rows, int n, std::size_t W) {
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    const std::size_t w = static_cast<std::size_t>(col) / 64;
    const unsigned shift = static_cast<unsigned>(col % 64);
    int pivot = rank;
    while (pivot < n && !((rows[static_cast<std::size_t>(pivot) * W + w] >> shift) & 1)) ++pivot;
    if (pivot == n) continue;
    std::uint64_t* prow = rows + static_cast<std::size_t>(rank) * W;
    if (pivot != rank) std::swap_ranges(prow, prow + W, rows + static_cast<std::size_t>(pivot) * W);
    for (int r = pivot + 1; r < n; ++r) {
      std::uint64_t* row = rows + static_cast<std::size_t>(r) * W;
      const std::uint64_t mask = std::uint64_t{0} - ((row[w] >> shift) & 1);
      for (std::size_t j = w; j < W; ++j) row[j] ^= prow[j] & mask;
    }
    ++rank;
  }
  return rank;
}

int gf2_rank(std::uint64_t* rows, int n, std::size_t W) {
  switch (W) {
    case 1: return rank_fixed<1>(rows, n);
    case 2: return rank_fixed<2>(rows, n);
    case 3: return rank_fixed<3>(rows, n);
    case 4: return rank_fixed<4>(rows, n);
    case 5: return rank_fixed<5>(rows, n);
    case 6: return rank_fixed<6>(rows, n);
    case 7: return rank_fixed<7>(rows, n);
    case 8: return rank_fixed<8>(rows, n);
    default: return rank_dynamic(rows, n, W);
  }
}

}  // namespace

// Berlekamp: for squarefree f of degree n the kernel of Q - I, where row i
// of Q is t^{2i} mod f, has dimension equal to the number of irreducible
// factors. Building Q only needs shifts by two, and the rank is a small
// GF(2) elimination.
int count_irreducible_factors(const Poly2& squarefree) {
  const int n = squarefree.degree();
  if (n < 1) return 0;
  if (n == 1) return 1;
  const std::size_t W = static_cast<std::size_t>(n + 63) / 64;
  const std::size_t B = static_cast<std::size_t>(n + 2 + 63) / 64;
  const auto& f = squarefree.words();
  auto get = [](const std::vector<std::uint64_t>& v, int i) {
    return (v[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1;
  };

  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n) * W, 0);
  std::vector<std::uint64_t> cur(B, 0), shifted_f(B, 0);
  for (std::size_t j = 0; j < f.size(); ++j) {
    shifted_f[j] ^= f[j] << 1;
    if (j + 1 < B) shifted_f[j + 1] ^= f[j] >> 63;
  }
  cur[0] = 1;
  for (int i = 0; i < n; ++i) {
    std::uint64_t* row = &rows[static_cast<std::size_t>(i) * W];
    for (std::size_t j = 0; j < W; ++j) row[j] = cur[j];
    row[static_cast<std::size_t>(i) / 64] ^= std::uint64_t{1} << (i % 64);
    // cur <- cur * t^2 mod f.
    for (std::size_t j = B; j-- > 0;) cur[j] = (cur[j] << 2) | (j > 0 ? cur[j - 1] >> 62 : 0);
    if (get(cur, n + 1))
      for (std::size_t j = 0; j < B; ++j) cur[j] ^= shifted_f[j];
    if (get(cur, n))
      for (std::size_t j = 0; j < f.size(); ++j) cur[j] ^= f[j];
  }

  return n - gf2_rank(rows.data(), n, W);
}

namespace {

template <class Emit>
void squarefree_parts(const Poly2& f, int scale, Emit&& emit) {
  Poly2 c = gcd(f, derivative(f));
  Poly2 w = quo(f, c);
  int i = 1;
  while (!w.is_one()) {
    Poly2 y = gcd(w, c);
    Poly2 fac = quo(w, y);
    if (!fac.is_one()) emit(fac, i * scale);
    c = quo(std::move(c), y);
    w = std::move(y);
    ++i;
  }
  if (!c.is_one()) squarefree_parts(sqrt(c), 2 * scale, emit);
}

}  // namespace

std::map<int, int> multiplicity_profile(const Poly2& f) {
  if (f.degree() < 1) throw DomainError("expected a monic polynomial of degree >= 1");
  std::map<int, int> profile;
  squarefree_parts(f, 1, [&](const Poly2& part, int mult) { profile[mult] = count_irreducible_factors(part); });
  return profile;
}

OmegaPair omega_pair(const Poly2& f) {
  if (f.degree() < 1) throw DomainError("expected a monic polynomial of degree >= 1");
  OmegaPair out;
  squarefree_parts(f, 1, [&](const Poly2& part, int mult) {
    const int c = count_irreducible_factors(part);
    out.omega += c;
    if (mult == 1) out.omega1 += c;
  });
  return out;
}

}  // namespace omegak::gf2
