#include "lzeros/tau.hpp"

#include <stdexcept>

namespace lzeros {

std::vector<int> euler_function_series(int64_t n_max) {
  std::vector<int> e(static_cast<size_t>(n_max + 1), 0);
  e[0] = 1;
  for (int64_t m = 1;; ++m) {
    const int64_t g1 = m * (3 * m - 1) / 2;
    const int64_t g2 = m * (3 * m + 1) / 2;
    if (g1 > n_max) break;
    const int sign = (m % 2 == 1) ? -1 : 1;
    e[static_cast<size_t>(g1)] = sign;
    if (g2 <= n_max) e[static_cast<size_t>(g2)] = sign;
  }
  return e;
}

namespace {

__int128 checked_mul(__int128 a, __int128 b) {
  __int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("tau table exceeds 128-bit range");
  return r;
}

__int128 checked_add(__int128 a, __int128 b) {
  __int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("tau table exceeds 128-bit range");
  return r;
}

}  // namespace

TauTable::TauTable(int64_t n_max) {
  if (n_max < 1) throw std::invalid_argument("TauTable needs n_max >= 1");
  // f = E^24 with E = prod (1 - q^n).  From q F' E = 24 q E' F:
  //   m f_m = sum_{j>=1} (25 j - m) e_j f_{m-j}.
  // Only pentagonal j have e_j != 0, so this is O(N^1.5) exact integer work.
  const int64_t n = n_max - 1;
  const std::vector<int> e = euler_function_series(n);
  std::vector<int64_t> penta;
  for (int64_t j = 1; j <= n; ++j) {
    if (e[static_cast<size_t>(j)] != 0) penta.push_back(j);
  }
  std::vector<__int128> f(static_cast<size_t>(n + 1), 0);
  f[0] = 1;
  for (int64_t m = 1; m <= n; ++m) {
    __int128 acc = 0;
    for (int64_t j : penta) {
      if (j > m) break;
      const __int128 w = checked_mul(static_cast<__int128>(25 * j - m), e[static_cast<size_t>(j)]);
      acc = checked_add(acc, checked_mul(w, f[static_cast<size_t>(m - j)]));
    }
    if (acc % m != 0) throw std::logic_error("tau recurrence produced a non-integer");
    f[static_cast<size_t>(m)] = acc / m;
  }
  tau_.assign(static_cast<size_t>(n_max + 1), 0);
  for (int64_t k = 1; k <= n_max; ++k) tau_[static_cast<size_t>(k)] = f[static_cast<size_t>(k - 1)];
}

mpz_class TauTable::mpz(int64_t n) const {
  __int128 v = (*this)(n);
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace lzeros
