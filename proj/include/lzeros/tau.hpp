// Ramanujan tau(n) from the q-expansion of Delta = q prod (1 - q^n)^24.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace lzeros {

class TauTable {
 public:
  /// Exact tau(1..n_max).  Throws std::overflow_error past the 128-bit range
  /// (n_max well above 10^5).
  explicit TauTable(int64_t n_max);

  int64_t size() const { return static_cast<int64_t>(tau_.size()) - 1; }
  __int128 operator()(int64_t n) const { return tau_.at(static_cast<size_t>(n)); }
  mpz_class mpz(int64_t n) const;

 private:
  std::vector<__int128> tau_;  // tau_[0] unused
};

/// Coefficients of prod_{n>=1} (1 - q^n) up to q^n_max (Euler's pentagonal series).
std::vector<int> euler_function_series(int64_t n_max);

}  // namespace lzeros
