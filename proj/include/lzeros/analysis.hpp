// Consumers of solved zeros: pair correlation against the GUE kernel, and
// the explicit formulas that rebuild J, pi and psi from the zeta zeros.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

#include "lzeros/mp.hpp"

namespace lzeros {

/// 1 - sin^2(pi u) / (pi u)^2, the GUE two-point function.
double gue_kernel(double u);
/// Integral of gue_kernel over [a, b] by adaptive Gauss-Kronrod.
double gue_kernel_integral(double a, double b);

struct Ordinate {
  int64_t n = 0;
  double t = 0.0;
};

struct PairCorrelationBin {
  double alpha = 0.0, beta = 0.0;
  /// pair count / ((N - M)(beta - alpha))
  double empirical = 0.0;
  /// mean of the kernel over the bin
  double kernel = 0.0;
  double x_mid() const { return 0.5 * (alpha + beta); }
};

struct BinSpec {
  double lo = 0.0, hi = 3.0, width = 0.05;
};

/// Histogram of normalised distances t_n - t_m (m < n), measured in units of
/// the local mean spacing: sum over consecutive gaps of log(t_k/2pi)/(2pi) *
/// (t_{k+1} - t_k).  `zeros` must carry consecutive indices M..N with
/// increasing ordinates; throws DomainError otherwise.  `threads` = 0 uses the
/// OpenMP default.
std::vector<PairCorrelationBin> pair_correlation(std::span<const Ordinate> zeros, BinSpec bins = {}, int threads = 0);
/// Single-threaded reference with the same output.
std::vector<PairCorrelationBin> pair_correlation_serial(std::span<const Ordinate> zeros, BinSpec bins = {});

/// Mobius and von Mangoldt functions by a linear sieve up to `bound`.
class ArithmeticTables {
 public:
  explicit ArithmeticTables(int64_t bound);

  int64_t bound() const { return bound_; }
  int mu(int64_t n) const { return mu_.at(static_cast<size_t>(n)); }
  /// log p if n = p^m, else 0.
  double lambda(int64_t n) const;
  /// p if n = p^m, else 0.
  int64_t prime_power_base(int64_t n) const { return base_.at(static_cast<size_t>(n)); }
  const std::vector<int64_t>& primes() const { return primes_; }
  /// Number of primes <= x (x <= bound).
  int64_t prime_pi(int64_t x) const;

 private:
  int64_t bound_;
  std::vector<int8_t> mu_;
  std::vector<int64_t> base_;
  std::vector<int64_t> primes_;
};

/// Direct evaluation by trial division; n >= 1.
int mobius(int64_t n);
double von_mangoldt(int64_t n);

/// J(x) = sum over prime powers p^k <= x of 1/k, exactly.
mpq_class j_exact(int64_t x, const ArithmeticTables& tab);
/// sum_{n>=1} mu(n)/n J(x^{1/n}), exactly; the sum stops once 2^n > x.
mpq_class pi_by_inversion(int64_t x, const ArithmeticTables& tab);

/// Explicit formulas truncated to the given zeta ordinates (positive t; the
/// conjugate zeros are included as 2 Re).  x > 1.  Evaluated with `digits`
/// working digits.
double j_from_zeros(double x, std::span<const double> zeros, int digits = 20);
double pi_from_zeros(double x, std::span<const double> zeros, int digits = 20);
double psi_from_zeros(double x, std::span<const double> zeros, int digits = 20);

}  // namespace lzeros
