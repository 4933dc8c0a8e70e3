#include "lzeros/analysis.hpp"

#include <omp.h>

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lzeros/errors.hpp"
#include "lzeros/specialfn.hpp"

namespace lzeros {

double gue_kernel(double u) {
  if (u == 0.0) return 0.0;
  const double x = std::numbers::pi * u;
  if (std::fabs(x) < 1e-4) return x * x / 3.0;  // sin^2 x / x^2 = 1 - x^2/3 + ...
  const double s = std::sin(x) / x;
  return 1.0 - s * s;
}

double gue_kernel_integral(double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 31>::integrate(gue_kernel, a, b, 15, 1e-13);
}

namespace {

struct Layout {
  BinSpec spec;
  size_t count;
};

Layout layout(const BinSpec& b) {
  if (!(b.width > 0.0) || !(b.hi > b.lo) || b.lo < 0.0) throw DomainError("pair_correlation: bad bin range");
  const double k = (b.hi - b.lo) / b.width;
  return {b, static_cast<size_t>(std::max(1.0, std::round(k)))};
}

// normalised gaps d_k between consecutive ordinates
std::vector<double> normalised_gaps(std::span<const Ordinate> z) {
  if (z.size() < 2) throw DomainError("pair_correlation: need at least two zeros");
  std::vector<double> d(z.size() - 1);
  for (size_t k = 0; k + 1 < z.size(); ++k) {
    if (z[k + 1].n != z[k].n + 1) throw DomainError("pair_correlation: indices are not contiguous at n=" + std::to_string(z[k].n));
    if (!(z[k + 1].t > z[k].t) || !(z[k].t > 0.0)) throw DomainError("pair_correlation: ordinates must be positive and increasing");
    d[k] = std::log(z[k].t / (2 * std::numbers::pi)) / (2 * std::numbers::pi) * (z[k + 1].t - z[k].t);
  }
  return d;
}

// pairs starting at m, added into h
void count_from(const std::vector<double>& d, size_t m, const Layout& L, std::vector<int64_t>& h) {
  const double top = L.spec.lo + L.count * L.spec.width;
  double dist = 0.0;
  for (size_t k = m; k < d.size(); ++k) {
    dist += d[k];
    if (dist > top) break;
    if (dist <= L.spec.lo) continue;
    // bins are (alpha, beta]
    auto i = static_cast<size_t>(std::ceil((dist - L.spec.lo) / L.spec.width)) - 1;
    if (i < L.count) ++h[i];
  }
}

std::vector<PairCorrelationBin> finish(const std::vector<int64_t>& h, const Layout& L, size_t pairs_base) {
  std::vector<PairCorrelationBin> out(L.count);
  for (size_t i = 0; i < L.count; ++i) {
    auto& b = out[i];
    b.alpha = L.spec.lo + i * L.spec.width;
    b.beta = b.alpha + L.spec.width;
    b.empirical = static_cast<double>(h[i]) / (static_cast<double>(pairs_base) * L.spec.width);
    b.kernel = gue_kernel_integral(b.alpha, b.beta) / L.spec.width;
  }
  return out;
}

}  // namespace

std::vector<PairCorrelationBin> pair_correlation_serial(std::span<const Ordinate> zeros, BinSpec bins) {
  const Layout L = layout(bins);
  const auto d = normalised_gaps(zeros);
  std::vector<int64_t> h(L.count, 0);
  for (size_t m = 0; m < d.size(); ++m) count_from(d, m, L, h);
  return finish(h, L, d.size());
}

std::vector<PairCorrelationBin> pair_correlation(std::span<const Ordinate> zeros, BinSpec bins, int threads) {
  const Layout L = layout(bins);
  const auto d = normalised_gaps(zeros);
  std::vector<int64_t> h(L.count, 0);
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nt)
  {
    std::vector<int64_t> local(L.count, 0);
#pragma omp for schedule(static)
    for (long m = 0; m < static_cast<long>(d.size()); ++m) count_from(d, static_cast<size_t>(m), L, local);
#pragma omp critical
    for (size_t i = 0; i < L.count; ++i) h[i] += local[i];
  }
  return finish(h, L, d.size());
}

ArithmeticTables::ArithmeticTables(int64_t bound) : bound_(std::max<int64_t>(bound, 1)) {
  const auto n = static_cast<size_t>(bound_) + 1;
  mu_.assign(n, 0);
  base_.assign(n, 0);
  std::vector<int64_t> least(n, 0);
  mu_[1] = 1;
  for (size_t i = 2; i < n; ++i) {
    if (least[i] == 0) {
      least[i] = static_cast<int64_t>(i);
      primes_.push_back(static_cast<int64_t>(i));
      mu_[i] = -1;
      base_[i] = static_cast<int64_t>(i);
    }
    for (int64_t p : primes_) {
      const auto ip = i * static_cast<size_t>(p);
      if (p > least[i] || ip >= n) break;
      least[ip] = p;
      if (p == least[i]) {
        mu_[ip] = 0;
        // i * p is a prime power exactly when i is a power of p
        base_[ip] = base_[i] == p ? p : 0;
      } else {
        mu_[ip] = static_cast<int8_t>(-mu_[i]);
      }
    }
  }
}

double ArithmeticTables::lambda(int64_t n) const {
  const int64_t p = prime_power_base(n);
  return p ? std::log(static_cast<double>(p)) : 0.0;
}

int64_t ArithmeticTables::prime_pi(int64_t x) const {
  if (x > bound_) throw DomainError("prime_pi: beyond sieve bound");
  return std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin();
}

int mobius(int64_t n) {
  if (n < 1) throw DomainError("mobius: n must be positive");
  int sign = 1;
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

double von_mangoldt(int64_t n) {
  if (n < 1) throw DomainError("von_mangoldt: n must be positive");
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
  }
  return n > 1 ? std::log(static_cast<double>(n)) : 0.0;
}

namespace {

// J(x^{1/r}) = sum over p^{k r} <= x of 1/k
mpq_class j_root(int64_t x, int64_t r, const ArithmeticTables& tab) {
  mpq_class sum = 0;
  for (int64_t p : tab.primes()) {
    // p^r > x ends the prime loop
    __int128 q = 1;
    for (int64_t i = 0; i < r && q <= x; ++i) q *= p;
    if (q > x) break;
    const __int128 step = q;
    for (int64_t k = 1; q <= x; ++k, q *= step) sum += mpq_class(mpz_class(1), mpz_class(k));
  }
  return sum;
}

}  // namespace

mpq_class j_exact(int64_t x, const ArithmeticTables& tab) {
  if (x > tab.bound()) throw DomainError("j_exact: beyond sieve bound");
  return j_root(x, 1, tab);
}

mpq_class pi_by_inversion(int64_t x, const ArithmeticTables& tab) {
  if (x > tab.bound()) throw DomainError("pi_by_inversion: beyond sieve bound");
  mpq_class sum = 0;
  for (int64_t r = 1; r < 64 && (int64_t{1} << r) <= x; ++r) {
    if (tab.mu(r) == 0) continue;
    sum += mpq_class(mpz_class(tab.mu(r)), mpz_class(r)) * j_root(x, r, tab);
  }
  sum.canonicalize();
  return sum;
}

namespace {

// 2 Re sum_rho Ei(rho log x), rho = 1/2 + i t
Real zero_sum_li(const Real& logx, std::span<const double> zeros) {
  const Precision p = logx.precision();
  Real s(0L, p);
  const Real half = logx / 2L;
  for (double t : zeros) s += exp_integral_ei(Complex(half, logx * Real(t, p))).re;
  return s * 2L;
}

double j_tail(double x) {
  boost::math::quadrature::exp_sinh<double> q;
  auto f = [](double t) { return 1.0 / (t * (t * t - 1.0) * std::log(t)); };
  return q.integrate(f, x, std::numeric_limits<double>::infinity());
}

Real j_explicit(const Real& x, std::span<const double> zeros) {
  const Precision p = x.precision();
  const Real lx = log(x);
  Real j = exp_integral_ei(lx) - zero_sum_li(lx, zeros);
  return j + Real(j_tail(x.to_double()), p) - log_ui(2, p);
}

}  // namespace

double j_from_zeros(double x, std::span<const double> zeros, int digits) {
  if (!(x > 1.0)) throw DomainError("j_from_zeros: x must exceed 1");
  return j_explicit(Real(x, working_precision(digits)), zeros).to_double();
}

double pi_from_zeros(double x, std::span<const double> zeros, int digits) {
  if (!(x > 1.0)) throw DomainError("pi_from_zeros: x must exceed 1");
  const Precision p = working_precision(digits);
  const Real X(x, p);
  Real sum(0L, p);
  // J vanishes below 2, which makes the inversion a finite sum
  for (long r = 1; std::pow(x, 1.0 / static_cast<double>(r)) >= 2.0; ++r) {
    const int m = mobius(r);
    if (m == 0) continue;
    const Real y = pow(X, Real(1L, p) / r);
    sum += j_explicit(y, zeros) * static_cast<long>(m) / r;
  }
  return sum.to_double();
}

double psi_from_zeros(double x, std::span<const double> zeros, int digits) {
  if (!(x > 1.0)) throw DomainError("psi_from_zeros: x must exceed 1");
  const Precision p = working_precision(digits);
  const Real X(x, p), lx = log(X);
  const Real half(0.5, p);
  Real s(0L, p);
  for (double t : zeros) {
    const Complex rho(half, Real(t, p));
    // x^rho = sqrt(x) e^{i t log x}
    const Complex xr = expi(lx * Real(t, p)) * sqrt(X);
    s += (xr / rho).re;
  }
  const Real two_pi = pi(p) * 2L;
  return (X - s * 2L - log(two_pi) - log1p(-Real(1L, p) / sqr(X)) / 2L).to_double();
}

}  // namespace lzeros
