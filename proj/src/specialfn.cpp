#include "lzeros/specialfn.hpp"

#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <vector>

namespace lzeros {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kPi = 3.14159265358979323846;

struct BernoulliCache {
  std::shared_mutex mu;
  Precision prec{0};
  std::vector<Real> values;  // values[k-1] = B_{2k}/(2k)!
};

BernoulliCache& bernoulli_cache() {
  static BernoulliCache cache;
  return cache;
}

void fill_bernoulli(BernoulliCache& c, int kmax, Precision p) {
  const Precision wp = p.plus_bits(32);
  Real two_pi = pi(wp) * 2L;
  Real tp2 = sqr(two_pi);
  Real scale = tp2;  // (2 pi)^{2k}
  c.values.clear();
  c.values.reserve(static_cast<size_t>(kmax));
  for (int k = 1; k <= kmax; ++k) {
    Real z(wp);
    mpfr_zeta_ui(z.raw(), static_cast<unsigned long>(2 * k), MPFR_RNDN);
    Real v = z * 2L / scale;
    if (k % 2 == 0) v = -v;
    v.round_to(p);
    c.values.push_back(std::move(v));
    scale *= tp2;
  }
  c.prec = p;
}

bool is_nonpositive_integer(const Complex& s) {
  if (!s.im.is_zero() || s.re.sign() > 0) return false;
  return floor(s.re) == s.re;
}

}  // namespace

Real bernoulli_scaled(int k, Precision p) {
  if (k < 1) throw DomainError("bernoulli_scaled: k must be positive");
  BernoulliCache& c = bernoulli_cache();
  {
    std::shared_lock lock(c.mu);
    if (c.prec >= p && static_cast<int>(c.values.size()) >= k) return c.values[k - 1].at(p);
  }
  std::unique_lock lock(c.mu);
  if (c.prec < p || static_cast<int>(c.values.size()) < k) {
    const Precision np = std::max(c.prec, p);
    const int nk = std::max({k, static_cast<int>(c.values.size()) * 3 / 2, 64});
    fill_bernoulli(c, nk, np);
  }
  return c.values[k - 1].at(p);
}

Complex log_gamma(const Complex& s) {
  if (is_nonpositive_integer(s)) throw PoleError("log_gamma: pole at nonpositive integer");
  const Precision p = s.precision();
  const double sr = s.re.to_double();
  const double si = s.im.to_double();
  const double mag = std::hypot(sr, si);
  const long extra = 24 + static_cast<long>(std::log2(std::max(1.0, mag * std::log(mag + 2.0))));
  const Precision wp = p.plus_bits(extra);
  const double radius = static_cast<double>(wp.bits) * kLn2 / (2.0 * kPi) + 3.0;

  long m = 0;
  if (std::fabs(si) < radius && sr < radius) m = static_cast<long>(std::ceil(radius - sr));

  Complex z = s.at(wp);
  Complex prod(Real(1L, wp), Real(wp));
  double argsum = 0.0;
  for (long j = 0; j < m; ++j) {
    prod *= z;
    argsum += std::atan2(si, sr + static_cast<double>(j));
    z.re += 1L;
  }

  // Stirling series at z with |z| >= radius.
  Complex lz = log(z);
  Complex res = (z - Real(0.5, wp)) * lz - z;
  res.re += log(pi(wp) * 2L) / 2L;
  Complex zinv = inv(z);
  Complex zinv2 = zinv * zinv;
  Complex pw = zinv;
  Real fact(1L, wp);  // (2k-2)!
  const long stop = -static_cast<long>(wp.bits) + std::max(0L, res.re.exponent2());
  for (int k = 1; k < 100000; ++k) {
    Complex term = pw * (bernoulli_scaled(k, wp) * fact);
    res += term;
    const long te = std::max(term.re.exponent2(), term.im.exponent2());
    if (te < stop) break;
    pw *= zinv2;
    fact *= static_cast<long>((2 * k - 1) * (2 * k));
  }

  if (m > 0) {
    res.re -= log(abs(prod));
    const Real a = arg(prod);
    const double k = std::nearbyint((argsum - a.to_double()) / (2.0 * kPi));
    res.im -= a + pi(wp) * static_cast<long>(2 * k);
  }
  return res.at(p);
}

Real log_gamma(const Real& x) {
  if (x.sign() <= 0) throw DomainError("log_gamma: real argument must be positive");
  Real r(x.precision());
  mpfr_lngamma(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Complex gamma(const Complex& s) { return exp(log_gamma(s)); }

void validate(const ThetaKind& kind) {
  if (const auto* g = std::get_if<Generalized>(&kind)) {
    if (g->k < 1) throw DomainError("theta: modulus must be positive");
    if (g->a != 0 && g->a != 1) throw DomainError("theta: order must be 0 or 1");
  } else if (const auto* m = std::get_if<Modular>(&kind)) {
    if (m->k < 4 || m->k % 2 != 0) throw DomainError("theta: modular weight must be even and at least 4");
  }
}

namespace {

Generalized as_generalized(const ThetaKind& kind) {
  if (std::holds_alternative<RiemannSiegel>(kind)) return Generalized{1, 0};
  return std::get<Generalized>(kind);
}

}  // namespace

Real theta(const ThetaKind& kind, const Real& t) {
  validate(kind);
  const Precision p = t.precision();
  const Precision wp = p.plus_bits(16);
  Real tw = t.at(wp);
  if (const auto* m = std::get_if<Modular>(&kind)) {
    Complex s(Real(static_cast<long>(m->k), wp) / 2L, tw);
    Real v = log_gamma(s).im - tw * log(pi(wp) * 2L);
    return v.at(p);
  }
  const Generalized g = as_generalized(kind);
  Complex s(Real(0.25 + 0.5 * g.a, wp), tw / 2L);
  Real v = log_gamma(s).im - tw / 2L * log(pi(wp) / static_cast<long>(g.k));
  return v.at(p);
}

Real theta_asymptotic(const ThetaKind& kind, const Real& t) {
  validate(kind);
  const Precision p = t.precision();
  if (t.is_zero()) return Real(p);
  Real at = abs(t);
  Real two_pi_e = pi(p) * 2L * exp(Real(1L, p));
  Real v(p);
  if (const auto* m = std::get_if<Modular>(&kind)) {
    v = at * log(at / two_pi_e) + pi(p) * static_cast<long>(m->k - 1) / 4L;
  } else {
    const Generalized g = as_generalized(kind);
    v = at / 2L * log(at * static_cast<long>(g.k) / two_pi_e) + pi(p) * static_cast<long>(2 * g.a - 1) / 8L;
  }
  return t.sign() < 0 ? -v : v;
}

double theta_slope(const ThetaKind& kind, double t) {
  const double at = std::max(std::fabs(t), 1.0);
  if (const auto* m = std::get_if<Modular>(&kind)) {
    (void)m;
    return std::log(at / (2.0 * kPi));
  }
  const Generalized g = as_generalized(kind);
  return 0.5 * std::log(g.k * at / (2.0 * kPi));
}

namespace {

// Largest log2 |x^n / (s)_{n+1}| over the series terms, and the index where
// the terms fall below 2^-bits of the peak.
std::pair<double, long> series_profile(double sr, double si, double x, long bits) {
  double lt = -0.5 * std::log2(sr * sr + si * si);
  double peak = lt;
  long n = 0;
  for (; n < 50000000; ++n) {
    if (n > x && lt < peak - static_cast<double>(bits) - 8) break;
    const double d = std::hypot(sr + static_cast<double>(n + 1), si);
    lt += std::log2(x / d);
    peak = std::max(peak, lt);
  }
  return {peak, n};
}

Complex lower_gamma_sum(const Complex& s, const Real& x, long nterms) {
  const Precision wp = s.precision();
  Complex term = inv(s);
  Complex sum = term;
  Complex sn = s;
  for (long n = 1; n <= nterms; ++n) {
    sn.re += 1L;
    term *= x;
    term /= sn;
    sum += term;
  }
  (void)wp;
  return sum;
}

}  // namespace

Complex upper_incomplete_gamma_series(const Complex& s, const Real& x) {
  if (x.sign() <= 0) throw DomainError("upper_incomplete_gamma: x must be positive");
  const Precision p = std::max(s.precision(), x.precision());
  const double sr = s.re.to_double(), si = s.im.to_double(), xd = x.to_double();
  auto [peak, nterms] = series_profile(sr, si, xd, static_cast<long>(p.bits) + 64);
  const double first = -0.5 * std::log2(sr * sr + si * si);
  long extra = 24 + static_cast<long>(std::max(0.0, peak - first));
  for (int attempt = 0; attempt < 5; ++attempt) {
    const Precision wp = p.plus_bits(extra);
    Complex sw = s.at(wp);
    Real xw = x.at(wp);
    Complex pre = exp(sw * log(xw) - xw);
    Complex lower = pre * lower_gamma_sum(sw, xw, nterms);
    Complex full = gamma(sw);
    Complex res = full - lower;
    // Bits cancelled in the subtraction.
    const double big = std::max(abs(full).log10_abs(), abs(lower).log10_abs());
    const double lost = (big - abs(res).log10_abs()) / 0.30103;
    if (!std::isfinite(lost) || lost < static_cast<double>(extra) - 16) return res.at(p);
    extra = static_cast<long>(lost) + 32;
  }
  throw NonConvergence("upper_incomplete_gamma_series: cancellation not resolved");
}

Complex upper_incomplete_gamma_cf(const Complex& s, const Real& x) {
  if (x.sign() <= 0) throw DomainError("upper_incomplete_gamma: x must be positive");
  const Precision p = std::max(s.precision(), x.precision());
  const Precision wp = p.plus_bits(32);
  Complex sw = s.at(wp);
  Real xw = x.at(wp);
  const Real tiny = ldexp_bits(Real(1L, wp), -4 * static_cast<long>(wp.bits));
  const long stop = -static_cast<long>(wp.bits) + 4;
  auto fix = [&](Complex& v) {
    if (abs(v.re) < tiny && abs(v.im) < tiny) v = Complex(tiny, Real(wp));
  };
  Complex b = (sw - xw) * -1L;
  b.re += 1L;  // x + 1 - s
  Complex c(1L / tiny, Real(wp));
  Complex d = inv(b);
  Complex h = d;
  for (long i = 1; i < 2000000; ++i) {
    Complex si = sw;
    si.re -= i;  // s - i
    Complex an = si * i;  // -i (i - s)
    b.re += 2L;
    d = an * d + b;
    fix(d);
    c = b + an / c;
    fix(c);
    d = inv(d);
    Complex del = c * d;
    h *= del;
    del.re -= 1L;
    if (std::max(del.re.exponent2(), del.im.exponent2()) < stop) {
      Complex pre = exp(sw * log(xw) - xw);
      return (pre * h).at(p);
    }
  }
  throw NonConvergence("upper_incomplete_gamma_cf: continued fraction did not converge");
}

Complex lower_incomplete_gamma(const Complex& s, const Real& x) {
  if (x.sign() <= 0) throw DomainError("lower_incomplete_gamma: x must be positive");
  const Precision p = std::max(s.precision(), x.precision());
  const double sr = s.re.to_double(), si = s.im.to_double(), xd = x.to_double();
  auto [peak, nterms] = series_profile(sr, si, xd, static_cast<long>(p.bits) + 64);
  const double first = -0.5 * std::log2(sr * sr + si * si);
  const long extra = 24 + static_cast<long>(std::max(0.0, peak - first));
  const Precision wp = p.plus_bits(extra);
  Complex sw = s.at(wp);
  Real xw = x.at(wp);
  Complex pre = exp(sw * log(xw) - xw);
  return (pre * lower_gamma_sum(sw, xw, nterms)).at(p);
}

Complex upper_incomplete_gamma(const Complex& s, const Real& x, const Complex& gamma_s) {
  const double sabs = std::hypot(s.re.to_double(), s.im.to_double());
  if (x.to_double() > sabs + 4.0) return upper_incomplete_gamma_cf(s, x);
  const Precision p = std::max(s.precision(), x.precision());
  Complex lower = lower_incomplete_gamma(s, x);
  Complex res = gamma_s - lower;
  const double big = std::max(abs(gamma_s).log10_abs(), abs(lower).log10_abs());
  if ((big - abs(res).log10_abs()) / 0.30103 > 16.0) return upper_incomplete_gamma_series(s, x);
  return res.at(p);
}

Complex upper_incomplete_gamma(const Complex& s, const Real& x) {
  const double sabs = std::hypot(s.re.to_double(), s.im.to_double());
  if (x.to_double() > sabs + 4.0) return upper_incomplete_gamma_cf(s, x);
  return upper_incomplete_gamma_series(s, x);
}

Complex exp_integral_ei_series(const Complex& z) {
  if (z.re.is_zero() && z.im.is_zero()) throw PoleError("Ei: singular at 0");
  const Precision p = z.precision();
  const double zr = z.re.to_double(), zi = z.im.to_double();
  const double za = std::hypot(zr, zi);
  const long extra = 24 + static_cast<long>((za - zr) / kLn2 + std::log2(za + 1.0));
  const Precision wp = p.plus_bits(extra);
  Complex zw = z.at(wp);
  Complex res = log(zw);
  res.re += euler_gamma(wp);
  Complex pw = zw;  // z^n / n!
  const long stop = -static_cast<long>(wp.bits);
  for (long n = 1; n < 100000000; ++n) {
    Complex term = pw / Real(n, wp);
    res += term;
    if (static_cast<double>(n) > za && std::max(term.re.exponent2(), term.im.exponent2()) < stop) break;
    pw *= zw;
    pw /= Real(n + 1, wp);
  }
  return res.at(p);
}

Complex exp_integral_ei_cf(const Complex& z) {
  const Precision p = z.precision();
  if (z.im.is_zero() && z.re.sign() >= 0) throw DomainError("Ei continued fraction needs Im z != 0 or Re z < 0");
  const Precision wp = p.plus_bits(32);
  Complex w = -z.at(wp);
  const Real tiny = ldexp_bits(Real(1L, wp), -4 * static_cast<long>(wp.bits));
  const long stop = -static_cast<long>(wp.bits) + 4;
  Complex b = w;
  b.re += 1L;
  Complex c(1L / tiny, Real(wp));
  Complex d = inv(b);
  Complex h = d;
  bool done = false;
  for (long i = 1; i < 2000000; ++i) {
    Real an(-i * i, wp);
    b.re += 2L;
    d = inv(d * an + b);
    c = b + Complex(an) / c;
    Complex del = c * d;
    h *= del;
    del.re -= 1L;
    if (std::max(del.re.exponent2(), del.im.exponent2()) < stop) {
      done = true;
      break;
    }
  }
  if (!done) throw NonConvergence("Ei: continued fraction did not converge");
  Complex res = -(h * exp(-w));
  const int sg = z.im.sign();
  if (sg > 0) res.im += pi(wp);
  if (sg < 0) res.im -= pi(wp);
  return res.at(p);
}

Complex exp_integral_ei(const Complex& z) {
  if (z.re.is_zero() && z.im.is_zero()) throw PoleError("Ei: singular at 0");
  const double zr = z.re.to_double(), zi = z.im.to_double();
  const double za = std::hypot(zr, zi);
  const bool cf_ok = zr < 0.0 || std::fabs(zi) > 0.5 * zr;
  if (za > 40.0 && cf_ok) return exp_integral_ei_cf(z);
  return exp_integral_ei_series(z);
}

Real exp_integral_ei(const Real& x) { return exp_integral_ei(Complex(x)).re; }

}  // namespace lzeros
