#include "lzeros/mp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lzeros {

Real::Real(std::string_view decimal, Precision p) {
  mpfr_init2(v_, p.bits);
  const std::string s(decimal);
  if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    throw std::invalid_argument("not a decimal number: " + s);
  }
}

std::string Real::to_fixed(int decimals) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*RZf", decimals, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string Real::to_sci(int sig) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*RNe", sig > 0 ? sig - 1 : 0, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

double Real::log10_abs() const {
  if (is_zero()) return -INFINITY;
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log10(std::fabs(m)) + static_cast<double>(e) * 0.30102999566398120;
}

Real pi(Precision p) {
  Real r(p);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

Real euler_gamma(Precision p) {
  Real r(p);
  mpfr_const_euler(r.raw(), MPFR_RNDN);
  return r;
}

Real log_ui(unsigned long n, Precision p) {
  // mpfr_log_ui is tuned for very high precision; the generic log wins below that
  Real r(p);
  if (p.bits < 4000) {
    mpfr_set_ui(r.raw(), n, MPFR_RNDN);
    if (mpfr_get_ui(r.raw(), MPFR_RNDN) == n) {
      mpfr_log(r.raw(), r.raw(), MPFR_RNDN);
      return r;
    }
  }
  mpfr_log_ui(r.raw(), n, MPFR_RNDN);
  return r;
}

Real pow10(long e, Precision p) {
  Real r(p);
  mpfr_ui_pow_ui(r.raw(), 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
  if (e < 0) mpfr_ui_div(r.raw(), 1, r.raw(), MPFR_RNDN);
  return r;
}

Complex& Complex::operator*=(const Complex& o) {
  const Precision p = std::max(precision(), o.precision());
  Real a(p), b(p);
  mpfr_fmms(a.raw(), re.raw(), o.re.raw(), im.raw(), o.im.raw(), MPFR_RNDN);
  mpfr_fmma(b.raw(), re.raw(), o.im.raw(), im.raw(), o.re.raw(), MPFR_RNDN);
  re = std::move(a);
  im = std::move(b);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  // Smith's algorithm keeps the intermediate ratio bounded.
  if (abs(o.re) >= abs(o.im)) {
    Real r = o.im / o.re;
    Real d = o.re + o.im * r;
    Real a = (re + im * r) / d;
    im = (im - re * r) / d;
    re = std::move(a);
  } else {
    Real r = o.re / o.im;
    Real d = o.re * r + o.im;
    Real a = (re * r + im) / d;
    im = (im * r - re) / d;
    re = std::move(a);
  }
  return *this;
}

Complex expi(const Real& x) {
  Real s(x.precision()), c(x.precision());
  mpfr_sin_cos(s.raw(), c.raw(), x.raw(), MPFR_RNDN);
  return Complex(std::move(c), std::move(s));
}

Complex exp(const Complex& z) {
  const Precision p = z.precision();
  Complex w = expi(z.im.at(p));
  w *= exp(z.re.at(p));
  return w;
}

Complex log(const Complex& z) {
  if (z.re.is_zero() && z.im.is_zero()) throw std::domain_error("log of zero");
  return Complex(log(abs(z)), arg(z));
}

Complex sqrt(const Complex& z) {
  const Precision p = z.precision();
  if (z.re.is_zero() && z.im.is_zero()) return Complex(p);
  Real m = abs(z);
  if (z.re.sign() >= 0) {
    Real u = sqrt((m + z.re) / 2L);
    Real v = z.im / (u * 2L);
    return Complex(std::move(u), std::move(v));
  }
  Real v = sqrt((m - z.re) / 2L);
  if (z.im.sign() < 0) v = -v;
  Real u = z.im / (v * 2L);
  return Complex(std::move(u), std::move(v));
}

Complex pow(const Complex& z, const Complex& w) { return exp(w * log(z)); }

Complex inv(const Complex& z) {
  Complex one(Real(1L, z.precision()));
  return one / z;
}

}  // namespace lzeros
