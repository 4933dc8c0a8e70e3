// Multiprecision real and complex values backed by MPFR.
//
// Every value carries its own precision.  Binary operations produce a result
// at the larger of the operand precisions, so a computation that starts from
// inputs at P bits stays at P bits without a global context.
#pragma once

#include <mpfr.h>

#include <algorithm>
#include <climits>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace lzeros {

/// Working precision in bits, with helpers for decimal digits.
struct Precision {
  mpfr_prec_t bits = 64;

  static Precision from_bits(long b) { return Precision{static_cast<mpfr_prec_t>(b < 16 ? 16 : b)}; }
  static Precision from_digits(int digits) {
    return from_bits(static_cast<long>(std::ceil(digits * 3.3219280948873623)) + 4);
  }
  int digits() const { return static_cast<int>(std::floor(static_cast<double>(bits - 4) * 0.30102999566398120)); }
  Precision plus_digits(int d) const { return from_digits(digits() + d); }
  Precision plus_bits(long b) const { return from_bits(static_cast<long>(bits) + b); }

  friend auto operator<=>(const Precision&, const Precision&) = default;
};

/// Extra decimal digits every evaluator carries over the requested precision.
inline constexpr int kGuardDigits = 10;

inline Precision working_precision(int digits) { return Precision::from_digits(digits + kGuardDigits); }

class Real {
 public:
  explicit Real(Precision p = Precision{}) { mpfr_init2(v_, p.bits); mpfr_set_zero(v_, 1); }
  Real(double x, Precision p) { mpfr_init2(v_, p.bits); mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(long x, Precision p) { mpfr_init2(v_, p.bits); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(int x, Precision p) : Real(static_cast<long>(x), p) {}
  Real(std::string_view decimal, Precision p);

  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  Precision precision() const { return Precision{mpfr_get_prec(v_)}; }

  /// Changes the precision in place, rounding the current value.
  void round_to(Precision p) { mpfr_prec_round(v_, p.bits, MPFR_RNDN); }
  Real at(Precision p) const { Real r(p); mpfr_set(r.v_, v_, MPFR_RNDN); return r; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long_floor() const { return mpfr_get_si(v_, MPFR_RNDD); }
  /// Fixed-point text with `decimals` digits after the point, truncated toward zero.
  std::string to_fixed(int decimals) const;
  /// Scientific text with `sig` significant digits, rounded to nearest.
  std::string to_sci(int sig) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  long exponent2() const { return is_zero() ? LONG_MIN / 2 : mpfr_get_exp(v_); }
  /// log10 |x|, -inf for zero; computed in double range.
  double log10_abs() const;

  Real operator-() const { Real r(precision()); mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }

  Real& operator+=(const Real& o) { widen(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { widen(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { widen(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { widen(o); mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator+=(long x) { mpfr_add_si(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator-=(long x) { mpfr_sub_si(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator*=(long x) { mpfr_mul_si(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator/=(long x) { mpfr_div_si(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator+=(double x) { mpfr_add_d(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator-=(double x) { mpfr_sub_d(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator*=(double x) { mpfr_mul_d(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator/=(double x) { mpfr_div_d(v_, v_, x, MPFR_RNDN); return *this; }

  friend Real operator+(Real a, const Real& b) { a += b; return a; }
  friend Real operator-(Real a, const Real& b) { a -= b; return a; }
  friend Real operator*(Real a, const Real& b) { a *= b; return a; }
  friend Real operator/(Real a, const Real& b) { a /= b; return a; }
  friend Real operator+(Real a, long b) { a += b; return a; }
  friend Real operator-(Real a, long b) { a -= b; return a; }
  friend Real operator*(Real a, long b) { a *= b; return a; }
  friend Real operator/(Real a, long b) { a /= b; return a; }
  friend Real operator+(long b, Real a) { a += b; return a; }
  friend Real operator*(long b, Real a) { a *= b; return a; }
  friend Real operator-(long b, const Real& a) { Real r(a.precision()); mpfr_si_sub(r.v_, b, a.v_, MPFR_RNDN); return r; }
  friend Real operator/(long b, const Real& a) { Real r(a.precision()); mpfr_si_div(r.v_, b, a.v_, MPFR_RNDN); return r; }
  friend Real operator+(Real a, double b) { a += b; return a; }
  friend Real operator-(Real a, double b) { a -= b; return a; }
  friend Real operator*(Real a, double b) { a *= b; return a; }
  friend Real operator/(Real a, double b) { a /= b; return a; }
  friend Real operator*(double b, Real a) { a *= b; return a; }
  friend Real operator+(double b, Real a) { a += b; return a; }
  friend Real operator-(double b, const Real& a) { Real r(a.precision()); mpfr_d_sub(r.v_, b, a.v_, MPFR_RNDN); return r; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
  }
  friend bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, double b) {
    const int c = mpfr_cmp_d(a.v_, b);
    return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
  }

 private:
  void widen(const Real& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  }

  mpfr_t v_;
};

// Elementary functions.  Results carry the precision of the argument.
#define LZEROS_UNARY(name, fn)                  \
  inline Real name(const Real& x) {             \
    Real r(x.precision());                      \
    fn(r.raw(), x.raw(), MPFR_RNDN);            \
    return r;                                   \
  }
LZEROS_UNARY(exp, mpfr_exp)
LZEROS_UNARY(log, mpfr_log)
LZEROS_UNARY(log1p, mpfr_log1p)
LZEROS_UNARY(sqrt, mpfr_sqrt)
LZEROS_UNARY(sin, mpfr_sin)
LZEROS_UNARY(cos, mpfr_cos)
LZEROS_UNARY(tan, mpfr_tan)
LZEROS_UNARY(atan, mpfr_atan)
LZEROS_UNARY(abs, mpfr_abs)
LZEROS_UNARY(sinh, mpfr_sinh)
#undef LZEROS_UNARY

inline Real floor(const Real& x) { Real r(x.precision()); mpfr_floor(r.raw(), x.raw()); return r; }

inline Real atan2(const Real& y, const Real& x) {
  Real r(std::max(y.precision(), x.precision()));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& x, const Real& y) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
inline Real sqr(const Real& x) { Real r(x.precision()); mpfr_sqr(r.raw(), x.raw(), MPFR_RNDN); return r; }
inline Real hypot(const Real& x, const Real& y) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
/// x * 2^e, exact.
inline Real ldexp_bits(Real x, long e) { mpfr_mul_2si(x.raw(), x.raw(), e, MPFR_RNDN); return x; }
inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real pi(Precision p);
Real euler_gamma(Precision p);
Real log_ui(unsigned long n, Precision p);
/// 10^e at precision p.
Real pow10(long e, Precision p);

/// Complex number with MPFR components.
struct Complex {
  Real re;
  Real im;

  explicit Complex(Precision p = Precision{}) : re(p), im(p) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(Real r) : re(std::move(r)), im(re.precision()) {}
  Complex(double r, double i, Precision p) : re(r, p), im(i, p) {}

  Precision precision() const { return std::max(re.precision(), im.precision()); }
  Complex at(Precision p) const { return Complex(re.at(p), im.at(p)); }

  Complex operator-() const { return Complex(-re, -im); }
  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& x) { re *= x; im *= x; return *this; }
  Complex& operator/=(const Real& x) { re /= x; im /= x; return *this; }
  Complex& operator*=(long x) { re *= x; im *= x; return *this; }
  Complex& operator+=(const Real& x) { re += x; return *this; }
  Complex& operator-=(const Real& x) { re -= x; return *this; }

  friend Complex operator+(Complex a, const Complex& b) { a += b; return a; }
  friend Complex operator-(Complex a, const Complex& b) { a -= b; return a; }
  friend Complex operator*(Complex a, const Complex& b) { a *= b; return a; }
  friend Complex operator/(Complex a, const Complex& b) { a /= b; return a; }
  friend Complex operator*(Complex a, const Real& b) { a *= b; return a; }
  friend Complex operator*(const Real& b, Complex a) { a *= b; return a; }
  friend Complex operator/(Complex a, const Real& b) { a /= b; return a; }
  friend Complex operator+(Complex a, const Real& b) { a += b; return a; }
  friend Complex operator-(Complex a, const Real& b) { a -= b; return a; }
  friend Complex operator+(Complex a, long b) { a.re += b; return a; }
  friend Complex operator-(Complex a, long b) { a.re -= b; return a; }
  friend Complex operator*(Complex a, long b) { a *= b; return a; }
  friend Complex operator/(Complex a, long b) { a.re /= b; a.im /= b; return a; }
};

inline Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
inline Real norm(const Complex& z) { return sqr(z.re) + sqr(z.im); }
inline Real abs(const Complex& z) { return hypot(z.re, z.im); }
/// Principal argument in (-pi, pi].
inline Real arg(const Complex& z) { return atan2(z.im, z.re); }
Complex exp(const Complex& z);
/// Principal logarithm.
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
/// z^w = exp(w log z), principal branch.
Complex pow(const Complex& z, const Complex& w);
/// e^{i x}.
Complex expi(const Real& x);
/// Reciprocal.
Complex inv(const Complex& z);

}  // namespace lzeros
