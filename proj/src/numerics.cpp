#include "lzeros/numerics.hpp"

#include <cmath>
#include <string>

namespace lzeros {

void PrecisionPolicy::validate() const {
  if (!(initial_delta > 0.0 && initial_delta < 1.0)) throw DomainError("initial_delta must lie in (0,1)");
  if (!(delta_shrink > 1.0)) throw DomainError("delta_shrink must exceed 1");
  if (initial_digits < 5) throw DomainError("initial_digits must be at least 5");
  if (digits_increment < 1) throw DomainError("digits_increment must be at least 1");
  if (max_iterations < 1) throw DomainError("max_iterations must be positive");
}

double PrecisionPolicy::log10_delta(int round) const {
  return std::log10(initial_delta) - round * std::log10(delta_shrink);
}

PrecisionPolicy PrecisionPolicy::for_digits(int digits) {
  PrecisionPolicy p;
  p.log10_target_residual = -(digits + 2);
  return p;
}

namespace {

Real w_seed(const Real& x) {
  const Precision p = x.precision();
  const double xd = x.to_double();
  if (xd > 3.0 || !std::isfinite(xd)) {
    Real l1 = log(x);
    Real l2 = log(l1);
    return l1 - l2 + l2 / l1;
  }
  if (xd < -0.25) {
    Real e1 = exp(Real(1L, p));
    Real q = (e1 * x + 1L) * 2L;
    if (q.sign() < 0) q = Real(p);
    Real s = sqrt(q);
    return s - 1L - sqr(s) / 3L + s * sqr(s) * (11.0 / 72.0);
  }
  return Real(std::log1p(xd) * (xd > 0 ? 0.75 : 1.0), p);
}

}  // namespace

Real lambert_w0(const Real& x) {
  const Precision p = x.precision();
  const Precision wp = p.plus_bits(16);
  Real xw = x.at(wp);
  Real branch = -exp(Real(-1L, wp));
  if (xw < branch) {
    // Allow values rounded just below -1/e at the caller's precision.
    if ((branch - xw) > ldexp_bits(Real(1L, wp), -static_cast<long>(p.bits) + 4)) {
      throw DomainError("lambert_w0: argument below -1/e");
    }
    return Real(-1L, p);
  }
  if (xw.is_zero()) return Real(p);
  Real w = w_seed(xw);
  const long stop_exp = -static_cast<long>(wp.bits) + 8;
  for (int it = 0; it < 200; ++it) {
    Real ew = exp(w);
    Real f = w * ew - xw;
    Real w1 = w + 1L;
    if (w1.is_zero()) break;
    Real denom = ew * w1 - (w + 2L) * f / (w1 * 2L);
    Real step = f / denom;
    w -= step;
    if (step.is_zero()) break;
    const long scale = std::max(0L, w.is_zero() ? 0L : w.exponent2());
    if (step.exponent2() < stop_exp + scale && it > 0) break;
  }
  return w.at(p);
}

double lambert_w0(double x) {
  Real r = lambert_w0(Real(x, Precision{64}));
  return r.to_double();
}

RootResult find_root(const RealFunction& f, const Real& lo, const Real& hi, const RootOptions& opt) {
  return find_root(f, lo, hi, f(lo), f(hi), opt);
}

RootResult find_root(const RealFunction& f, const Real& lo, const Real& hi, const Real& f_lo, const Real& f_hi,
                     const RootOptions& opt) {
  if (f_lo.sign() * f_hi.sign() > 0) {
    throw NoSignChange("find_root: no sign change on [" + lo.to_sci(12) + ", " + hi.to_sci(12) + "]",
                       f_lo.to_double(), f_hi.to_double());
  }
  const Precision p = std::max(lo.precision(), hi.precision());
  Real a = lo.at(p), b = hi.at(p), fa = f_lo, fb = f_hi;
  Real c = b, fc = fb;
  Real d = b - a, e = d;
  const Real eps = ldexp_bits(Real(1L, p), -static_cast<long>(p.bits) + 2);
  for (int iter = 1; iter <= opt.max_iterations; ++iter) {
    if ((fb.sign() > 0 && fc.sign() > 0) || (fb.sign() < 0 && fc.sign() < 0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (abs(fc) < abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    Real tol1 = eps * abs(b) * 2L + opt.tol * 0.5;
    Real xm = (c - b) * 0.5;
    const bool f_small = !opt.ftol.is_zero() && abs(fb) <= opt.ftol;
    if (abs(xm) <= tol1 || fb.is_zero() || f_small) {
      RootResult r;
      r.root = b;
      r.f_root = fb;
      if (b < c) {
        r.lo = b; r.f_lo = fb; r.hi = c; r.f_hi = fc;
      } else {
        r.lo = c; r.f_lo = fc; r.hi = b; r.f_hi = fb;
      }
      r.iterations = iter;
      return r;
    }
    if (abs(e) >= tol1 && abs(fa) > abs(fb)) {
      Real s = fb / fa;
      Real pp(p), q(p);
      if (a == c) {
        pp = xm * s * 2L;
        q = 1L - s;
      } else {
        Real qq = fa / fc;
        Real r = fb / fc;
        pp = s * (xm * qq * (qq - r) * 2L - (b - a) * (r - 1L));
        q = (qq - 1L) * (r - 1L) * (s - 1L);
      }
      if (pp.sign() > 0) q = -q;
      pp = abs(pp);
      Real min1 = xm * q * 3L - abs(tol1 * q);
      Real min2 = abs(e * q);
      if (pp * 2L < min(min1, min2)) {
        e = d;
        d = pp / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    if (abs(d) > tol1) {
      b += d;
    } else {
      b += xm.sign() >= 0 ? tol1 : -tol1;
    }
    fb = f(b);
  }
  throw NonConvergence("find_root: iteration cap reached");
}

}  // namespace lzeros
