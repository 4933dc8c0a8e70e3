// Precision schedule, Lambert W0 and bracketed root finding.
#pragma once

#include <functional>

#include "lzeros/errors.hpp"
#include "lzeros/mp.hpp"

namespace lzeros {

/// Schedule for the shrinking-offset solve loop.
///
/// Round r evaluates the equation at offset initial_delta / delta_shrink^r
/// from the critical line with initial_digits + r * digits_increment working
/// digits.  The loop stops once the L-function modulus at the candidate zero
/// drops below target_residual.
struct PrecisionPolicy {
  double initial_delta = 1e-3;
  double delta_shrink = 1000.0;
  int initial_digits = 15;
  int digits_increment = 20;
  /// log10 of the target residual; -30 means |L| < 1e-30.
  double log10_target_residual = -30.0;
  int max_iterations = 40;

  /// Throws DomainError when the invariants do not hold.
  void validate() const;
  /// log10 of the offset used in round r.
  double log10_delta(int round) const;
  int digits(int round) const { return initial_digits + round * digits_increment; }

  /// Default schedule aimed at `digits` correct decimals.
  static PrecisionPolicy for_digits(int digits);
};

/// Principal branch W0 at the precision of x.  Requires x >= -1/e.
Real lambert_w0(const Real& x);
double lambert_w0(double x);

struct RootOptions {
  /// Stop once the bracket half-width is below this (absolute).
  Real tol;
  /// Stop once |f| is at or below this; zero disables the test.
  Real ftol;
  int max_iterations = 300;
};

struct RootResult {
  Real root;
  Real lo, hi;      // final bracket, lo <= root <= hi
  Real f_lo, f_hi;  // f at the bracket ends
  Real f_root;
  int iterations = 0;
};

using RealFunction = std::function<Real(const Real&)>;

/// Brent's method: inverse quadratic / secant steps guarded by bisection.
/// The returned root always lies inside [lo, hi].
RootResult find_root(const RealFunction& f, const Real& lo, const Real& hi, const RootOptions& opt);
/// Same, reusing already evaluated endpoint values.
RootResult find_root(const RealFunction& f, const Real& lo, const Real& hi, const Real& f_lo, const Real& f_hi,
                     const RootOptions& opt);

}  // namespace lzeros
