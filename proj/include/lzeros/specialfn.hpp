// log Gamma, the theta phase functions, incomplete Gamma and Ei.
//
// All functions compute at the precision of their arguments and return
// values at that precision.  Internally each carries extra guard bits sized
// to the cancellation it expects.
#pragma once

#include <variant>

#include "lzeros/errors.hpp"
#include "lzeros/mp.hpp"

namespace lzeros {

/// B_{2k} / (2k)!, k >= 1.  Values are cached process-wide and recomputed
/// when a higher precision is requested.
Real bernoulli_scaled(int k, Precision p);

/// Branch of log Gamma continuous on C minus (-inf, 0], with log Gamma(1) = 0.
Complex log_gamma(const Complex& s);
Real log_gamma(const Real& x);
Complex gamma(const Complex& s);

/// Phase of Gamma(1/4 + it/2) minus (t/2) log pi.
struct RiemannSiegel {};
/// Phase for a Dirichlet character of modulus k and parity a.
struct Generalized {
  int k = 1;
  int a = 0;
};
/// Phase for a level-one modular form of even weight k >= 4.
struct Modular {
  int k = 12;
};
using ThetaKind = std::variant<RiemannSiegel, Generalized, Modular>;

/// Throws DomainError for an invalid kind (a not 0/1, k < 1, odd or small weight).
void validate(const ThetaKind& kind);

Real theta(const ThetaKind& kind, const Real& t);
/// Leading asymptotic form, sgn(t)[(|t|/2) log(k|t|/2 pi e) + (2a-1) pi/8] and
/// its modular analogue sgn(t)[|t| log(|t|/2 pi e) + (k-1) pi/4].
Real theta_asymptotic(const ThetaKind& kind, const Real& t);
/// d theta / dt from the same asymptotic form (used for spacing estimates).
double theta_slope(const ThetaKind& kind, double t);

/// Upper incomplete Gamma(s, x), x > 0.  Chooses series or continued fraction.
Complex upper_incomplete_gamma(const Complex& s, const Real& x);
/// Gamma(s) - x^s e^{-x} sum x^n / (s)_{n+1}.
Complex upper_incomplete_gamma_series(const Complex& s, const Real& x);
/// Same, with Gamma(s) already known at working precision.  Used when many
/// x share one s.
Complex upper_incomplete_gamma(const Complex& s, const Real& x, const Complex& gamma_s);
/// gamma(s, x) = x^s e^{-x} sum_{n>=0} x^n / (s)_{n+1}.
Complex lower_incomplete_gamma(const Complex& s, const Real& x);
/// Legendre continued fraction, evaluated by the modified Lentz method.
Complex upper_incomplete_gamma_cf(const Complex& s, const Real& x);

/// Exponential integral, principal branch with the cut on the negative axis.
Complex exp_integral_ei(const Complex& z);
Complex exp_integral_ei_series(const Complex& z);
/// -E1(-z) + i pi sgn(Im z) with E1 from its continued fraction; needs Im z != 0
/// or Re z < 0.
Complex exp_integral_ei_cf(const Complex& z);
Real exp_integral_ei(const Real& x);

}  // namespace lzeros
