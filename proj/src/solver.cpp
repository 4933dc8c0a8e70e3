#include "lzeros/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <omp.h>

namespace lzeros {

std::string_view to_string(Mode m) { return m == Mode::Exact ? "exact" : "asymptotic"; }

Mode parse_mode(std::string_view s) {
  if (s == "exact") return Mode::Exact;
  if (s == "asymptotic") return Mode::Asymptotic;
  throw DomainError("unknown mode '" + std::string(s) + "'");
}

Mode default_mode(int64_t n) { return n > 100000 || n < -100000 ? Mode::Asymptotic : Mode::Exact; }

ThetaKind theta_kind(const LFunctionFamily& fam) {
  if (const auto* d = std::get_if<DirichletFamily>(&fam.kind))
    return Generalized{static_cast<int>(d->chi->modulus()), d->chi->order_a()};
  if (const auto* m = std::get_if<ModularFamily>(&fam.kind)) return Modular{m->form.weight};
  if (std::holds_alternative<DavenportHeilbronnFamily>(fam.kind)) return Generalized{5, 1};
  return RiemannSiegel{};
}

namespace {

// (-1)^(k/2) for weight k.
int weight_sign(int k) { return (k / 2) % 2 == 0 ? 1 : -1; }

Real gauss_phase(const DirichletCharacter& chi, Precision p) { return arg(chi.gauss_sum(p)); }

// Family constant c with index = lhs / pi + c + n0.
Real index_constant(const LFunctionFamily& fam, Precision p) {
  if (const auto* d = std::get_if<DirichletFamily>(&fam.kind))
    return Real(0.5 + 0.25 * d->chi->order_a(), p);
  if (const auto* m = std::get_if<ModularFamily>(&fam.kind))
    return Real(0.25 * (1 + weight_sign(m->form.weight)), p);
  if (std::holds_alternative<DavenportHeilbronnFamily>(fam.kind)) return Real(0.5, p);
  return Real(1.5, p);
}

Real w_checked(const Real& x) {
  const Precision p = x.precision();
  if (x < -exp(Real(-1L, p))) throw DomainError("seed undefined: Lambert argument below -1/e");
  Real w = lambert_w0(x);
  if (w.is_zero()) throw DomainError("seed undefined: Lambert argument is zero");
  return w;
}

}  // namespace

Real seed(const LFunctionFamily& fam, const Real& n_in) {
  const Precision p = n_in.precision();
  const Real n = n_in - static_cast<long>(fam.label_offset);
  const Real two_pi = pi(p) * 2L;
  const Real e = exp(Real(1L, p));
  if (const auto* d = std::get_if<DirichletFamily>(&fam.kind)) {
    const DirichletCharacter& chi = *d->chi;
    // sigma_n = sgn(n) with sgn(0) = -1
    const long sigma = n_in.sign() > 0 ? 1 : -1;
    const long a = chi.order_a();
    Real A = sigma * (n + gauss_phase(chi, p) / two_pi) + Real(static_cast<double>(1 - 4 * sigma - 2 * a * (sigma + 1)) / 8.0, p);
    Real w = w_checked(A * static_cast<long>(chi.modulus()) / e);
    return two_pi * sigma * A / w;
  }
  if (const auto* m = std::get_if<ModularFamily>(&fam.kind)) {
    const int k = m->form.weight;
    Real A = n - Real(0.25 * (k + weight_sign(k)), p);
    Real w = w_checked(A / (e * 2L));
    return A * pi(p) / w;
  }
  if (std::holds_alternative<DavenportHeilbronnFamily>(fam.kind)) {
    Real m = n - Real(0.625, p);
    return two_pi * m / w_checked(m * 5L / e);
  }
  Real m = n - Real(1.375, p);
  return two_pi * m / w_checked(m / e);
}

Real seed(const LFunctionFamily& fam, int64_t n, Precision p) { return seed(fam, Real(static_cast<long>(n), p)); }

Real equation_lhs(const LFunctionFamily& fam, const Real& t, const Real& delta, Mode mode) {
  const Precision p = t.precision();
  const ThetaKind kind = theta_kind(fam);
  Real lhs = mode == Mode::Exact ? theta(kind, t) : theta_asymptotic(kind, t);
  Complex s(fam.critical_sigma(p) + delta.at(p), t);
  lhs += arg(evaluate(fam, s));
  if (const auto* d = std::get_if<DirichletFamily>(&fam.kind)) lhs -= gauss_phase(*d->chi, p) / 2L;
  return lhs;
}

Real equation_index(const LFunctionFamily& fam, const Real& t, const Real& delta, Mode mode) {
  const Precision p = t.precision();
  return equation_lhs(fam, t, delta, mode) / pi(p) + index_constant(fam, p) + static_cast<long>(fam.label_offset);
}

GapError::GapError(GapDetected g)
    : std::runtime_error("no solution for n = " + std::to_string(g.n) + ": " + g.reason), gap(std::move(g)) {}

namespace {

bool positive_half_only(const LFunctionFamily& fam) { return !fam.is_dirichlet(); }

double spacing_at(const ThetaKind& kind, double t) {
  return std::numbers::pi / std::max(theta_slope(kind, t), 0.1);
}

std::optional<double> try_seed(const LFunctionFamily& fam, int64_t n) {
  try {
    return seed(fam, n, Precision::from_digits(20)).to_double();
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

// log10 of max(1, |t|), rounded up.
int int_digits(double t) { return static_cast<int>(std::ceil(std::log10(std::max(1.0, std::fabs(t))))); }

struct Bracket {
  Real lo, hi, f_lo, f_hi;
  // solve f = shift; nonzero only next to a wrap of the principal branch
  long shift = 0;
};

class Solver {
 public:
  Solver(const LFunctionFamily& fam, int64_t n, const PrecisionPolicy& policy, Mode mode)
      : fam_(fam), n_(n), policy_(policy), mode_(mode), kind_(theta_kind(fam)), id_(fam.id()) {}

  ZeroRecord run();

 private:
  [[noreturn]] void gap(const Real& lo, const Real& hi, std::optional<Real> at, double jump, std::string why) const {
    throw GapError(GapDetected{id_, n_, lo, hi, std::move(at), jump, std::move(why)});
  }

  Real f(const Real& t) const {
    return equation_index(fam_, t.at(p_), delta_, mode_) - static_cast<long>(n_);
  }

  // Sign-preserving map of the index residual: tan(pi f) for |f| < 1/2.
  static Real straighten(const Real& v) {
    if (abs(v) < 0.499) return tan(v * pi(v.precision()));
    return v * 1e6;
  }

  void set_limits();
  Bracket bracket(const Real& center, const Real& half, long factor, const Real& jump_tol) const;
  Real residual(const Real& t) const {
    Complex s(fam_.critical_sigma(p_), t.at(p_));
    return abs(evaluate(fam_, s));
  }
  int achieved_digits(const Real& t, const Real& res, int digits) const;
  // Secant iteration on L along the critical line.  Only a predictor: the
  // caller still checks the index on both sides before accepting anything.
  std::optional<Real> predict(const Real& t0) const;
  // Grid search for an on-level crossing of the index near `near`, used when
  // the plain bracket runs into a wrap of the principal branch.
  std::optional<RootResult> scan_crossing(const Real& lo, const Real& hi, const Real& step, const Real& near,
                                          const RootOptions& opt, const Real& jump_tol,
                                          std::optional<GapDetected>& why) const;
  std::optional<RootResult> explore(const Bracket& b, const RootOptions& opt, const Real& jump_tol,
                                    std::optional<GapDetected>& why, int depth) const;
  // Root of the index inside b, or nullopt (with `why` set) if b holds a jump.
  std::optional<RootResult> refine(const Bracket& b, const RootOptions& opt, std::optional<GapDetected>& why) const;

  const LFunctionFamily& fam_;
  int64_t n_;
  PrecisionPolicy policy_;
  Mode mode_;
  ThetaKind kind_;
  std::string id_;

  double seed_ = 0.0;
  bool has_seed_ = false;
  double lo_lim_ = 0.0, hi_lim_ = 0.0;
  Precision p_;
  Real delta_;
  // |dL/dt| from the last predictor step, reused for the digit estimate
  mutable std::optional<Real> slope_;
};

void Solver::set_limits() {
  const auto s = try_seed(fam_, n_);
  const auto up = try_seed(fam_, n_ + 1);
  const auto down = try_seed(fam_, n_ - 1);
  has_seed_ = s.has_value();
  if (s) {
    seed_ = *s;
  } else if (up) {
    // no closed form for this n: start one mean spacing below the next seed
    seed_ = *up - spacing_at(kind_, *up);
  } else {
    throw DomainError("no seed available for n = " + std::to_string(n_));
  }
  if (positive_half_only(fam_)) seed_ = std::max(seed_, 0.5);
  hi_lim_ = up ? *up : seed_ + 2.0 * spacing_at(kind_, seed_);
  lo_lim_ = down ? *down : seed_ - 2.0 * spacing_at(kind_, seed_);
  if (positive_half_only(fam_)) lo_lim_ = std::max(lo_lim_, std::min(1.0, 0.5 * seed_));
  if (!(lo_lim_ < seed_)) lo_lim_ = seed_ - spacing_at(kind_, seed_);
  if (!(hi_lim_ > seed_)) hi_lim_ = seed_ + spacing_at(kind_, seed_);
}

// Away from zeros the index sits on half-integer levels, so f = index - n is
// near -1/2 just below t_n and near +1/2 just above.  Values beyond +-3/4
// belong to other levels: either another zero or a branch jump of arg L lies
// in between.  The search keeps a bracket whose ends are on the two levels
// adjacent to n and only hands a bracket with off-level ends to the root
// finder once it has shrunk below `jump_tol`, where it is a discontinuity.
Bracket Solver::bracket(const Real& center, const Real& half, long factor, const Real& jump_tol) const {
  const Real lo_lim(lo_lim_, p_), hi_lim(hi_lim_, p_);
  Real lo = max(center - half, lo_lim);
  Real hi = min(center + half, hi_lim);
  Real f_lo = f(lo), f_hi = f(hi);
  Real step = half;
  auto off_level = [](const Real& v) { return abs(v) > 0.75; };
  for (int iter = 0; iter < 400; ++iter) {
    const bool up = f_lo.sign() <= 0 && f_hi.sign() >= 0;
    if (up && !off_level(f_lo) && !off_level(f_hi)) return {lo, hi, f_lo, f_hi};
    if (f_lo.sign() > 0 && f_hi.sign() < 0) return {lo, hi, f_lo, f_hi};  // Brent accepts either orientation
    const bool tiny = hi - lo < jump_tol;
    if (up) {
      if (tiny) return {lo, hi, f_lo, f_hi};
      Real m = (lo + hi) / 2L;
      Real fm = f(m);
      if (fm.sign() <= 0) {
        lo = std::move(m);
        f_lo = std::move(fm);
      } else {
        hi = std::move(m);
        f_hi = std::move(fm);
      }
      continue;
    }
    if (f_hi.sign() < 0) {
      // Right end below the lower level while the left end is on it: arg L
      // wrapped downwards somewhere inside, possibly just after the crossing.
      if (off_level(f_hi) && !off_level(f_lo) && !tiny) {
        Real m = (lo + hi) / 2L;
        Real fm = f(m);
        if (fm.sign() > 0 || off_level(fm)) {
          hi = std::move(m);
          f_hi = std::move(fm);
        } else {
          lo = std::move(m);
          f_lo = std::move(fm);
        }
        continue;
      }
      if (!(hi < hi_lim)) break;
      step *= factor;
      lo = hi;
      f_lo = f_hi;
      hi = min(hi + step, hi_lim);
      f_hi = f(hi);
    } else {
      if (off_level(f_lo) && !off_level(f_hi) && !tiny) {
        Real m = (lo + hi) / 2L;
        Real fm = f(m);
        if (fm.sign() < 0 || off_level(fm)) {
          lo = std::move(m);
          f_lo = std::move(fm);
        } else {
          hi = std::move(m);
          f_hi = std::move(fm);
        }
        continue;
      }
      if (!(lo > lo_lim)) break;
      step *= factor;
      hi = lo;
      f_hi = f_lo;
      lo = max(lo - step, lo_lim);
      f_lo = f(lo);
    }
  }
  gap(lo_lim, hi_lim, std::nullopt, 0.0, "equation index has no sign change between the neighbouring seeds");
}

std::optional<RootResult> Solver::refine(const Bracket& b, const RootOptions& opt,
                                         std::optional<GapDetected>& why) const {
  // Near a simple zero the index behaves like atan((t - t_n) / delta) / pi,
  // so tan(pi f) is close to linear and the secant steps converge quickly.
  const long shift = b.shift;
  RootResult rr = find_root([this, shift](const Real& x) { return straighten(f(x) - shift); }, b.lo, b.hi,
                            straighten(b.f_lo), straighten(b.f_hi), opt);
  // |f| > 1/4 on both sides of a collapsed bracket: a jump, not a zero
  if (abs(rr.f_lo) > 1.0 && abs(rr.f_hi) > 1.0) {
    why = GapDetected{id_, n_, b.lo, b.hi, rr.root, (f(rr.hi) - f(rr.lo)).to_double(),
                      "equation index is discontinuous here"};
    return std::nullopt;
  }
  return rr;
}

std::optional<RootResult> Solver::explore(const Bracket& b, const RootOptions& opt, const Real& jump_tol,
                                         std::optional<GapDetected>& why, int depth) const {
  const auto on = [](const Real& v) { return abs(v) <= 0.75; };
  const auto g = [&](const Real& x) { return f(x) - b.shift; };
  if (depth > 8) return std::nullopt;
  if (on(b.f_lo) && on(b.f_hi)) {
    if (!(b.f_lo.sign() <= 0 && b.f_hi.sign() > 0)) return std::nullopt;
    auto rr = refine(b, opt, why);
    if (rr || !why || !why->jump_at || b.hi - b.lo <= jump_tol) return rr;
    // collapsed onto a wrap: look on both sides of it
    const Real jl = max(*why->jump_at - jump_tol, b.lo), jh = min(*why->jump_at + jump_tol, b.hi);
    if (auto r = explore(Bracket{b.lo, jl, b.f_lo, g(jl), b.shift}, opt, jump_tol, why, depth + 1)) return r;
    return explore(Bracket{jh, b.hi, g(jh), b.f_hi, b.shift}, opt, jump_tol, why, depth + 1);
  }
  if (on(b.f_lo) == on(b.f_hi)) return std::nullopt;

  // One end on level: pin the level change down, then search the on-level
  // piece as is and the other piece with the wrap undone.
  const bool left_on = on(b.f_lo);
  Real a = b.lo, c = b.hi, fa = b.f_lo, fc = b.f_hi;
  while (c - a > jump_tol) {
    Real m = (a + c) / 2L;
    Real fm = g(m);
    if (on(fm) == left_on) {
      a = std::move(m);
      fa = std::move(fm);
    } else {
      c = std::move(m);
      fc = std::move(fm);
    }
  }
  const long wrap = 2 * std::lround(((fc - fa) / 2L).to_double());
  if (left_on) {
    if (auto r = explore(Bracket{b.lo, a, b.f_lo, fa, b.shift}, opt, jump_tol, why, depth + 1)) return r;
    if (wrap == 0) return std::nullopt;
    return explore(Bracket{c, b.hi, fc - wrap, b.f_hi - wrap, b.shift + wrap}, opt, jump_tol, why, depth + 1);
  }
  if (auto r = explore(Bracket{c, b.hi, fc, b.f_hi, b.shift}, opt, jump_tol, why, depth + 1)) return r;
  if (wrap == 0) return std::nullopt;
  return explore(Bracket{b.lo, a, b.f_lo + wrap, fa + wrap, b.shift - wrap}, opt, jump_tol, why, depth + 1);
}

std::optional<RootResult> Solver::scan_crossing(const Real& lo, const Real& hi, const Real& step, const Real& near,
                                                const RootOptions& opt, const Real& jump_tol,
                                                std::optional<GapDetected>& why) const {
  const long count = std::clamp(static_cast<long>(std::ceil(((hi - lo) / step).to_double())), 2L, 400L);
  const Real h = (hi - lo) / count;
  std::vector<Bracket> cells;
  Real x = lo, fx = f(lo);
  for (long i = 1; i <= count; ++i) {
    Real y = lo + h * i;
    Real fy = f(y);
    cells.push_back(Bracket{x, y, fx, fy});
    x = std::move(y);
    fx = std::move(fy);
  }
  // nearest cells first
  std::stable_sort(cells.begin(), cells.end(), [&](const Bracket& u, const Bracket& v) {
    return abs((u.lo + u.hi) / 2L - near) < abs((v.lo + v.hi) / 2L - near);
  });
  for (const auto& c : cells) {
    std::optional<GapDetected> local;
    if (auto r = explore(c, opt, jump_tol, local, 0)) return r;
    if (!why && local) why = std::move(local);
  }
  return std::nullopt;
}

std::optional<Real> Solver::predict(const Real& t0) const {
  const Real sigma = fam_.critical_sigma(p_);
  const Real lo_lim(lo_lim_, p_), hi_lim(hi_lim_, p_);
  const Real max_step(0.5 * spacing_at(kind_, seed_), p_);
  auto value = [&](const Real& t) { return evaluate(fam_, Complex(sigma, t)); };
  Real ta = t0, tb = t0 + max_step / 5L;
  Complex la = value(ta), lb = value(tb);
  for (int i = 0; i < 12; ++i) {
    const Complex dl = lb - la;
    if (dl.re.is_zero() && dl.im.is_zero()) return std::nullopt;
    // L(t) ~ lb + dl (t - tb) / (tb - ta); keep the real part of the root
    Real step = -(lb / dl).re * (tb - ta);
    if (abs(step) > max_step) step = step.sign() > 0 ? max_step : -max_step;
    const bool done = abs(step) < delta_;
    if (done) slope_ = abs(dl) / abs(tb - ta);
    ta = std::move(tb);
    la = std::move(lb);
    tb = ta + step;
    if (tb < lo_lim || tb > hi_lim) return std::nullopt;
    if (done) return tb;
    lb = value(tb);
  }
  return std::nullopt;
}

int Solver::achieved_digits(const Real& t, const Real& res, int digits) const {
  const int cap = std::max(0, digits - int_digits(t.to_double()));
  if (res.is_zero()) return cap;
  if (slope_ && !slope_->is_zero()) return std::clamp(static_cast<int>(std::floor(-(res / *slope_).log10_abs())), 0, cap);
  const Real h = pow10(-(digits / 3), p_);
  Complex a(fam_.critical_sigma(p_), t + h), b(fam_.critical_sigma(p_), t - h);
  const Real deriv = abs(evaluate(fam_, a) - evaluate(fam_, b)) / (h * 2L);
  if (deriv.is_zero()) return 0;
  const double err = (res / deriv).log10_abs();
  return std::clamp(static_cast<int>(std::floor(-err)), 0, cap);
}

ZeroRecord Solver::run() {
  policy_.validate();
  if (!fam_.is_dirichlet() && n_ - fam_.label_offset < 1)
    throw DomainError("n must be positive for " + id_);
  set_limits();

  const double target = policy_.log10_target_residual;
  // Digits beyond what the residual target can use are not spent.
  const int cap = static_cast<int>(std::ceil(-target)) + int_digits(seed_) + 10;

  Real t(seed_, working_precision(policy_.initial_digits));
  double prev_log10_delta = 0.0;
  for (int r = 0; r < policy_.max_iterations; ++r) {
    const double l10d = policy_.log10_delta(r);
    // the offset has to stay resolvable against t
    const int need = static_cast<int>(std::ceil(-l10d)) + int_digits(seed_) + 8;
    const int digits = std::max({std::min(policy_.digits(r), cap), need, policy_.initial_digits});
    p_ = working_precision(digits);
    delta_ = Real(policy_.initial_delta, p_) / pow(Real(policy_.delta_shrink, p_), Real(static_cast<long>(r), p_));
    t = t.at(p_);

    RootOptions opt{min(pow10(-(digits - 3 - int_digits(seed_)), p_), delta_ / 1000L), Real(p_), 400};
    const Real jump_tol = delta_ / 100L;
    const Real half = r == 0 ? Real(std::min(0.45 * spacing_at(kind_, seed_), 2.0), p_)
                             : delta_ * 8L + pow10(static_cast<long>(std::floor(prev_log10_delta)) * 2, p_);

    std::optional<GapDetected> why;
    std::optional<RootResult> rr;
    if (r == 0) {
      // A tight bracket around a predicted zero saves the long approach from
      // the seed, where the index is nearly a step function of t.
      if (auto guess = predict(t)) {
        const Real lo = max(*guess - delta_ * 8L, Real(lo_lim_, p_));
        const Real hi = min(*guess + delta_ * 8L, Real(hi_lim_, p_));
        // explore also covers a wrap inside the window, as in close pairs
        rr = explore(Bracket{lo, hi, f(lo), f(hi)}, opt, jump_tol, why, 0);
      }
    }
    if (!rr) {
      try {
        rr = refine(bracket(t, half, r == 0 ? 2 : 8, jump_tol), opt, why);
      } catch (const GapError& g) {
        why = g.gap;
      }
    }
    if (!rr) {
      // The principal branch of arg L can wrap right next to a zero, hiding
      // the crossing from the bracket ends; look for it on a grid.
      const Real lo = r == 0 ? Real(lo_lim_, p_) : max(t - half * 64L, Real(lo_lim_, p_));
      const Real hi = r == 0 ? Real(hi_lim_, p_) : min(t + half * 64L, Real(hi_lim_, p_));
      const Real step = r == 0 ? Real(spacing_at(kind_, seed_) / 16.0, p_) : half / 4L;
      rr = scan_crossing(lo, hi, step, t, opt, jump_tol, why);
      // a close pair of zeros can share one grid cell
      if (!rr) rr = scan_crossing(lo, hi, step / 16L, t, opt, jump_tol, why);
      if (!rr && !why) gap(lo, hi, std::nullopt, 0.0, "no crossing of the equation index found");
      if (!rr) throw GapError(*why);
    }
    t = rr->root;
    prev_log10_delta = l10d;

    Real res = residual(t);
    if (res.is_zero() || res.log10_abs() < target) {
      ZeroRecord rec;
      rec.family = fam_;
      rec.n = n_;
      rec.seed = has_seed_ ? seed(fam_, n_, p_).at(working_precision(policy_.initial_digits))
                           : Real(seed_, working_precision(policy_.initial_digits));
      rec.ordinate = t;
      rec.achieved_digits = achieved_digits(t, res, digits);
      rec.residual = res;
      rec.mode = mode_;
      rec.rounds = r + 1;
      return rec;
    }
  }
  throw NonConvergence("zero n = " + std::to_string(n_) + " of " + id_ + " did not reach the residual target in " +
                       std::to_string(policy_.max_iterations) + " rounds");
}

}  // namespace

ZeroRecord solve_zero(const LFunctionFamily& fam, int64_t n, const PrecisionPolicy& policy, Mode mode) {
  return Solver(fam, n, policy, mode).run();
}

SolveOutcome try_solve_zero(const LFunctionFamily& fam, int64_t n, const PrecisionPolicy& policy, Mode mode) {
  try {
    return solve_zero(fam, n, policy, mode);
  } catch (const GapError& g) {
    return g.gap;
  } catch (const std::exception& e) {
    return SolveFailure{n, e.what()};
  }
}

std::vector<SolveOutcome> solve_range(const LFunctionFamily& fam, int64_t n_lo, int64_t n_hi,
                                      const PrecisionPolicy& policy, Mode mode, int threads) {
  if (n_hi < n_lo) return {};
  const int64_t count = n_hi - n_lo + 1;
  std::vector<SolveOutcome> out(static_cast<size_t>(count));
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (int64_t i = 0; i < count; ++i) out[static_cast<size_t>(i)] = try_solve_zero(fam, n_lo + i, policy, mode);
  return out;
}

std::vector<SolveOutcome> solve_range_serial(const LFunctionFamily& fam, int64_t n_lo, int64_t n_hi,
                                             const PrecisionPolicy& policy, Mode mode) {
  std::vector<SolveOutcome> out;
  for (int64_t n = n_lo; n <= n_hi; ++n) out.push_back(try_solve_zero(fam, n, policy, mode));
  return out;
}

std::vector<SolveOutcome> scan_gaps(const LFunctionFamily& fam, int64_t n_lo, int64_t n_hi,
                                    const PrecisionPolicy& policy, Mode mode, int threads) {
  std::vector<SolveOutcome> out = solve_range(fam, n_lo, n_hi, policy, mode, threads);
  const Precision p = working_precision(policy.initial_digits);
  const Real zero(p);
  for (size_t i = 0; i < out.size(); ++i) {
    auto* g = std::get_if<GapDetected>(&out[i]);
    if (!g) continue;
    const ZeroRecord* below = nullptr;
    const ZeroRecord* above = nullptr;
    for (size_t j = i; j-- > 0;)
      if ((below = std::get_if<ZeroRecord>(&out[j]))) break;
    for (size_t j = i + 1; j < out.size(); ++j)
      if ((above = std::get_if<ZeroRecord>(&out[j]))) break;
    if (!below || !above) continue;
    const Real lo = below->ordinate.at(p), hi = above->ordinate.at(p);
    const Real eps = (hi - lo) / 1000L;
    const Real rise = equation_index(fam, hi - eps, zero, mode) - equation_index(fam, lo + eps, zero, mode);
    g->lo = lo;
    g->hi = hi;
    // converged zeros strictly inside (lo, hi): none, by construction
    g->jump = rise.to_double();
  }
  return out;
}

namespace {

// Continuous change of arg L along the segment a -> b, by subdividing until
// each step turns by less than 0.6 rad.
Real arg_change(const LFunctionFamily& fam, const Complex& a, const Complex& b) {
  const Precision p = a.precision();
  Real total(p);
  Complex za = a;
  Complex va = evaluate(fam, za);
  Real frac(p);  // fraction of the segment covered
  Real step(1.0 / 32.0, p);
  const Complex dir = b - a;
  const Real min_step(1e-12, p);
  while (frac < 1.0) {
    Real next = min(frac + step, Real(1L, p));
    Complex zb = a + dir * next;
    Complex vb = evaluate(fam, zb);
    Real d = arg(vb / va);
    if (abs(d) > 0.6 && step > min_step) {
      step /= 2L;
      continue;
    }
    total += d;
    frac = next;
    va = vb;
    if (abs(d) < 0.15) step *= 2L;
  }
  return total;
}

double right_edge(const LFunctionFamily& fam) {
  if (const auto* m = std::get_if<ModularFamily>(&fam.kind)) return 0.5 * m->form.weight + 3.0;
  return 2.0;
}

LFunctionFamily conjugate_family(const LFunctionFamily& fam) {
  if (const auto* d = std::get_if<DirichletFamily>(&fam.kind)) {
    LFunctionFamily c = LFunctionFamily::dirichlet(d->chi->conjugate());
    c.label_offset = fam.label_offset;
    return c;
  }
  return fam;
}

// Continued arg L(c + iT) from the right edge, with arg L(right edge) taken
// as its principal value; also returns the continued arg at the real point c
// (unused for zeta, whose path would cross the pole).
std::pair<Real, Real> continued_args(const LFunctionFamily& fam, const Real& T) {
  const Precision p = T.precision();
  const Real sr(right_edge(fam), p);
  const Real c = fam.critical_sigma(p);
  // |L - 1| < 1 on the right edge, so the principal value is continuous there.
  Real at_T = arg(evaluate(fam, Complex(sr, T)));
  at_T += arg_change(fam, Complex(sr, T), Complex(c, T));
  Real at_c(p);
  if (!std::holds_alternative<ZetaFamily>(fam.kind)) {
    at_c = arg(evaluate(fam, Complex(sr, Real(p))));
    at_c += arg_change(fam, Complex(sr, Real(p)), Complex(c, Real(p)));
  }
  return {at_T, at_c};
}

Real strip_count(const LFunctionFamily& fam, const Real& T, Real* s_term) {
  const Precision p = T.precision();
  auto [at_T, at_c] = continued_args(fam, T);
  Real v = theta(theta_kind(fam), T) + at_T - at_c;
  if (s_term) *s_term = at_T / pi(p);
  v /= pi(p);
  if (std::holds_alternative<ZetaFamily>(fam.kind)) v += 1L;
  return v;
}

}  // namespace

Real count_critical(const LFunctionFamily& fam, const Real& T, Side side) {
  const Precision p = T.precision();
  const Real zero(p);
  const Real half(0.5, p);
  const long n0 = fam.label_offset;
  if (side == Side::Lower && fam.is_dirichlet()) return half - (equation_index(fam, -T, zero, Mode::Exact) - n0);
  return equation_index(fam, T, zero, Mode::Exact) - n0 - half;
}

Real count_strip(const LFunctionFamily& fam, const Real& T, Side side) {
  const LFunctionFamily f = side == Side::Lower ? conjugate_family(fam) : fam;
  return strip_count(f, T, nullptr);
}

Real count_smooth(const LFunctionFamily& fam, const Real& T, Side side) {
  const Precision p = T.precision();
  Real v = theta_asymptotic(theta_kind(fam), T) / pi(p);
  if (const auto* d = std::get_if<DirichletFamily>(&fam.kind)) {
    const Real g = gauss_phase(*d->chi, p) / (pi(p) * 2L);
    const Real a4(0.25 * d->chi->order_a(), p);
    return side == Side::Upper ? v - g + a4 : v + g - a4;
  }
  if (const auto* m = std::get_if<ModularFamily>(&fam.kind))
    return v - Real(0.25 * (1 - weight_sign(m->form.weight)), p);
  if (std::holds_alternative<ZetaFamily>(fam.kind)) v += 1L;
  return v;
}

CountingPoint counting_point(const LFunctionFamily& fam, const Real& T, Side side) {
  CountingPoint cp;
  cp.T = T;
  cp.n_critical = count_critical(fam, T, side);
  const LFunctionFamily f = side == Side::Lower ? conjugate_family(fam) : fam;
  cp.s_term = Real(T.precision());
  cp.n_strip = strip_count(f, T, &cp.s_term);
  return cp;
}

ZeroCache::ZeroCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (auto e = parse_line(line)) insert(std::move(*e));
  }
}

void ZeroCache::insert(Entry e) {
  auto key = std::make_tuple(e.family_id, e.n, e.mode);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(std::move(key), std::move(e));
  } else if (e.digits > it->second.digits) {
    it->second = std::move(e);
  }
}

std::optional<ZeroCache::Entry> ZeroCache::find(const std::string& family_id, int64_t n, Mode mode,
                                                int min_digits) const {
  auto it = entries_.find(std::make_tuple(family_id, n, mode));
  if (it == entries_.end() || it->second.digits < min_digits) return std::nullopt;
  return it->second;
}

void ZeroCache::append(const ZeroRecord& rec) {
  Entry e{rec.family.id(), rec.n, rec.mode, rec.achieved_digits, rec.ordinate.to_fixed(rec.achieved_digits),
          rec.residual.to_sci(6)};
  std::ofstream out(path_, std::ios::app);
  out << format_line(e) << '\n';
  if (!out) throw std::runtime_error("cannot write zero cache " + path_.string());
  insert(std::move(e));
}

std::string ZeroCache::format_line(const Entry& e) {
  std::ostringstream os;
  os << e.family_id << ',' << e.n << ',' << to_string(e.mode) << ',' << e.digits << ',' << e.ordinate << ','
     << e.residual;
  return os.str();
}

std::optional<ZeroCache::Entry> ZeroCache::parse_line(std::string_view line) {
  std::vector<std::string> f;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      f.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  f.push_back(cur);
  if (f.size() != 6 || f[0].empty()) return std::nullopt;
  try {
    Entry e;
    e.family_id = f[0];
    size_t pos = 0;
    e.n = std::stoll(f[1], &pos);
    if (pos != f[1].size()) return std::nullopt;
    e.mode = parse_mode(f[2]);
    e.digits = std::stoi(f[3], &pos);
    if (pos != f[3].size() || e.digits < 0) return std::nullopt;
    e.ordinate = f[4];
    e.residual = f[5];
    return e;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace lzeros
