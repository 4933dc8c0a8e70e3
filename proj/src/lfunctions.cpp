#include "lzeros/lfunctions.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "lzeros/specialfn.hpp"

namespace lzeros {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kPi = 3.14159265358979323846;

struct SeriesPlan {
  long n = 1;  // direct terms per residue class
  int m = 1;   // Euler-Maclaurin correction terms
};

// log of the Euler-Maclaurin remainder bound after M corrections at x:
// |(s)_{2M+1}| |B_{2M+2}|/(2M+2)! x^{-sigma-2M-1} / (sigma+2M+1).
// Returns the smallest M meeting `target` (natural log), or -1.
int em_terms_needed(double sr, double si, double x, double target, int m_max) {
  double lpoch = std::log(std::hypot(sr, si));  // log |(s)_{1}|
  const double lx = std::log(x);
  const double l2pi = std::log(2.0 * kPi);
  double prev = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= m_max; ++m) {
    lpoch += std::log(std::hypot(sr + 2 * m - 1, si)) + std::log(std::hypot(sr + 2 * m, si));
    const double denom = sr + 2 * m + 1;
    if (denom <= 0.5) continue;
    const double bound = lpoch + std::log(2.0) - (2 * m + 2) * l2pi - (sr + 2 * m + 1) * lx - std::log(denom);
    if (bound < target) return m;
    // the bound is unimodal in m; past its minimum it only grows
    if (bound > prev && 2.0 * m + sr > 2.0 * kPi * x) return -1;
    prev = bound;
  }
  return -1;
}

SeriesPlan plan_series_uncached(double sr, double si, int q, long bits) {
  const double target = -static_cast<double>(bits) * kLn2 - std::log(static_cast<double>(q)) - 4.0;
  SeriesPlan best{0, 0};
  double best_cost = std::numeric_limits<double>::infinity();
  // below |t| / (2 pi q) the remainder bound cannot be met for any M
  double nd = std::max(1.0, 0.5 * std::fabs(si) / (2.0 * kPi * q));
  for (int it = 0; it < 400; ++it) {
    const long n = static_cast<long>(nd);
    const int m = em_terms_needed(sr, si, static_cast<double>(n), target, 20000);
    if (m > 0) {
      const double cost = static_cast<double>(q) * n + 6.0 * q * m;
      if (cost < best_cost) {
        best_cost = cost;
        best = SeriesPlan{n, m};
      } else if (cost > 2.0 * best_cost) {
        break;
      }
    }
    nd = std::max(nd + 1.0, nd * 1.25);
  }
  if (best.n == 0) throw NonConvergence("periodic_dirichlet_series: no feasible truncation");
  return best;
}

// The remainder bound grows with |t| and shrinks with sigma, so a plan made
// for |t| rounded up and sigma rounded down is valid for the exact point.
// Zero searches evaluate many nearby points, so the last plan is reused.
SeriesPlan plan_series(double sr, double si, int q, long bits) {
  struct Key {
    double sr, si;
    int q;
    long bits;
    bool operator==(const Key&) const = default;
  };
  thread_local std::optional<std::pair<Key, SeriesPlan>> last;
  const Key k{std::floor(sr * 1024.0) / 1024.0, std::ceil(std::fabs(si) / 4.0) * 4.0, q, bits};
  if (!last || !(last->first == k)) last.emplace(k, plan_series_uncached(k.sr, k.si, q, bits));
  return last->second;
}

// Smallest prime factor table, grown on demand and kept per thread.
const std::vector<uint32_t>& smallest_prime_factor(long n) {
  thread_local std::vector<uint32_t> spf;
  if (static_cast<long>(spf.size()) > n) return spf;
  const long size = std::max(n, 2 * static_cast<long>(spf.size()));
  spf.assign(static_cast<size_t>(size + 1), 0);
  for (long i = 2; i <= size; ++i) {
    if (spf[static_cast<size_t>(i)] != 0) continue;
    for (long j = i; j <= size; j += i) {
      if (spf[static_cast<size_t>(j)] == 0) spf[static_cast<size_t>(j)] = static_cast<uint32_t>(i);
    }
  }
  return spf;
}

// Storage for n^{-s}, n <= top, reused across calls at the same precision.
std::vector<Complex>& power_workspace(long top, Precision p) {
  thread_local std::vector<Complex> pw;
  thread_local mpfr_prec_t bits = 0;
  if (bits != p.bits) {
    pw.clear();
    bits = p.bits;
  }
  if (static_cast<long>(pw.size()) <= top) pw.resize(static_cast<size_t>(top + 1), Complex(p));
  return pw;
}

// log n at precision p, memoised per thread for the current precision.
const Real& prime_log(long n, Precision p) {
  thread_local std::vector<Real> table;
  thread_local mpfr_prec_t bits = 0;
  if (bits != p.bits) {
    table.clear();
    bits = p.bits;
  }
  const size_t i = static_cast<size_t>(n);
  if (table.size() <= i) table.resize(i + 1, Real(Precision{MPFR_PREC_MIN}));
  if (table[i].precision().bits != p.bits) table[i] = log_ui(static_cast<unsigned long>(n), p);
  return table[i];
}

// n^{-sigma} for primes n <= top at precision p.  A zero search alternates
// between a couple of abscissae, so the last two tables are kept per thread.
const std::vector<Real>& prime_magnitudes(const Real& sigma, long top, const std::vector<uint32_t>& spf) {
  struct Slot {
    Real sigma{Precision{MPFR_PREC_MIN}};
    std::vector<Real> v;
    unsigned long used = 0;
  };
  thread_local Slot slots[2];
  thread_local unsigned long clock = 0;
  const Precision p = sigma.precision();
  Slot* hit = nullptr;
  for (auto& sl : slots)
    if (sl.sigma.precision() == p && mpfr_equal_p(sl.sigma.raw(), sigma.raw())) hit = &sl;
  if (!hit) {
    hit = slots[0].used <= slots[1].used ? &slots[0] : &slots[1];
    hit->sigma = sigma;
    hit->v.clear();
  }
  hit->used = ++clock;
  auto& v = hit->v;
  const long from = static_cast<long>(v.size());
  if (from <= top) {
    v.resize(static_cast<size_t>(top + 1), Real(Precision{MPFR_PREC_MIN}));
    const Real neg_sig = -sigma;
    for (long n = std::max(from, 2L); n <= top; ++n) {
      if (spf[static_cast<size_t>(n)] != n) continue;
      v[static_cast<size_t>(n)] = exp(neg_sig * prime_log(n, p));
    }
  }
  return v;
}

}  // namespace

Complex periodic_dirichlet_series(std::span<const Complex> c, const Complex& s) {
  const int q = static_cast<int>(c.size());
  if (q < 1) throw DomainError("periodic_dirichlet_series: empty coefficient table");
  const Precision p = s.precision();
  const double sr = s.re.to_double(), si = s.im.to_double();
  const bool at_one = s.im.is_zero() && s.re == 1.0;

  const SeriesPlan plan = plan_series(sr, si, q, static_cast<long>(p.bits) + 8);
  const long top = static_cast<long>(q) * plan.n;
  // Phase bits lost to t log n, magnitude of the partial sums for sigma < 1,
  // and rounding over the number of terms.
  double guard = 20.0 + std::log2(1.0 + std::fabs(si) * std::log(top + 2.0)) + std::log2(top + plan.m + 2.0);
  if (sr < 1.0) guard += std::max(0.0, (1.0 - sr) * std::log2(top + 2.0));
  const Precision wp = p.plus_bits(static_cast<long>(guard));
  Complex sw = s.at(wp);

  // n^{-s} built multiplicatively from primes, accumulated per residue class.
  std::vector<Complex> cls(static_cast<size_t>(q), Complex(wp));
  {
    const auto& spf = smallest_prime_factor(top);
    auto& pw = power_workspace(top, wp);
    mpfr_set_ui(pw[1].re.raw(), 1, MPFR_RNDN);
    mpfr_set_zero(pw[1].im.raw(), 1);
    const Real neg_t = -sw.im;
    const auto& mags = prime_magnitudes(sw.re, top, spf);
    Real arg(wp);
    for (long n = 1; n <= top; ++n) {
      Complex& v = pw[static_cast<size_t>(n)];
      if (n > 1) {
        const long pf = spf[static_cast<size_t>(n)];
        if (pf == n) {
          const Real& ln = prime_log(n, wp);
          mpfr_mul(arg.raw(), neg_t.raw(), ln.raw(), MPFR_RNDN);
          mpfr_sin_cos(v.im.raw(), v.re.raw(), arg.raw(), MPFR_RNDN);
          const Real& mag = mags[static_cast<size_t>(n)];
          mpfr_mul(v.re.raw(), v.re.raw(), mag.raw(), MPFR_RNDN);
          mpfr_mul(v.im.raw(), v.im.raw(), mag.raw(), MPFR_RNDN);
        } else {
          const Complex& a = pw[static_cast<size_t>(pf)];
          const Complex& b = pw[static_cast<size_t>(n / pf)];
          mpfr_fmms(v.re.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
          mpfr_fmma(v.im.raw(), a.re.raw(), b.im.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
        }
      }
      Complex& acc = cls[static_cast<size_t>((n - 1) % q)];
      mpfr_add(acc.re.raw(), acc.re.raw(), v.re.raw(), MPFR_RNDN);
      mpfr_add(acc.im.raw(), acc.im.raw(), v.im.raw(), MPFR_RNDN);
    }
  }
  Complex total(wp);
  for (int m = 1; m <= q; ++m) {
    if (c[m - 1].re.is_zero() && c[m - 1].im.is_zero()) continue;
    total += c[m - 1].at(wp) * cls[static_cast<size_t>(m - 1)];
  }

  // Tail sum_{j >= N} (j + m/q)^{-s}, scaled by q^{-s} c(m).
  Complex sum_c(wp);
  for (const auto& v : c) sum_c += v.at(wp);
  const bool sum_zero = abs(sum_c) < ldexp_bits(Real(1L, wp), -static_cast<long>(wp.bits) / 2);
  if (at_one && !sum_zero) throw PoleError("L-series pole at s = 1");

  Complex qs = exp(-(sw * log_ui(static_cast<unsigned long>(q), wp)));
  Complex sm1 = sw - Real(1L, wp);
  std::vector<Real> bk;
  bk.reserve(static_cast<size_t>(plan.m));
  for (int k = 1; k <= plan.m; ++k) bk.push_back(bernoulli_scaled(k, wp));
  for (int m = 1; m <= q; ++m) {
    const Complex& cm = c[m - 1];
    if (cm.re.is_zero() && cm.im.is_zero()) continue;
    Real x = Real(static_cast<long>(m), wp) / static_cast<long>(q) + Real(plan.n, wp);
    Real lx = log(x);
    Complex xs = exp(-(sw * lx));  // x^{-s}
    Complex tail = xs / 2L;
    if (at_one) {
      // The 1/(s-1) parts cancel across classes; keep the finite remainder.
      tail.re -= lx + log_ui(static_cast<unsigned long>(q), wp);
    } else {
      tail += xs * x / sm1;
    }
    Complex poch = sw;
    Real x2inv = 1L / sqr(x);
    Complex xp = xs / x;
    for (int k = 1; k <= plan.m; ++k) {
      tail += poch * xp * bk[static_cast<size_t>(k - 1)];
      Complex a = sw, b = sw;
      a.re += static_cast<long>(2 * k - 1);
      b.re += static_cast<long>(2 * k);
      poch *= a;
      poch *= b;
      xp *= x2inv;
    }
    if (at_one) {
      // q^{-s} = 1/q here; its log q part went into the tail above.
      Complex contrib = cm.at(wp) * tail;
      contrib /= Real(static_cast<long>(q), wp);
      total += contrib;
    } else {
      total += cm.at(wp) * qs * tail;
    }
  }
  return total.at(p);
}

Complex eval_zeta(const Complex& s) {
  const Complex one[1] = {Complex(1.0, 0.0, s.precision())};
  return periodic_dirichlet_series(std::span<const Complex>(one, 1), s);
}

Complex eval_dirichlet_l(const DirichletCharacter& chi, const Complex& s) {
  const Precision cp = s.precision().plus_bits(64);
  std::vector<Complex> c;
  c.reserve(static_cast<size_t>(chi.modulus()));
  for (int64_t m = 1; m <= chi.modulus(); ++m) c.push_back(chi.value(m, cp));
  return periodic_dirichlet_series(c, s);
}

Real davenport_heilbronn_kappa(Precision p) {
  const Precision wp = p.plus_bits(16);
  Real r5 = sqrt(Real(5L, wp));
  Real k = (sqrt(10L - r5 * 2L) - 2L) / (r5 - 1L);
  return k.at(p);
}

const DirichletCharacter& chi_5_2() {
  static const DirichletCharacter chi = DirichletCharacter::build(5, 2);
  return chi;
}

Complex eval_davenport_heilbronn(const Complex& s) {
  const Precision cp = s.precision().plus_bits(64);
  const DirichletCharacter& chi = chi_5_2();
  Real kappa = davenport_heilbronn_kappa(cp);
  Complex w1(Real(0.5, cp), -kappa / 2L);  // (1 - i kappa)/2
  Complex w2(Real(0.5, cp), kappa / 2L);
  std::vector<Complex> c;
  for (int64_t m = 1; m <= 5; ++m) {
    Complex v = chi.value(m, cp);
    c.push_back(w1 * v + w2 * conj(v));
  }
  return periodic_dirichlet_series(c, s);
}

ModularForm ModularForm::ramanujan_delta(int64_t n_max) {
  TauTable tau(n_max);
  auto v = std::make_shared<std::vector<mpz_class>>();
  v->reserve(static_cast<size_t>(n_max));
  for (int64_t n = 1; n <= n_max; ++n) v->push_back(tau.mpz(n));
  ModularForm f;
  f.weight = 12;
  f.name = "ramanujan";
  f.coeffs = std::move(v);
  return f;
}

namespace {

struct ModularPlan {
  int64_t cutoff;
  Precision wp;
  double log2_eps_lambda;
};

double log_gamma_bound(double re_a, double x) {
  // log of an upper bound for |Gamma(a, x)| with Re a = re_a.
  if (re_a <= 1.0) return (re_a - 1.0) * std::log(x) - x;
  const double r = (re_a - 1.0) / x;
  if (r >= 0.9) return (re_a - 1.0) * std::log(x) - x + std::log(10.0) + 0.5 * std::log(re_a);
  return (re_a - 1.0) * std::log(x) - x - std::log(1.0 - r);
}

ModularPlan plan_modular(const ModularForm& f, const Complex& s) {
  const int k = f.weight;
  const Precision p = s.precision();
  const double sr = s.re.to_double();
  Complex s64 = s.at(Precision{64});
  const double lg = log_gamma(s64).re.to_double();
  const double l2pi = std::log(2.0 * kPi);
  // Absolute accuracy wanted on Lambda so that L is good to 2^-p.
  const double leps = -static_cast<double>(p.bits) * kLn2 + lg - sr * l2pi;
  auto term_bound = [&](int64_t n, double lcoef) {
    const double x = 2.0 * kPi * static_cast<double>(n);
    const double a = -sr * std::log(x) + log_gamma_bound(sr, x);
    const double b = (sr - k) * std::log(x) + log_gamma_bound(k - sr, x);
    return lcoef + std::max(a, b) + kLn2;
  };
  auto coef_bound = [&](int64_t n) {
    // |a(n)| <= d(n) n^{(k-1)/2} <= 2 sqrt(n) n^{(k-1)/2}
    return std::log(2.0) + (0.5 * k) * std::log(static_cast<double>(n));
  };
  double lmax = -std::numeric_limits<double>::infinity();
  int64_t n = 1;
  for (;; ++n) {
    const double tb = term_bound(n, coef_bound(n));
    lmax = std::max(lmax, tb);
    // Geometric tail with ratio about e^{-2 pi}.
    const double tail = term_bound(n + 1, coef_bound(n + 1)) - std::log(1.0 - std::exp(-2.0 * kPi + 0.1));
    if (tail < leps - 8.0 * kLn2) break;
    if (n > 10000000) throw CutoffInsufficient("modular L: cutoff search diverged");
  }
  const double extra = (lmax - leps) / kLn2 + std::log2(static_cast<double>(n) + 1.0) + 24.0;
  const long bits = std::max(static_cast<long>(p.bits) + 24, static_cast<long>(extra));
  return ModularPlan{n, Precision::from_bits(bits), leps / kLn2};
}

}  // namespace

int64_t modular_cutoff(const ModularForm& f, const Complex& s) { return plan_modular(f, s).cutoff; }

Complex eval_modular_lambda(const ModularForm& f, const Complex& s) {
  const ModularPlan plan = plan_modular(f, s);
  if (plan.cutoff > f.available()) {
    throw CutoffInsufficient("modular L needs " + std::to_string(plan.cutoff) + " coefficients, " +
                             std::to_string(f.available()) + " available");
  }
  const Precision wp = plan.wp;
  const int k = f.weight;
  Complex sw = s.at(wp);
  Complex ks = Complex(Real(static_cast<long>(k), wp), Real(wp)) - sw;  // k - s
  // Gamma(a, x) is entire in a; at a pole of Gamma(a) only the continued
  // fraction applies (x = 2 pi n exceeds |a| there for the integer weights used).
  auto full_gamma = [](const Complex& a) -> std::optional<Complex> {
    try {
      return gamma(a);
    } catch (const PoleError&) {
      return std::nullopt;
    }
  };
  const std::optional<Complex> gs = full_gamma(sw);
  const std::optional<Complex> gks = full_gamma(ks);
  auto upper = [](const Complex& a, const Real& x, const std::optional<Complex>& ga) {
    return ga ? upper_incomplete_gamma(a, x, *ga) : upper_incomplete_gamma_cf(a, x);
  };
  const long eps = (k / 2) % 2 == 0 ? 1 : -1;
  Real two_pi = pi(wp) * 2L;
  Complex sum(wp);
  for (int64_t n = 1; n <= plan.cutoff; ++n) {
    const mpz_class& a = (*f.coeffs)[static_cast<size_t>(n - 1)];
    if (a == 0) continue;
    Real x = two_pi * static_cast<long>(n);
    Real lx = log(x);
    Complex u1 = exp(-(sw * lx)) * upper(sw, x, gs);
    Complex u2 = exp(-(ks * lx)) * upper(ks, x, gks);
    u2 *= eps;
    Real ar(wp);
    mpfr_set_z(ar.raw(), a.get_mpz_t(), MPFR_RNDN);
    sum += (u1 + u2) * ar;
  }
  return sum.at(s.precision());
}

Complex eval_modular_l(const ModularForm& f, const Complex& s) {
  const ModularPlan plan = plan_modular(f, s);
  const Precision wp = plan.wp;
  Complex sw = s.at(wp);
  Complex lam = eval_modular_lambda(f, sw);
  Complex factor = exp(sw * log(pi(wp) * 2L) - log_gamma(sw));
  return (lam * factor).at(s.precision());
}

LFunctionFamily LFunctionFamily::dirichlet(DirichletCharacter chi) {
  if (!chi.primitive()) throw InvalidCharacter("Dirichlet family requires a primitive character");
  return LFunctionFamily{DirichletFamily{std::make_shared<const DirichletCharacter>(std::move(chi))}};
}

LFunctionFamily LFunctionFamily::ramanujan(int64_t n_coeffs) {
  return LFunctionFamily{ModularFamily{ModularForm::ramanujan_delta(n_coeffs)}};
}

std::string LFunctionFamily::id() const {
  std::string base;
  if (std::holds_alternative<ZetaFamily>(kind)) {
    base = "zeta";
  } else if (const auto* d = std::get_if<DirichletFamily>(&kind)) {
    const DirichletCharacter& chi = *d->chi;
    int64_t j = chi.index();
    if (j == 0 && chi.modulus() <= 1000) {
      for (int64_t cand = 1; cand <= euler_phi(chi.modulus()); ++cand) {
        if (DirichletCharacter::build(chi.modulus(), cand) == chi) {
          j = cand;
          break;
        }
      }
    }
    base = "dirichlet:" + std::to_string(chi.modulus()) + ":" + (j > 0 ? std::to_string(j) : std::string("custom"));
  } else if (const auto* m = std::get_if<ModularFamily>(&kind)) {
    base = m->form.name;
  } else {
    base = "dh";
  }
  if (label_offset != 0) base += "@" + std::to_string(label_offset);
  return base;
}

double LFunctionFamily::critical_sigma() const {
  if (const auto* m = std::get_if<ModularFamily>(&kind)) return 0.5 * m->form.weight;
  return 0.5;
}

Real LFunctionFamily::critical_sigma(Precision p) const { return Real(critical_sigma(), p); }

Complex evaluate(const LFunctionFamily& fam, const Complex& s) {
  if (std::holds_alternative<ZetaFamily>(fam.kind)) return eval_zeta(s);
  if (const auto* d = std::get_if<DirichletFamily>(&fam.kind)) return eval_dirichlet_l(*d->chi, s);
  if (const auto* m = std::get_if<ModularFamily>(&fam.kind)) return eval_modular_l(m->form, s);
  return eval_davenport_heilbronn(s);
}

}  // namespace lzeros
