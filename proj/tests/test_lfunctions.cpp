#include <random>
#include <sstream>

#include "doctest.h"
#include "lzeros/lfunctions.hpp"
#include "lzeros/specialfn.hpp"
#include "oracles.hpp"

using namespace lzeros;

namespace {

const Precision P60 = Precision::from_digits(60);
const Precision P40 = Precision::from_digits(40);

double lg(const Complex& z) { return abs(z).log10_abs(); }

Complex on_line(double sigma, const char* t, Precision p) { return Complex(Real(sigma, p), Real(t, p)); }

}  // namespace

TEST_CASE("characters mod 7 and mod 5 match their value tables") {
  auto c72 = DirichletCharacter::build(7, 2);
  CHECK(*c72.at(2) == RootOfUnity::make(1, 3));
  CHECK(*c72.at(3) == RootOfUnity::make(1, 6));
  CHECK(*c72.at(4) == RootOfUnity::make(-1, 3));
  CHECK(*c72.at(5) == RootOfUnity::make(-1, 6));
  CHECK(*c72.at(6) == RootOfUnity::make(1, 2));
  CHECK(!c72.at(7).has_value());
  CHECK(c72.order_a() == 1);
  CHECK(c72.primitive());

  auto c73 = DirichletCharacter::build(7, 3);
  CHECK(*c73.at(2) == RootOfUnity::make(-1, 3));
  CHECK(*c73.at(3) == RootOfUnity::make(1, 3));
  CHECK(*c73.at(4) == RootOfUnity::make(1, 3));
  CHECK(*c73.at(5) == RootOfUnity::make(-1, 3));
  CHECK(c73.at(6)->is_one());
  CHECK(c73.order_a() == 0);

  auto c52 = DirichletCharacter::build(5, 2);
  CHECK(*c52.at(2) == RootOfUnity::make(1, 4));
  CHECK(*c52.at(4) == RootOfUnity::make(1, 2));
  CHECK(c52.order_a() == 1);

  CHECK_THROWS_AS(DirichletCharacter::build(7, 7), InvalidCharacter);
  CHECK_THROWS_AS(DirichletCharacter::build(7, 0), InvalidCharacter);
}

TEST_CASE("character axioms hold for generated characters") {
  for (int64_t k : {1, 3, 4, 8, 9, 12, 15, 16, 20, 21}) {
    const int64_t phi = euler_phi(k);
    std::vector<DirichletCharacter> all;
    for (int64_t j = 1; j <= phi; ++j) {
      auto c = DirichletCharacter::build(k, j);
      for (int64_t n = 0; n < 2 * k; ++n) {
        CHECK(c.at(n) == c.at(n + k));
        CHECK(c.at(n).has_value() == (gcd64(n, k) == 1));
      }
      for (const auto& prev : all) CHECK(!(prev == c));
      all.push_back(c);
      if (c.primitive()) {
        Complex g = c.gauss_sum(P40);
        CHECK(abs(norm(g) - static_cast<long>(k)).log10_abs() < -35);
      }
    }
  }
}

TEST_CASE("character table parsing and validation") {
  std::istringstream in("# chi_{7,2}\n1,1\n2,e(1/3)\n3,e(1/6)\n4,e(2/3)\n5,e(5/6)\n6,-1\n7,0\n");
  auto c = DirichletCharacter::parse(7, in);
  CHECK(c == DirichletCharacter::build(7, 2));
  std::ostringstream out;
  c.write(out);
  std::istringstream back(out.str());
  CHECK(DirichletCharacter::parse(7, back) == c);

  std::istringstream bad("1,1\n2,e(1/3)\n3,e(1/6)\n4,e(2/3)\n5,e(5/6)\n6,1\n");
  CHECK_THROWS_AS(DirichletCharacter::parse(7, bad), InvalidCharacter);
  std::istringstream zero_unit("1,1\n2,0\n3,1\n4,1\n5,1\n6,1\n");
  CHECK_THROWS_AS(DirichletCharacter::parse(7, zero_unit), InvalidCharacter);
  std::istringstream garbage("1,1\n2,e(1/x)\n");
  CHECK_THROWS_AS(DirichletCharacter::parse(7, garbage), InvalidCharacter);
}

TEST_CASE("Gauss sums") {
  auto trivial = DirichletCharacter::build(1, 1);
  CHECK(lg(trivial.gauss_sum(P40) - Complex(1.0, 0.0, P40)) < -38);

  auto c72 = DirichletCharacter::build(7, 2);
  CHECK(abs(norm(c72.gauss_sum(P60)) - 7L).log10_abs() < -(60 - 5));

  // Direct five-term sum with i^j and cos/sin of 2 pi m / 5.
  const Precision hp = Precision::from_digits(80);
  const int powers_of_i[5] = {0, 0, 1, 3, 2};  // chi(m) = i^{powers[m]}, m = 1..4
  Complex direct(hp);
  for (int m = 1; m <= 4; ++m) {
    Real ang = pi(hp) * static_cast<long>(2 * m) / 5L;
    Complex e(cos(ang), sin(ang));
    Complex chi_m(1.0, 0.0, hp);
    for (int r = 0; r < powers_of_i[m]; ++r) chi_m = Complex(-chi_m.im, chi_m.re);
    direct += chi_m * e;
  }
  CHECK(lg(DirichletCharacter::build(5, 2).gauss_sum(P60) - direct.at(P60)) < -58);
}

TEST_CASE("zeta values") {
  Complex z2 = eval_zeta(Complex(2.0, 0.0, P60));
  CHECK(lg(z2 - Complex(sqr(pi(P60)) / 6L)) < -58);
  CHECK(lg(eval_zeta(on_line(0.5, oracle::zeta_zeros_60()[0].c_str(), P60))) < -40);
  CHECK_THROWS_AS(eval_zeta(Complex(1.0, 0.0, P40)), PoleError);

  // arg zeta just to the right of the first zero.
  Complex s = on_line(0.5 + 1e-6, oracle::zeta_zeros_60()[0].c_str(), P40);
  CHECK(arg(eval_zeta(s)).to_double() == doctest::Approx(0.157873919880941213041945).epsilon(1e-5));
}

TEST_CASE("Dirichlet L values") {
  auto c72 = DirichletCharacter::build(7, 2);
  CHECK(lg(eval_dirichlet_l(c72, on_line(0.5, "5.19811619946654558608428407430395403442607551643259", P60))) < -45);

  auto trivial = DirichletCharacter::build(1, 1);
  Complex s2(2.0, 0.0, P40);
  CHECK(lg(eval_dirichlet_l(trivial, s2) - eval_zeta(s2)) < -38);

  // Character mod 14 induced by chi_{7,2}.
  std::vector<CharValue> vals(14);
  for (int n = 0; n < 14; ++n) {
    if (n % 2 != 0 && n % 7 != 0) vals[n] = c72.at(n);
  }
  auto induced = DirichletCharacter::from_values(14, vals);
  CHECK(!induced.primitive());
  CHECK(induced.conductor() == 7);
  Complex s(0.7, 3.0, P40);
  Complex lhs = eval_dirichlet_l(induced, s);
  Complex euler = Complex(1.0, 0.0, P40) - c72.value(2, P40) * exp(-(s * log(Real(2L, P40))));
  Complex rhs = eval_dirichlet_l(c72, s) * euler;
  CHECK(lg(lhs - rhs) < -37);
  CHECK_THROWS_AS(LFunctionFamily::dirichlet(induced), InvalidCharacter);

  // Conjugation symmetry.
  Complex w(0.3, -4.5, P40);
  CHECK(lg(eval_dirichlet_l(c72.conjugate(), conj(w)) - conj(eval_dirichlet_l(c72, w))) < -37);
}

TEST_CASE("completed L-functions are symmetric") {
  const Precision p = P40;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> us(0.05, 0.95), ut(-40.0, 40.0);
  for (int i = 0; i < 5; ++i) {
    Complex s(us(rng), ut(rng), p);
    Complex a = oracle::completed_zeta(s), b = oracle::completed_zeta(oracle::one_minus(s));
    CHECK(lg(a - b) - lg(a) < -(40 - 8));
    for (int j : {2, 3}) {
      auto chi = DirichletCharacter::build(7, j);
      Complex l = oracle::completed_dirichlet(chi, s);
      Complex r = oracle::root_number(chi, p) * oracle::completed_dirichlet(chi.conjugate(), oracle::one_minus(s));
      CHECK(lg(l - r) - lg(l) < -(40 - 8));
    }
  }
}

TEST_CASE("xi(1/2, chi) is real") {
  for (int j : {2, 3}) {
    auto chi = DirichletCharacter::build(7, j);
    Complex l = eval_dirichlet_l(chi, Complex(0.5, 0.0, P40));
    Real phase = arg(l) - arg(chi.gauss_sum(P40)) / 2L + pi(P40) * static_cast<long>(chi.order_a()) / 4L;
    Real r = phase / pi(P40);
    Real frac = abs(r - floor(r + Real(0.5, P40)));
    CHECK(frac.log10_abs() < -35);
  }
}

TEST_CASE("Ramanujan tau") {
  TauTable tau(10000);
  const long want[8] = {1, -24, 252, -1472, 4830, -6048, -16744, 84480};
  for (int n = 1; n <= 8; ++n) CHECK(tau(n) == want[n - 1]);
  CHECK(tau(6) == tau(2) * tau(3));
  int checked = 0;
  for (int64_t m = 2; m <= 100; ++m) {
    for (int64_t n = m + 1; m * n <= 10000; ++n) {
      if (gcd64(m, n) != 1) continue;
      CHECK(tau.mpz(m * n) == tau.mpz(m) * tau.mpz(n));
      ++checked;
    }
  }
  CHECK(checked > 1000);
  // Hecke relation at a prime square: tau(p^2) = tau(p)^2 - p^11.
  mpz_class p11;
  mpz_ui_pow_ui(p11.get_mpz_t(), 7, 11);
  CHECK(tau.mpz(49) == tau.mpz(7) * tau.mpz(7) - p11);
}

TEST_CASE("Ramanujan L-function") {
  const ModularForm delta = ModularForm::ramanujan_delta(1000);
  CHECK(lg(eval_modular_l(delta, on_line(6.0, "9.22237939992110252224376719274347813552877062243201", P60))) < -45);

  Complex s(5.0, 3.0, P60);
  Complex a = eval_modular_lambda(delta, s);
  Complex b = eval_modular_lambda(delta, Complex(Real(12L, P60) - s.re, -s.im));
  CHECK(lg(a - b) - lg(a) < -(60 - 8));

  // Absolutely convergent region: partial sum up to 50 with tail bound
  // sum_{n>50} 2 n^{6} n^{-14} < 2 * 50^{-7} / 7.
  Complex l14 = eval_modular_l(delta, Complex(14.0, 0.0, P40));
  Real direct(P40);
  TauTable tau(50);
  for (int n = 1; n <= 50; ++n) {
    Real tn(P40);
    mpfr_set_z(tn.raw(), tau.mpz(n).get_mpz_t(), MPFR_RNDN);
    direct += tn / pow(Real(static_cast<long>(n), P40), Real(14L, P40));
  }
  CHECK(abs(l14.re - direct).to_double() < 2.0 * std::pow(50.0, -7.0) / 7.0);
  CHECK(abs(l14.im).log10_abs() < -35);

  const ModularForm tiny = ModularForm::ramanujan_delta(10);
  CHECK_THROWS_AS(eval_modular_l(tiny, Complex(6.0, 100.0, P40)), CutoffInsufficient);
}

TEST_CASE("Davenport-Heilbronn function") {
  Real kappa = davenport_heilbronn_kappa(P40);
  CHECK(kappa.to_double() == doctest::Approx(0.2840790438404122).epsilon(1e-12));

  Complex s(0.3, 7.0, P40);
  Complex a = oracle::completed_dh(s), b = oracle::completed_dh(oracle::one_minus(s));
  CHECK(lg(a - b) - lg(a) < -(40 - 8));
  CHECK(abs(oracle::completed_dh(Complex(0.5, 10.0, P40)).im).log10_abs() < -35);

  const Precision p = Precision::from_digits(20);
  const double c_re = 0.8085, c_im = 85.6993;
  const double centre = abs(eval_davenport_heilbronn(Complex(c_re, c_im, p))).to_double();
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      if (i == 0 && j == 0) continue;
      const double v = abs(eval_davenport_heilbronn(Complex(c_re + 1e-3 * i, c_im + 1e-3 * j, p))).to_double();
      CHECK(centre < v);
    }
  }
  CHECK(centre < 1e-3);
}

TEST_CASE("family metadata") {
  CHECK(LFunctionFamily::zeta().id() == "zeta");
  CHECK(LFunctionFamily::dirichlet(DirichletCharacter::build(7, 3)).id() == "dirichlet:7:3");
  std::vector<CharValue> v(7);
  auto c = DirichletCharacter::build(7, 2);
  for (int n = 0; n < 7; ++n) v[n] = c.at(n);
  CHECK(LFunctionFamily::dirichlet(DirichletCharacter::from_values(7, v)).id() == "dirichlet:7:2");
  CHECK(LFunctionFamily::davenport_heilbronn().id() == "dh");
  CHECK(LFunctionFamily::ramanujan(100).critical_sigma() == 6.0);
}
