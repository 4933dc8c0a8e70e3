// Evaluators for zeta, Dirichlet L, level-one modular L and the
// Davenport-Heilbronn function at arbitrary points.
#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lzeros/characters.hpp"
#include "lzeros/errors.hpp"
#include "lzeros/mp.hpp"
#include "lzeros/tau.hpp"

namespace lzeros {

/// sum_{n>=1} c(n) n^{-s} for c periodic mod q, c[m-1] = c(m), continued
/// analytically by Euler-Maclaurin on each residue class.  Accurate to
/// about 2^-bits(s) in absolute terms for |result| of order one.
/// Throws PoleError at s = 1 when sum c(m) != 0.
Complex periodic_dirichlet_series(std::span<const Complex> c, const Complex& s);

Complex eval_zeta(const Complex& s);
/// Any character; non-primitive characters give the Euler-factor-modified L.
Complex eval_dirichlet_l(const DirichletCharacter& chi, const Complex& s);

/// (sqrt(10 - 2 sqrt 5) - 2) / (sqrt 5 - 1).
Real davenport_heilbronn_kappa(Precision p);
/// (1 - i kappa)/2 L(s, chi_{5,2}) + (1 + i kappa)/2 L(s, conj chi_{5,2}).
Complex eval_davenport_heilbronn(const Complex& s);
const DirichletCharacter& chi_5_2();

/// Level-one cusp form of even weight with integer coefficients a(1..N).
struct ModularForm {
  int weight = 12;
  std::string name = "ramanujan";
  std::shared_ptr<const std::vector<mpz_class>> coeffs;  // coeffs[n-1] = a(n)

  /// Delta with tau(1..n_max).
  static ModularForm ramanujan_delta(int64_t n_max = 4000);
  int64_t available() const { return coeffs ? static_cast<int64_t>(coeffs->size()) : 0; }
};

/// L_f(s) from the incomplete-Gamma form of Lambda_f(s) = (2 pi)^{-s} Gamma(s) L_f(s).
/// Throws CutoffInsufficient if more coefficients are needed than stored.
Complex eval_modular_l(const ModularForm& f, const Complex& s);
/// Lambda_f(s) itself.
Complex eval_modular_lambda(const ModularForm& f, const Complex& s);
/// Number of coefficients the evaluator will use at s.
int64_t modular_cutoff(const ModularForm& f, const Complex& s);

struct ZetaFamily {};
struct DirichletFamily {
  std::shared_ptr<const DirichletCharacter> chi;
};
struct ModularFamily {
  ModularForm form;
};
struct DavenportHeilbronnFamily {};

/// One of the supported L-functions together with its label offset n0.
struct LFunctionFamily {
  std::variant<ZetaFamily, DirichletFamily, ModularFamily, DavenportHeilbronnFamily> kind;
  int label_offset = 0;

  static LFunctionFamily zeta() { return {ZetaFamily{}}; }
  /// Throws InvalidCharacter for an imprimitive character.
  static LFunctionFamily dirichlet(DirichletCharacter chi);
  static LFunctionFamily ramanujan(int64_t n_coeffs = 4000);
  static LFunctionFamily davenport_heilbronn() { return {DavenportHeilbronnFamily{}}; }

  /// Stable identifier, e.g. "zeta", "dirichlet:7:2", "ramanujan", "dh".
  std::string id() const;
  /// Re(s) of the critical line: 1/2, or k/2 for weight k.
  Real critical_sigma(Precision p) const;
  double critical_sigma() const;
  bool is_dirichlet() const { return std::holds_alternative<DirichletFamily>(kind); }
  bool is_modular() const { return std::holds_alternative<ModularFamily>(kind); }
};

Complex evaluate(const LFunctionFamily& fam, const Complex& s);

}  // namespace lzeros
