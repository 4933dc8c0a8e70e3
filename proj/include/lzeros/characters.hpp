// Dirichlet characters with exactly stored root-of-unity values.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lzeros/errors.hpp"
#include "lzeros/mp.hpp"

namespace lzeros {

/// e(num/den) = exp(2 pi i num/den), stored reduced with 0 <= num < den.
struct RootOfUnity {
  int64_t num = 0;
  int64_t den = 1;

  static RootOfUnity make(int64_t num, int64_t den);
  RootOfUnity operator*(const RootOfUnity& o) const { return make(num * o.den + o.num * den, den * o.den); }
  RootOfUnity conj() const { return make(-num, den); }
  bool is_one() const { return num == 0; }
  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
  Complex value(Precision p) const;
  std::string str() const;
};

/// A value-table entry: nullopt stands for 0.
using CharValue = std::optional<RootOfUnity>;

class DirichletCharacter {
 public:
  /// Character (k, j), 1 <= j <= phi(k).  Indexing: for each prime power
  /// component of k, in increasing prime order, take its generators (the
  /// least primitive root for odd p; -1 then 5 for 2^e, e >= 3; -1 for 4).
  /// j - 1 written in mixed radix over the generator orders, least
  /// significant digit first, gives the exponent e_i and chi(g_i) =
  /// e(e_i / ord(g_i)).  For prime k this is chi(g) = e((j-1)/(k-1)).
  static DirichletCharacter build(int64_t k, int64_t j);
  /// values[n] for n = 0..k-1.  Throws InvalidCharacter on an axiom violation.
  static DirichletCharacter from_values(int64_t k, std::vector<CharValue> values);
  /// Parses lines `n,value` with value `e(p/q)`, `0`, `1` or `-1`.
  /// Residues not listed are 0.  Lines starting with '#' are skipped.
  static DirichletCharacter parse(int64_t k, std::istream& in);

  int64_t modulus() const { return k_; }
  /// The j it was built from, or 0 if built from values.
  int64_t index() const { return j_; }
  int order_a() const { return a_; }
  bool primitive() const { return conductor_ == k_; }
  int64_t conductor() const { return conductor_; }
  const CharValue& at(int64_t n) const;
  Complex value(int64_t n, Precision p) const;
  DirichletCharacter conjugate() const;
  /// Writes the table in the `n,value` format.
  void write(std::ostream& out) const;
  /// Gauss sum sum_{m=1}^{k} chi(m) e(m/k).
  Complex gauss_sum(Precision p) const;
  bool operator==(const DirichletCharacter& o) const { return k_ == o.k_ && values_ == o.values_; }

 private:
  DirichletCharacter() = default;
  void validate_and_classify();

  int64_t k_ = 1;
  int64_t j_ = 0;
  int a_ = 0;
  int64_t conductor_ = 1;
  std::vector<CharValue> values_;
};

int64_t euler_phi(int64_t n);
int64_t gcd64(int64_t a, int64_t b);

}  // namespace lzeros
