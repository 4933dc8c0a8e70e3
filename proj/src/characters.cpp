#include "lzeros/characters.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace lzeros {

int64_t gcd64(int64_t a, int64_t b) { return std::gcd(a, b); }

namespace {

std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
  std::vector<std::pair<int64_t, int>> f;
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

int64_t powmod(int64_t b, int64_t e, int64_t m) {
  __int128 r = 1 % m, x = b % m;
  while (e > 0) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<int64_t>(r);
}

// One cyclic factor of (Z/p^e)^*: generator order plus a discrete-log table
// indexed by residue mod pe (-1 for non-units).
struct Generator {
  int64_t pe;
  int64_t order;
  std::vector<int64_t> log;
};

std::vector<Generator> component_generators(int64_t p, int e) {
  int64_t pe = 1;
  for (int i = 0; i < e; ++i) pe *= p;
  std::vector<Generator> gens;
  if (p == 2) {
    if (e == 1) return gens;
    if (e == 2) {
      Generator g{4, 2, std::vector<int64_t>(4, -1)};
      g.log[1] = 0;
      g.log[3] = 1;
      gens.push_back(std::move(g));
      return gens;
    }
    const int64_t ord5 = pe / 4;
    Generator minus{pe, 2, std::vector<int64_t>(pe, -1)};
    Generator five{pe, ord5, std::vector<int64_t>(pe, -1)};
    int64_t x = 1;
    for (int64_t b = 0; b < ord5; ++b) {
      minus.log[x] = 0;
      five.log[x] = b;
      minus.log[pe - x] = 1;
      five.log[pe - x] = b;
      x = x * 5 % pe;
    }
    gens.push_back(std::move(minus));
    gens.push_back(std::move(five));
    return gens;
  }
  const int64_t phi = pe / p * (p - 1);
  auto qs = factorize(phi);
  int64_t g = 2;
  for (;; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (auto [q, _] : qs) {
      if (powmod(g, phi / q, pe) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) break;
  }
  Generator gen{pe, phi, std::vector<int64_t>(pe, -1)};
  int64_t x = 1;
  for (int64_t i = 0; i < phi; ++i) {
    gen.log[x] = i;
    x = x * g % pe;
  }
  gens.push_back(std::move(gen));
  return gens;
}

}  // namespace

int64_t euler_phi(int64_t n) {
  int64_t r = n;
  for (auto [p, _] : factorize(n)) r = r / p * (p - 1);
  return r;
}

RootOfUnity RootOfUnity::make(int64_t num, int64_t den) {
  if (den <= 0) throw InvalidCharacter("root of unity needs a positive denominator");
  const int64_t g = std::gcd(num < 0 ? -num : num, den);
  num /= g;
  den /= g;
  num %= den;
  if (num < 0) num += den;
  return RootOfUnity{num, den};
}

Complex RootOfUnity::value(Precision p) const {
  if (num == 0) return Complex(1.0, 0.0, p);
  if (den == 2) return Complex(-1.0, 0.0, p);
  if (den == 4) return Complex(0.0, num == 1 ? 1.0 : -1.0, p);
  const Precision wp = p.plus_bits(8);
  Real ang = pi(wp) * (2 * num) / den;
  return expi(ang).at(p);
}

std::string RootOfUnity::str() const {
  if (num == 0) return "1";
  if (den == 2) return "-1";
  return "e(" + std::to_string(num) + "/" + std::to_string(den) + ")";
}

DirichletCharacter DirichletCharacter::build(int64_t k, int64_t j) {
  if (k < 1) throw InvalidCharacter("modulus must be positive");
  const int64_t phi = euler_phi(k);
  if (j < 1 || j > phi) throw InvalidCharacter("character index out of range 1..phi(k)");
  std::vector<Generator> gens;
  for (auto [p, e] : factorize(k)) {
    auto g = component_generators(p, e);
    for (auto& x : g) gens.push_back(std::move(x));
  }
  std::vector<int64_t> digit(gens.size());
  int64_t rest = j - 1;
  for (size_t i = 0; i < gens.size(); ++i) {
    digit[i] = rest % gens[i].order;
    rest /= gens[i].order;
  }
  std::vector<CharValue> values(static_cast<size_t>(k));
  for (int64_t n = 0; n < k; ++n) {
    if (std::gcd(n, k) != 1) continue;
    RootOfUnity v;
    for (size_t i = 0; i < gens.size(); ++i) {
      const int64_t l = gens[i].log[static_cast<size_t>(n % gens[i].pe)];
      v = v * RootOfUnity::make(digit[i] * l, gens[i].order);
    }
    values[static_cast<size_t>(n)] = v;
  }
  DirichletCharacter c = from_values(k, std::move(values));
  c.j_ = j;
  return c;
}

DirichletCharacter DirichletCharacter::from_values(int64_t k, std::vector<CharValue> values) {
  if (k < 1) throw InvalidCharacter("modulus must be positive");
  if (static_cast<int64_t>(values.size()) != k) throw InvalidCharacter("value table must have k entries");
  DirichletCharacter c;
  c.k_ = k;
  c.values_ = std::move(values);
  c.validate_and_classify();
  return c;
}

void DirichletCharacter::validate_and_classify() {
  const int64_t k = k_;
  const int64_t phi = euler_phi(k);
  std::vector<int64_t> units;
  for (int64_t n = 0; n < k; ++n) {
    const bool unit = std::gcd(n, k) == 1;
    const CharValue& v = values_[static_cast<size_t>(n)];
    if (unit != v.has_value()) {
      throw InvalidCharacter("chi(" + std::to_string(n) + ") must vanish exactly when gcd(n,k) > 1");
    }
    if (unit) {
      if ((v->num * phi) % v->den != 0) {
        throw InvalidCharacter("chi(" + std::to_string(n) + ")^phi(k) != 1");
      }
      units.push_back(n);
    }
  }
  if (!values_[static_cast<size_t>(1 % k)]->is_one()) throw InvalidCharacter("chi(1) must be 1");
  // Complete multiplicativity on units; for large moduli check against small multipliers only.
  const size_t nb = units.size() <= 2000 ? units.size() : std::min<size_t>(units.size(), 64);
  for (int64_t a : units) {
    for (size_t ib = 0; ib < nb; ++ib) {
      const int64_t b = units[ib];
      const CharValue& ab = values_[static_cast<size_t>(a * b % k)];
      if (!(*values_[static_cast<size_t>(a)] * *values_[static_cast<size_t>(b)] == *ab)) {
        throw InvalidCharacter("chi is not multiplicative at (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
  }
  const RootOfUnity& m1 = *values_[static_cast<size_t>((k - 1) % k)];
  if (m1.is_one()) {
    a_ = 0;
  } else if (m1.den == 2) {
    a_ = 1;
  } else {
    throw InvalidCharacter("chi(-1) must be +1 or -1");
  }
  conductor_ = k;
  for (int64_t d = 1; d < k; ++d) {
    if (k % d != 0) continue;
    bool induced = true;
    for (int64_t n : units) {
      if (n % d == 1 % d && !values_[static_cast<size_t>(n)]->is_one()) {
        induced = false;
        break;
      }
    }
    if (induced) {
      conductor_ = d;
      break;
    }
  }
}

const CharValue& DirichletCharacter::at(int64_t n) const {
  int64_t r = n % k_;
  if (r < 0) r += k_;
  return values_[static_cast<size_t>(r)];
}

Complex DirichletCharacter::value(int64_t n, Precision p) const {
  const CharValue& v = at(n);
  if (!v) return Complex(p);
  return v->value(p);
}

DirichletCharacter DirichletCharacter::conjugate() const {
  DirichletCharacter c = *this;
  for (auto& v : c.values_) {
    if (v) v = v->conj();
  }
  c.j_ = 0;
  return c;
}

Complex DirichletCharacter::gauss_sum(Precision p) const {
  const Precision wp = p.plus_bits(16);
  Complex g(wp);
  for (int64_t m = 1; m <= k_; ++m) {
    const CharValue& v = at(m);
    if (!v) continue;
    g += (*v * RootOfUnity::make(m, k_)).value(wp);
  }
  return g.at(p);
}

void DirichletCharacter::write(std::ostream& out) const {
  for (int64_t n = 0; n < k_; ++n) {
    const CharValue& v = values_[static_cast<size_t>(n)];
    out << n << ',' << (v ? (v->num == 0 ? std::string("e(0/1)") : "e(" + std::to_string(v->num) + "/" + std::to_string(v->den) + ")") : std::string("0")) << '\n';
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

CharValue parse_value(const std::string& text) {
  const std::string v = trim(text);
  if (v == "0") return std::nullopt;
  if (v == "1") return RootOfUnity{};
  if (v == "-1") return RootOfUnity::make(1, 2);
  if (v.size() > 3 && v.rfind("e(", 0) == 0 && v.back() == ')') {
    const std::string body = v.substr(2, v.size() - 3);
    const auto slash = body.find('/');
    try {
      if (slash == std::string::npos) throw InvalidCharacter("missing '/'");
      size_t used = 0;
      const long long num = std::stoll(body.substr(0, slash), &used);
      const std::string dens = body.substr(slash + 1);
      const long long den = std::stoll(dens, &used);
      if (used != dens.size()) throw InvalidCharacter("trailing text");
      return RootOfUnity::make(num, den);
    } catch (const std::logic_error&) {
      throw InvalidCharacter("bad character value '" + v + "'");
    }
  }
  throw InvalidCharacter("bad character value '" + v + "'");
}

}  // namespace

DirichletCharacter DirichletCharacter::parse(int64_t k, std::istream& in) {
  if (k < 1) throw InvalidCharacter("modulus must be positive");
  std::vector<CharValue> values(static_cast<size_t>(k));
  std::vector<bool> seen(static_cast<size_t>(k), false);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InvalidCharacter("line " + std::to_string(lineno) + ": expected n,value");
    long long n = 0;
    try {
      n = std::stoll(line.substr(0, comma));
    } catch (const std::logic_error&) {
      throw InvalidCharacter("line " + std::to_string(lineno) + ": bad index");
    }
    int64_t r = n % k;
    if (r < 0) r += k;
    if (seen[static_cast<size_t>(r)]) throw InvalidCharacter("line " + std::to_string(lineno) + ": residue repeated");
    seen[static_cast<size_t>(r)] = true;
    values[static_cast<size_t>(r)] = parse_value(line.substr(comma + 1));
  }
  return from_values(k, std::move(values));
}

}  // namespace lzeros
