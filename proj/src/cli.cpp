#include "lzeros/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "lzeros/analysis.hpp"
#include "lzeros/solver.hpp"

namespace lzeros::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string family;
  int64_t k = 0, j = 0;
  std::string values_file;

  std::string n_spec;
  int digits = 30;
  std::string mode = "auto";
  std::optional<double> delta0, shrink, residual;
  std::optional<int> digits0, digits_step, max_iter;

  std::string format = "table";
  std::string cache;
  bool no_cache = false;
  bool no_solve = false;
  int threads = 0;

  std::string t_spec = "0:120";
  std::optional<double> step;

  int64_t gue_m = 1, gue_n = 10000;
  double bin = 0.05;
  std::string bin_range = "0:3";

  int64_t zero_count = 50;
  std::string x_spec = "2:30";
};

std::pair<double, double> parse_span(const std::string& s, const char* what) {
  const auto colon = s.find(':', s.empty() ? 0 : 1);  // allow a leading minus sign
  try {
    size_t used = 0;
    if (colon == std::string::npos) {
      double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {v, v};
    }
    const std::string a = s.substr(0, colon), b = s.substr(colon + 1);
    double lo = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(s);
    double hi = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(s);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError(std::string("bad ") + what + " '" + s + "', expected A or A:B");
  }
}

std::pair<int64_t, int64_t> parse_n_range(const std::string& s) {
  if (s.empty()) throw UsageError("--n is required");
  auto [a, b] = parse_span(s, "--n");
  if (a != std::floor(a) || b != std::floor(b)) throw UsageError("--n must be integers");
  if (a > b) throw UsageError("empty n range " + s);
  return {static_cast<int64_t>(a), static_cast<int64_t>(b)};
}

LFunctionFamily make_family(const Options& o) {
  if (o.family == "zeta") return LFunctionFamily::zeta();
  if (o.family == "dh") return LFunctionFamily::davenport_heilbronn();
  if (o.family == "ramanujan") return LFunctionFamily::ramanujan();
  if (o.family == "dirichlet") {
    if (o.k < 1 || o.j < 1) throw UsageError("dirichlet needs --k and --j");
    try {
      return LFunctionFamily::dirichlet(DirichletCharacter::build(o.k, o.j));
    } catch (const InvalidCharacter& e) {
      throw UsageError(e.what());
    }
  }
  if (o.family == "dirichlet-values") {
    if (o.k < 1 || o.values_file.empty()) throw UsageError("dirichlet-values needs --k and --values FILE");
    std::ifstream in(o.values_file);
    if (!in) throw UsageError("cannot read " + o.values_file);
    try {
      return LFunctionFamily::dirichlet(DirichletCharacter::parse(o.k, in));
    } catch (const InvalidCharacter& e) {
      throw UsageError(e.what());
    }
  }
  throw UsageError("unknown family '" + o.family + "' (zeta | dirichlet | dirichlet-values | ramanujan | dh)");
}

PrecisionPolicy make_policy(const Options& o) {
  if (o.digits < 10) throw UsageError("--digits must be at least 10");
  PrecisionPolicy p = PrecisionPolicy::for_digits(o.digits);
  if (o.delta0) p.initial_delta = *o.delta0;
  if (o.shrink) p.delta_shrink = *o.shrink;
  if (o.digits0) p.initial_digits = *o.digits0;
  if (o.digits_step) p.digits_increment = *o.digits_step;
  if (o.max_iter) p.max_iterations = *o.max_iter;
  if (o.residual) {
    if (!(*o.residual > 0.0)) throw UsageError("--residual must be positive");
    p.log10_target_residual = std::log10(*o.residual);
  }
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return p;
}

Mode make_mode(const Options& o, int64_t n_max) {
  if (o.mode == "auto") return default_mode(n_max);
  try {
    return parse_mode(o.mode);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::optional<ZeroCache> open_cache(const Options& o) {
  if (o.no_cache) return std::nullopt;
  if (!o.cache.empty()) return ZeroCache(o.cache);
  if (const char* dir = std::getenv(kCacheEnv); dir && *dir) {
    std::filesystem::create_directories(dir);
    return ZeroCache(std::filesystem::path(dir) / "zeros.csv");
  }
  return std::nullopt;
}

// decimal text cut (not rounded) to `decimals` places
std::string truncate_decimal(const std::string& s, int decimals) {
  const auto dot = s.find('.');
  if (dot == std::string::npos) return s;
  if (decimals <= 0) return s.substr(0, dot);
  return s.substr(0, std::min(s.size(), dot + 1 + static_cast<size_t>(decimals)));
}

// One row of output: either a zero or a gap, already as text.
struct Row {
  int64_t n = 0;
  bool gap = false;
  std::string mode;
  int digits = 0;
  std::string ordinate, residual;
  std::string gap_lo, gap_hi, jump_at;
  double jump = 0.0;
  std::string reason;
};

Row row_from(const ZeroRecord& r) {
  Row w;
  w.n = r.n;
  w.mode = std::string(to_string(r.mode));
  w.digits = r.achieved_digits;
  w.ordinate = r.ordinate.to_fixed(r.achieved_digits);
  w.residual = r.residual.to_sci(6);
  return w;
}

Row row_from(const ZeroCache::Entry& e) {
  Row w;
  w.n = e.n;
  w.mode = std::string(to_string(e.mode));
  w.digits = e.digits;
  w.ordinate = e.ordinate;
  w.residual = e.residual;
  return w;
}

Row row_from(const GapDetected& g) {
  Row w;
  w.n = g.n;
  w.gap = true;
  w.gap_lo = g.lo.to_fixed(6);
  w.gap_hi = g.hi.to_fixed(6);
  if (g.jump_at) w.jump_at = g.jump_at->to_fixed(6);
  w.jump = g.jump;
  w.reason = g.reason;
  return w;
}

// Zeros for n in [lo, hi], from the cache where it has enough digits.
// Failures other than gaps are thrown.
std::vector<Row> collect(const LFunctionFamily& fam, int64_t lo, int64_t hi, const PrecisionPolicy& pol, Mode mode,
                         int min_digits, const Options& o, std::optional<ZeroCache>& cache, bool scan) {
  std::vector<std::optional<Row>> rows(static_cast<size_t>(hi - lo + 1));
  const std::string id = fam.id();
  if (cache && !scan) {
    for (int64_t n = lo; n <= hi; ++n)
      if (auto e = cache->find(id, n, mode, min_digits)) rows[static_cast<size_t>(n - lo)] = row_from(*e);
  }
  std::vector<std::pair<int64_t, int64_t>> runs;
  for (int64_t n = lo; n <= hi; ++n) {
    if (rows[static_cast<size_t>(n - lo)]) continue;
    if (!runs.empty() && runs.back().second == n - 1)
      runs.back().second = n;
    else
      runs.emplace_back(n, n);
  }
  if (!runs.empty() && o.no_solve) {
    std::ostringstream msg;
    msg << "not in cache (--no-solve): " << id << " n=" << runs.front().first;
    if (runs.size() > 1 || runs.front().second != runs.front().first) msg << " and others";
    throw std::runtime_error(msg.str());
  }
  for (auto [a, b] : runs) {
    auto out = scan ? scan_gaps(fam, a, b, pol, mode, o.threads) : solve_range(fam, a, b, pol, mode, o.threads);
    for (auto& res : out) {
      if (const auto* r = std::get_if<ZeroRecord>(&res)) {
        rows[static_cast<size_t>(r->n - lo)] = row_from(*r);
        if (cache) cache->append(*r);
      } else if (const auto* g = std::get_if<GapDetected>(&res)) {
        rows[static_cast<size_t>(g->n - lo)] = row_from(*g);
      } else {
        const auto& f = std::get<SolveFailure>(res);
        throw std::runtime_error("n=" + std::to_string(f.n) + ": " + f.message);
      }
    }
  }
  std::vector<Row> flat;
  for (auto& r : rows) flat.push_back(std::move(*r));
  return flat;
}

void print_rows(const std::vector<Row>& rows, const std::string& family, int digits, const std::string& format,
                std::ostream& out) {
  auto shown = [&](const Row& r) { return truncate_decimal(r.ordinate, std::min(digits, r.digits)); };
  if (format == "csv") {
    out << "family,n,status,mode,digits,t_n,residual,gap_lo,gap_hi,jump\n";
    for (const auto& r : rows) {
      if (r.gap) {
        out << family << ',' << r.n << ",gap,,,,," << r.gap_lo << ',' << r.gap_hi << ',' << std::fixed
            << std::setprecision(4) << r.jump << '\n';
        out.unsetf(std::ios::floatfield);
      } else {
        out << family << ',' << r.n << ",ok," << r.mode << ',' << std::min(digits, r.digits) << ',' << shown(r) << ','
            << r.residual << ",,,\n";
      }
    }
  } else if (format == "json") {
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json j{{"family", family}, {"n", r.n}};
      if (r.gap) {
        j["status"] = "gap";
        j["interval"] = {r.gap_lo, r.gap_hi};
        j["jump"] = std::round(r.jump * 1e4) / 1e4;
        if (!r.jump_at.empty()) j["jump_at"] = r.jump_at;
        j["reason"] = r.reason;
      } else {
        j["status"] = "ok";
        j["mode"] = r.mode;
        j["digits"] = std::min(digits, r.digits);
        j["t_n"] = shown(r);
        j["residual"] = r.residual;
      }
      arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
  } else {
    for (const auto& r : rows) {
      out << std::setw(8) << r.n << "  ";
      if (r.gap) {
        out << "gap in [" << r.gap_lo << ", " << r.gap_hi << "]  jump " << std::fixed << std::setprecision(4) << r.jump;
        out.unsetf(std::ios::floatfield);
        if (!r.jump_at.empty()) out << " at " << r.jump_at;
        out << '\n';
      } else {
        out << shown(r) << "  digits=" << std::min(digits, r.digits) << "  |L|=" << r.residual << '\n';
      }
    }
  }
}

void check_format(const std::string& f) {
  if (f != "table" && f != "csv" && f != "json") throw UsageError("--format must be table, csv or json");
}

int cmd_solve(const Options& o, std::ostream& out, bool scan) {
  check_format(o.format);
  const auto fam = make_family(o);
  const auto [lo, hi] = parse_n_range(o.n_spec);
  const auto pol = make_policy(o);
  const Mode mode = make_mode(o, std::max(std::llabs(lo), std::llabs(hi)));
  auto cache = open_cache(o);
  const auto rows = collect(fam, lo, hi, pol, mode, o.digits, o, cache, scan);
  bool any_gap = false;
  for (const auto& r : rows) any_gap = any_gap || r.gap;
  if (scan && o.format == "table") {
    // summary first, then only the gaps
    std::vector<Row> gaps;
    for (const auto& r : rows)
      if (r.gap) gaps.push_back(r);
    out << fam.id() << " n=" << lo << ".." << hi << ": " << rows.size() - gaps.size() << " converged, "
        << gaps.size() << " missing\n";
    print_rows(gaps, fam.id(), o.digits, o.format, out);
  } else {
    print_rows(rows, fam.id(), o.digits, o.format, out);
  }
  return any_gap ? kGap : kOk;
}

// rounded, unlike Real::to_fixed; counts sit just below integers otherwise
std::string fixed6(const Real& x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << x.to_double();
  std::string r = s.str();
  return r == "-0.000000" ? "0.000000" : r;
}

int cmd_count(const Options& o, std::ostream& out) {
  if (o.format != "csv" && o.format != "table" && o.format != "json") check_format(o.format);
  const auto fam = make_family(o);
  auto [a, b] = parse_span(o.t_spec, "--T");
  const double step = o.step.value_or(0.5);
  if (!(step > 0.0) || a > b) throw UsageError("need --T A:B with A <= B and --step > 0");
  const Precision p = Precision::from_digits(std::max(o.digits, 10));
  const long count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
  auto arr = nlohmann::json::array();
  if (o.format != "json") out << (o.format == "csv" ? "T,N0,N,S\n" : "           T              N0               N               S\n");
  for (long i = 0; i < count; ++i) {
    const double T = a + step * static_cast<double>(i);
    std::string n0 = "0.000000", ns = "0.000000", s = "0.000000";
    if (T != 0.0) {
      const Side side = T < 0 ? Side::Lower : Side::Upper;
      const auto cp = counting_point(fam, Real(std::fabs(T), p), side);
      n0 = fixed6(cp.n_critical);
      ns = fixed6(cp.n_strip);
      s = fixed6(cp.s_term);
    }
    std::ostringstream ts;
    ts << std::fixed << std::setprecision(4) << T;
    if (o.format == "csv")
      out << ts.str() << ',' << n0 << ',' << ns << ',' << s << '\n';
    else if (o.format == "table")
      out << std::setw(12) << ts.str() << std::setw(16) << n0 << std::setw(16) << ns << std::setw(16) << s << '\n';
    else
      arr.push_back({{"T", ts.str()}, {"N0", n0}, {"N", ns}, {"S", s}});
  }
  if (o.format == "json") out << arr.dump(2) << '\n';
  return kOk;
}

std::vector<double> ordinates(const std::vector<Row>& rows) {
  std::vector<double> t;
  for (const auto& r : rows) {
    if (r.gap) throw std::runtime_error("missing zero at n=" + std::to_string(r.n));
    t.push_back(std::stod(r.ordinate));
  }
  return t;
}

int cmd_gue(const Options& o, std::ostream& out) {
  if (o.family != "zeta") throw UsageError("gue supports the zeta family only");
  if (o.gue_m < 1 || o.gue_n <= o.gue_m) throw UsageError("need 1 <= M < N");
  const auto fam = make_family(o);
  Options lo = o;
  if (o.mode == "auto") lo.mode = "asymptotic";
  PrecisionPolicy pol = make_policy(lo);
  // spacings need far fewer digits than the defaults buy; one deep offset suffices
  if (!o.delta0) pol.initial_delta = 1e-8;
  if (!o.shrink) pol.delta_shrink = 1e6;
  const Mode mode = make_mode(lo, o.gue_n);
  auto cache = open_cache(o);
  const auto rows = collect(fam, o.gue_m, o.gue_n, pol, mode, o.digits, o, cache, false);
  const auto t = ordinates(rows);
  std::vector<Ordinate> z;
  for (size_t i = 0; i < t.size(); ++i) z.push_back({o.gue_m + static_cast<int64_t>(i), t[i]});
  auto [a, b] = parse_span(o.bin_range, "--range");
  const auto bins = pair_correlation(z, BinSpec{a, b, o.bin}, o.threads);
  out << "x_mid,empirical,kernel\n" << std::fixed << std::setprecision(6);
  for (const auto& bin : bins) out << bin.x_mid() << ',' << bin.empirical << ',' << bin.kernel << '\n';
  out.unsetf(std::ios::floatfield);
  return kOk;
}

int cmd_primes(const Options& o, std::ostream& out) {
  if (o.family != "zeta") throw UsageError("primes supports the zeta family only");
  if (o.zero_count < 1) throw UsageError("--zeros must be positive");
  auto [a, b] = parse_span(o.x_spec, "--x");
  if (a < 1.0 || b <= a) throw UsageError("need --x A:B with 1 <= A < B");
  const double step = o.step.value_or(1.0);
  if (!(step > 0.0)) throw UsageError("--step must be positive");
  const auto fam = make_family(o);
  Options lo = o;
  lo.digits = std::max(o.digits, 10);
  const auto pol = make_policy(lo);
  auto cache = open_cache(o);
  const auto rows = collect(fam, 1, o.zero_count, pol, make_mode(lo, o.zero_count), lo.digits, o, cache, false);
  const auto t = ordinates(rows);
  const ArithmeticTables tab(static_cast<int64_t>(b) + 1);
  // sample at cell midpoints so no point sits on a prime
  out << "x,pi_reconstructed,pi_exact\n" << std::fixed;
  for (double x = a + step / 2; x < b; x += step) {
    out << std::setprecision(4) << x << ',' << std::setprecision(6) << pi_from_zeros(x, t) << ','
        << tab.prime_pi(static_cast<int64_t>(std::floor(x))) << '\n';
  }
  out.unsetf(std::ios::floatfield);
  return kOk;
}

void add_family(CLI::App* c, Options& o) {
  c->add_option("family", o.family, "zeta | dirichlet | dirichlet-values | ramanujan | dh")->required();
  c->add_option("--k", o.k, "Dirichlet modulus");
  c->add_option("--j", o.j, "Dirichlet character index");
  c->add_option("--values", o.values_file, "character table file (n,value lines)");
}

void add_policy(CLI::App* c, Options& o) {
  c->add_option("--digits", o.digits, "target decimal digits (>= 10)");
  c->add_option("--mode", o.mode, "exact | asymptotic | auto");
  c->add_option("--delta0", o.delta0, "initial offset from the critical line");
  c->add_option("--shrink", o.shrink, "offset divisor per round");
  c->add_option("--digits0", o.digits0, "initial working digits");
  c->add_option("--digits-step", o.digits_step, "working digits added per round");
  c->add_option("--residual", o.residual, "stop once |L| falls below this");
  c->add_option("--max-iter", o.max_iter, "round limit");
  c->add_option("--cache", o.cache, std::string("zero cache file (default: $") + kCacheEnv + "/zeros.csv)");
  c->add_flag("--no-cache", o.no_cache, "neither read nor write the cache");
  c->add_flag("--no-solve", o.no_solve, "fail on cache misses instead of solving");
  c->add_option("--threads", o.threads, "worker threads (0 = OpenMP default)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"n-th zeros of zeta, Dirichlet, modular and Davenport-Heilbronn L-functions"};
  app.name("lzeros");
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "solve for the n-th zero (or a range A:B)");
  add_family(solve, o);
  add_policy(solve, o);
  solve->add_option("--n", o.n_spec, "index n or range A:B")->required();
  solve->add_option("--format", o.format, "table | csv | json");

  auto* scan = app.add_subcommand("scan", "solve a range and report missing solutions");
  add_family(scan, o);
  add_policy(scan, o);
  scan->add_option("--n", o.n_spec, "range A:B")->required();
  scan->add_option("--format", o.format, "table | csv | json");

  auto* count = app.add_subcommand("count", "counting functions N0(T), N(T) and the arg term");
  add_family(count, o);
  count->add_option("--T", o.t_spec, "height range A:B (negative for the lower half-line)");
  count->add_option("--step", o.step, "sample step");
  count->add_option("--digits", o.digits, "working digits");
  count->add_option("--format", o.format, "csv | table | json");

  auto* gue = app.add_subcommand("gue", "pair correlation of zeros M..N against the GUE kernel");
  add_family(gue, o);
  add_policy(gue, o);
  gue->add_option("--M", o.gue_m, "first index");
  gue->add_option("--N", o.gue_n, "last index");
  gue->add_option("--bin", o.bin, "bin width");
  gue->add_option("--range", o.bin_range, "normalised distance range A:B");

  auto* primes = app.add_subcommand("primes", "pi(x) rebuilt from the first zeros");
  add_family(primes, o);
  add_policy(primes, o);
  primes->add_option("--zeros", o.zero_count, "number of zeros");
  primes->add_option("--x", o.x_spec, "x range A:B, sampled at cell midpoints");
  primes->add_option("--step", o.step, "cell width");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "lzeros: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (count->parsed()) {
      if (o.format == "table" && !count->count("--format")) o.format = "csv";
      return cmd_count(o, out);
    }
    if (gue->parsed()) return cmd_gue(o, out);
    if (primes->parsed()) return cmd_primes(o, out);
    return cmd_solve(o, out, scan->parsed());
  } catch (const UsageError& e) {
    err << "lzeros: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "lzeros: " << e.what() << '\n';
    return kError;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace lzeros::cli
