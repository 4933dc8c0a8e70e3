// Closed-form seeds, the transcendental equations for each family, the
// shrinking-offset solve loop, counting functions and gap scanning.
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "lzeros/lfunctions.hpp"
#include "lzeros/numerics.hpp"
#include "lzeros/specialfn.hpp"

namespace lzeros {

enum class Mode { Exact, Asymptotic };

std::string_view to_string(Mode m);
/// "exact" or "asymptotic"; throws DomainError otherwise.
Mode parse_mode(std::string_view s);
/// Asymptotic above n = 1e5, exact below.
Mode default_mode(int64_t n);

ThetaKind theta_kind(const LFunctionFamily& fam);

/// Closed-form approximation to the n-th ordinate, computed at the precision
/// of n.  n may be far beyond the int64 range.  Throws DomainError when the
/// Lambert argument falls below -1/e (zeta n <= 0, modular n = 1, ...).
Real seed(const LFunctionFamily& fam, const Real& n);
Real seed(const LFunctionFamily& fam, int64_t n, Precision p = Precision::from_digits(30));

/// Phase whose crossing of a family-dependent multiple of pi locates zeros:
/// theta(t) + Arg L(c + delta + it), with the Gauss-sum phase removed for
/// Dirichlet L.  Asymptotic mode swaps theta for its leading asymptotic form.
/// Evaluated at the precision of t.  delta = 0 evaluates on the line itself.
Real equation_lhs(const LFunctionFamily& fam, const Real& t, const Real& delta, Mode mode);
/// lhs / pi plus the family constant and label offset; equals n at t_n.
Real equation_index(const LFunctionFamily& fam, const Real& t, const Real& delta, Mode mode);

struct ZeroRecord {
  LFunctionFamily family;
  int64_t n = 0;
  Real seed;
  Real ordinate;
  int achieved_digits = 0;
  Real residual;
  Mode mode = Mode::Exact;
  int rounds = 0;
};

/// Missing solution: the equation index skips n.  [lo, hi] is the unresolved
/// interval, jump_at the location of the discontinuity when one was located.
struct GapDetected {
  std::string family_id;
  int64_t n = 0;
  Real lo, hi;
  std::optional<Real> jump_at;
  double jump = 0.0;
  std::string reason;
};

struct GapError : std::runtime_error {
  explicit GapError(GapDetected g);
  GapDetected gap;
};

/// Any other failure captured during a batch (non-convergence, cutoff).
struct SolveFailure {
  int64_t n = 0;
  std::string message;
};

using SolveOutcome = std::variant<ZeroRecord, GapDetected, SolveFailure>;

/// Runs the offset/precision schedule of `policy` until the residual
/// |L(c + i t)| drops below the policy target.
/// Throws GapError, NonConvergence, or errors from the evaluators.
ZeroRecord solve_zero(const LFunctionFamily& fam, int64_t n, const PrecisionPolicy& policy, Mode mode);
/// Same, with gaps and failures returned as data.
SolveOutcome try_solve_zero(const LFunctionFamily& fam, int64_t n, const PrecisionPolicy& policy, Mode mode);

/// Solve n in [n_lo, n_hi] with up to `threads` OpenMP workers (0 = runtime
/// default).  Output is ordered by n.
std::vector<SolveOutcome> solve_range(const LFunctionFamily& fam, int64_t n_lo, int64_t n_hi,
                                      const PrecisionPolicy& policy, Mode mode, int threads = 0);
/// Reference implementation: one n after another on the calling thread.
std::vector<SolveOutcome> solve_range_serial(const LFunctionFamily& fam, int64_t n_lo, int64_t n_hi,
                                             const PrecisionPolicy& policy, Mode mode);

/// solve_range plus post-processing of each gap: its interval becomes the
/// span between the nearest converged neighbours and `jump` is the index
/// increase across that span not accounted for by converged zeros.
std::vector<SolveOutcome> scan_gaps(const LFunctionFamily& fam, int64_t n_lo, int64_t n_hi,
                                    const PrecisionPolicy& policy, Mode mode, int threads = 0);

enum class Side { Upper, Lower };

/// Number of zeros on the critical line with ordinate in (0, T), or in
/// (-T, 0) for Side::Lower, from the principal-argument formula.
Real count_critical(const LFunctionFamily& fam, const Real& T, Side side = Side::Upper);
/// Number of zeros in the critical strip up to height T, with arg L
/// continued from the right edge of the strip along a horizontal segment.
Real count_strip(const LFunctionFamily& fam, const Real& T, Side side = Side::Upper);
/// The smooth part of the count (theta replaced by its asymptotic form,
/// arg L dropped).
Real count_smooth(const LFunctionFamily& fam, const Real& T, Side side = Side::Upper);

struct CountingPoint {
  Real T;
  Real n_critical;
  Real n_strip;
  /// The continued arg L / pi term (S(T) for zeta).
  Real s_term;
};

CountingPoint counting_point(const LFunctionFamily& fam, const Real& T, Side side = Side::Upper);

/// Line-oriented cache of solved ordinates:
///   family_id,n,mode,digits,t_n,residual
/// Records are appended; for a (family_id, n, mode) key the entry with the
/// most digits wins.
class ZeroCache {
 public:
  struct Entry {
    std::string family_id;
    int64_t n = 0;
    Mode mode = Mode::Exact;
    int digits = 0;
    std::string ordinate;
    std::string residual;
  };

  explicit ZeroCache(std::filesystem::path path);

  /// Entry with at least `min_digits` digits, if any.
  std::optional<Entry> find(const std::string& family_id, int64_t n, Mode mode, int min_digits) const;
  /// Appends the record (ordinate truncated to its achieved digits).
  void append(const ZeroRecord& rec);
  const std::filesystem::path& path() const { return path_; }
  size_t size() const { return entries_.size(); }

  static std::string format_line(const Entry& e);
  /// Returns nullopt for a malformed line.
  static std::optional<Entry> parse_line(std::string_view line);

 private:
  void insert(Entry e);

  std::filesystem::path path_;
  std::map<std::tuple<std::string, int64_t, Mode>, Entry> entries_;
};

}  // namespace lzeros
