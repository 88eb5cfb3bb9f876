#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alder/common.hpp"
#include "alder/partition.hpp"

namespace alder {

/// Supplies dense count arrays 0..max_n. The default computes them directly;
/// the CLI plugs in a cached source.
class CountSource {
 public:
  virtual ~CountSource() = default;
  /// q_d^(a)(0..max_n).
  virtual std::vector<Count> gap(Part a, Part d, std::uint64_t max_n) const;
  /// Q_d^(a)(0..max_n), or the variant without the part d+3-a.
  virtual std::vector<Count> congruence(Part a, Part d, Variant variant, std::uint64_t max_n) const;
};

const CountSource& direct_counts();

/// Thrown when a check fails inside a range the theorems cover: that can
/// only be an implementation bug.
class ProvedRangeViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Verdict { Pass, Fail, PassWithExpectedExceptions };
enum class Regime { Proved, Conjectured, Unclaimed };

const char* to_string(Verdict v);
const char* to_string(Regime r);

/// Regime of q_d^(a)(n) >= Q_d^(a)(n) (full congruence count, up to the
/// listed exceptions).
Regime inequality_regime(Part a, Part d);

/// Values of n where the full inequality is allowed to fail.
std::vector<std::uint64_t> theorem_exceptions(Part a, Part d);

struct Violation {
  std::uint64_t n;
  Count lhs;
  Count rhs;
};

struct InequalityReport {
  std::string relation;
  Part a = 0;
  Part d = 0;
  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
  Variant variant = Variant::Full;
  Regime regime = Regime::Unclaimed;
  std::vector<Violation> violations;
  /// Exceptions allowed inside [n_lo, n_hi].
  std::vector<std::uint64_t> expected_exceptions;
  Verdict verdict = Verdict::Pass;

  std::vector<std::uint64_t> violation_ns() const;
};

/// Every n in [n_lo, n_hi] with q_d^(a)(n) < Q_d^(a)(n) (or the variant).
/// Throws ProvedRangeViolation when the verdict fails in a proved regime.
InequalityReport check_pointwise(Part a, Part d, std::uint64_t n_lo, std::uint64_t n_hi,
                                 Variant variant = Variant::Full, const CountSource& source = direct_counts(),
                                 bool throw_in_proved_range = true);

/// q_d^(a)(n) >= q_{ceil(d/a)}^(1)(ceil(n/a)) on [n_lo, n_hi]; requires
/// n_lo >= d + 2a.
InequalityReport check_lemma_shift(Part a, Part d, std::uint64_t n_lo, std::uint64_t n_hi,
                                   const CountSource& source = direct_counts(), bool throw_in_proved_range = true);

/// Theorem exception sets for a >= 3, checked on 1..nmax.
InequalityReport check_exceptions_level_a(Part a, Part d, std::uint64_t nmax,
                                          const CountSource& source = direct_counts(),
                                          bool throw_in_proved_range = true);

// ---------------------------------------------------------------------------

struct ChainLink {
  std::string name;
  std::string lhs_label;
  Count lhs;
  std::string relation;  // ">=" or "="
  std::string rhs_label;
  Count rhs;
  bool holds = false;
  /// Whether the argument uses this link at these parameters; bridge links
  /// only apply from n' >= 4d' + 2^r on.
  bool applies = true;
};

struct ChainReport {
  Part a = 0;
  Part d = 0;
  std::uint64_t n = 0;
  Part reduced_d = 0;       // ceil(d/a)
  std::uint64_t reduced_n = 0;  // ceil(n/a)
  Part alpha = 0;
  Part dilated_d = 0;       // a(d' - alpha) + 3a - 3
  /// Inside a range the argument covers (the level shift needs n >= d+2a and
  /// d must be in a proved regime).
  bool covered = false;
  std::vector<ChainLink> links;

  bool holds() const;
};

/// Evaluates the level-shift / bridge / dilation chain for q_d^(a)(n) >=
/// Q_d^(a)(n). Alpha is 2 for a = 2 and for a = 3 with 3 | d, else 4.
ChainReport check_chain(Part a, Part d, std::uint64_t n);

// ---------------------------------------------------------------------------

enum class Relation { Equal, AtMost, AtLeast };
const char* to_string(Relation r);

struct TableRowCheck {
  std::string label;
  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
  std::string column;
  Relation relation = Relation::Equal;
  std::string formula;
  bool match = true;
  /// First mismatching n (or n_lo when the row matches) with the values
  /// there.
  std::uint64_t sample_n = 0;
  std::int64_t expected = 0;
  Count computed;
  std::optional<std::uint64_t> first_mismatch;
};

struct TableCheck {
  std::string table_id;
  std::string caption;
  std::map<std::string, std::int64_t> parameters;
  std::vector<TableRowCheck> rows;

  bool all_match() const;
};

struct TableInfo {
  std::string id;
  std::string caption;
  std::vector<std::string> parameters;
};

std::vector<TableInfo> list_tables();

struct TableParams {
  Part d = 0;
  Part a = 0;
  Part alpha = 0;
  unsigned r = 0;
  /// Number of elements compared for the set-element tables.
  std::size_t depth = 60;
};

/// Evaluates each row of a value table (or of a set-element table) at the
/// parameters and compares it with the computed counts.
TableCheck reproduce_table(const std::string& table_id, const TableParams& params,
                           const CountSource& source = direct_counts());

/// The small-n tables for level a at d, plus one row for the inequality on
/// 1..d+4a with its exception set.
TableCheck check_small_n_regime(Part a, Part d, const CountSource& source = direct_counts());

// ---------------------------------------------------------------------------

enum class Conjecture { LevelTwo, LevelThree, HigherLevel };
Conjecture parse_conjecture(const std::string& s);
const char* to_string(Conjecture c);

/// Whether the conjecture claims the inequality (up to theorem exceptions)
/// at (a, d).
bool conjecture_claims(Conjecture c, Part a, Part d);

/// 4d + 2^r + 300 with r = floor(log2(d+1)).
std::uint64_t default_scan_nmax(Part d);

struct ScanReport {
  Conjecture which = Conjecture::LevelTwo;
  Part a = 0;
  std::map<Part, InequalityReport> reports;
  /// d whose violations differ from the theorem exception set.
  std::vector<Part> findings;
  /// Findings at d the conjecture claims.
  std::vector<Part> contradictions;

  bool consistent_with_conjecture() const { return contradictions.empty(); }
  std::string summary() const;
};

/// nmax == 0 selects default_scan_nmax per d. Reports never throw for
/// violations; proved-range failures are still reported as findings.
ScanReport scan_conjectures(Conjecture which, Part a, const std::vector<Part>& ds, std::uint64_t nmax = 0,
                            unsigned jobs = 1, const CountSource& source = direct_counts());

}  // namespace alder
