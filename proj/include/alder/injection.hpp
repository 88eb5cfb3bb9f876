#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alder/common.hpp"
#include "alder/partition.hpp"
#include "alder/periodic_set.hpp"
#include "alder/series.hpp"

namespace alder {

/// m = ell(ell+1)/2 + j with 0 <= j <= ell.
struct TriangularIndex {
  std::uint64_t m;
  std::uint64_t ell;
  std::uint64_t j;
};

TriangularIndex triangular_decompose(std::uint64_t m);

/// Replace each part x_i of `p` (i-th element of `source`) by y_i (i-th
/// element of `target`) and append (sum(x_i - y_i))/unit parts equal to unit.
/// Requires y_1 = unit, unit | y_i and x_i >= y_i at every index used.
Partition replace_and_pad(const EventuallyPeriodicSet& source, const EventuallyPeriodicSet& target, Part unit,
                          const Partition& p);

/// Parts and multiplicity rules of the bridge family a shift injection lands
/// in: a residue ladder mod 2d with unlimited multiplicity and, for the mixed
/// bridge, one more residue whose parts must be distinct.
struct BridgeUniverse {
  Part d;
  unsigned r;
  BridgeKind kind;
  EventuallyPeriodicSet free_parts;
  std::optional<Part> distinct_residue;

  /// d + 2^(r-1).
  Part top_marker() const { return d + (Part{1} << (r - 1)); }
  bool admits(const Partition& p) const;
  /// Describes why p is not admitted; empty when it is.
  std::string rejection(const Partition& p) const;
};

BridgeUniverse bridge_universe(Part d);

enum class ShiftBranch {
  Direct,      // pi empty: replace-and-pad only
  AllOnes,     // single special part, mu all ones
  Marked,      // single special part, marker parts chosen by mu's smallest part > 1
  PairAllOnes, // both special parts, mu all ones
  PairMarked,  // both special parts, marker parts chosen by mu's smallest part > 1
};

const char* to_string(ShiftBranch b);

struct ShiftImage {
  Partition image;
  ShiftBranch branch;
};

/// Injection from the (pi, mu) pairs of Q_{d-2}^(1) (pi empty or (d), mu over
/// build_S_shift2(d)) into the bridge family of d.
///
/// Accepts d > 127 with d+1 not a power of two (mixed bridge), and d >= 127
/// with d+1 a power of two (full bridge). The construction checks that the
/// replace-and-pad target is dominated by the source set.
class ShiftInjector {
 public:
  explicit ShiftInjector(Part d);

  ShiftImage apply(const PairDecomposition& pair) const;
  Partition operator()(const PairDecomposition& pair) const { return apply(pair).image; }

  /// d + x_m - (d+4) ell - 4j for the m-th element x_m of S; the number of
  /// padding ones emitted when x_m is the smallest part > 1.
  std::int64_t padding_for_index(std::size_t m) const;

  Part d() const { return d_; }
  unsigned r() const { return r_; }
  const EventuallyPeriodicSet& source() const { return source_; }
  const EventuallyPeriodicSet& replace_target() const { return target_; }
  const BridgeUniverse& universe() const { return universe_; }
  /// The parts only the marked branches emit.
  Part low_marker() const { return d_ + 4; }
  Part high_marker() const { return d_ + 8; }

 private:
  Part d_;
  unsigned r_;
  EventuallyPeriodicSet source_;
  EventuallyPeriodicSet target_;
  BridgeUniverse universe_;
};

Partition shift_injection(Part d, const PairDecomposition& pair);

/// Injection from the (pi, mu) pairs of Q_{d-alpha}^(1) (pi from the menu
/// {}, (d-alpha+2), (d-alpha+4), both; mu over build_S_shift_alpha) into the
/// bridge family of d.
class AlphaShiftInjector {
 public:
  enum class Bounds {
    /// alpha >= 3 and d >= max(4 alpha, 2^12 - 1).
    Theorem,
    /// alpha >= 3 and d >= 4 alpha; the source/target domination is still
    /// checked numerically.
    Reduced,
  };

  AlphaShiftInjector(Part d, Part alpha, Bounds bounds = Bounds::Theorem);

  ShiftImage apply(const PairDecomposition& pair) const;
  Partition operator()(const PairDecomposition& pair) const { return apply(pair).image; }

  /// Marker pair (lambda_1, lambda_2) for a single special part.
  std::pair<Part, Part> markers_for_single(Part special_part) const;
  /// Marker pair used with both special parts when mu's smallest part > 1 is
  /// the m-th element of S.
  std::pair<Part, Part> markers_for_pair_index(std::size_t m) const;
  /// Padding ones emitted when both special parts are present and the
  /// smallest part > 1 of mu is x_m.
  std::int64_t pair_padding_for_index(std::size_t m) const;
  /// Padding ones emitted for a single special part and smallest part x_m.
  std::int64_t single_padding_for_index(Part special_part, std::size_t m) const;

  Part d() const { return d_; }
  Part alpha() const { return alpha_; }
  unsigned r() const { return r_; }
  Part low_special() const { return d_ - alpha_ + 2; }
  Part high_special() const { return d_ - alpha_ + 4; }
  const EventuallyPeriodicSet& source() const { return source_; }
  const EventuallyPeriodicSet& replace_target() const { return target_; }
  const BridgeUniverse& universe() const { return universe_; }

 private:
  Part d_;
  Part alpha_;
  unsigned r_;
  EventuallyPeriodicSet source_;
  EventuallyPeriodicSet target_;
  BridgeUniverse universe_;
};

Partition alpha_shift_injection(Part d, Part alpha, const PairDecomposition& pair);

/// For even d: sends a partition of odd N into parts = +-2 (mod d+3) to a
/// partition of N+1 into parts = +-2 (mod d+2), replacing x_i by y_i and
/// appending parts of size 2.
Partition odd_to_even_lift(Part d, const Partition& p);

/// Small source/target pairs satisfying the replace-and-pad hypotheses.
struct ReplacePadInstance {
  std::string name;
  EventuallyPeriodicSet source;
  EventuallyPeriodicSet target;
  Part unit;
};

/// "two-mod-three": {2 mod 3} into the even numbers, unit 2.
/// "andrews-15": {1, 17 mod 18} into {1, 17, 19, 23 mod 30}, unit 1.
/// "level2-d10": {+-2 mod 13} into {+-2 mod 12}, unit 2.
std::vector<ReplacePadInstance> replace_pad_instances();

// ---------------------------------------------------------------------------

struct Counterexample {
  std::string reason;
  std::string input;
  std::string image;
};

struct InjectionCertificate {
  std::string kind;
  std::map<std::string, std::int64_t> parameters;
  std::uint64_t n = 0;
  std::uint64_t domain_size = 0;
  bool images_distinct = true;
  bool weight_ok = true;
  bool image_valid = true;
  std::vector<Counterexample> counterexamples;
  /// Size of the target family at the image weight.
  std::optional<Count> target_count;
  /// Number of images per branch, for the shift injections.
  std::map<std::string, std::uint64_t> branch_counts;

  bool passes() const { return images_distinct && weight_ok && image_valid && counterexamples.empty(); }
};

/// Every partition of `weight` (a multiple of unit) into parts from source.
InjectionCertificate certify_replace_and_pad(const EventuallyPeriodicSet& source, const EventuallyPeriodicSet& target,
                                             Part unit, std::uint64_t weight, EnumerationCap cap = {});

InjectionCertificate certify_shift(Part d, std::uint64_t n, EnumerationCap cap = {});

InjectionCertificate certify_alpha_shift(Part d, Part alpha, std::uint64_t n, EnumerationCap cap = {},
                                         AlphaShiftInjector::Bounds bounds = AlphaShiftInjector::Bounds::Theorem);

InjectionCertificate certify_odd_to_even_lift(Part d, std::uint64_t odd_weight, EnumerationCap cap = {});

}  // namespace alder
