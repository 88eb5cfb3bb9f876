#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "alder/common.hpp"
#include "alder/periodic_set.hpp"

namespace alder {

/// A multiset of positive parts, stored as runs of equal parts in strictly
/// decreasing order of value.
class Partition {
 public:
  struct Run {
    Part value;
    std::uint64_t multiplicity;
    auto operator<=>(const Run&) const = default;
  };

  Partition() = default;

  static Partition from_parts(std::vector<Part> parts);
  static Partition from_runs(std::vector<Run> runs);

  std::span<const Run> runs() const { return runs_; }
  /// Parts expanded in nonincreasing order.
  std::vector<Part> parts() const;

  std::uint64_t weight() const { return weight_; }
  std::uint64_t num_parts() const;
  std::uint64_t multiplicity(Part value) const;
  bool empty() const { return runs_.empty(); }
  Part largest() const;
  Part smallest() const;
  /// Smallest part strictly greater than `floor`, or 0 if there is none.
  Part smallest_above(Part floor) const;

  Partition with(Part value, std::uint64_t copies = 1) const;
  Partition without(Part value, std::uint64_t copies = 1) const;
  /// Union of the two multisets.
  Partition merged(const Partition& other) const;

  std::string to_string() const;

  auto operator<=>(const Partition& other) const { return runs_ <=> other.runs_; }
  bool operator==(const Partition& other) const { return runs_ == other.runs_; }

 private:
  std::vector<Run> runs_;
  std::uint64_t weight_ = 0;
};

/// Partitions with smallest part >= level and consecutive parts differing by
/// at least gap.
struct GapSpec {
  Part level;
  Part gap;

  GapSpec(Part level, Part gap);
  bool admits(const Partition& p) const;
};

enum class Variant { Full, ExcludeCoResidue };

/// Partitions into parts congruent to +-residue modulo d+3, optionally without
/// the single part d+3-residue.
struct CongruenceSpec {
  Part residue;
  Part d;
  Variant variant;

  CongruenceSpec(Part residue, Part d, Variant variant = Variant::Full);
  Part modulus() const { return d + 3; }
  Part co_residue() const { return d + 3 - residue; }
  bool allows(Part part) const;
  EventuallyPeriodicSet universe() const;
};

// Counting. Every *_counts function returns the values for 0..max_n.

Count count_gap(const GapSpec& spec, std::uint64_t n);
std::vector<Count> gap_counts(const GapSpec& spec, std::uint64_t max_n);

Count count_congruence(const CongruenceSpec& spec, std::uint64_t n);
std::vector<Count> congruence_counts(const CongruenceSpec& spec, std::uint64_t max_n);

Count count_from_set(const EventuallyPeriodicSet& universe, std::uint64_t n);
std::vector<Count> set_counts(const EventuallyPeriodicSet& universe, std::uint64_t max_n);
/// Coin-change counts over an explicit part list. Repeated entries are
/// distinct part kinds (each contributes its own factor 1/(1-q^e)).
std::vector<Count> counts_over_parts(std::span<const Part> parts, std::uint64_t max_n);

Count count_parts_at_most(std::uint64_t k, std::uint64_t n);
std::vector<Count> parts_at_most_counts(std::uint64_t k, std::uint64_t max_n);

// Enumeration.

std::vector<Partition> enumerate_gap(const GapSpec& spec, std::uint64_t n, EnumerationCap cap = {});

using PartitionVisitor = std::function<void(const Partition&)>;

/// Visits every partition of n into parts from `allowed` (any order, no
/// duplicates). Throws CapExceeded once more than cap.max_items are produced.
std::size_t for_each_partition(std::span<const Part> allowed, std::uint64_t n, EnumerationCap cap,
                               const PartitionVisitor& visit);
std::vector<Partition> enumerate_from_set(const EventuallyPeriodicSet& universe, std::uint64_t n,
                                          EnumerationCap cap = {});
/// Every partition of n, no restriction. Oracle use only.
std::vector<Partition> enumerate_all(std::uint64_t n, EnumerationCap cap = {});

// (pi, mu) decompositions of the congruence counts.

/// Q_d^(a) read through the rewrite 1/(1-x) = (1+x)/(1-x^2) with x = q^(d+3-a):
/// pi is empty or the single part d+3-a, and mu uses the residue classes with
/// d+3-a replaced by 2d+6-2a.
struct LevelPairs {
  Part level;
  Part d;
};

/// Q_{d-alpha}^(1) with both d-alpha+2 and d-alpha+4 moved into the menu of pi.
struct AlphaShiftPairs {
  Part d;
  Part alpha;
};

using PairKind = std::variant<LevelPairs, AlphaShiftPairs>;

struct PairDecomposition {
  Partition pi;
  Partition mu;
  /// Copies of the replacement part in mu that come from its own factor
  /// rather than a residue class. Only differs from mu's multiplicity of that
  /// part when the replacement value is also a residue-class member.
  std::uint64_t replacement_copies = 0;

  std::uint64_t weight() const { return pi.weight() + mu.weight(); }
  auto operator<=>(const PairDecomposition&) const = default;
};

/// Universe of mu for the decomposition kind (as a set, ignoring the
/// replacement-part multiplicity noted above).
EventuallyPeriodicSet pair_universe(const PairKind& kind);
/// The finite menu pi is drawn from, including the empty partition.
std::vector<Partition> pair_menu(const PairKind& kind);
std::vector<PairDecomposition> enumerate_pairs(const PairKind& kind, std::uint64_t n,
                                               EnumerationCap cap = {});

}  // namespace alder
