#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alder/common.hpp"
#include "alder/periodic_set.hpp"

namespace alder {

/// r = floor(log2(d+1)), the exponent that fixes every bridge universe.
unsigned shift_exponent(Part d);

/// {x = 1, d (mod d+1)} + {2d} - {d}: the mu-universe of Q_{d-2}^(1) once the
/// part d has moved into pi.
EventuallyPeriodicSet build_S_shift2(Part d);

/// {y = 1, d+2, d+4, ..., d+2^(r-2) (mod 2d)} minus the listed exclusions.
/// Exclusions must come from {d+2, d+4, d+8, d+16}.
EventuallyPeriodicSet build_T_r(Part d, unsigned r, const std::vector<Part>& exclusions);

/// Same residue ladder but running up to d+2^top_power; used for the
/// pure-denominator bridge where the ladder stops at d+2^(r-1).
EventuallyPeriodicSet build_ladder(Part d, unsigned top_power, const std::vector<Part>& exclusions);

/// {x = 1, d-alpha+2 (mod d-alpha+3)} + {2d-2alpha+4, 2d-2alpha+8}
///   - {d-alpha+2, d-alpha+4}
EventuallyPeriodicSet build_S_shift_alpha(Part d, Part alpha);

struct DominanceResult {
  bool holds = true;
  std::optional<std::size_t> first_failure;
  std::size_t horizon = 0;
  /// Only set by dominates_all: whether the per-period gain of the dominating
  /// set is at least that of the dominated one.
  bool gain_ok = true;
};

/// element_at(a, i) >= element_at(b, i) for every i <= horizon.
DominanceResult dominates(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b, std::size_t horizon);

/// Index horizon past which the elementwise difference a_i - b_i repeats
/// with a nonnegative drift per common index period, if gains allow.
std::size_t conclusive_horizon(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b);

/// Domination for every index: a finite window check plus the per-period
/// gain comparison.
DominanceResult dominates_all(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b);

// ---------------------------------------------------------------------------
// Closed forms for the i-th element, as tabulated row by row.

struct AffineInK {
  std::int64_t per_k = 0;
  std::int64_t base = 0;
  std::int64_t at(std::int64_t k) const { return per_k * k + base; }
};

/// Index pattern i = period*k + offset (k >= k_min), or the single index
/// `offset` when period == 0. Value = d_coef(k)*d + unit_coef(k)*U + constant,
/// where U = d + unit_offset of the owning table.
struct ClosedFormRow {
  std::uint64_t period = 0;
  std::uint64_t offset = 0;
  std::uint64_t k_min = 0;
  AffineInK d_coef;
  AffineInK unit_coef;
  std::int64_t constant = 0;
  std::string label;
};

struct ClosedFormTable {
  std::string id;
  std::int64_t unit_offset = 0;
  std::vector<ClosedFormRow> rows;

  /// Value of the row covering index i at this d, or nullopt if no row does.
  std::optional<std::int64_t> evaluate(std::size_t i, std::int64_t d) const;
};

struct ClosedFormCheck {
  bool ok = true;
  std::size_t depth = 0;
  std::optional<std::size_t> first_mismatch;
  std::optional<std::int64_t> table_value;
  std::optional<Part> set_value;
};

ClosedFormCheck closed_form_check(const EventuallyPeriodicSet& set, const ClosedFormTable& table, std::int64_t d,
                                  std::size_t depth);

/// x_i column of "Elements of S and T_7".
ClosedFormTable table_S_shift2();
/// y_{7,i} column of "Elements of S and T_7".
ClosedFormTable table_T7();
/// Row r (8..12) of "Elements of T_r": the first ten elements only.
ClosedFormTable table_Tr(unsigned r);
/// x_i column of "Elements of S and T_12".
ClosedFormTable table_S_alpha(Part alpha);
/// y_{12,i} column of "Elements of S and T_12" exactly as printed. It has ten
/// rows per 2d block where T_12 has eleven (the 2(k+1)d+1 family is missing),
/// so it disagrees with the set from i = 8 on.
ClosedFormTable table_T12_printed();
/// The same column with the missing residue-1 family restored.
ClosedFormTable table_T12();

}  // namespace alder
