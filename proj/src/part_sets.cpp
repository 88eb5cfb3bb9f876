#include "alder/part_sets.hpp"

#include <algorithm>
#include <numeric>

namespace alder {

unsigned shift_exponent(Part d) { return floor_log2(d + 1); }

EventuallyPeriodicSet build_S_shift2(Part d) {
  if (d < 5) throw InvalidArgument("build_S_shift2: requires d >= 5");
  return EventuallyPeriodicSet(d + 1, {1, d}, {2 * d}, {d});
}

EventuallyPeriodicSet build_ladder(Part d, unsigned top_power, const std::vector<Part>& exclusions) {
  if (d < 3) throw InvalidArgument("residue ladder: requires d >= 3");
  if (top_power < 1 || top_power >= 63 || (Part{1} << top_power) >= d)
    throw InvalidArgument("residue ladder: d+2^" + std::to_string(top_power) + " must stay below 2d");
  for (Part e : exclusions) {
    if (e != d + 2 && e != d + 4 && e != d + 8 && e != d + 16)
      throw InvalidArgument("residue ladder: exclusion " + std::to_string(e) + " is not one of d+2, d+4, d+8, d+16");
  }
  std::vector<Part> residues{1};
  for (unsigned k = 1; k <= top_power; ++k) residues.push_back(d + (Part{1} << k));
  return EventuallyPeriodicSet(2 * d, residues, {}, exclusions);
}

EventuallyPeriodicSet build_T_r(Part d, unsigned r, const std::vector<Part>& exclusions) {
  if (r < 3) throw InvalidArgument("build_T_r: requires r >= 3");
  return build_ladder(d, r - 2, exclusions);
}

EventuallyPeriodicSet build_S_shift_alpha(Part d, Part alpha) {
  if (alpha < 3) throw InvalidArgument("build_S_shift_alpha: requires alpha >= 3");
  if (d < 4 * alpha) throw InvalidArgument("build_S_shift_alpha: requires d >= 4*alpha");
  Part u = d - alpha + 3;
  return EventuallyPeriodicSet(u, {1, u - 1}, {2 * u - 2, 2 * u + 2}, {u - 1, u + 1});
}

// ---------------------------------------------------------------------------

DominanceResult dominates(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b, std::size_t horizon) {
  if (horizon < 1) throw InvalidArgument("dominates: horizon must be >= 1");
  DominanceResult res;
  res.horizon = horizon;
  for (std::size_t i = 1; i <= horizon; ++i) {
    if (a.element_at(i) < b.element_at(i)) {
      res.holds = false;
      res.first_failure = i;
      return res;
    }
  }
  return res;
}

std::size_t conclusive_horizon(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b) {
  std::size_t ca = a.residues().size(), cb = b.residues().size();
  std::size_t period = std::lcm(ca, cb);
  return std::max(a.periodic_from(), b.periodic_from()) + period;
}

DominanceResult dominates_all(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b) {
  std::size_t ca = a.residues().size(), cb = b.residues().size();
  std::size_t period = std::lcm(ca, cb);
  unsigned __int128 gain_a = static_cast<unsigned __int128>(period / ca) * a.modulus();
  unsigned __int128 gain_b = static_cast<unsigned __int128>(period / cb) * b.modulus();
  DominanceResult res = dominates(a, b, conclusive_horizon(a, b));
  res.gain_ok = gain_a >= gain_b;
  res.holds = res.holds && res.gain_ok;
  return res;
}

// ---------------------------------------------------------------------------

std::optional<std::int64_t> ClosedFormTable::evaluate(std::size_t i, std::int64_t d) const {
  const std::int64_t unit = d + unit_offset;
  for (const ClosedFormRow& row : rows) {
    std::int64_t k = 0;
    if (row.period == 0) {
      if (i != row.offset) continue;
    } else {
      if (i < row.offset || (i - row.offset) % row.period != 0) continue;
      k = static_cast<std::int64_t>((i - row.offset) / row.period);
      if (k < static_cast<std::int64_t>(row.k_min)) continue;
    }
    return row.d_coef.at(k) * d + row.unit_coef.at(k) * unit + row.constant;
  }
  return std::nullopt;
}

ClosedFormCheck closed_form_check(const EventuallyPeriodicSet& set, const ClosedFormTable& table, std::int64_t d,
                                  std::size_t depth) {
  if (depth < 1) throw InvalidArgument("closed_form_check: depth must be >= 1");
  ClosedFormCheck res;
  res.depth = depth;
  for (std::size_t i = 1; i <= depth; ++i) {
    Part actual = set.element_at(i);
    auto predicted = table.evaluate(i, d);
    if (!predicted || *predicted < 0 || static_cast<Part>(*predicted) != actual) {
      res.ok = false;
      res.first_mismatch = i;
      res.table_value = predicted;
      res.set_value = actual;
      return res;
    }
  }
  return res;
}

namespace {

ClosedFormRow fixed(std::size_t i, std::int64_t d_coef, std::int64_t unit_coef, std::int64_t constant,
                    std::string label) {
  return {0, i, 0, {0, d_coef}, {0, unit_coef}, constant, std::move(label)};
}

ClosedFormRow family(std::uint64_t period, std::uint64_t offset, std::uint64_t k_min, AffineInK d_coef,
                     AffineInK unit_coef, std::int64_t constant, std::string label) {
  return {period, offset, k_min, d_coef, unit_coef, constant, std::move(label)};
}

}  // namespace

ClosedFormTable table_S_shift2() {
  ClosedFormTable t{"S_shift2", 1, {}};
  t.rows = {
      fixed(1, 0, 0, 1, "1"),
      fixed(2, 1, 0, 2, "d+2"),
      fixed(3, 2, 0, 0, "2d"),
      family(6, 0, 1, {}, {3, 0}, -1, "3k(d+1)-1"),
      family(6, 1, 1, {}, {3, 0}, 1, "3k(d+1)+1"),
      family(6, 2, 1, {}, {3, 1}, -1, "(3k+1)(d+1)-1"),
      family(6, 3, 1, {}, {3, 1}, 1, "(3k+1)(d+1)+1"),
      family(6, 4, 0, {}, {3, 2}, -1, "(3k+2)(d+1)-1"),
      family(6, 5, 0, {}, {3, 2}, 1, "(3k+2)(d+1)+1"),
  };
  return t;
}

ClosedFormTable table_T7() {
  ClosedFormTable t{"T_7", 0, {}};
  t.rows = {
      fixed(1, 0, 0, 1, "1"),
      fixed(2, 1, 0, 2, "d+2"),
      fixed(3, 1, 0, 16, "d+16"),
      family(6, 0, 1, {2, 1}, {}, 2, "(2k+1)d+2"),
      family(6, 1, 1, {2, 1}, {}, 4, "(2k+1)d+4"),
      family(6, 2, 1, {2, 1}, {}, 8, "(2k+1)d+8"),
      family(6, 3, 1, {2, 1}, {}, 16, "(2k+1)d+16"),
      family(6, 4, 0, {2, 1}, {}, 32, "(2k+1)d+32"),
      family(6, 5, 0, {2, 2}, {}, 1, "2(k+1)d+1"),
  };
  return t;
}

ClosedFormTable table_Tr(unsigned r) {
  if (r < 8 || r > 12) throw InvalidArgument("table_Tr: tabulated for 8 <= r <= 12");
  ClosedFormTable t{"T_" + std::to_string(r), 0, {}};
  std::vector<ClosedFormRow> rows{fixed(1, 0, 0, 1, "1"), fixed(2, 1, 0, 2, "d+2")};
  // d+16, d+32, ..., d+2^(r-2), then 2d+1, 3d+2, 3d+4, ...
  std::size_t i = 3;
  for (unsigned k = 4; k <= r - 2 && i <= 10; ++k, ++i)
    rows.push_back(fixed(i, 1, 0, std::int64_t{1} << k, "d+" + std::to_string(1 << k)));
  if (i <= 10) rows.push_back(fixed(i++, 2, 0, 1, "2d+1"));
  for (std::int64_t c = 2; i <= 10; c *= 2, ++i) rows.push_back(fixed(i, 3, 0, c, "3d+" + std::to_string(c)));
  t.rows = std::move(rows);
  return t;
}

ClosedFormTable table_S_alpha(Part alpha) {
  // U = d - alpha + 3; 2d-2alpha+4 = 2U-2 and so on.
  ClosedFormTable t{"S_alpha", 3 - static_cast<std::int64_t>(alpha), {}};
  t.rows = {
      fixed(1, 0, 0, 1, "1"),
      fixed(2, 0, 2, -2, "2d-2a+4"),
      fixed(3, 0, 2, -1, "2d-2a+5"),
      fixed(4, 0, 2, 1, "2d-2a+7"),
      fixed(5, 0, 2, 2, "2d-2a+8"),
      family(10, 6, 0, {}, {5, 3}, -1, "(5k+3)(d-a+3)-1"),
      family(10, 7, 0, {}, {5, 3}, 1, "(5k+3)(d-a+3)+1"),
      family(10, 8, 0, {}, {5, 4}, -1, "(5k+4)(d-a+3)-1"),
      family(10, 9, 0, {}, {5, 4}, 1, "(5k+4)(d-a+3)+1"),
      family(10, 0, 1, {}, {5, 0}, -1, "5k(d-a+3)-1"),
      family(10, 1, 1, {}, {5, 0}, 1, "5k(d-a+3)+1"),
      family(10, 2, 1, {}, {5, 1}, -1, "(5k+1)(d-a+3)-1"),
      family(10, 3, 1, {}, {5, 1}, 1, "(5k+1)(d-a+3)+1"),
      family(10, 4, 1, {}, {5, 2}, -1, "(5k+2)(d-a+3)-1"),
      family(10, 5, 1, {}, {5, 2}, 1, "(5k+2)(d-a+3)+1"),
  };
  return t;
}

ClosedFormTable table_T12_printed() {
  ClosedFormTable t{"T_12_printed", 0, {}};
  t.rows = {
      fixed(1, 0, 0, 1, "1"),
      fixed(2, 1, 0, 32, "d+32"),
      fixed(3, 1, 0, 64, "d+64"),
      fixed(4, 1, 0, 128, "d+128"),
      fixed(5, 1, 0, 256, "d+256"),
      family(10, 6, 0, {2, 1}, {}, 512, "(2k+1)d+512"),
      family(10, 7, 0, {2, 1}, {}, 1024, "(2k+1)d+1024"),
      family(10, 8, 0, {2, 3}, {}, 2, "(2k+3)d+2"),
      family(10, 9, 0, {2, 3}, {}, 4, "(2k+3)d+4"),
      family(10, 0, 1, {2, 1}, {}, 8, "(2k+1)d+8"),
      family(10, 1, 1, {2, 1}, {}, 16, "(2k+1)d+16"),
      family(10, 2, 1, {2, 1}, {}, 32, "(2k+1)d+32"),
      family(10, 3, 1, {2, 1}, {}, 64, "(2k+1)d+64"),
      family(10, 4, 1, {2, 1}, {}, 128, "(2k+1)d+128"),
      family(10, 5, 1, {2, 1}, {}, 256, "(2k+1)d+256"),
  };
  return t;
}

ClosedFormTable table_T12() {
  ClosedFormTable t{"T_12", 0, {}};
  t.rows = {
      fixed(1, 0, 0, 1, "1"),
      family(11, 2, 0, {2, 1}, {}, 32, "(2k+1)d+32"),
      family(11, 3, 0, {2, 1}, {}, 64, "(2k+1)d+64"),
      family(11, 4, 0, {2, 1}, {}, 128, "(2k+1)d+128"),
      family(11, 5, 0, {2, 1}, {}, 256, "(2k+1)d+256"),
      family(11, 6, 0, {2, 1}, {}, 512, "(2k+1)d+512"),
      family(11, 7, 0, {2, 1}, {}, 1024, "(2k+1)d+1024"),
      family(11, 8, 0, {2, 2}, {}, 1, "2(k+1)d+1"),
      family(11, 9, 0, {2, 3}, {}, 2, "(2k+3)d+2"),
      family(11, 10, 0, {2, 3}, {}, 4, "(2k+3)d+4"),
      family(11, 0, 1, {2, 1}, {}, 8, "(2k+1)d+8"),
      family(11, 1, 1, {2, 1}, {}, 16, "(2k+1)d+16"),
  };
  return t;
}

}  // namespace alder
