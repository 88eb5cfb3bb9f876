#include "alder/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "alder/part_sets.hpp"
#include "alder/series.hpp"

namespace alder {

std::vector<Count> CountSource::gap(Part a, Part d, std::uint64_t max_n) const {
  return gap_counts(GapSpec(a, d), max_n);
}

std::vector<Count> CountSource::congruence(Part a, Part d, Variant variant, std::uint64_t max_n) const {
  return congruence_counts(CongruenceSpec(a, d, variant), max_n);
}

const CountSource& direct_counts() {
  static const CountSource source;
  return source;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::PassWithExpectedExceptions: return "pass-with-expected-exceptions";
  }
  return "?";
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Proved: return "proved";
    case Regime::Conjectured: return "conjectured";
    case Regime::Unclaimed: return "unclaimed";
  }
  return "?";
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Equal: return "=";
    case Relation::AtMost: return "<=";
    case Relation::AtLeast: return ">=";
  }
  return "?";
}

Regime inequality_regime(Part a, Part d) {
  if (a < 1 || d < 1) throw InvalidArgument("inequality_regime: a, d must be >= 1");
  if (a == 1) return Regime::Proved;
  if (a == 2) {
    if (d == 126 || d >= 253) return Regime::Proved;
    if (d % 2 == 0 || d >= 9) return Regime::Conjectured;
    return Regime::Unclaimed;
  }
  if (d >= a * 4095) return Regime::Proved;
  if (a == 3 && d % 3 == 0 && d >= 381) return Regime::Proved;
  if (a == 3) return (d >= 4 && d != 6 && d != 9) ? Regime::Conjectured : Regime::Unclaimed;
  return d + 2 >= 4 * a ? Regime::Conjectured : Regime::Unclaimed;
}

std::vector<std::uint64_t> theorem_exceptions(Part a, Part d) {
  if (a == 2 && d % 2 == 1) return {d + 1, d + 3, d + 5};
  if (a >= 3 && (d + 3) % a == 0) return {d - a + 3, d + 3, d + a + 3};
  if (a > 3) return {d + a + 3};
  return {};
}

std::vector<std::uint64_t> InequalityReport::violation_ns() const {
  std::vector<std::uint64_t> ns;
  for (const auto& v : violations) ns.push_back(v.n);
  return ns;
}

namespace {

void settle_verdict(InequalityReport& rep) {
  auto ns = rep.violation_ns();
  if (ns.empty())
    rep.verdict = Verdict::Pass;
  else if (ns == rep.expected_exceptions)
    rep.verdict = Verdict::PassWithExpectedExceptions;
  else
    rep.verdict = Verdict::Fail;
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

void guard_proved(const InequalityReport& rep) {
  if (rep.regime == Regime::Proved && rep.verdict == Verdict::Fail)
    throw ProvedRangeViolation(rep.relation + " fails inside a proved range at a=" + std::to_string(rep.a) +
                               ", d=" + std::to_string(rep.d) + ": n = {" + join(rep.violation_ns()) + "}");
}

InequalityReport pointwise_report(Part a, Part d, std::uint64_t n_lo, std::uint64_t n_hi, Variant variant,
                                  const CountSource& source) {
  if (n_lo > n_hi) throw InvalidArgument("n range is empty");
  InequalityReport rep;
  rep.relation = variant == Variant::Full ? "q_d^(a)(n) >= Q_d^(a)(n)" : "q_d^(a)(n) >= Q_d^(a,-)(n)";
  rep.a = a;
  rep.d = d;
  rep.n_lo = n_lo;
  rep.n_hi = n_hi;
  rep.variant = variant;
  auto q = source.gap(a, d, n_hi);
  auto Q = source.congruence(a, d, variant, n_hi);
  for (std::uint64_t n = n_lo; n <= n_hi; ++n)
    if (q[n] < Q[n]) rep.violations.push_back({n, q[n], Q[n]});
  if (variant == Variant::Full) {
    rep.regime = inequality_regime(a, d);
    for (auto e : theorem_exceptions(a, d))
      if (e >= n_lo && e <= n_hi) rep.expected_exceptions.push_back(e);
  }
  settle_verdict(rep);
  return rep;
}

}  // namespace

InequalityReport check_pointwise(Part a, Part d, std::uint64_t n_lo, std::uint64_t n_hi, Variant variant,
                                 const CountSource& source, bool throw_in_proved_range) {
  CongruenceSpec(a, d, variant);  // validates a, d
  auto rep = pointwise_report(a, d, n_lo, n_hi, variant, source);
  if (throw_in_proved_range) guard_proved(rep);
  return rep;
}

InequalityReport check_lemma_shift(Part a, Part d, std::uint64_t n_lo, std::uint64_t n_hi,
                                   const CountSource& source, bool throw_in_proved_range) {
  if (a < 1 || d < 1) throw InvalidArgument("check_lemma_shift: a, d must be >= 1");
  if (n_lo < d + 2 * a)
    throw InvalidArgument("check_lemma_shift: requires n >= d+2a = " + std::to_string(d + 2 * a));
  if (n_lo > n_hi) throw InvalidArgument("n range is empty");
  Part dr = (d + a - 1) / a;
  InequalityReport rep;
  rep.relation = "q_d^(a)(n) >= q_{ceil(d/a)}^(1)(ceil(n/a))";
  rep.a = a;
  rep.d = d;
  rep.n_lo = n_lo;
  rep.n_hi = n_hi;
  rep.regime = Regime::Proved;
  auto lhs = source.gap(a, d, n_hi);
  auto rhs = source.gap(1, dr, (n_hi + a - 1) / a);
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    const Count& r = rhs[(n + a - 1) / a];
    if (lhs[n] < r) rep.violations.push_back({n, lhs[n], r});
  }
  settle_verdict(rep);
  if (throw_in_proved_range) guard_proved(rep);
  return rep;
}

InequalityReport check_exceptions_level_a(Part a, Part d, std::uint64_t nmax, const CountSource& source,
                                          bool throw_in_proved_range) {
  if (a < 3) throw InvalidArgument("check_exceptions_level_a: requires a >= 3");
  return check_pointwise(a, d, 1, nmax, Variant::Full, source, throw_in_proved_range);
}

// ---------------------------------------------------------------------------

bool ChainReport::holds() const {
  return std::all_of(links.begin(), links.end(), [](const ChainLink& l) { return !l.applies || l.holds; });
}

namespace {

std::string fn_label(const char* fn, Part a, Part d, std::uint64_t n) {
  std::ostringstream os;
  os << fn << "_" << d << "^(" << a << ")(" << n << ")";
  return os.str();
}

bool chain_covered(Part a, Part d, std::uint64_t n) {
  if (n < d + 2 * a) return false;
  if (a == 2) {
    if (d % 2 == 0) return (d == 126 || d >= 254) && n >= d + 7;
    return d >= 253 && n >= d + 9;
  }
  return inequality_regime(a, d) == Regime::Proved;
}

}  // namespace

ChainReport check_chain(Part a, Part d, std::uint64_t n) {
  if (a < 2) throw InvalidArgument("check_chain: requires a >= 2");
  CongruenceSpec(a, d);
  ChainReport rep;
  rep.a = a;
  rep.d = d;
  rep.n = n;
  rep.reduced_d = (d + a - 1) / a;
  rep.reduced_n = (n + a - 1) / a;
  rep.alpha = (a == 2 || (a == 3 && d % 3 == 0)) ? 2 : 4;
  const Part dr = rep.reduced_d;
  const std::uint64_t nr = rep.reduced_n;
  if (dr < rep.alpha + 1) throw InvalidArgument("check_chain: ceil(d/a) must exceed alpha");
  const Part shifted = dr - rep.alpha;
  rep.dilated_d = a * shifted + 3 * a - 3;
  rep.covered = chain_covered(a, d, n);

  Count q_top = count_gap(GapSpec(a, d), n);
  Count q_red = count_gap(GapSpec(1, dr), nr);
  Count Q_red = count_congruence(CongruenceSpec(1, shifted), nr);
  Count Q_dil = count_congruence(CongruenceSpec(a, rep.dilated_d), a * nr);
  Count Q_top = count_congruence(CongruenceSpec(a, d), n);

  auto link = [&](std::string name, std::string l, const Count& lv, std::string rel, std::string r,
                  const Count& rv, bool applies) {
    bool holds = rel == "=" ? lv == rv : lv >= rv;
    rep.links.push_back({std::move(name), std::move(l), lv, std::move(rel), std::move(r), rv, holds, applies});
  };
  const std::string q_red_label = fn_label("q", 1, dr, nr);
  const std::string Q_red_label = fn_label("Q", 1, shifted, nr);
  link("level-shift", fn_label("q", a, d, n), q_top, ">=", q_red_label, q_red, n >= d + 2 * a);

  const unsigned r = shift_exponent(dr);
  const bool has_bridge = is_power_of_two(dr + 1) ? dr >= 3 : r >= 4;
  if (has_bridge) {
    Count g = bridge_series(dr, nr)[nr];
    const bool far = nr >= 4 * dr + (std::uint64_t{1} << r);
    std::string g_label = (is_power_of_two(dr + 1) ? "L_" : "g_") + std::to_string(dr) + "(" + std::to_string(nr) + ")";
    link("bridge-lower", q_red_label, q_red, ">=", g_label, g, far);
    link("bridge-upper", g_label, g, ">=", Q_red_label, Q_red, far);
  }
  link("shift", q_red_label, q_red, ">=", Q_red_label, Q_red, nr >= dr + 4);
  link("dilation", Q_red_label, Q_red, "=", fn_label("Q", a, rep.dilated_d, a * nr), Q_dil, true);
  link("final", fn_label("Q", a, rep.dilated_d, a * nr), Q_dil, ">=", fn_label("Q", a, d, n), Q_top, true);
  return rep;
}

// ---------------------------------------------------------------------------

bool TableCheck::all_match() const {
  return std::all_of(rows.begin(), rows.end(), [](const TableRowCheck& r) { return r.match; });
}

std::vector<TableInfo> list_tables() {
  return {
      {"qd1", "Values of q_d^(1)(n)", {"d", "r"}},
      {"Qdm2", "Values of Q_{d-2}^(1)(n)", {"d"}},
      {"qd2", "Values of q_d^(2)(n)", {"d"}},
      {"Qd2-even", "Values of Q_d^(2)(n) for even d", {"d"}},
      {"Qd2-odd", "Values of Q_d^(2)(n) for odd d", {"d"}},
      {"Qdma1", "Values of q_d^(1)(n) and Q_{d-alpha}^(1)(n)", {"d", "alpha"}},
      {"lv3", "Values of q_d^(3)(n) and Q_d^(3)(n)", {"d"}},
      {"lva", "Values of q_d^(a)(n) and Q_d^(a)(n)", {"a", "d"}},
      {"S", "Elements of S and T_7: x_i", {"d", "depth"}},
      {"T7", "Elements of S and T_7: y_{7,i}", {"d", "depth"}},
      {"Tr", "Elements of T_r (first ten)", {"d", "r"}},
      {"S-alpha", "Elements of S and T_12: x_i", {"d", "alpha", "depth"}},
      {"T12", "Elements of S and T_12: y_{12,i} (with the 2(k+1)d+1 family)", {"d", "depth"}},
      {"T12-printed", "Elements of S and T_12: y_{12,i} as printed", {"d", "depth"}},
  };
}

namespace {

using Value = std::function<std::int64_t(std::int64_t)>;

struct RowSpec {
  std::string label;
  std::int64_t lo;
  std::int64_t hi;
  char column;  // 'q' or 'Q'
  Relation relation;
  std::string formula;
  Value value;
};

Value constant(std::int64_t c) {
  return [c](std::int64_t) { return c; };
}

Value divides_n(std::int64_t m, std::int64_t scale = 1) {
  return [m, scale](std::int64_t n) { return n % m == 0 ? scale : 0; };
}

Value at_least_n(std::int64_t m) {
  return [m](std::int64_t n) { return n >= m ? 1 : 0; };
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

// Partitions of m into parts <= 3.
std::int64_t p3(std::int64_t m) { return m < 0 ? 0 : ((m + 3) * (m + 3) + 6) / 12; }

std::string pm(const std::string& base, std::int64_t c) {
  if (c == 0) return base;
  return base + (c > 0 ? "+" : "-") + std::to_string(c < 0 ? -c : c);
}

struct TableSpec {
  std::string caption;
  Part q_level = 0, q_gap = 0;
  Part Q_level = 0, Q_d = 0;
  std::vector<RowSpec> rows;
};

RowSpec point(std::string label, std::int64_t n, char column, Relation rel, std::int64_t v) {
  return {std::move(label), n, n, column, rel, std::to_string(v), constant(v)};
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

TableSpec spec_qd1(std::int64_t d, unsigned r) {
  require(d >= 8, "table qd1: requires d >= 8");
  std::int64_t top = 4 * d + (std::int64_t{1} << r);
  TableSpec t{"Values of q_d^(1)(n)", 1, static_cast<Part>(d), 0, 0, {}};
  t.rows = {
      {"1~d", 1, d, 'q', Relation::Equal, "1", constant(1)},
      point("d+1", d + 1, 'q', Relation::Equal, 1),
      point("d+2", d + 2, 'q', Relation::Equal, 2),
      point("d+3", d + 3, 'q', Relation::Equal, 2),
      {"d+4~3d+2", d + 4, 3 * d + 2, 'q', Relation::Equal, "1+floor((n-d)/2)",
       [d](std::int64_t n) { return 1 + (n - d) / 2; }},
      {"3d+3~4d+2^r", 3 * d + 3, top, 'q', Relation::Equal, "1+floor((n-d)/2)+p3(n-3d-3)",
       [d](std::int64_t n) { return 1 + (n - d) / 2 + p3(n - 3 * d - 3); }},
  };
  return t;
}

TableSpec spec_Qdm2(std::int64_t d) {
  require(d >= 16, "table Qdm2: requires d >= 16");
  TableSpec t{"Values of Q_{d-2}^(1)(n)", 0, 0, 1, static_cast<Part>(d - 2), {}};
  struct R {
    const char* label;
    std::int64_t lo_k, lo_c, hi_k, hi_c, v;
  };
  const R rows[] = {
      {"1~d-1", 0, 1, 1, -1, 1},      {"d~d+1", 1, 0, 1, 1, 2},       {"d+2~2d-1", 1, 2, 2, -1, 3},
      {"2d", 2, 0, 2, 0, 4},          {"2d+1", 2, 1, 2, 1, 5},        {"2d+2", 2, 2, 2, 2, 6},
      {"2d+3", 2, 3, 2, 3, 7},        {"2d+4~3d-1", 2, 4, 3, -1, 8},  {"3d", 3, 0, 3, 0, 9},
      {"3d+1", 3, 1, 3, 1, 10},       {"3d+2", 3, 2, 3, 2, 12},       {"3d+3", 3, 3, 3, 3, 14},
      {"3d+4", 3, 4, 3, 4, 16},       {"3d+5", 3, 5, 3, 5, 17},       {"3d+6~4d-1", 3, 6, 4, -1, 18},
      {"4d", 4, 0, 4, 0, 19},         {"4d+1", 4, 1, 4, 1, 20},       {"4d+2", 4, 2, 4, 2, 23},
      {"4d+3", 4, 3, 4, 3, 26},       {"4d+4", 4, 4, 4, 4, 30},       {"4d+5", 4, 5, 4, 5, 33},
      {"4d+6", 4, 6, 4, 6, 36},       {"4d+7", 4, 7, 4, 7, 37},       {"4d+8~5d-1", 4, 8, 5, -1, 38},
      {"5d", 5, 0, 5, 0, 39},
  };
  for (const auto& r : rows)
    t.rows.push_back({r.label, r.lo_k * d + r.lo_c, r.hi_k * d + r.hi_c, 'Q', Relation::Equal, std::to_string(r.v),
                      constant(r.v)});
  return t;
}

TableSpec spec_qd2(std::int64_t d) {
  require(d >= 4, "table qd2: requires d >= 4");
  TableSpec t{"Values of q_d^(2)(n)", 2, static_cast<Part>(d), 0, 0, {}};
  t.rows = {
      point("1", 1, 'q', Relation::Equal, 0),
      {"2~d+3", 2, d + 3, 'q', Relation::Equal, "1", constant(1)},
      {"d+4~d+8", d + 4, d + 8, 'q', Relation::Equal, "floor((n-d)/2)", [d](std::int64_t n) { return (n - d) / 2; }},
  };
  return t;
}

TableSpec spec_Qd2_even(std::int64_t d) {
  require(d >= 8 && d % 2 == 0, "table Qd2-even: requires even d >= 8");
  TableSpec t{"Values of Q_d^(2)(n) for even d", 0, 0, 2, static_cast<Part>(d), {}};
  t.rows = {
      {"1~d", 1, d, 'Q', Relation::Equal, "delta_even", divides_n(2)},
      point("d+1", d + 1, 'Q', Relation::Equal, 1),
      point("d+2", d + 2, 'Q', Relation::Equal, 1),
      point("d+3", d + 3, 'Q', Relation::Equal, 1),
      point("d+4", d + 4, 'Q', Relation::Equal, 1),
      point("d+5", d + 5, 'Q', Relation::Equal, 2),
      point("d+6", d + 6, 'Q', Relation::Equal, 1),
  };
  return t;
}

TableSpec spec_Qd2_odd(std::int64_t d) {
  require(d >= 9 && d % 2 == 1, "table Qd2-odd: requires odd d >= 9");
  TableSpec t{"Values of Q_d^(2)(n) for odd d", 0, 0, 2, static_cast<Part>(d), {}};
  t.rows = {
      {"1~d", 1, d, 'Q', Relation::Equal, "delta_even", divides_n(2)},
      point("d+1", d + 1, 'Q', Relation::Equal, 2),
      point("d+3", d + 3, 'Q', Relation::Equal, 2),
      {"d+5~d+8", d + 5, d + 8, 'Q', Relation::Equal, "3*delta_even", divides_n(2, 3)},
  };
  return t;
}

TableSpec spec_Qdma1(std::int64_t d, std::int64_t al) {
  require(al >= 3 && d >= 4 * al, "table Qdma1: requires alpha >= 3 and d >= 4 alpha");
  TableSpec t{"Values of q_d^(1)(n) and Q_{d-alpha}^(1)(n)", 1, static_cast<Part>(d), 1, static_cast<Part>(d - al),
              {}};
  auto halfway = [d](std::int64_t n) { return floor_div(n - d + 2, 2); };
  const std::int64_t u = d - al;
  auto add = [&](std::string label, std::int64_t lo, std::int64_t hi, char col, Relation rel, std::string f,
                 Value v) { t.rows.push_back({std::move(label), lo, hi, col, rel, std::move(f), std::move(v)}); };
  add("1~d-a+1", 1, u + 1, 'q', Relation::Equal, "1", constant(1));
  add("1~d-a+1", 1, u + 1, 'Q', Relation::Equal, "1", constant(1));
  add("d-a+2~d-a+3", u + 2, u + 3, 'q', Relation::Equal, "1", constant(1));
  add("d-a+2~d-a+3", u + 2, u + 3, 'Q', Relation::Equal, "2", constant(2));
  add("d-a+4~d+3", u + 4, d + 3, 'q', Relation::AtMost, "2", constant(2));
  add("d-a+4~d+3", u + 4, d + 3, 'Q', Relation::Equal, "3", constant(3));
  add("d+4~2d-2a+3", d + 4, 2 * u + 3, 'q', Relation::Equal, "floor((n-d+2)/2)", halfway);
  add("d+4~2d-2a+3", d + 4, 2 * u + 3, 'Q', Relation::Equal, "3", constant(3));
  std::int64_t half_d = (d - 2 * al + 4 + 1) / 2;  // ceil(d/2 - alpha + 2)
  add("2d-2a+4~2d-2a+7", 2 * u + 4, 2 * u + 7, 'q', Relation::AtLeast, "d/2-a+2", constant(half_d));
  add("2d-2a+4~2d-2a+7", 2 * u + 4, 2 * u + 7, 'Q', Relation::AtMost, "7", constant(7));
  add("2d-2a+8~3d-3a+5", 2 * u + 8, 3 * u + 5, 'q', Relation::Equal, "floor((n-d+2)/2)", halfway);
  add("2d-2a+8~3d-3a+5", 2 * u + 8, 3 * u + 5, 'Q', Relation::Equal, "8", constant(8));
  add("3d-3a+6~3d-3a+11", 3 * u + 6, 3 * u + 11, 'Q', Relation::AtMost, "17", constant(17));
  const std::int64_t plateau[][2] = {{3, 18}, {4, 38}, {5, 74}, {6, 139}};
  for (const auto& [k, v] : plateau) {
    std::int64_t lo = k * u + 4 * k, hi = (k + 1) * u + 2 * k + 1;
    std::string label = pm(std::to_string(k) + "d-" + std::to_string(k) + "a", 4 * k) + "~" +
                        pm(std::to_string(k + 1) + "d-" + std::to_string(k + 1) + "a", 2 * k + 1);
    add(label, lo, hi, 'q', Relation::AtLeast, "floor((n-d+2)/2)", halfway);
    add(label, lo, hi, 'Q', Relation::Equal, std::to_string(v), constant(v));
  }
  return t;
}

TableSpec spec_lv3(std::int64_t d) {
  require(d >= 12, "table lv3: requires d >= 12");
  const int col = static_cast<int>(d % 3);  // 0: d = 3d', 1: d = 3d'-2, 2: d = 3d'-1
  TableSpec t{"Values of q_d^(3)(n) and Q_d^(3)(n)", 3, static_cast<Part>(d), 3, static_cast<Part>(d), {}};
  t.rows.push_back({"1~d-1", 1, d - 1, 'q', Relation::Equal, "delta_{n>=3}", at_least_n(3)});
  t.rows.push_back({"1~d-1", 1, d - 1, 'Q', Relation::Equal, "delta_{3|n}", divides_n(3)});
  struct R {
    std::int64_t off, q, Q[3];
  };
  const R rows[] = {{0, 1, {2, 1, 1}}, {1, 1, {0, 0, 1}}, {2, 1, {0, 1, 0}}, {3, 1, {2, 1, 1}},
                    {4, 1, {0, 0, 1}}, {5, 1, {0, 1, 0}}, {6, 2, {3, 2, 2}}, {7, 2, {0, 0, 1}}};
  for (const auto& r : rows) {
    std::string label = pm("d", r.off);
    t.rows.push_back(point(label, d + r.off, 'q', Relation::Equal, r.q));
    t.rows.push_back(point(label, d + r.off, 'Q', Relation::Equal, r.Q[col]));
  }
  const std::int64_t cap[3] = {3, 2, 2};
  t.rows.push_back({"d+8~d+11", d + 8, d + 11, 'q', Relation::Equal, "floor((n-d-2)/2)",
                    [d](std::int64_t n) { return (n - d - 2) / 2; }});
  t.rows.push_back(
      {"d+8~d+11", d + 8, d + 11, 'Q', Relation::AtMost, std::to_string(cap[col]), constant(cap[col])});
  return t;
}

TableSpec spec_lva(std::int64_t a, std::int64_t d) {
  require(a >= 3 && d >= 4 * a, "table lva: requires a >= 3 and d >= 4a");
  const bool divides = (d + 3) % a == 0;
  TableSpec t{"Values of q_d^(a)(n) and Q_d^(a)(n)", static_cast<Part>(a), static_cast<Part>(d), static_cast<Part>(a),
              static_cast<Part>(d), {}};
  auto both = [&](std::string label, std::int64_t lo, std::int64_t hi, std::string qf, Value qv, Relation Qrel,
                  std::string Qf, Value Qv) {
    t.rows.push_back({label, lo, hi, 'q', Relation::Equal, std::move(qf), std::move(qv)});
    t.rows.push_back({label, lo, hi, 'Q', Qrel, std::move(Qf), std::move(Qv)});
  };
  const Value delta = divides_n(a);
  both("1~d-a+2", 1, d - a + 2, "delta_{n>=a}", at_least_n(a), Relation::Equal, "delta_{a|n}", delta);
  both("d-a+3", d - a + 3, d - a + 3, "1", constant(1), Relation::Equal, divides ? "2" : "1",
       constant(divides ? 2 : 1));
  both("d-a+4~d+2", d - a + 4, d + 2, "1", constant(1), Relation::Equal, "delta_{a|n}", delta);
  both("d+3", d + 3, d + 3, "1", constant(1), Relation::Equal, divides ? "2" : "0", constant(divides ? 2 : 0));
  both("d+4~d+a+2", d + 4, d + a + 2, "1", constant(1), Relation::Equal, "delta_{a|n}", delta);
  both("d+a+3", d + a + 3, d + a + 3, "1", constant(1), Relation::Equal, divides ? "3" : "2",
       constant(divides ? 3 : 2));
  both("d+a+4~d+2a-1", d + a + 4, d + 2 * a - 1, "1", constant(1), Relation::Equal, "delta_{a|n}", delta);
  for (std::int64_t off : {0, 1}) {
    std::string label = pm("d+2a", off);
    both(label, d + 2 * a + off, d + 2 * a + off, "2", constant(2), Relation::Equal, divides ? "0" : "delta_{a|n}",
         divides ? constant(0) : delta);
  }
  both("d+2a+2~d+4a-1", d + 2 * a + 2, d + 4 * a - 1, "floor((n-d-2a+4)/2)",
       [d, a](std::int64_t n) { return (n - d - 2 * a + 4) / 2; }, Relation::AtMost, divides ? "3" : "2",
       constant(divides ? 3 : 2));
  return t;
}

bool relation_holds(Relation rel, const Count& computed, std::int64_t expected) {
  Count e(static_cast<long>(expected));
  switch (rel) {
    case Relation::Equal: return computed == e;
    case Relation::AtMost: return computed <= e;
    case Relation::AtLeast: return computed >= e;
  }
  return false;
}

TableCheck evaluate_value_table(const std::string& id, const TableSpec& spec,
                                std::map<std::string, std::int64_t> params, const CountSource& source) {
  TableCheck out{id, spec.caption, std::move(params), {}};
  std::int64_t top = 0;
  for (const auto& r : spec.rows) {
    if (r.lo < 1) throw InvalidArgument("table " + id + ": row " + r.label + " starts below 1 at these parameters");
    top = std::max(top, r.hi);
  }
  std::vector<Count> q, Q;
  if (spec.q_level) q = source.gap(spec.q_level, spec.q_gap, static_cast<std::uint64_t>(top));
  if (spec.Q_level) Q = source.congruence(spec.Q_level, spec.Q_d, Variant::Full, static_cast<std::uint64_t>(top));
  for (const auto& r : spec.rows) {
    if (r.lo > r.hi) continue;  // range collapses at small a
    const auto& col = r.column == 'q' ? q : Q;
    TableRowCheck row;
    row.label = r.label;
    row.n_lo = static_cast<std::uint64_t>(r.lo);
    row.n_hi = static_cast<std::uint64_t>(r.hi);
    row.column = r.column == 'q' ? "q" : "Q";
    row.relation = r.relation;
    row.formula = r.formula;
    row.sample_n = row.n_lo;
    row.expected = r.value(r.lo);
    row.computed = col[row.n_lo];
    for (std::int64_t n = r.lo; n <= r.hi; ++n) {
      std::int64_t e = r.value(n);
      if (!relation_holds(r.relation, col[n], e)) {
        row.match = false;
        row.first_mismatch = n;
        row.sample_n = n;
        row.expected = e;
        row.computed = col[n];
        break;
      }
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

TableCheck evaluate_element_table(const std::string& id, const std::string& caption, const EventuallyPeriodicSet& set,
                                  const ClosedFormTable& table, std::int64_t d, std::size_t depth,
                                  std::map<std::string, std::int64_t> params, const char* column) {
  TableCheck out{id, caption, std::move(params), {}};
  for (std::size_t i = 1; i <= depth; ++i) {
    TableRowCheck row;
    row.label = "i=" + std::to_string(i);
    row.n_lo = row.n_hi = row.sample_n = i;
    row.column = column;
    row.relation = Relation::Equal;
    for (const auto& cf : table.rows) {
      bool covers = cf.period == 0 ? cf.offset == i
                                   : (i >= cf.offset + cf.period * cf.k_min && (i - cf.offset) % cf.period == 0);
      if (covers) {
        row.formula = cf.label;
        break;
      }
    }
    auto predicted = table.evaluate(i, d);
    Part actual = set.element_at(i);
    row.computed = to_count(actual);
    row.expected = predicted.value_or(-1);
    row.match = predicted && *predicted >= 0 && static_cast<Part>(*predicted) == actual;
    if (!predicted) row.formula = "(no row)";
    if (!row.match) row.first_mismatch = i;
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::int64_t as_int(Part v) { return static_cast<std::int64_t>(v); }

}  // namespace

TableCheck reproduce_table(const std::string& id, const TableParams& p, const CountSource& source) {
  const std::int64_t d = as_int(p.d);
  if (p.d < 1) throw InvalidArgument("table " + id + ": requires d >= 1");
  if (id == "qd1") {
    unsigned r = p.r ? p.r : shift_exponent(p.d);
    return evaluate_value_table(id, spec_qd1(d, r), {{"d", d}, {"r", r}}, source);
  }
  if (id == "Qdm2") return evaluate_value_table(id, spec_Qdm2(d), {{"d", d}}, source);
  if (id == "qd2") return evaluate_value_table(id, spec_qd2(d), {{"d", d}}, source);
  if (id == "Qd2-even") return evaluate_value_table(id, spec_Qd2_even(d), {{"d", d}}, source);
  if (id == "Qd2-odd") return evaluate_value_table(id, spec_Qd2_odd(d), {{"d", d}}, source);
  if (id == "Qdma1")
    return evaluate_value_table(id, spec_Qdma1(d, as_int(p.alpha)), {{"d", d}, {"alpha", as_int(p.alpha)}}, source);
  if (id == "lv3") return evaluate_value_table(id, spec_lv3(d), {{"d", d}}, source);
  if (id == "lva") return evaluate_value_table(id, spec_lva(as_int(p.a), d), {{"a", as_int(p.a)}, {"d", d}}, source);

  const std::int64_t depth = static_cast<std::int64_t>(p.depth);
  if (p.depth < 1) throw InvalidArgument("table " + id + ": depth must be >= 1");
  if (id == "S")
    return evaluate_element_table(id, "Elements of S and T_7: x_i", build_S_shift2(p.d), table_S_shift2(), d, p.depth,
                                  {{"d", d}, {"depth", depth}}, "x");
  if (id == "T7")
    return evaluate_element_table(id, "Elements of S and T_7: y_{7,i}", build_T_r(p.d, 7, {p.d + 4, p.d + 8}),
                                  table_T7(), d, p.depth, {{"d", d}, {"depth", depth}}, "y");
  if (id == "Tr") {
    unsigned r = p.r ? p.r : shift_exponent(p.d);
    return evaluate_element_table(id, "Elements of T_r", build_T_r(p.d, r, {p.d + 4, p.d + 8}), table_Tr(r), d, 10,
                                  {{"d", d}, {"r", r}}, "y");
  }
  if (id == "S-alpha")
    return evaluate_element_table(id, "Elements of S and T_12: x_i", build_S_shift_alpha(p.d, p.alpha),
                                  table_S_alpha(p.alpha), d, p.depth,
                                  {{"d", d}, {"alpha", as_int(p.alpha)}, {"depth", depth}}, "x");
  if (id == "T12" || id == "T12-printed") {
    auto set = build_T_r(p.d, 12, {p.d + 2, p.d + 4, p.d + 8, p.d + 16});
    auto table = id == "T12" ? table_T12() : table_T12_printed();
    return evaluate_element_table(id, "Elements of S and T_12: y_{12,i}", set, table, d, p.depth,
                                  {{"d", d}, {"depth", depth}}, "y");
  }
  throw InvalidArgument("unknown table id '" + id + "'");
}

TableCheck check_small_n_regime(Part a, Part d, const CountSource& source) {
  if (a < 2) throw InvalidArgument("check_small_n_regime: requires a >= 2");
  TableParams p;
  p.a = a;
  p.d = d;
  TableCheck out{"small-n", "small-n regime", {{"a", as_int(a)}, {"d", as_int(d)}}, {}};
  auto absorb = [&](const TableCheck& t) {
    for (auto row : t.rows) {
      row.label = t.table_id + ": " + row.label;
      out.rows.push_back(std::move(row));
    }
  };
  if (a == 2) {
    absorb(reproduce_table("qd2", p, source));
    absorb(reproduce_table(d % 2 == 0 ? "Qd2-even" : "Qd2-odd", p, source));
  } else if (a == 3) {
    absorb(reproduce_table("lv3", p, source));
  } else {
    absorb(reproduce_table("lva", p, source));
  }
  const std::uint64_t top = d + 4 * a;
  auto rep = pointwise_report(a, d, 1, top, Variant::Full, source);
  TableRowCheck row;
  row.label = "q >= Q on 1~d+4a";
  row.n_lo = 1;
  row.n_hi = top;
  row.column = "q-Q";
  row.relation = Relation::AtLeast;
  row.formula = "exceptions {" + join(rep.expected_exceptions) + "}, observed {" + join(rep.violation_ns()) + "}";
  row.match = rep.verdict != Verdict::Fail;
  row.sample_n = rep.violations.empty() ? 1 : rep.violations.front().n;
  row.expected = 0;
  row.computed = rep.violations.empty() ? Count(0) : Count(rep.violations.front().lhs - rep.violations.front().rhs);
  if (!row.match) row.first_mismatch = row.sample_n;
  out.rows.push_back(std::move(row));
  return out;
}

// ---------------------------------------------------------------------------

Conjecture parse_conjecture(const std::string& s) {
  if (s == "a") return Conjecture::LevelTwo;
  if (s == "b") return Conjecture::LevelThree;
  if (s == "c") return Conjecture::HigherLevel;
  throw InvalidArgument("unknown conjecture '" + s + "' (expected a, b or c)");
}

const char* to_string(Conjecture c) {
  switch (c) {
    case Conjecture::LevelTwo: return "a";
    case Conjecture::LevelThree: return "b";
    case Conjecture::HigherLevel: return "c";
  }
  return "?";
}

bool conjecture_claims(Conjecture c, Part a, Part d) {
  switch (c) {
    case Conjecture::LevelTwo: return a == 2 && (d % 2 == 0 || d >= 9);
    case Conjecture::LevelThree: return a == 3 && d >= 4 && d != 6 && d != 9;
    case Conjecture::HigherLevel: return a >= 4 && d + 2 >= 4 * a;
  }
  return false;
}

std::uint64_t default_scan_nmax(Part d) { return 4 * d + (std::uint64_t{1} << shift_exponent(d)) + 300; }

std::string ScanReport::summary() const {
  std::ostringstream os;
  os << "conjecture (" << to_string(which) << "), a=" << a << ": " << reports.size() << " value(s) of d scanned, "
     << findings.size() << " with violations outside the theorem exceptions";
  if (!findings.empty()) {
    os << " (d =";
    for (auto d : findings) os << " " << d;
    os << ")";
  }
  os << "; " << (consistent_with_conjecture() ? "consistent with" : "contradicts") << " the conjecture";
  return os.str();
}

ScanReport scan_conjectures(Conjecture which, Part a, const std::vector<Part>& ds, std::uint64_t nmax, unsigned jobs,
                            const CountSource& source) {
  if (which == Conjecture::LevelTwo && a != 2) throw InvalidArgument("conjecture (a) concerns a = 2");
  if (which == Conjecture::LevelThree && a != 3) throw InvalidArgument("conjecture (b) concerns a = 3");
  if (which == Conjecture::HigherLevel && a < 4) throw InvalidArgument("conjecture (c) concerns a >= 4");
  for (Part d : ds) CongruenceSpec(a, d);
  ScanReport out;
  out.which = which;
  out.a = a;
  std::vector<InequalityReport> reports(ds.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&]() {
    for (std::size_t i = next++; i < ds.size(); i = next++) {
      try {
        reports[i] = pointwise_report(a, ds[i], 1, nmax ? nmax : default_scan_nmax(ds[i]), Variant::Full, source);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  unsigned width = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(ds.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < width; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  for (std::size_t i = 0; i < ds.size(); ++i) out.reports[ds[i]] = std::move(reports[i]);
  for (const auto& [d, rep] : out.reports) {
    if (rep.verdict != Verdict::Fail) continue;
    out.findings.push_back(d);
    if (conjecture_claims(which, a, d)) out.contradictions.push_back(d);
  }
  return out;
}

}  // namespace alder
