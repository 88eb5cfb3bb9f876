// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "alder/injection.hpp"
#include "alder/part_sets.hpp"
#include "alder/partition.hpp"
#include "alder/series.hpp"
#include "alder/verifier.hpp"
#include "oracles.hpp"

using namespace alder;

namespace {

// Collects the first few failure messages of a criterion.
struct Ledger {
  std::vector<std::string> problems;
  std::size_t checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && problems.size() < 5) problems.push_back(what);
    if (!ok && problems.size() == 5) problems.push_back("...");
  }
};

std::string str(const Count& c) { return c.get_str(); }

template <typename T>
std::string list(const std::vector<T>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << '}';
  return os.str();
}

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<void(Ledger&)> body;
};

// ---------------------------------------------------------------------------

void table_Qdm2(Ledger& L) {
  const Part d = 130;
  const std::vector<std::pair<std::uint64_t, int>> want{{2 * d, 4},      {2 * d + 3, 7},  {3 * d + 2, 12}, {3 * d + 5, 17},
                                                        {4 * d + 4, 30}, {4 * d + 7, 37}, {5 * d, 39}};
  auto counts = congruence_counts(CongruenceSpec(1, d - 2), 5 * d);
  for (auto [n, v] : want) L.expect(counts[n] == v, "Q(" + std::to_string(n) + ") = " + str(counts[n]));
  auto table = reproduce_table("Qdm2", {.d = d});
  L.expect(table.all_match(), "table Qdm2 has a mismatching row");
}

void table_qd1(Ledger& L) {
  const Part d = 130;
  const std::uint64_t top = 4 * d + 128;
  auto q = gap_counts(GapSpec(1, d), top);
  for (std::uint64_t n = d + 4; n <= top; ++n) {
    std::uint64_t want = 1 + (n - d) / 2;
    if (n >= 3 * d + 3) want += oracle::at_most_three_parts(static_cast<std::int64_t>(n - 3 * d - 3));
    L.expect(q[n] == want, "q(" + std::to_string(n) + ") = " + str(q[n]) + ", closed form " + std::to_string(want));
  }
  for (std::uint64_t n = 0; n <= 400; ++n) {
    auto listed = enumerate_gap(GapSpec(1, d), n).size();
    L.expect(q[n] == listed, "q(" + std::to_string(n) + ") disagrees with enumeration");
  }
  L.expect(reproduce_table("qd1", {.d = d}).all_match(), "table qd1 has a mismatching row");
}

void product_forms(Ledger& L) {
  for (auto [a, d] : std::vector<std::pair<Part, Part>>{{2, 10}, {2, 254}, {3, 20}, {5, 40}}) {
    auto p = congruence_series(a, d, 2000, ProductForm::Product);
    auto r = congruence_series(a, d, 2000, ProductForm::Rewritten);
    auto c = congruence_counts(CongruenceSpec(a, d), 2000);
    auto tag = "(a=" + std::to_string(a) + ", d=" + std::to_string(d) + ")";
    L.expect(p == r, tag + ": product forms differ");
    for (std::uint64_t n = 0; n <= 2000; ++n) L.expect(p[n] == c[n], tag + ": series vs count at n=" + std::to_string(n));
  }
}

void bridge_bounds(Ledger& L) {
  {
    const Part d = 130;
    auto g = mixed_bridge_series(d, 948);
    auto q = gap_counts(GapSpec(1, d), 948);
    for (std::uint64_t n = 648; n <= 948; ++n)
      L.expect(g[n] <= q[n], "g_130(" + std::to_string(n) + ") = " + str(g[n]) + " > q = " + str(q[n]));
  }
  {
    const Part d = 127;
    auto l = full_bridge_series(d, 1500);
    auto q = gap_counts(GapSpec(1, d), 1500);
    for (std::uint64_t n = 1; n <= 1500; ++n)
      L.expect(l[n] <= q[n], "L_127(" + std::to_string(n) + ") = " + str(l[n]) + " > q = " + str(q[n]));
  }
}

void injection_certificates(Ledger& L) {
  for (const auto& inst : replace_pad_instances())
    for (std::uint64_t w = 0; w <= 60; w += inst.unit) {
      auto c = certify_replace_and_pad(inst.source, inst.target, inst.unit, w);
      L.expect(c.passes(), "phi " + inst.name + " at weight " + std::to_string(w));
    }
  const Part d = 130;
  const std::uint64_t lo = 4 * d + 128;
  auto g = mixed_bridge_series(d, lo + 40);
  auto Q = congruence_counts(CongruenceSpec(1, d - 2), lo + 40);
  for (std::uint64_t n = lo; n <= lo + 40; ++n) {
    auto c = certify_shift(d, n);
    auto at = std::to_string(n);
    L.expect(c.images_distinct, "psi images collide at n=" + at);
    L.expect(c.weight_ok, "psi changes weight at n=" + at);
    L.expect(c.image_valid, "psi image outside g_d at n=" + at);
    L.expect(c.passes(), "psi certificate fails at n=" + at);
    L.expect(Q[n] == c.domain_size, "psi domain differs from Q at n=" + at);
    L.expect(Q[n] <= g[n], "Q > g at n=" + at);
  }
  for (Part dd : {10, 254})
    for (std::uint64_t N = 1; N <= 400; N += 2) {
      auto c = certify_odd_to_even_lift(dd, N, EnumerationCap{5'000'000});
      L.expect(c.passes(), "beta lift d=" + std::to_string(dd) + " N=" + std::to_string(N));
    }
}

void reduced_scale_structure(Ledger& L) {
  // alpha-free level-3 route: d = 381 reduces to d' = 127 = 2^7 - 1
  const Part dp = 127;
  ShiftInjector psi(dp);
  const std::uint64_t lo = 4 * dp + 128;
  std::set<std::string> branches;
  for (std::uint64_t n = lo; n <= lo + 30; ++n) {
    auto c = certify_shift(dp, n);
    L.expect(c.passes(), "psi at d'=127, n'=" + std::to_string(n));
    for (const auto& [b, k] : c.branch_counts)
      if (k) branches.insert(b);
    for (const auto& pair : enumerate_pairs(LevelPairs{1, dp - 2}, n)) {
      auto img = psi.apply(pair);
      if (img.branch != ShiftBranch::Marked) continue;
      auto m = *psi.source().index_of(pair.mu.smallest_above(1));
      auto t = triangular_decompose(m);
      L.expect(img.image.multiplicity(psi.high_marker()) == t.j &&
                   img.image.multiplicity(psi.low_marker()) == t.ell - t.j,
               "marker counts disagree with the triangular index at m=" + std::to_string(m));
      L.expect(img.image.multiplicity(1) >= static_cast<std::uint64_t>(psi.padding_for_index(m)),
               "padding short at m=" + std::to_string(m));
    }
  }
  for (const char* b : {"direct", "all-ones", "marked"})
    L.expect(branches.count(b) == 1, std::string("branch never taken: ") + b);
  for (std::size_t m = 2; psi.source().element_at(m) <= 20 * dp; ++m)
    if (psi.source().element_at(m) > 1) L.expect(psi.padding_for_index(m) >= 0, "negative padding at m=" + std::to_string(m));

  // chain at a = 3, d = 381 over the bridge window
  const Part d = 381;
  const std::uint64_t start = 4 * d + (Part{1} << floor_log2(d + 1));
  for (std::uint64_t n = start; n <= start + 30; ++n) {
    auto rep = check_chain(3, d, n);
    L.expect(rep.covered && rep.holds(), "chain fails at a=3, d=381, n=" + std::to_string(n));
    L.expect(rep.alpha == 2 && rep.reduced_d == dp, "chain does not take the alpha-free route");
  }

  // full-bound alpha map
  AlphaShiftInjector alpha(4095, 4);
  for (std::size_t m = 2; alpha.source().element_at(m) <= 20 * 4095; ++m) {
    if (alpha.source().element_at(m) == 1) continue;
    L.expect(alpha.pair_padding_for_index(m) >= 0, "alpha pair padding negative at m=" + std::to_string(m));
    L.expect(alpha.single_padding_for_index(alpha.low_special(), m) >= 0, "alpha low padding negative");
    L.expect(alpha.single_padding_for_index(alpha.high_special(), m) >= 0, "alpha high padding negative");
  }
  auto c = certify_alpha_shift(4095, 4, 4 * 4095 + 4096);
  L.expect(c.passes(), "alpha certificate fails at d=4095");
  for (const char* b : {"direct", "all-ones", "marked", "pair-all-ones", "pair-marked"})
    L.expect(c.branch_counts.count(b) && c.branch_counts.at(b) > 0, std::string("alpha branch never taken: ") + b);
}

void theorem_level_two(Ledger& L) {
  for (Part d : {126, 254, 256}) {
    auto r = check_pointwise(2, d, 1, d + 310, Variant::Full, direct_counts(), false);
    L.expect(r.violations.empty(), "d=" + std::to_string(d) + " violations " + list(r.violation_ns()));
  }
  auto r = check_pointwise(2, 255, 1, 255 + 310, Variant::Full, direct_counts(), false);
  L.expect(r.violation_ns() == std::vector<std::uint64_t>{256, 258, 260}, "d=255 violations " + list(r.violation_ns()));
}

void exception_sets(Ledger& L) {
  auto r3 = check_exceptions_level_a(3, 381, 381 + 12 + 60, direct_counts(), false);
  L.expect(r3.violation_ns() == std::vector<std::uint64_t>{381, 384, 387}, "a=3, d=381: " + list(r3.violation_ns()));
  // 4 | d+3 and 4 does not divide d+3, at reduced and at theorem scale
  for (Part d : {41, 42, 16377, 16378}) {
    auto rep = check_exceptions_level_a(4, d, d + 16 + 60, direct_counts(), false);
    auto want = theorem_exceptions(4, d);
    auto tag = "a=4, d=" + std::to_string(d);
    L.expect(rep.violation_ns() == want, tag + ": " + list(rep.violation_ns()) + " vs " + list(want));
    auto table = reproduce_table("lva", {.d = d, .a = 4});
    for (const auto& row : table.rows) {
      // the printed Q value 0 at d+3 is wrong when a does not divide d+3
      bool misprint = row.label == "d+3" && row.column == "Q" && (d + 3) % 4 != 0;
      if (misprint)
        L.expect(!row.match && row.computed == 1, tag + ": d+3 misprint row unexpectedly matches");
      else
        L.expect(row.match, tag + ": row " + row.label + " " + row.column + " mismatch at n=" + std::to_string(row.sample_n));
    }
  }
}

void conjecture_scans(Ledger& L) {
  std::vector<Part> even, odd, b;
  for (Part d = 2; d <= 40; d += 2) even.push_back(d);
  for (Part d = 9; d <= 39; d += 2) odd.push_back(d);
  for (Part d = 4; d <= 30; ++d) b.push_back(d);
  const unsigned jobs = 4;

  auto se = scan_conjectures(Conjecture::LevelTwo, 2, even, 0, jobs);
  L.expect(se.findings.empty(), "(a) even findings " + list(se.findings));
  for (const auto& [d, r] : se.reports) L.expect(r.violations.empty(), "(a) even d=" + std::to_string(d) + " has violations");

  auto so = scan_conjectures(Conjecture::LevelTwo, 2, odd, 0, jobs);
  L.expect(so.findings.empty(), "(a) odd findings " + list(so.findings));
  for (const auto& [d, r] : so.reports)
    L.expect(r.violation_ns() == std::vector<std::uint64_t>{d + 1, d + 3, d + 5},
             "(a) odd d=" + std::to_string(d) + " violations " + list(r.violation_ns()));

  auto sb = scan_conjectures(Conjecture::LevelThree, 3, b, 0, jobs);
  L.expect(sb.findings == std::vector<Part>{6, 9}, "(b) findings " + list(sb.findings));
  L.expect(sb.contradictions.empty(), "(b) contradictions " + list(sb.contradictions));

  for (Part a : {4, 5}) {
    std::vector<Part> ds;
    for (Part d = 4 * a - 2; d <= 4 * a + 20; ++d) ds.push_back(d);
    auto sc = scan_conjectures(Conjecture::HigherLevel, a, ds, 0, jobs);
    L.expect(sc.findings.empty(), "(c) a=" + std::to_string(a) + " findings " + list(sc.findings));
  }
}

void property_suites(Ledger& L) {
  std::mt19937_64 rng(1017);
  std::uniform_int_distribution<Part> pick_a(1, 12), pick_d(1, 40);
  for (int trial = 0; trial < 50; ++trial) {
    Part a = pick_a(rng), d = pick_d(rng);
    auto got = gap_counts(GapSpec(a, d), 200);
    auto want = oracle::gap_partitions(200, a, d);
    for (std::uint64_t n = 0; n <= 200; ++n)
      L.expect(got[n] == want[n], "staircase a=" + std::to_string(a) + " d=" + std::to_string(d) + " n=" + std::to_string(n));
    for (std::uint64_t n = 0; n <= 22; ++n) {
      std::uint64_t brute = 0;
      for (const auto& p : enumerate_all(n)) brute += GapSpec(a, d).admits(p);
      L.expect(got[n] == brute, "staircase vs enumeration at n=" + std::to_string(n));
    }
  }

  const std::vector<std::pair<Part, Part>> specs{{1, 1}, {1, 8},  {2, 10}, {2, 11}, {3, 20},
                                                 {4, 30}, {5, 40}, {2, 254}, {7, 100}, {1, 128}};
  for (auto [a, d] : specs) {
    CongruenceSpec spec(a, d);
    L.expect(set_counts(spec.universe(), 2000) == congruence_counts(spec, 2000),
             "rho vs congruence a=" + std::to_string(a) + " d=" + std::to_string(d));
  }

  for (Part d : {9, 11, 21, 39, 255, 1001}) {
    auto c = congruence_counts(CongruenceSpec(2, d), 1500);
    for (std::uint64_t n = 1; n <= 1500; n += 2) L.expect(c[n] == 0, "parity d=" + std::to_string(d) + " n=" + std::to_string(n));
  }

  for (auto [a, d] : std::vector<std::pair<Part, Part>>{{1, 8}, {2, 10}, {2, 11}, {3, 6}, {3, 20}, {4, 9}, {1, 128}}) {
    auto c = congruence_counts(CongruenceSpec(a, d), 80);
    for (std::uint64_t n = 0; n <= 80; ++n)
      L.expect(enumerate_pairs(LevelPairs{a, d}, n).size() == c[n], "pair count a=" + std::to_string(a) + " d=" + std::to_string(d));
  }
  auto c126 = congruence_counts(CongruenceSpec(1, 126), 700);
  for (std::uint64_t n = 0; n <= 700; n += 5)
    L.expect(enumerate_pairs(AlphaShiftPairs{130, 4}, n).size() == c126[n], "alpha pair count n=" + std::to_string(n));

  for (auto [a, d] : std::vector<std::pair<Part, Part>>{{2, 254}, {2, 255}, {3, 381}, {3, 400}, {4, 600}, {5, 1000}}) {
    for (std::uint64_t n = d + 2 * a; n <= 5 * d; n += d / 3) {
      auto rep = check_chain(a, d, n);
      for (const auto& link : rep.links)
        if (link.relation == "=")
          L.expect(link.lhs == link.rhs, "dilation a=" + std::to_string(a) + " d=" + std::to_string(d) + " n=" + std::to_string(n));
    }
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "table Q_{d-2}^(1), d=130", 1, table_Qdm2},
      {2, "table q_d^(1), d=130, with enumeration cross-check", 10, table_qd1},
      {3, "product forms of the congruence series up to N=2000", 30, product_forms},
      {4, "bridge bounds g_130 <= q and L_127 <= q", 60, bridge_bounds},
      {5, "injection certificates phi, psi (d=130), beta lift", 120, injection_certificates},
      {6, "reduced-scale psi structure (d=381 route) and full-bound alpha run", 300, reduced_scale_structure},
      {7, "level-2 desk check d in {126,254,255,256}", 30, theorem_level_two},
      {8, "exception sets at levels 3 and 4", 60, exception_sets},
      {9, "conjecture scans (a), (b), (c)", 300, conjecture_scans},
      {10, "property suites", 300, property_suites},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Ledger L;
    auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.body(L);
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool over = secs > c.budget_s;
    bool ok = error.empty() && L.problems.empty() && !over;
    failed += !ok;
    std::printf("%s criterion %2d: %s [%zu checks, %.2f s of %.0f s]\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(),
                L.checks, secs, c.budget_s);
    if (!error.empty()) std::printf("     exception: %s\n", error.c_str());
    if (over) std::printf("     over the runtime budget\n");
    for (const auto& p : L.problems) std::printf("     %s\n", p.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
