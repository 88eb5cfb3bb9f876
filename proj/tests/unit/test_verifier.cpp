#include <doctest.h>

#include "alder/verifier.hpp"
#include "oracles.hpp"

using namespace alder;

namespace {

const TableRowCheck* row(const TableCheck& t, const std::string& label, const std::string& column) {
  for (const auto& r : t.rows)
    if (r.label == label && r.column == column) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("regimes and exception sets") {
  CHECK(inequality_regime(1, 3) == Regime::Proved);
  CHECK(inequality_regime(2, 254) == Regime::Proved);
  CHECK(inequality_regime(2, 126) == Regime::Proved);
  CHECK(inequality_regime(2, 40) == Regime::Conjectured);
  CHECK(inequality_regime(2, 7) == Regime::Unclaimed);
  CHECK(inequality_regime(3, 381) == Regime::Proved);
  CHECK(inequality_regime(3, 6) == Regime::Unclaimed);
  CHECK(inequality_regime(4, 14) == Regime::Conjectured);
  CHECK(inequality_regime(4, 4 * 4095) == Regime::Proved);
  CHECK(theorem_exceptions(2, 255) == std::vector<std::uint64_t>{256, 258, 260});
  CHECK(theorem_exceptions(2, 254).empty());
  CHECK(theorem_exceptions(3, 381) == std::vector<std::uint64_t>{381, 384, 387});
  CHECK(theorem_exceptions(5, 40) == std::vector<std::uint64_t>{48});
}

TEST_CASE("pointwise checks: known values") {
  CHECK(check_pointwise(2, 254, 1, 310).violations.empty());
  auto odd = check_pointwise(2, 255, 1, 310);
  CHECK(odd.violation_ns() == std::vector<std::uint64_t>{256, 258, 260});
  CHECK(odd.verdict == Verdict::PassWithExpectedExceptions);
  CHECK(check_pointwise(1, 3, 1, 60).verdict == Verdict::Pass);
  CHECK_THROWS_AS(check_pointwise(2, 254, 10, 5), InvalidArgument);
}

TEST_CASE("pointwise check flags a proved-range failure") {
  struct Skewed : CountSource {
    std::vector<Count> congruence(Part a, Part d, Variant v, std::uint64_t max_n) const override {
      auto c = CountSource::congruence(a, d, v, max_n);
      c[max_n] += 1000;
      return c;
    }
  } skewed;
  CHECK_THROWS_AS(check_pointwise(2, 254, 1, 300, Variant::Full, skewed), ProvedRangeViolation);
  auto rep = check_pointwise(2, 254, 1, 300, Variant::Full, skewed, false);
  CHECK(rep.verdict == Verdict::Fail);
  CHECK(rep.violation_ns() == std::vector<std::uint64_t>{300});
}

TEST_CASE("level shift: known values") {
  CHECK(check_lemma_shift(2, 254, 258, 454).verdict == Verdict::Pass);
  CHECK(check_lemma_shift(3, 381, 387, 531).verdict == Verdict::Pass);
  CHECK(check_lemma_shift(1, 20, 22, 200).verdict == Verdict::Pass);
  CHECK_THROWS_AS(check_lemma_shift(2, 254, 100, 200), InvalidArgument);
}

TEST_CASE("exception sets at levels three and up") {
  auto r3 = check_exceptions_level_a(3, 381, 381 + 72);
  CHECK(r3.violation_ns() == std::vector<std::uint64_t>{381, 384, 387});
  auto r5 = check_exceptions_level_a(5, 40, 90);
  CHECK(r5.violation_ns() == std::vector<std::uint64_t>{48});
  CHECK(r5.verdict == Verdict::PassWithExpectedExceptions);
}

TEST_CASE("chain: trivial weight and the dilation equality") {
  auto zero = check_chain(2, 254, 0);
  for (const auto& l : zero.links) {
    CHECK(l.lhs == 1);
    CHECK(l.rhs == 1);
  }
  for (auto [a, d] : std::vector<std::pair<Part, Part>>{{2, 254}, {2, 255}, {3, 381}, {3, 400}, {4, 600}}) {
    for (std::uint64_t n : {d + 4 * a, 2 * d, 4 * d + 300}) {
      auto rep = check_chain(a, d, n);
      CAPTURE(a);
      CAPTURE(d);
      CAPTURE(n);
      CHECK(rep.reduced_d == (d + a - 1) / a);
      bool saw_dilation = false;
      for (const auto& l : rep.links)
        if (l.relation == "=") {
          saw_dilation = true;
          CHECK(l.holds);
          CHECK(l.lhs == l.rhs);
        }
      CHECK(saw_dilation);
    }
  }
  auto covered = check_chain(2, 254, 4 * 254 + 128 + 5);
  CHECK(covered.covered);
  CHECK(covered.holds());
}

TEST_CASE("table reproduction: known values") {
  auto Q = reproduce_table("Qdm2", {.d = 130});
  CHECK(Q.all_match());
  std::map<std::uint64_t, std::int64_t> want{{260, 4}, {263, 7}, {392, 12}, {395, 17}, {524, 30}, {527, 37}, {650, 39}};
  for (const auto& r : Q.rows)
    if (auto it = want.find(r.n_lo); it != want.end() && r.n_lo == r.n_hi) CHECK(r.expected == it->second);

  auto q1 = reproduce_table("qd1", {.d = 130});
  CHECK(q1.all_match());
  auto q2 = reproduce_table("qd2", {.d = 254});
  CHECK(q2.all_match());
  REQUIRE(!q2.rows.empty());
  CHECK(q2.rows.front().expected == 0);

  for (const char* id : {"Qd2-even", "lv3", "S", "T7", "S-alpha", "T12"}) {
    TableParams p{.d = id == std::string("S-alpha") || id == std::string("T12") ? Part{5000} : Part{254}};
    p.alpha = 4;
    p.r = 8;
    CAPTURE(id);
    CHECK(reproduce_table(id, p).all_match());
  }
  CHECK(reproduce_table("Qd2-odd", {.d = 255}).all_match());
  CHECK_FALSE(reproduce_table("T12-printed", {.d = 5000}).all_match());
  CHECK_THROWS_AS(reproduce_table("nope", {.d = 130}), InvalidArgument);
  CHECK_THROWS_AS(reproduce_table("qd1", {.d = 4}), InvalidArgument);
  CHECK(list_tables().size() == 14);
}

TEST_CASE("q_d^(1) closed form against an independent count") {
  const Part d = 130;
  auto direct = oracle::gap_partitions(4 * d + 128, 1, d);
  for (std::uint64_t n = d + 4; n <= 4 * d + 128; ++n) {
    std::uint64_t want = 1 + (n - d) / 2;
    if (n >= 3 * d + 3) want += oracle::at_most_three_parts(static_cast<std::int64_t>(n - 3 * d - 3));
    CAPTURE(n);
    CHECK(direct[n] == want);
    CHECK(count_gap(GapSpec(1, d), n) == want);
  }
}

TEST_CASE("level-a table: the d+3 row is a known misprint") {
  auto t = reproduce_table("lva", {.d = 42, .a = 4});
  auto bad = row(t, "d+3", "Q");
  REQUIRE(bad != nullptr);
  CHECK_FALSE(bad->match);
  CHECK(bad->expected == 0);
  CHECK(bad->computed == 1);
  for (const auto& r : t.rows)
    if (&r != bad) CHECK(r.match);
}

TEST_CASE("small-n regime checks") {
  CHECK(check_small_n_regime(2, 254).all_match());
  CHECK(check_small_n_regime(2, 255).all_match());
  CHECK(check_small_n_regime(3, 381).all_match());
}

TEST_CASE("conjecture scans: known values") {
  CHECK(parse_conjecture("b") == Conjecture::LevelThree);
  CHECK_THROWS_AS(parse_conjecture("z"), InvalidArgument);
  std::vector<Part> even;
  for (Part d = 2; d <= 40; d += 2) even.push_back(d);
  auto a = scan_conjectures(Conjecture::LevelTwo, 2, even, 0, 4);
  CHECK(a.findings.empty());
  CHECK(a.reports.size() == even.size());

  auto b = scan_conjectures(Conjecture::LevelThree, 3, {6}, 100);
  CHECK(b.findings == std::vector<Part>{6});
  CHECK(b.contradictions.empty());
  CHECK(b.consistent_with_conjecture());

  auto c = scan_conjectures(Conjecture::HigherLevel, 4, {14}, 4 * 14 + 60);
  CHECK(c.findings.empty());
  CHECK(default_scan_nmax(130) == 4 * 130 + 128 + 300);
}

TEST_CASE("scan results do not depend on the worker count") {
  std::vector<Part> ds;
  for (Part d = 4; d <= 30; ++d) ds.push_back(d);
  auto one = scan_conjectures(Conjecture::LevelThree, 3, ds, 150, 1);
  auto many = scan_conjectures(Conjecture::LevelThree, 3, ds, 150, 8);
  CHECK(one.findings == many.findings);
  CHECK(one.summary() == many.summary());
  CHECK(one.findings == std::vector<Part>{6, 9});
}
