#include <doctest.h>

#include <algorithm>
#include <random>

#include "alder/partition.hpp"
#include "oracles.hpp"

using namespace alder;

namespace {

std::uint64_t brute_gap(Part a, Part d, std::uint64_t n) {
  std::uint64_t c = 0;
  for (const auto& p : enumerate_all(n)) {
    auto parts = p.parts();  // nonincreasing
    bool ok = parts.empty() || parts.back() >= a;
    for (std::size_t i = 1; ok && i < parts.size(); ++i) ok = parts[i - 1] - parts[i] >= d;
    c += ok;
  }
  return c;
}

std::uint64_t brute_congruence(Part a, Part d, Variant v, std::uint64_t n) {
  const Part m = d + 3;
  std::uint64_t c = 0;
  for (const auto& p : enumerate_all(n)) {
    bool ok = true;
    for (auto x : p.parts()) {
      ok = ok && (x % m == a || x % m == m - a);
      if (v == Variant::ExcludeCoResidue && x == m - a) ok = false;
    }
    c += ok;
  }
  return c;
}

}  // namespace

TEST_CASE("partition: runs and basic accessors") {
  auto p = Partition::from_parts({2, 5, 5, 1});
  CHECK(p.weight() == 13);
  CHECK(p.num_parts() == 4);
  CHECK(p.multiplicity(5) == 2);
  CHECK(p.largest() == 5);
  CHECK(p.smallest() == 1);
  CHECK(p.smallest_above(1) == 2);
  CHECK(p.parts() == std::vector<Part>{5, 5, 2, 1});
  CHECK(p.to_string() == "(5^2,2,1)");
  CHECK(p.with(3).without(5, 2) == Partition::from_parts({3, 2, 1}));
  CHECK_THROWS_AS(p.without(7), InvalidArgument);
  CHECK(Partition{}.merged(p) == p);
}

TEST_CASE("gap counts: known values") {
  CHECK(count_gap(GapSpec(2, 254), 100) == 1);
  CHECK(count_gap(GapSpec(1, 1), 0) == 1);
  CHECK(count_gap(GapSpec(1, 1), 5) == 3);
  CHECK(count_gap(GapSpec(2, 254), 260) == 3);
  CHECK_THROWS_AS(GapSpec(0, 3), InvalidArgument);
  CHECK_THROWS_AS(GapSpec(2, 0), InvalidArgument);
}

TEST_CASE("gap enumeration: known values") {
  auto e = enumerate_gap(GapSpec(2, 254), 260);
  std::sort(e.begin(), e.end());
  std::vector<Partition> want{Partition::from_parts({260}), Partition::from_parts({258, 2}),
                              Partition::from_parts({257, 3})};
  std::sort(want.begin(), want.end());
  CHECK(e == want);
  CHECK(enumerate_gap(GapSpec(1, 1), 1) == std::vector<Partition>{Partition::from_parts({1})});
  CHECK(enumerate_gap(GapSpec(3, 1), 2).empty());
}

TEST_CASE("gap counts agree with brute force for small n") {
  for (Part a : {1, 2, 3})
    for (Part d : {1, 2, 3, 5})
      for (std::uint64_t n = 0; n <= 24; ++n) {
        CAPTURE(a);
        CAPTURE(d);
        CAPTURE(n);
        CHECK(count_gap(GapSpec(a, d), n) == brute_gap(a, d, n));
        CHECK(enumerate_gap(GapSpec(a, d), n).size() == brute_gap(a, d, n));
      }
}

TEST_CASE("staircase identity against a direct recursion, 50 random (a, d)") {
  std::mt19937_64 rng(20261017);
  std::uniform_int_distribution<Part> pick_a(1, 12), pick_d(1, 40);
  for (int trial = 0; trial < 50; ++trial) {
    Part a = pick_a(rng), d = pick_d(rng);
    auto counts = gap_counts(GapSpec(a, d), 200);
    auto want = oracle::gap_partitions(200, a, d);
    for (std::uint64_t n = 0; n <= 200; ++n) {
      CAPTURE(a);
      CAPTURE(d);
      CAPTURE(n);
      REQUIRE(counts[n] == want[n]);
    }
  }
}

TEST_CASE("congruence counts: known values") {
  CHECK(count_congruence(CongruenceSpec(2, 254), 259) == 2);
  CHECK(count_congruence(CongruenceSpec(2, 255), 256) == 2);
  // the table row "2d -> 4" sits at n = 2*130; at 256 only (1^256), (130,1^126), (132,1^124) exist
  CHECK(count_congruence(CongruenceSpec(1, 128), 260) == 4);
  CHECK(count_congruence(CongruenceSpec(1, 128), 256) == 3);
  CHECK(count_congruence(CongruenceSpec(2, 10), 0) == 1);
  CHECK_THROWS_AS(CongruenceSpec(4, 4), InvalidArgument);
  CHECK_THROWS_AS(CongruenceSpec(0, 4), InvalidArgument);
}

TEST_CASE("congruence counts agree with brute force for small n") {
  for (Part d : {2, 4, 5, 9})
    for (Part a = 1; 2 * a < d + 3; ++a)
      for (Variant v : {Variant::Full, Variant::ExcludeCoResidue})
        for (std::uint64_t n = 0; n <= 26; ++n) {
          CAPTURE(a);
          CAPTURE(d);
          CAPTURE(n);
          CHECK(count_congruence(CongruenceSpec(a, d, v), n) == brute_congruence(a, d, v, n));
        }
}

TEST_CASE("congruence counts equal coin change over the residue parts") {
  for (auto [a, d] : std::vector<std::pair<Part, Part>>{{1, 128}, {2, 254}, {3, 20}, {5, 40}}) {
    auto want = oracle::coin_change(oracle::residue_parts(d + 3, {a, d + 3 - a}, 800), 800);
    CHECK(congruence_counts(CongruenceSpec(a, d), 800) == want);
  }
}

TEST_CASE("set counts: known values and residue-set equality") {
  CHECK(count_from_set(EventuallyPeriodicSet(3, {1, 2}, {}, {}), 0) == 1);
  CHECK(count_from_set(EventuallyPeriodicSet(100, {1, 2}), 4) == 3);
  CHECK(count_from_set(EventuallyPeriodicSet(131, {1, 130}), 130) == 2);
  CHECK(count_from_set(EventuallyPeriodicSet(131, {1, 130}), 130) == count_congruence(CongruenceSpec(1, 128), 130));

  // ten congruence specs: the residue-set count must match up to 2000
  const std::vector<std::pair<Part, Part>> specs{{1, 1}, {1, 8},  {2, 10}, {2, 11}, {3, 20},
                                                 {4, 30}, {5, 40}, {2, 254}, {7, 100}, {1, 128}};
  for (auto [a, d] : specs) {
    CAPTURE(a);
    CAPTURE(d);
    CongruenceSpec spec(a, d);
    CHECK(set_counts(spec.universe(), 2000) == congruence_counts(spec, 2000));
    CongruenceSpec minus(a, d, Variant::ExcludeCoResidue);
    CHECK(set_counts(minus.universe(), 2000) == congruence_counts(minus, 2000));
  }
}

TEST_CASE("parts at most k") {
  CHECK(count_parts_at_most(3, 6) == 7);
  CHECK(count_parts_at_most(1, 9) == 1);
  CHECK(count_parts_at_most(3, 0) == 1);
  auto v = parts_at_most_counts(3, 100);
  for (std::uint64_t n = 0; n <= 100; ++n) CHECK(v[n] == oracle::at_most_three_parts(static_cast<std::int64_t>(n)));
}

TEST_CASE("enumeration honors the cap") {
  CHECK_THROWS_AS(enumerate_all(30, EnumerationCap{100}), CapExceeded);
  CHECK(enumerate_all(10).size() == 42);
}

TEST_CASE("pair decompositions: known values") {
  auto pairs = enumerate_pairs(LevelPairs{2, 254}, 259);
  CHECK(pairs.size() == 2);
  CHECK(enumerate_pairs(LevelPairs{2, 254}, 0).size() == 1);
  CHECK(enumerate_pairs(LevelPairs{2, 254}, 0).front() == PairDecomposition{});

  auto alpha = enumerate_pairs(AlphaShiftPairs{130, 4}, 128);
  bool found = false;
  for (const auto& p : alpha) found = found || (p.pi == Partition::from_parts({128}) && p.mu.empty());
  CHECK(found);
}

TEST_CASE("pair decomposition counts equal the congruence counts") {
  // includes d+3 = 3a, where the replacement part is also a residue-class part
  for (auto [a, d] : std::vector<std::pair<Part, Part>>{{1, 8}, {2, 10}, {2, 11}, {3, 6}, {3, 20}, {4, 9}, {1, 128}}) {
    for (std::uint64_t n = 0; n <= 60; ++n) {
      CAPTURE(a);
      CAPTURE(d);
      CAPTURE(n);
      auto pairs = enumerate_pairs(LevelPairs{a, d}, n);
      CHECK(pairs.size() == count_congruence(CongruenceSpec(a, d), n));
      for (const auto& p : pairs) CHECK(p.weight() == n);
    }
  }
  // the alpha menu re-reads Q_{d-alpha}^(1)
  for (std::uint64_t n = 0; n <= 300; n += 7)
    CHECK(enumerate_pairs(AlphaShiftPairs{130, 4}, n).size() == count_congruence(CongruenceSpec(1, 126), n));
}
