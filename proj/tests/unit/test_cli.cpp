#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "alder/cli/app.hpp"
#include "alder/cli/cache.hpp"
#include "alder/cli/report.hpp"

using namespace alder;
using namespace alder::cli;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name)
      : path(std::filesystem::temp_directory_path() / ("alder_unit_" + name + "_" + std::to_string(::getpid()))) {
    std::filesystem::remove(path);
  }
  ~TempFile() { std::filesystem::remove(path); }
};

void write_bytes(const std::filesystem::path& p, const std::string& data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "alderlab");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cache: round trip keeps big counts exact") {
  TempFile f("roundtrip");
  CacheKey key{CountKind::Gap, Variant::Full, 1, 1};
  auto values = gap_counts(GapSpec(1, 1), 900);
  {
    CountCache c(f.path);
    c.load();
    c.store(key, values);
    CHECK(c.dirty());
    c.save();
  }
  CountCache c(f.path);
  auto res = c.load();
  CHECK(res.loaded == 1);
  CHECK(res.skipped == 0);
  auto hit = c.lookup(key, 900);
  REQUIRE(hit.has_value());
  CHECK(*hit == values);
  CHECK(mpz_sizeinbase(values[900].get_mpz_t(), 2) > 64);
  CHECK_FALSE(c.lookup(key, 901).has_value());
  CHECK_FALSE(c.lookup({CountKind::Congruence, Variant::Full, 1, 1}, 10).has_value());
}

TEST_CASE("cache: corrupt entries are skipped with a warning") {
  TempFile f("corrupt");
  CacheKey good{CountKind::Congruence, Variant::Full, 2, 10};
  CacheKey bad{CountKind::Gap, Variant::Full, 2, 10};
  auto e1 = CountCache::encode_entry(good, congruence_counts(CongruenceSpec(2, 10), 50));
  auto e2 = CountCache::encode_entry(bad, gap_counts(GapSpec(2, 10), 50));
  e2[e2.size() - 20] ^= 0x5a;  // inside the payload
  write_bytes(f.path, e2 + e1 + std::string("garbage"));
  CountCache c(f.path);
  auto res = c.load();
  CHECK(res.loaded == 1);
  CHECK(res.skipped == 2);
  CHECK(res.warnings.size() == 2);
  CHECK(c.lookup(good, 50).has_value());
  CHECK_FALSE(c.lookup(bad, 1).has_value());
}

TEST_CASE("cache: a well-formed entry with wrong values fails the audit") {
  TempFile f("audit");
  CacheKey key{CountKind::Gap, Variant::Full, 2, 10};
  auto values = gap_counts(GapSpec(2, 10), 60);
  values[60] += 1;
  write_bytes(f.path, CountCache::encode_entry(key, values));
  CountCache c(f.path);
  CHECK_THROWS_AS(c.load(), CacheIntegrityError);
}

TEST_CASE("cached source returns the same counts as the direct one") {
  TempFile f("source");
  CountCache c(f.path);
  CachedCountSource src(c);
  CHECK(src.gap(2, 20, 300) == direct_counts().gap(2, 20, 300));
  CHECK(src.gap(2, 20, 100) == direct_counts().gap(2, 20, 100));
  CHECK(src.congruence(2, 20, Variant::ExcludeCoResidue, 200) ==
        direct_counts().congruence(2, 20, Variant::ExcludeCoResidue, 200));
  CHECK(c.entries().size() == 2);
}

TEST_CASE("report: counts too big for 64 bits become strings") {
  CHECK(count_json(Count(42)) == 42);
  Count big("123456789012345678901234567890");
  CHECK(count_json(big) == "123456789012345678901234567890");
}

TEST_CASE("report: csv quoting and text layout") {
  Tabular t;
  t.header = {"a", "b"};
  t.rows = {{"x,y", "say \"hi\""}, {"1", "2"}};
  t.notes = {"note"};
  CHECK(render(Format::Csv, Json(), t) == "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n1,2\n");
  CHECK(render(Format::Table, Json(), t) == "note\na    b\nx,y  say \"hi\"\n1    2\n");
  CHECK_THROWS_AS(parse_format("xml"), InvalidArgument);
}

TEST_CASE("app: reference invocations in process") {
  auto r = invoke({"count", "--fn", "q", "--a", "2", "--d", "254", "--n", "100", "--format", "csv"});
  CHECK(r.code == kPass);
  CHECK(r.out == "n,value\n100,1\n");
  r = invoke({"count", "--fn", "Q", "--a", "2", "--d", "254", "--n", "0", "--format", "csv"});
  CHECK(r.out == "n,value\n0,1\n");
  r = invoke({"count", "--fn", "Q", "--a", "2", "--d", "255", "--n", "256", "--format", "csv"});
  CHECK(r.out == "n,value\n256,2\n");
  r = invoke({"count", "--fn", "rho", "--modulus", "131", "--residues", "1,130", "--n", "130", "--format", "csv"});
  CHECK(r.out == "n,value\n130,2\n");
  r = invoke({"count", "--fn", "g", "--d", "130", "--n", "648", "--format", "csv"});
  CHECK(r.out == "n,value\n648,248\n");

  r = invoke({"verify", "theorem1", "--d", "254", "--nmax", "600"});
  CHECK(r.code == kPass);
  auto j = Json::parse(r.out);
  CHECK(j["verdict"] == "pass");

  r = invoke({"verify", "table", "--id", "Qdm2", "--d", "130"});
  CHECK(r.code == kPass);
  CHECK(Json::parse(r.out)["all_match"] == true);

  r = invoke({"verify", "injection", "--kind", "psi-shift2", "--d", "130", "--n", "648"});
  CHECK(r.code == kPass);
  CHECK(Json::parse(r.out)[0]["passes"] == true);

  r = invoke({"scan", "--conjecture", "b", "--d", "6", "--nmax", "100"});
  CHECK(r.code == kFindings);
  CHECK(Json::parse(r.out)["findings"] == Json::array({6}));
}

TEST_CASE("app: parameter errors exit with the usage code") {
  CHECK(invoke({}).code == kUsage);
  CHECK(invoke({"count", "--fn", "q", "--d", "5", "--n", "3"}).code == kUsage);
  CHECK(invoke({"count", "--fn", "Q", "--a", "9", "--d", "5", "--n", "3"}).code == kUsage);
  CHECK(invoke({"count", "--fn", "q", "--a", "1", "--d", "5", "--n-range", "9..3"}).code == kUsage);
  CHECK(invoke({"scan", "--conjecture", "q", "--d", "4..9"}).code == kUsage);
  CHECK(invoke({"verify", "injection", "--kind", "psi-shift2", "--d", "20", "--n", "100"}).code == kUsage);
  CHECK(invoke({"verify", "injection", "--kind", "phi", "--toy", "two-mod-three", "--n", "50", "--cap", "10"}).code ==
        kUsage);
  CHECK(invoke({"verify", "table", "--id", "qd1", "--d", "130", "--format", "yaml"}).code == kUsage);
  CHECK(invoke({"--help"}).code == kPass);
}

TEST_CASE("app: cache on and off give identical output") {
  TempFile f("app");
  std::vector<std::string> args{"verify", "theorem2", "--a", "3", "--d", "381", "--format", "csv"};
  auto plain = invoke(args);
  auto with = args;
  with.insert(with.end(), {"--cache", f.path.string()});
  auto first = invoke(with);
  auto second = invoke(with);
  CHECK(std::filesystem::exists(f.path));
  CHECK(plain.out == first.out);
  CHECK(plain.out == second.out);
  CHECK(plain.code == second.code);

  // a tampered but well-formed cache aborts with the integrity code
  CacheKey key{CountKind::Gap, Variant::Full, 3, 381};
  auto values = gap_counts(GapSpec(3, 381), 500);
  values[500] -= 1;
  write_bytes(f.path, CountCache::encode_entry(key, values));
  CHECK(invoke(with).code == kCacheIntegrity);
  with.push_back("--no-cache");
  CHECK(invoke(with).out == plain.out);
}
