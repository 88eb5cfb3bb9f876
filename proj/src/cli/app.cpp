#include "alder/cli/app.hpp"

#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "alder/cli/cache.hpp"
#include "alder/cli/report.hpp"
#include "alder/injection.hpp"
#include "alder/partition.hpp"
#include "alder/series.hpp"
#include "alder/verifier.hpp"

namespace alder::cli {

namespace {

struct Range {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

std::uint64_t parse_number(const std::string& s, const std::string& flag) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidArgument(flag + ": expected a nonnegative integer, got '" + s + "'");
  try {
    return std::stoull(s);
  } catch (const std::out_of_range&) {
    throw InvalidArgument(flag + ": value '" + s + "' is out of range");
  }
}

/// "LO..HI" or a single value.
Range parse_range(const std::string& s, const std::string& flag) {
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    auto v = parse_number(s, flag);
    return {v, v};
  }
  Range r{parse_number(s.substr(0, dots), flag), parse_number(s.substr(dots + 2), flag)};
  if (r.lo > r.hi) throw InvalidArgument(flag + ": empty range " + s);
  return r;
}

struct Options {
  std::string format = "json";
  std::string cache_path;
  bool no_cache = false;
  unsigned jobs = 0;
  std::size_t cap = EnumerationCap{}.max_items;

  std::optional<Part> a;
  std::string d;
  std::optional<Part> alpha;
  std::optional<unsigned> r;
  std::optional<std::uint64_t> n;
  std::string n_range;
  std::string nmax;
  std::size_t depth = 60;

  // count
  std::string fn;
  std::optional<Part> modulus;
  std::vector<Part> residues;
  std::vector<Part> include;
  std::vector<Part> exclude;
  // series
  std::string series_kind;
  // verify
  std::string table_id;
  bool list_tables = false;
  std::string injection_kind;
  std::string toy;
  std::string bounds = "theorem";
  // scan
  std::string conjecture;
  std::string d_even;
  std::string d_odd;
};

Part require_a(const Options& o, Part fallback = 0) {
  if (o.a) {
    if (*o.a < 1) throw InvalidArgument("--a must be positive");
    return *o.a;
  }
  if (fallback) return fallback;
  throw InvalidArgument("--a is required");
}

Part require_d(const Options& o) {
  if (o.d.empty()) throw InvalidArgument("--d is required");
  auto d = parse_number(o.d, "--d");
  if (d < 1) throw InvalidArgument("--d must be positive");
  return d;
}

/// --n, --n-range, or the given default.
Range n_range(const Options& o, std::optional<Range> fallback = std::nullopt) {
  if (o.n && !o.n_range.empty()) throw InvalidArgument("--n and --n-range are mutually exclusive");
  if (o.n) return {*o.n, *o.n};
  if (!o.n_range.empty()) return parse_range(o.n_range, "--n-range");
  if (fallback) return *fallback;
  throw InvalidArgument("one of --n or --n-range is required");
}

std::optional<std::uint64_t> parse_nmax(const Options& o) {
  if (o.nmax.empty() || o.nmax == "auto") return std::nullopt;
  auto v = parse_number(o.nmax, "--nmax");
  if (v < 1) throw InvalidArgument("--nmax must be positive");
  return v;
}

struct Output {
  Json json;
  Tabular tab;
  int exit_code = kPass;
};

// ---------------------------------------------------------------------------

Output cmd_count(const Options& o, const CountSource& source) {
  const Range range = n_range(o);
  Json j;
  j["command"] = "count";
  j["fn"] = o.fn;
  std::vector<Count> values;
  std::vector<std::string> label;
  if (o.fn == "rho") {
    if (!o.modulus || *o.modulus < 1) throw InvalidArgument("--fn rho needs a positive --modulus");
    if (o.residues.empty() && o.include.empty()) throw InvalidArgument("--fn rho needs --residues or --include");
    for (auto res : o.residues)
      if (res >= *o.modulus) throw InvalidArgument("--residues must be smaller than --modulus");
    EventuallyPeriodicSet set(*o.modulus, o.residues, o.include, o.exclude);
    j["set"] = set.describe();
    values = set_counts(set, range.hi);
  } else if (o.fn == "g") {
    Part d = require_d(o);
    j["d"] = d;
    j["bridge"] = bridge_kind_for(d) == BridgeKind::Full ? "full" : "mixed";
    auto s = bridge_series(d, range.hi);
    values.assign(s.coefficients().begin(), s.coefficients().end());
  } else {
    Part a = require_a(o);
    Part d = require_d(o);
    j["a"] = a;
    j["d"] = d;
    if (o.fn == "q") {
      GapSpec check(a, d);
      (void)check;
      values = source.gap(a, d, range.hi);
    } else if (o.fn == "Q" || o.fn == "Q-minus") {
      Variant v = o.fn == "Q" ? Variant::Full : Variant::ExcludeCoResidue;
      CongruenceSpec check(a, d, v);
      (void)check;
      values = source.congruence(a, d, v, range.hi);
    } else {
      throw InvalidArgument("unknown --fn '" + o.fn + "' (expected q, Q, Q-minus, rho or g)");
    }
  }
  Output out;
  Json rows = Json::array();
  out.tab.header = {"n", "value"};
  for (auto n = range.lo; n <= range.hi; ++n) {
    rows.push_back({{"n", n}, {"value", count_json(values[n])}});
    out.tab.rows.push_back({std::to_string(n), values[n].get_str()});
  }
  j["values"] = std::move(rows);
  out.json = std::move(j);
  return out;
}

Output cmd_series(const Options& o) {
  if (o.nmax.empty() || o.nmax == "auto") throw InvalidArgument("series needs --nmax N");
  const std::uint64_t nmax = parse_number(o.nmax, "--nmax");
  Json j;
  j["command"] = "series";
  j["kind"] = o.series_kind;
  std::optional<TruncatedSeries> s;
  if (o.series_kind == "congruence" || o.series_kind == "rewritten") {
    Part a = require_a(o);
    Part d = require_d(o);
    j["a"] = a;
    j["d"] = d;
    s = congruence_series(a, d, nmax, o.series_kind == "congruence" ? ProductForm::Product : ProductForm::Rewritten);
  } else {
    Part d = require_d(o);
    j["d"] = d;
    if (o.series_kind == "mixed-bridge") s = mixed_bridge_series(d, nmax);
    else if (o.series_kind == "full-bridge") s = full_bridge_series(d, nmax);
    else if (o.series_kind == "bridge") s = bridge_series(d, nmax);
    else
      throw InvalidArgument("unknown --kind '" + o.series_kind +
                            "' (expected congruence, rewritten, mixed-bridge, full-bridge or bridge)");
  }
  j["truncation"] = nmax;
  Output out;
  Json coeffs = Json::array();
  out.tab.header = {"n", "coefficient"};
  for (std::uint64_t n = 0; n <= nmax; ++n) {
    coeffs.push_back(count_json((*s)[n]));
    out.tab.rows.push_back({std::to_string(n), (*s)[n].get_str()});
  }
  j["coefficients"] = std::move(coeffs);
  out.json = std::move(j);
  return out;
}

Output from_inequality(const InequalityReport& r, std::ostream& err) {
  Output out;
  out.json = to_json(r);
  out.tab = to_tabular(r);
  if (r.verdict == Verdict::Fail) {
    out.exit_code = kFindings;
    if (r.regime == Regime::Proved)
      err << "error: " << r.relation << " fails at a=" << r.a << ", d=" << r.d
          << " inside the proved range; this indicates an implementation bug\n";
  }
  return out;
}

Output cmd_theorem1(const Options& o, const CountSource& source, std::ostream& err) {
  const Part d = require_d(o);
  if (o.a && *o.a != 2) throw InvalidArgument("theorem1 is the level-2 inequality; --a must be 2 if given");
  auto nmax = parse_nmax(o).value_or(default_scan_nmax(d));
  Range range = n_range(o, Range{1, nmax});
  if (range.lo < 1) range.lo = 1;
  return from_inequality(check_pointwise(2, d, range.lo, range.hi, Variant::Full, source, false), err);
}

Output cmd_theorem2(const Options& o, const CountSource& source, std::ostream& err) {
  const Part a = require_a(o);
  const Part d = require_d(o);
  if (a < 3) throw InvalidArgument("theorem2 needs --a >= 3");
  auto nmax = parse_nmax(o).value_or(d + 4 * a + 60);
  return from_inequality(check_exceptions_level_a(a, d, nmax, source, false), err);
}

Output cmd_lemma_shift(const Options& o, const CountSource& source, std::ostream& err) {
  const Part a = require_a(o);
  const Part d = require_d(o);
  const std::uint64_t lo = d + 2 * a;
  Range range = n_range(o, Range{lo, parse_nmax(o).value_or(lo + 200)});
  return from_inequality(check_lemma_shift(a, d, range.lo, range.hi, source, false), err);
}

Output cmd_chain(const Options& o) {
  const Part a = require_a(o, 2);
  const Part d = require_d(o);
  const Part r = floor_log2(d + 1);
  const std::uint64_t lo = 4 * d + (Part{1} << r);
  Range range = n_range(o, Range{lo, lo + 30});
  Output out;
  out.json = Json::array();
  for (auto n = range.lo; n <= range.hi; ++n) {
    auto rep = check_chain(a, d, n);
    out.json.push_back(to_json(rep));
    out.tab.append(to_tabular(rep));
    if (!rep.holds()) out.exit_code = kFindings;
  }
  return out;
}

Output cmd_table(const Options& o, const CountSource& source) {
  Output out;
  if (o.list_tables) {
    out.json = Json::array();
    out.tab.header = {"id", "caption", "parameters"};
    for (const auto& t : list_tables()) {
      out.json.push_back({{"id", t.id}, {"caption", t.caption}, {"parameters", t.parameters}});
      std::string params;
      for (const auto& p : t.parameters) params += (params.empty() ? "" : " ") + p;
      out.tab.rows.push_back({t.id, t.caption, params});
    }
    return out;
  }
  if (o.table_id.empty()) throw InvalidArgument("verify table needs --id (see --list)");
  TableParams params;
  if (!o.d.empty()) params.d = require_d(o);
  if (o.a) params.a = *o.a;
  if (o.alpha) params.alpha = *o.alpha;
  if (o.r) params.r = *o.r;
  params.depth = o.depth;
  auto check = reproduce_table(o.table_id, params, source);
  out.json = to_json(check);
  out.tab = to_tabular(check);
  if (!check.all_match()) out.exit_code = kFindings;
  return out;
}

Output cmd_small_n(const Options& o, const CountSource& source) {
  auto check = check_small_n_regime(require_a(o), require_d(o), source);
  Output out;
  out.json = to_json(check);
  out.tab = to_tabular(check);
  if (!check.all_match()) out.exit_code = kFindings;
  return out;
}

Output cmd_injection(const Options& o) {
  const EnumerationCap cap{o.cap};
  std::vector<InjectionCertificate> certs;
  const std::string& kind = o.injection_kind;
  if (kind == "phi") {
    if (o.toy.empty()) throw InvalidArgument("--kind phi needs --toy NAME");
    std::optional<ReplacePadInstance> inst;
    std::string names;
    for (auto& i : replace_pad_instances()) {
      names += (names.empty() ? "" : ", ") + i.name;
      if (i.name == o.toy) inst = i;
    }
    if (!inst) throw InvalidArgument("unknown --toy '" + o.toy + "' (expected one of " + names + ")");
    Range range = n_range(o);
    if (range.lo == range.hi && range.lo % inst->unit != 0)
      throw InvalidArgument("--n must be a multiple of " + std::to_string(inst->unit) + " for " + inst->name);
    for (auto n = range.lo; n <= range.hi; ++n)
      if (n % inst->unit == 0) certs.push_back(certify_replace_and_pad(inst->source, inst->target, inst->unit, n, cap));
  } else if (kind == "psi-shift2") {
    const Part d = require_d(o);
    Range range = n_range(o);
    for (auto n = range.lo; n <= range.hi; ++n) certs.push_back(certify_shift(d, n, cap));
  } else if (kind == "psi-shift-alpha") {
    const Part d = require_d(o);
    if (!o.alpha) throw InvalidArgument("--kind psi-shift-alpha needs --alpha");
    AlphaShiftInjector::Bounds bounds;
    if (o.bounds == "theorem") bounds = AlphaShiftInjector::Bounds::Theorem;
    else if (o.bounds == "reduced") bounds = AlphaShiftInjector::Bounds::Reduced;
    else throw InvalidArgument("--bounds must be theorem or reduced");
    Range range = n_range(o);
    for (auto n = range.lo; n <= range.hi; ++n) certs.push_back(certify_alpha_shift(d, *o.alpha, n, cap, bounds));
  } else if (kind == "beta-lift") {
    const Part d = require_d(o);
    Range range = n_range(o);
    if (range.lo == range.hi && range.lo % 2 == 0) throw InvalidArgument("beta-lift needs an odd --n");
    for (auto n = range.lo; n <= range.hi; ++n)
      if (n % 2 == 1) certs.push_back(certify_odd_to_even_lift(d, n, cap));
  } else {
    throw InvalidArgument("unknown --kind '" + kind + "' (expected phi, psi-shift2, psi-shift-alpha or beta-lift)");
  }
  Output out;
  out.json = Json::array();
  for (const auto& c : certs) {
    out.json.push_back(to_json(c));
    out.tab.append(to_tabular(c));
    if (!c.passes()) out.exit_code = kFindings;
  }
  return out;
}

Output cmd_scan(const Options& o, const CountSource& source, std::ostream& err) {
  if (o.conjecture.empty()) throw InvalidArgument("scan needs --conjecture a|b|c");
  const Conjecture which = parse_conjecture(o.conjecture);
  const Part default_a = which == Conjecture::LevelTwo ? 2 : which == Conjecture::LevelThree ? 3 : 4;
  const Part a = require_a(o, default_a);
  std::set<Part> ds;
  auto add = [&](const std::string& spec, const std::string& flag, int parity) {
    if (spec.empty()) return;
    Range r = parse_range(spec, flag);
    for (auto d = r.lo; d <= r.hi; ++d)
      if (parity < 0 || static_cast<int>(d % 2) == parity) ds.insert(d);
  };
  add(o.d, "--d", -1);
  add(o.d_even, "--d-even", 0);
  add(o.d_odd, "--d-odd", 1);
  if (ds.empty()) throw InvalidArgument("scan needs a nonempty --d, --d-even or --d-odd range");
  if (*ds.begin() < 1) throw InvalidArgument("scan ranges must start at d >= 1");
  const std::uint64_t nmax = parse_nmax(o).value_or(0);
  unsigned jobs = o.jobs ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
  auto report = scan_conjectures(which, a, std::vector<Part>(ds.begin(), ds.end()), nmax, jobs, source);
  Output out;
  out.json = to_json(report);
  out.tab = to_tabular(report);
  err << report.summary() << "\n";
  if (!report.findings.empty()) out.exit_code = kFindings;
  return out;
}

// ---------------------------------------------------------------------------

void add_common(CLI::App& app, Options& o) {
  app.add_option("--format", o.format, "Output format: json, csv or table");
  app.add_option("--cache", o.cache_path, "Count cache file (default: $ALDERLAB_CACHE, else none)");
  app.add_flag("--no-cache", o.no_cache, "Ignore any configured cache");
  app.add_option("--jobs", o.jobs, "Worker threads for scans (default: all cores)");
  app.add_option("--cap", o.cap, "Enumeration cap for certificates");
  app.add_option("--a", o.a, "Level a");
  app.add_option("--d", o.d, "Parameter d (scan: LO..HI)");
  app.add_option("--alpha", o.alpha, "Shift alpha");
  app.add_option("--r", o.r, "Ladder exponent r");
  app.add_option("--n", o.n, "Single n");
  app.add_option("--n-range", o.n_range, "Range LO..HI of n");
  app.add_option("--nmax", o.nmax, "Largest n (or auto)");
  app.add_option("--depth", o.depth, "Elements compared in set tables");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact partition counts, injection certificates and conjecture scans", "alderlab"};
  app.require_subcommand(1);
  Options o;
  add_common(app, o);

  auto* count = app.add_subcommand("count", "Print q, Q, Q-minus, rho or g values");
  count->add_option("--fn", o.fn, "q | Q | Q-minus | rho | g")->required();
  count->add_option("--modulus", o.modulus, "rho: modulus of the part set");
  count->add_option("--residues", o.residues, "rho: residues")->delimiter(',');
  count->add_option("--include", o.include, "rho: extra parts")->delimiter(',');
  count->add_option("--exclude", o.exclude, "rho: removed parts")->delimiter(',');

  auto* series = app.add_subcommand("series", "Expand a generating function");
  series->add_option("--kind", o.series_kind, "congruence | rewritten | mixed-bridge | full-bridge | bridge")->required();

  auto* verify = app.add_subcommand("verify", "Check an inequality, table or injection");
  verify->require_subcommand(1);
  auto* theorem1 = verify->add_subcommand("theorem1", "q >= Q at level 2");
  auto* theorem2 = verify->add_subcommand("theorem2", "Exception sets at level a >= 3");
  auto* lemma_shift = verify->add_subcommand("lemma-shift", "Level-shift lower bound");
  auto* chain = verify->add_subcommand("chain", "Full inequality chain");
  auto* table = verify->add_subcommand("table", "Reproduce a value or set table");
  table->add_option("--id", o.table_id, "Table id");
  table->add_flag("--list", o.list_tables, "List table ids");
  auto* injection = verify->add_subcommand("injection", "Exhaustive injection certificate");
  injection->add_option("--kind", o.injection_kind, "phi | psi-shift2 | psi-shift-alpha | beta-lift")->required();
  injection->add_option("--toy", o.toy, "phi instance name");
  injection->add_option("--bounds", o.bounds, "psi-shift-alpha bounds: theorem | reduced");
  auto* small_n = verify->add_subcommand("small-n", "Small-n tables for level a");

  auto* scan = app.add_subcommand("scan", "Scan d ranges against a conjecture");
  scan->add_option("--conjecture", o.conjecture, "a | b | c")->required();
  scan->add_option("--d-even", o.d_even, "Even d in LO..HI");
  scan->add_option("--d-odd", o.d_odd, "Odd d in LO..HI");

  for (auto* sub : {count, series, verify, theorem1, theorem2, lemma_shift, chain, table, injection, small_n, scan})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  std::unique_ptr<CountCache> cache;
  std::unique_ptr<CachedCountSource> cached;
  try {
    const Format format = parse_format(o.format);
    std::string cache_path = o.cache_path;
    if (cache_path.empty())
      if (const char* env = std::getenv("ALDERLAB_CACHE")) cache_path = env;
    if (!o.no_cache && !cache_path.empty()) {
      cache = std::make_unique<CountCache>(cache_path);
      auto loaded = cache->load();
      for (const auto& w : loaded.warnings) err << "warning: " << w << "\n";
      cached = std::make_unique<CachedCountSource>(*cache);
    }
    const CountSource& source = cached ? static_cast<const CountSource&>(*cached) : direct_counts();

    Output result;
    if (*count) result = cmd_count(o, source);
    else if (*series) result = cmd_series(o);
    else if (*theorem1) result = cmd_theorem1(o, source, err);
    else if (*theorem2) result = cmd_theorem2(o, source, err);
    else if (*lemma_shift) result = cmd_lemma_shift(o, source, err);
    else if (*chain) result = cmd_chain(o);
    else if (*table) result = cmd_table(o, source);
    else if (*injection) result = cmd_injection(o);
    else if (*small_n) result = cmd_small_n(o, source);
    else if (*scan) result = cmd_scan(o, source, err);

    out << render(format, result.json, result.tab);
    out.flush();
    if (cache && cache->dirty()) {
      try {
        cache->save();
      } catch (const std::exception& e) {
        err << "warning: could not save cache: " << e.what() << "\n";
      }
    }
    return result.exit_code;
  } catch (const CacheIntegrityError& e) {
    err << "cache integrity error: " << e.what() << "\n";
    return kCacheIntegrity;
  } catch (const InvalidArgument& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kUsage;
  } catch (const HypothesisViolation& e) {
    err << "hypothesis violated: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "enumeration cap exceeded: " << e.what() << " (raise --cap)\n";
    return kUsage;
  } catch (const ProvedRangeViolation& e) {
    err << "error: " << e.what() << "\n";
    return kFindings;
  } catch (const std::invalid_argument& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace alder::cli
