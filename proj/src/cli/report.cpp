#include "alder/cli/report.hpp"

#include <algorithm>
#include <sstream>

namespace alder::cli {

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "table") return Format::Table;
  throw InvalidArgument("unknown format '" + s + "' (expected json, csv or table)");
}

void Tabular::append(const Tabular& other) {
  if (header.empty()) header = other.header;
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

Json count_json(const Count& c) {
  if (mpz_fits_slong_p(c.get_mpz_t())) return static_cast<std::int64_t>(c.get_si());
  return c.get_str();
}

namespace {

std::string str(std::uint64_t v) { return std::to_string(v); }

std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

const char* variant_name(Variant v) { return v == Variant::Full ? "full" : "exclude-co-residue"; }

}  // namespace

Json to_json(const InequalityReport& r) {
  Json j;
  j["relation"] = r.relation;
  j["a"] = r.a;
  j["d"] = r.d;
  j["n_range"] = {r.n_lo, r.n_hi};
  j["variant"] = variant_name(r.variant);
  j["regime"] = to_string(r.regime);
  j["verdict"] = to_string(r.verdict);
  j["expected_exceptions"] = r.expected_exceptions;
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back({{"n", x.n}, {"lhs", count_json(x.lhs)}, {"rhs", count_json(x.rhs)}});
  j["violations"] = std::move(v);
  return j;
}

Tabular to_tabular(const InequalityReport& r) {
  Tabular t;
  t.notes.push_back(r.relation + ", a=" + str(r.a) + ", d=" + str(r.d) + ", n in [" + str(r.n_lo) + ", " +
                    str(r.n_hi) + "]: " + to_string(r.verdict) + " (" + to_string(r.regime) + ")");
  t.header = {"a", "d", "n_lo", "n_hi", "verdict", "n", "lhs", "rhs", "expected"};
  auto base = [&]() {
    return std::vector<std::string>{str(r.a), str(r.d), str(r.n_lo), str(r.n_hi), to_string(r.verdict)};
  };
  for (const auto& v : r.violations) {
    auto row = base();
    bool expected = std::find(r.expected_exceptions.begin(), r.expected_exceptions.end(), v.n) !=
                    r.expected_exceptions.end();
    row.insert(row.end(), {str(v.n), v.lhs.get_str(), v.rhs.get_str(), expected ? "yes" : "no"});
    t.rows.push_back(std::move(row));
  }
  if (r.violations.empty()) {
    auto row = base();
    row.insert(row.end(), {"", "", "", ""});
    t.rows.push_back(std::move(row));
  }
  return t;
}

Json to_json(const ChainReport& r) {
  Json j;
  j["a"] = r.a;
  j["d"] = r.d;
  j["n"] = r.n;
  j["reduced_d"] = r.reduced_d;
  j["reduced_n"] = r.reduced_n;
  j["alpha"] = r.alpha;
  j["dilated_d"] = r.dilated_d;
  j["covered"] = r.covered;
  j["holds"] = r.holds();
  Json links = Json::array();
  for (const auto& l : r.links)
    links.push_back({{"name", l.name},
                     {"lhs", l.lhs_label},
                     {"lhs_value", count_json(l.lhs)},
                     {"relation", l.relation},
                     {"rhs", l.rhs_label},
                     {"rhs_value", count_json(l.rhs)},
                     {"holds", l.holds},
                     {"applies", l.applies}});
  j["links"] = std::move(links);
  return j;
}

Tabular to_tabular(const ChainReport& r) {
  Tabular t;
  t.notes.push_back("chain a=" + str(r.a) + ", d=" + str(r.d) + ", n=" + str(r.n) + ": " +
                    (r.holds() ? "holds" : "fails") + (r.covered ? "" : " (outside the covered range)"));
  t.header = {"n", "link", "lhs", "lhs_value", "relation", "rhs", "rhs_value", "holds", "applies"};
  for (const auto& l : r.links)
    t.rows.push_back({str(r.n), l.name, l.lhs_label, l.lhs.get_str(), l.relation, l.rhs_label, l.rhs.get_str(),
                      l.holds ? "yes" : "no", l.applies ? "yes" : "no"});
  return t;
}

Json to_json(const TableCheck& t) {
  Json j;
  j["table_id"] = t.table_id;
  j["caption"] = t.caption;
  Json params;
  for (const auto& [k, v] : t.parameters) params[k] = v;
  j["parameters"] = std::move(params);
  j["all_match"] = t.all_match();
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row;
    row["label"] = r.label;
    row["n_range"] = {r.n_lo, r.n_hi};
    row["column"] = r.column;
    row["relation"] = to_string(r.relation);
    row["formula"] = r.formula;
    row["n"] = r.sample_n;
    row["expected"] = r.expected;
    row["computed"] = count_json(r.computed);
    row["match"] = r.match;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

Tabular to_tabular(const TableCheck& t) {
  Tabular tab;
  tab.notes.push_back(t.caption + " [" + t.table_id + "]: " + (t.all_match() ? "all rows match" : "MISMATCH"));
  tab.header = {"row", "n_lo", "n_hi", "column", "relation", "formula", "n", "expected", "computed", "match"};
  for (const auto& r : t.rows)
    tab.rows.push_back({r.label, str(r.n_lo), str(r.n_hi), r.column, to_string(r.relation), r.formula,
                        str(r.sample_n), std::to_string(r.expected), r.computed.get_str(), r.match ? "yes" : "no"});
  return tab;
}

Json to_json(const InjectionCertificate& c) {
  Json j;
  j["kind"] = c.kind;
  Json params;
  for (const auto& [k, v] : c.parameters) params[k] = v;
  j["parameters"] = std::move(params);
  j["n"] = c.n;
  j["domain_size"] = c.domain_size;
  j["target_count"] = c.target_count ? count_json(*c.target_count) : Json();
  j["images_distinct"] = c.images_distinct;
  j["weight_ok"] = c.weight_ok;
  j["image_valid"] = c.image_valid;
  j["passes"] = c.passes();
  Json branches = Json::object();
  for (const auto& [k, v] : c.branch_counts) branches[k] = v;
  j["branch_counts"] = std::move(branches);
  Json ce = Json::array();
  for (const auto& x : c.counterexamples) ce.push_back({{"reason", x.reason}, {"input", x.input}, {"image", x.image}});
  j["counterexamples"] = std::move(ce);
  return j;
}

Tabular to_tabular(const InjectionCertificate& c) {
  Tabular t;
  std::string params;
  for (const auto& [k, v] : c.parameters) params += (params.empty() ? "" : ", ") + k + "=" + std::to_string(v);
  t.notes.push_back(c.kind + " (" + params + ") at n=" + str(c.n) + ": " + (c.passes() ? "passes" : "FAILS"));
  for (const auto& x : c.counterexamples) t.notes.push_back("  " + x.reason + ": " + x.input + " -> " + x.image);
  t.header = {"kind", "n", "domain_size", "target_count", "images_distinct", "weight_ok", "image_valid", "passes"};
  t.rows.push_back({c.kind, str(c.n), str(c.domain_size), c.target_count ? c.target_count->get_str() : "",
                    c.images_distinct ? "yes" : "no", c.weight_ok ? "yes" : "no", c.image_valid ? "yes" : "no",
                    c.passes() ? "yes" : "no"});
  return t;
}

Json to_json(const ScanReport& s) {
  Json j;
  j["conjecture"] = to_string(s.which);
  j["a"] = s.a;
  Json reports = Json::object();
  for (const auto& [d, r] : s.reports) reports[std::to_string(d)] = to_json(r);
  j["reports"] = std::move(reports);
  j["findings"] = s.findings;
  j["contradictions"] = s.contradictions;
  j["consistent_with_conjecture"] = s.consistent_with_conjecture();
  j["summary"] = s.summary();
  return j;
}

Tabular to_tabular(const ScanReport& s) {
  Tabular t;
  t.notes.push_back(s.summary());
  t.header = {"conjecture", "a", "d", "nmax", "regime", "verdict", "violations", "expected"};
  for (const auto& [d, r] : s.reports)
    t.rows.push_back({to_string(s.which), str(s.a), str(d), str(r.n_hi), to_string(r.regime), to_string(r.verdict),
                      join(r.violation_ns()), join(r.expected_exceptions)});
  return t;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void csv_line(std::ostringstream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
  os << "\n";
}

}  // namespace

std::string render(Format format, const Json& json, const Tabular& tab) {
  std::ostringstream os;
  switch (format) {
    case Format::Json:
      os << json.dump(2) << "\n";
      break;
    case Format::Csv:
      csv_line(os, tab.header);
      for (const auto& row : tab.rows) csv_line(os, row);
      break;
    case Format::Table: {
      for (const auto& note : tab.notes) os << note << "\n";
      std::vector<std::size_t> width(tab.header.size(), 0);
      auto measure = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
      };
      measure(tab.header);
      for (const auto& row : tab.rows) measure(row);
      auto line = [&](const std::vector<std::string>& row) {
        std::string s;
        for (std::size_t i = 0; i < row.size(); ++i) {
          std::string cell = row[i];
          if (i + 1 < row.size()) cell.resize(width[i], ' ');
          s += (i ? "  " : "") + cell;
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        os << s << "\n";
      };
      line(tab.header);
      for (const auto& row : tab.rows) line(row);
      break;
    }
  }
  return os.str();
}

}  // namespace alder::cli
