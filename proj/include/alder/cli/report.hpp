#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "alder/injection.hpp"
#include "alder/verifier.hpp"

namespace alder::cli {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Table };
Format parse_format(const std::string& s);

/// Rows for the csv and text renderings. Notes only appear in text output.
struct Tabular {
  std::vector<std::string> notes;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void append(const Tabular& other);
};

/// A JSON number when the count fits in 64 bits, else a decimal string.
Json count_json(const Count& c);

Json to_json(const InequalityReport& r);
Json to_json(const ChainReport& r);
Json to_json(const TableCheck& t);
Json to_json(const InjectionCertificate& c);
Json to_json(const ScanReport& s);

Tabular to_tabular(const InequalityReport& r);
Tabular to_tabular(const ChainReport& r);
Tabular to_tabular(const TableCheck& t);
Tabular to_tabular(const InjectionCertificate& c);
Tabular to_tabular(const ScanReport& s);

std::string render(Format format, const Json& json, const Tabular& tab);

}  // namespace alder::cli
