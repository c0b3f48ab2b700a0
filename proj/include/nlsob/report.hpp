#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

namespace nlsob {

/// One experiment row. Missing reference or ratio values are NaN.
struct Row {
  std::string experiment;
  std::string function;
  std::string space;
  std::string domain;
  int n = 1;
  double p = 1.0;
  double gamma_or_s = 0.0;
  double value = 0.0;
  double reference = 0.0;
  double ratio = 0.0;
  std::string flags;
  std::string grid;
  std::uint64_t seed = 0;

  bool operator==(const Row& other) const;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;

  bool operator==(const Check& other) const = default;
};

/// Rows, pass/fail checks and free-form provenance (profiles, policies,
/// certificates) for one experiment.
struct RatioTable {
  std::string experiment;
  std::vector<Row> rows;
  std::vector<Check> checks;
  nlohmann::json details = nlohmann::json::object();

  bool passed() const;
  bool operator==(const RatioTable& other) const;
};

/// ratio = value / reference, NaN when both vanish (the row is then flagged
/// `degenerate`).
Row make_row(std::string experiment, std::string function, std::string space, std::string domain, int n, double p,
             double gamma_or_s, double value, double reference, std::string flags, std::string grid,
             std::uint64_t seed);

const std::vector<std::string>& csv_columns();
std::string to_csv(const RatioTable& table);
nlohmann::json to_json(const RatioTable& table);
RatioTable table_from_json(const nlohmann::json& j);
/// gnuplot script plotting value against gamma_or_s per (function, space)
/// from the CSV next to it.
std::string plot_script(const RatioTable& table, const std::string& csv_name);

struct ReportFiles {
  std::string csv, json, plot;
};
/// Writes `<dir>/<base>.csv|.json|.gp` as requested; throws on unwritable paths.
ReportFiles emit_report(const RatioTable& table, const std::string& dir, const std::string& base, bool csv,
                        bool json, bool plot);

}  // namespace nlsob
