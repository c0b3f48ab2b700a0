#include "nlsob/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "nlsob/spec_text.hpp"

namespace nlsob {

namespace {

bool same_number(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

nlohmann::json number_json(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double json_number(const nlohmann::json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string()) return parse_number(j.get<std::string>());
  return j.get<double>();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(double v) { return std::isnan(v) ? "" : format_number(v); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

bool Row::operator==(const Row& o) const {
  return experiment == o.experiment && function == o.function && space == o.space && domain == o.domain &&
         n == o.n && same_number(p, o.p) && same_number(gamma_or_s, o.gamma_or_s) && same_number(value, o.value) &&
         same_number(reference, o.reference) && same_number(ratio, o.ratio) && flags == o.flags &&
         grid == o.grid && seed == o.seed;
}

bool RatioTable::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

bool RatioTable::operator==(const RatioTable& o) const {
  return experiment == o.experiment && rows == o.rows && checks == o.checks && details == o.details;
}

Row make_row(std::string experiment, std::string function, std::string space, std::string domain, int n, double p,
             double gamma_or_s, double value, double reference, std::string flags, std::string grid,
             std::uint64_t seed) {
  Row r{std::move(experiment), std::move(function), std::move(space), std::move(domain), n, p, gamma_or_s, value,
        reference, 0.0, std::move(flags), std::move(grid), seed};
  if (reference != 0.0 && !std::isnan(reference)) {
    r.ratio = value / reference;
  } else {
    r.ratio = std::numeric_limits<double>::quiet_NaN();
    if (value == 0.0 && reference == 0.0) r.flags += r.flags.empty() ? "degenerate" : ";degenerate";
  }
  return r;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {"experiment", "function", "space", "domain", "n",    "p",   "gamma_or_s",
                                                "value",      "reference", "ratio", "flags",  "grid", "seed"};
  return cols;
}

std::string to_csv(const RatioTable& table) {
  std::ostringstream out;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : table.rows) {
    out << csv_field(r.experiment) << ',' << csv_field(r.function) << ',' << csv_field(r.space) << ','
        << csv_field(r.domain) << ',' << r.n << ',' << csv_number(r.p) << ',' << csv_number(r.gamma_or_s) << ','
        << csv_number(r.value) << ',' << csv_number(r.reference) << ',' << csv_number(r.ratio) << ','
        << csv_field(r.flags) << ',' << csv_field(r.grid) << ',' << r.seed << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const RatioTable& table) {
  nlohmann::json j;
  j["experiment"] = table.experiment;
  j["columns"] = csv_columns();
  j["rows"] = nlohmann::json::array();
  for (const auto& r : table.rows) {
    j["rows"].push_back({{"experiment", r.experiment},
                         {"function", r.function},
                         {"space", r.space},
                         {"domain", r.domain},
                         {"n", r.n},
                         {"p", number_json(r.p)},
                         {"gamma_or_s", number_json(r.gamma_or_s)},
                         {"value", number_json(r.value)},
                         {"reference", number_json(r.reference)},
                         {"ratio", number_json(r.ratio)},
                         {"flags", r.flags},
                         {"grid", r.grid},
                         {"seed", r.seed}});
  }
  j["checks"] = nlohmann::json::array();
  for (const auto& c : table.checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["passed"] = table.passed();
  j["details"] = table.details;
  return j;
}

RatioTable table_from_json(const nlohmann::json& j) {
  RatioTable t;
  t.experiment = j.at("experiment").get<std::string>();
  for (const auto& r : j.at("rows")) {
    Row row;
    row.experiment = r.at("experiment").get<std::string>();
    row.function = r.at("function").get<std::string>();
    row.space = r.at("space").get<std::string>();
    row.domain = r.at("domain").get<std::string>();
    row.n = r.at("n").get<int>();
    row.p = json_number(r.at("p"));
    row.gamma_or_s = json_number(r.at("gamma_or_s"));
    row.value = json_number(r.at("value"));
    row.reference = json_number(r.at("reference"));
    row.ratio = json_number(r.at("ratio"));
    row.flags = r.at("flags").get<std::string>();
    row.grid = r.at("grid").get<std::string>();
    row.seed = r.at("seed").get<std::uint64_t>();
    t.rows.push_back(std::move(row));
  }
  for (const auto& c : j.at("checks"))
    t.checks.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(), c.at("detail").get<std::string>()});
  t.details = j.at("details");
  return t;
}

std::string plot_script(const RatioTable& table, const std::string& csv_name) {
  std::set<std::pair<std::string, std::string>> series;
  for (const auto& r : table.rows) series.insert({r.function, r.space});
  std::ostringstream out;
  out << "# gnuplot script for " << csv_name << "\n"
      << "set datafile separator ','\n"
      << "set key outside right\n"
      << "set xlabel 'gamma_or_s'\n"
      << "set ylabel 'value'\n"
      << "set title '" << table.experiment << "'\n";
  if (series.empty()) {
    out << "plot '" << csv_name << "' using 7:8 skip 1 with points title 'value'\n";
    return out.str();
  }
  out << "plot \\\n";
  std::size_t i = 0;
  for (const auto& [fn, space] : series) {
    out << "  '" << csv_name << "' using (strcol(2) eq '" << fn << "' && strcol(3) eq '" << space
        << "' ? $7 : 1/0):8 skip 1 with linespoints title '" << fn << " | " << space << "'"
        << (++i < series.size() ? ", \\\n" : "\n");
  }
  return out.str();
}

ReportFiles emit_report(const RatioTable& table, const std::string& dir, const std::string& base, bool csv,
                        bool json, bool plot) {
  namespace fs = std::filesystem;
  if (table.rows.empty()) throw std::invalid_argument("refusing to emit an empty table");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
  ReportFiles files;
  const fs::path root(dir);
  if (csv) {
    files.csv = (root / (base + ".csv")).string();
    write_file(files.csv, to_csv(table));
  }
  if (json) {
    files.json = (root / (base + ".json")).string();
    write_file(files.json, to_json(table).dump(2) + "\n");
  }
  if (plot) {
    files.plot = (root / (base + ".gp")).string();
    write_file(files.plot, plot_script(table, base + ".csv"));
  }
  return files;
}

}  // namespace nlsob
