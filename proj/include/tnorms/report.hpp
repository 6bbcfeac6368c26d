#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>

#include "tnorms/oracle.hpp"

namespace tnorms {

// Fixed CSV column order shared by all reports:
// element,n,norm,paper_value,lower,upper,pass,restarts,seed
inline std::string csv_header() {
  return "element,n,norm,paper_value,lower,upper,pass,restarts,seed";
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

struct ReportRow {
  std::string element;
  int n = 0;
  NormKind kind = NormKind::min;
  std::optional<double> reference;
  double lower = 0.0;
  double upper = 0.0;
  bool pass = true;
  int restarts = 0;
  std::uint64_t seed = 0;
  Json extra;  // witnesses, diagnostics (JSON output only)

  std::string to_csv() const {
    std::ostringstream os;
    os << element << ',' << n << ',' << to_string(kind) << ','
       << (reference ? format_double(*reference) : std::string()) << ','
       << format_double(lower) << ',' << format_double(upper) << ','
       << (pass ? "true" : "false") << ',' << restarts << ',' << seed;
    return os.str();
  }

  Json to_json() const {
    Json j{{"element", element}, {"n", n},
           {"norm", to_string(kind)}, {"lower", lower},
           {"upper", upper},      {"pass", pass},
           {"restarts", restarts}, {"seed", seed}};
    if (reference)
      j["paper_value"] = *reference;
    else
      j["paper_value"] = nullptr;
    if (!extra.is_null()) j["detail"] = extra;
    return j;
  }
};

inline std::vector<ReportRow> rows_from_oracle_reports(
    const std::vector<OracleReport>& reps, const SearchConfig& cfg) {
  std::vector<ReportRow> rows;
  for (const OracleReport& r : reps)
    for (const OracleCell& c : r.cells) {
      ReportRow row;
      row.element = "table:" + std::to_string(r.id);
      row.n = r.n;
      row.kind = c.kind;
      row.reference = c.reference;
      row.lower = c.lower;
      row.upper = c.upper;
      row.pass = c.pass;
      row.restarts = cfg.restarts;
      row.seed = cfg.seed;
      row.extra = Json{{"sound", c.sound}, {"runtime_s", c.runtime_s}};
      rows.push_back(std::move(row));
    }
  return rows;
}

inline void write_csv(std::ostream& os, const std::vector<ReportRow>& rows) {
  os << csv_header() << '\n';
  for (const ReportRow& r : rows) os << r.to_csv() << '\n';
}

inline Json report_json(const std::vector<ReportRow>& rows,
                        const SearchConfig& cfg, const Json& run_info) {
  Json rj = Json::array();
  for (const ReportRow& r : rows) rj.push_back(r.to_json());
  return Json{{"config", cfg.to_json()}, {"run", run_info},
              {"rows", std::move(rj)}};
}

inline void write_report_file(const std::string& path,
                              const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

}  // namespace tnorms
