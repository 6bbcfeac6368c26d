#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <vector>

#include "tnorms/element.hpp"
#include "tnorms/norms.hpp"

namespace tnorms {

// Reference values for the 13 catalog elements live in a checked-in data
// file (data/table_values.json). Each column entry is an expression in n
// so the targets stay reviewable data rather than code.
struct TableRow {
  int id = 0;
  std::string element;
  std::map<NormKind, std::string> exprs;  // min, h, proj, schur, tb, gamma
};

inline double eval_table_expr(const std::string& expr, int n) {
  if (expr == "1") return 1.0;
  if (expr == "sqrt(n)" || expr == "n^{1/2}") return std::sqrt((double)n);
  if (expr == "n") return (double)n;
  if (expr == "n^{3/2}") return (double)n * std::sqrt((double)n);
  throw std::invalid_argument("unknown table expression '" + expr + "'");
}

inline std::vector<TableRow> load_reference_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open table data file: " + path);
  Json j = Json::parse(in);
  if (!j.contains("rows") || !j["rows"].is_array())
    throw std::runtime_error("table data file: missing 'rows' array");
  std::vector<TableRow> rows;
  for (const Json& r : j["rows"]) {
    TableRow row;
    row.id = r.at("id").get<int>();
    row.element = r.at("element").get<std::string>();
    for (NormKind k : {NormKind::min, NormKind::h, NormKind::proj,
                       NormKind::schur, NormKind::tb, NormKind::gamma})
      row.exprs[k] = r.at(to_string(k)).get<std::string>();
    rows.push_back(std::move(row));
  }
  if (rows.size() != 13)
    throw std::runtime_error("table data file: expected 13 rows");
  return rows;
}

inline std::string default_table_path() {
#ifdef TNORMS_DATA_DIR
  return std::string(TNORMS_DATA_DIR) + "/table_values.json";
#else
  return "data/table_values.json";
#endif
}

inline double reference_value(const std::vector<TableRow>& rows, int id,
                              NormKind kind, int n) {
  for (const TableRow& r : rows)
    if (r.id == id) return eval_table_expr(r.exprs.at(kind), n);
  throw std::invalid_argument("no table row with id " + std::to_string(id));
}

}  // namespace tnorms
