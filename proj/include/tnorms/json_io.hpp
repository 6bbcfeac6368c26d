#pragma once

#include <json.hpp>
#include <string>

#include "tnorms/block_matrix.hpp"
#include "tnorms/matrix.hpp"

namespace tnorms {

using Json = nlohmann::json;

// Shared wire format: a matrix is a nested array of rows, each entry an
// [re, im] pair. Round-trips losslessly (shortest-repr doubles).
inline Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline CMatrix matrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("field '" + field +
                                "': expected non-empty array of rows");
  const size_t rows = j.size();
  if (!j[0].is_array())
    throw std::invalid_argument("field '" + field + "': rows must be arrays");
  const size_t cols = j[0].size();
  CMatrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw std::invalid_argument("field '" + field + "': ragged rows");
    for (size_t c = 0; c < cols; ++c) {
      const Json& e = j[i][c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number())
        throw std::invalid_argument("field '" + field + "': entry (" +
                                    std::to_string(i) + "," +
                                    std::to_string(c) +
                                    ") must be an [re, im] pair");
      m(i, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

inline Json block_matrix_to_json(const BlockMatrix& b) {
  Json grid = Json::array();
  for (int i = 0; i < b.grid_rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < b.grid_cols(); ++j)
      row.push_back(matrix_to_json(b.at(i, j)));
    grid.push_back(std::move(row));
  }
  return Json{{"grid_rows", b.grid_rows()},
              {"grid_cols", b.grid_cols()},
              {"block_rows", b.block_rows()},
              {"block_cols", b.block_cols()},
              {"blocks", std::move(grid)}};
}

inline BlockMatrix block_matrix_from_json(const Json& j,
                                          const std::string& field) {
  for (const char* key : {"grid_rows", "grid_cols", "block_rows", "block_cols",
                          "blocks"})
    if (!j.contains(key))
      throw std::invalid_argument("field '" + field + "': missing '" + key +
                                  "'");
  BlockMatrix b(j["grid_rows"].get<int>(), j["grid_cols"].get<int>(),
                j["block_rows"].get<int>(), j["block_cols"].get<int>());
  const Json& grid = j["blocks"];
  if (!grid.is_array() || static_cast<int>(grid.size()) != b.grid_rows())
    throw std::invalid_argument("field '" + field + "': bad block grid");
  for (int i = 0; i < b.grid_rows(); ++i) {
    if (static_cast<int>(grid[i].size()) != b.grid_cols())
      throw std::invalid_argument("field '" + field + "': ragged block grid");
    for (int jj = 0; jj < b.grid_cols(); ++jj)
      b.set(i, jj, matrix_from_json(grid[i][jj],
                                    field + ".blocks[" + std::to_string(i) +
                                        "][" + std::to_string(jj) + "]"));
  }
  return b;
}

}  // namespace tnorms
