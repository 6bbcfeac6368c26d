#include <catch_amalgamated.hpp>

#include "tnorms/oracle.hpp"
#include "tnorms/report.hpp"

using namespace tnorms;

TEST_CASE("oracle domain guard", "[oracle]") {
  REQUIRE_THROWS_AS(
      brute_force_norm(TensorElement::random(1, 3, 2, 1, 1), NormKind::schur),
      std::invalid_argument);
  REQUIRE_THROWS_AS(
      brute_force_norm(TensorElement::random(2, 2, 2, 1, 1), NormKind::schur),
      std::invalid_argument);
}

TEST_CASE("oracle basics", "[oracle]") {
  OracleBudget small;
  small.restarts = 96;
  small.max_iters = 300;

  TensorElement e11 = TensorElement::elementary(matrix_unit(2, 0, 0),
                                                matrix_unit(2, 0, 0));
  for (NormKind k : upper_search_kinds)
    REQUIRE(brute_force_norm(e11, k, small).value ==
            Catch::Approx(1.0).margin(1e-6));

  REQUIRE(brute_force_norm(TensorElement::zero(1, 2, 2), NormKind::gamma,
                           small)
              .value == 0.0);

  // schur value of the fourth catalog row at n = 2 is sqrt(2)
  OracleValue v =
      brute_force_norm(make_table_element(4, 2), NormKind::schur, small);
  REQUIRE(v.value == Catch::Approx(std::sqrt(2.0)).margin(1e-3));
}

TEST_CASE("verify_table checks the min column exactly", "[oracle]") {
  auto table = load_reference_table(default_table_path());
  SearchConfig cfg;
  cfg.restarts = 12;
  cfg.max_iters = 100;
  std::vector<OracleReport> reps = verify_table({2}, cfg, table);
  REQUIRE(reps.size() == 13);
  for (const OracleReport& r : reps) {
    const OracleCell& min_cell = r.cells.front();
    REQUIRE(min_cell.kind == NormKind::min);
    INFO("id=" << r.id);
    REQUIRE(min_cell.pass);
  }
  // row 12 at n = 2: min column is sqrt(2) exactly
  const OracleReport& r12 = reps[11];
  REQUIRE(r12.id == 12);
  REQUIRE(r12.cells.front().upper ==
          Catch::Approx(std::sqrt(2.0)).margin(1e-9));
}

TEST_CASE("verify_table upper bounds for selected cells", "[oracle]") {
  auto table = load_reference_table(default_table_path());
  SearchConfig cfg;
  cfg.restarts = 12;
  cfg.max_iters = 100;

  // id 6 at n = 3: tb and gamma settle at n^{3/2}
  std::vector<OracleReport> reps = verify_table({3}, cfg, table);
  const OracleReport& r6 = reps[5];
  REQUIRE(r6.id == 6);
  for (const OracleCell& c : r6.cells)
    if (c.kind == NormKind::tb || c.kind == NormKind::gamma) {
      REQUIRE(c.upper <= std::pow(3.0, 1.5) * 1.02);
      REQUIRE(c.pass);
    }

  // id 13 at n = 2: the diagonal-constrained search still certifies an
  // upper bound below sqrt(2) * 1.02 for the schur column
  std::vector<OracleReport> reps2 = verify_table({2}, cfg, table);
  const OracleReport& r13 = reps2[12];
  REQUIRE(r13.id == 13);
  for (const OracleCell& c : r13.cells)
    if (c.kind == NormKind::schur)
      REQUIRE(c.upper <= std::sqrt(2.0) * 1.02);
}

TEST_CASE("report rows serialize to the pinned CSV schema", "[oracle]") {
  auto table = load_reference_table(default_table_path());
  SearchConfig cfg;
  cfg.restarts = 8;
  cfg.max_iters = 60;
  std::vector<OracleReport> reps = verify_table({2}, cfg, table);
  std::vector<ReportRow> rows = rows_from_oracle_reports(reps, cfg);
  REQUIRE(rows.size() == 13 * 6);
  std::ostringstream os;
  write_csv(os, rows);
  const std::string out = os.str();
  REQUIRE(out.rfind("element,n,norm,paper_value,lower,upper,pass,restarts,"
                    "seed\n", 0) == 0);
  REQUIRE(out.find("table:1,2,min,1,") != std::string::npos);
  Json j = report_json(rows, cfg, Json{{"command", "test"}});
  REQUIRE(j["rows"].size() == 13 * 6);
  REQUIRE(j["config"]["restarts"] == 8);
}
