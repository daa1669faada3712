#include "gospace/report.hpp"

#include "support.hpp"

#include <doctest.h>

#include <sstream>

using namespace gospace;

TEST_CASE("manifest") {
  const nlohmann::json m = manifest_json();
  CHECK(m["schema"] == kSchemaVersion);
  CHECK(m["kind"] == "manifest");
  CHECK(m["entries"].size() == 18);
  CHECK(manifest_json(9)["entries"].size() == 1);
  CHECK_THROWS_AS(manifest_json(99), std::invalid_argument);
}

TEST_CASE("analysis report") {
  AnalyzeOptions opt;
  opt.catalog_id = "row9";
  opt.params = {1, 0};
  opt.metric = LambdaMetric{2.0};
  const AnalyzeResult r = analyze(opt);
  CHECK(r.exit_code == exit_ok);
  CHECK(r.report["kind"] == "analysis");
  CHECK(r.report["verdict"] == "GO");
  CHECK(r.report["go_agreement"] == true);
  CHECK(r.report["space"]["dims"]["v"] == 7);
  CHECK(r.report["flow"]["closure_dimension"] == 1);
  CHECK(analyze(opt).report.dump() == r.report.dump());

  opt.metric = FiberMetric{Eigen::Vector3d(1, 2, 3).asDiagonal(), 1.0};
  const AnalyzeResult fiber = analyze(opt);
  CHECK(fiber.exit_code == exit_ok);
  CHECK(fiber.report["verdict"] == "NOT_GO");

  opt.catalog_id = "row99";
  CHECK_THROWS_AS(analyze(opt), std::invalid_argument);
}

TEST_CASE("table sweep") {
  const std::vector<Table1Row> rows = table1(7);
  REQUIRE(rows.size() == 9);
  const std::vector<Table1Row> other = table1(11);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(rows[i].id);
    CHECK(rows[i].lambda_independent);
    CHECK(rows[i].structure_consistent);
    for (std::size_t c = 0; c < rows[i].cells.size(); ++c) {
      CHECK(rows[i].cells[c].geodesic_lemma == Verdict::go);
      CHECK(rows[i].cells[c].agreement);
      CHECK(other[i].cells[c].geodesic_lemma == rows[i].cells[c].geodesic_lemma);
    }
  }
  std::ostringstream csv;
  write_table1_csv(csv, rows);
  std::istringstream in(csv.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 10);
  CHECK(table1_json(rows, 7, {})["rows"].size() == 9);
}
