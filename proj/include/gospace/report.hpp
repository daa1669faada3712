#pragma once

// Machine-readable reports: catalog manifest, per-space analysis and the
// Table 1 sweep. Every verdict carries its residual and thresholds.

#include "gospace/goverify.hpp"
#include "gospace/homspace.hpp"
#include "gospace/linalg.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gospace {

inline constexpr const char* kSchemaVersion = "gospace-report/1";

/// Exit status contract shared by the CLI and CI.
enum ExitCode : int { exit_ok = 0, exit_structural = 1, exit_indeterminate = 2, exit_usage = 64 };

nlohmann::json manifest_json(std::optional<int> row = std::nullopt);

struct AnalyzeOptions {
  std::string catalog_id;
  CatalogParams params;
  MetricSpec metric = NormalMetric{};
  int samples = 8;
  std::uint64_t seed = 1;
  Tolerances tol;
  bool flow = true;
  int flow_steps = 1024;
};

struct AnalyzeResult {
  nlohmann::json report;
  int exit_code = exit_ok;
};

/// Builds the space, certifies the metric by all applicable criteria and
/// computes complexity, a commutative family and a sample trajectory.
/// Invalid input propagates as std::invalid_argument.
AnalyzeResult analyze(const AnalyzeOptions& options);

inline const std::vector<double>& table1_lambdas() {
  static const std::vector<double> values{0.3, 0.5, 2.0, 5.0};
  return values;
}

struct Table1Cell {
  double lambda = 0.0;
  Verdict geodesic_lemma = Verdict::indeterminate;
  Verdict centrality = Verdict::indeterminate;
  std::optional<Verdict> gordon;  // empty when l = 0
  double max_residual = 0.0;      // worst over applicable criteria
  bool agreement = false;
};

struct Table1Row {
  int row = 0;
  std::string id;
  CatalogParams params;
  int dim_g = 0, dim_h = 0, dim_l = 0, dim_m = 0;
  std::vector<Table1Cell> cells;
  bool lambda_independent = false;
  int ddim = 0, dind = 0, complexity = 0;
  bool structure_consistent = false;
};

std::vector<Table1Row> table1(std::uint64_t seed, int samples = 8, const Tolerances& tol = {});
nlohmann::json table1_json(const std::vector<Table1Row>& rows, std::uint64_t seed,
                           const Tolerances& tol);
void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows);

nlohmann::json certificate_json(const GoCertificate& cert);
nlohmann::json tolerances_json(const Tolerances& tol);

}  // namespace gospace
