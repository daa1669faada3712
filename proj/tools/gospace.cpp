// gospace: command-line front end.
//
//   gospace list [--json] [--row N]
//   gospace analyze ID [--n N] [--r R] [--lambda L | --fiber diag:a,b,c] [--json]
//   gospace table1 [--csv | --json] [--seed S]
//   gospace trajectory ID [--n N] [--lambda L] [--t-max T] [--steps K] [-o FILE]
//
// Exit codes: 0 ok, 1 structural failure, 2 indeterminate verdict, 64 usage.

#include "gospace/flow.hpp"
#include "gospace/goverify.hpp"
#include "gospace/homspace.hpp"
#include "gospace/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

using namespace gospace;

namespace {

struct Common {
  std::string id;
  std::optional<int> row;
  std::string pair;
  int n = 0;
  int r = 0;
  std::optional<double> lambda;
  std::string fiber;
  double lambda_m = 1.0;
  int samples = 8;
  std::optional<std::uint64_t> seed;
  double tol_accept = Tolerances{}.accept;
  double tol_reject = Tolerances{}.reject;
};

void add_space_options(CLI::App* cmd, Common& c) {
  cmd->add_option("id", c.id, "catalog id (see `gospace list`)");
  cmd->add_option("--row", c.row, "Table 1 row number");
  cmd->add_option("--pair", c.pair, "auxiliary catalog entry (sphere, so-group, ex4)");
  cmd->add_option("--n", c.n, "rank parameter n");
  cmd->add_option("--r", c.r, "second parameter r (rows 10, 11)");
}

void add_metric_options(CLI::App* cmd, Common& c) {
  auto* lam = cmd->add_option("--lambda", c.lambda, "fiber scaling of the lambda-deformation");
  cmd->add_option("--fiber", c.fiber, "fiber operator on l, e.g. diag:1,2,3")->excludes(lam);
  cmd->add_option("--lambda-m", c.lambda_m, "scaling on m for --fiber");
}

void add_sampling_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--samples", c.samples, "directions sampled per criterion")->check(CLI::Range(1, 100000));
  cmd->add_option("--seed", c.seed, "RNG seed (falls back to GOSPACE_SEED)");
  cmd->add_option("--tol-accept", c.tol_accept, "residual accepted as zero");
  cmd->add_option("--tol-reject", c.tol_reject, "residual proving failure");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("GOSPACE_SEED")) {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(env, &pos);
      if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw CLI::ValidationError("GOSPACE_SEED", std::string("not an unsigned integer: ") + env);
  }
  return 1;
}

std::string resolve_id(const Common& c) {
  int given = !c.id.empty() + c.row.has_value() + !c.pair.empty();
  if (given != 1) throw CLI::ValidationError("space", "give exactly one of ID, --row or --pair");
  if (c.row) return row_id(*c.row);
  return c.pair.empty() ? c.id : c.pair;
}

CatalogParams resolve_params(const Common& c, const std::string& id) {
  const CatalogEntry& e = catalog_entry(id);
  CatalogParams p;
  p.n = c.n ? c.n : e.minimal.n;
  p.r = c.r ? c.r : e.minimal.r;
  return p;
}

MetricSpec resolve_metric(const Common& c, const HomogeneousSpace* space) {
  if (!c.fiber.empty()) {
    const std::string prefix = "diag:";
    if (c.fiber.rfind(prefix, 0) != 0) {
      throw CLI::ValidationError("--fiber", "expected diag:a,b,...");
    }
    std::vector<double> values;
    std::stringstream ss(c.fiber.substr(prefix.size()));
    for (std::string item; std::getline(ss, item, ',');) {
      try {
        std::size_t pos = 0;
        values.push_back(std::stod(item, &pos));
        if (pos != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw CLI::ValidationError("--fiber", "not a number: '" + item + "'");
      }
    }
    if (space && static_cast<int>(values.size()) != space->dim_l()) {
      throw CLI::ValidationError("--fiber", "needs " + std::to_string(space->dim_l()) + " entries");
    }
    FiberMetric f;
    f.a_l = Eigen::Map<Eigen::VectorXd>(values.data(), values.size()).asDiagonal();
    f.lambda_m = c.lambda_m;
    return f;
  }
  if (c.lambda) return LambdaMetric{*c.lambda};
  return NormalMetric{};
}

Tolerances resolve_tol(const Common& c) {
  Tolerances tol;
  tol.accept = c.tol_accept;
  tol.reject = c.tol_reject;
  if (!(tol.accept > 0.0) || !(tol.reject >= tol.accept)) {
    throw CLI::ValidationError("--tol-accept/--tol-reject", "need 0 < accept <= reject");
  }
  return tol;
}

void print_analysis_text(const nlohmann::json& rep) {
  const auto& sp = rep["space"];
  std::cout << sp["id"].get<std::string>() << "  " << sp["description"].get<std::string>() << "\n";
  std::cout << "  dims g/h/l/m: " << sp["dims"]["g"] << "/" << sp["dims"]["h"] << "/"
            << sp["dims"]["l"] << "/" << sp["dims"]["m"] << "\n";
  std::cout << "  metric: " << rep["metric"]["label"].get<std::string>() << "\n";
  for (const auto& c : rep["go"]) {
    std::cout << "  " << c["criterion"].get<std::string>() << ": ";
    if (!c["applicable"].get<bool>()) {
      std::cout << "n/a (" << c["reason"].get<std::string>() << ")\n";
      continue;
    }
    std::cout << c["verdict"].get<std::string>() << "  max residual "
              << c["max_residual"].get<double>() << "\n";
  }
  for (const auto& c : rep["complexity"]) {
    std::cout << "  on " << c["submodule"].get<std::string>() << ": ddim " << c["ddim"] << ", dind "
              << c["dind"] << ", complexity " << c["complexity"]
              << (c["consistent"].get<bool>() ? "" : "  [INCONSISTENT]") << "\n";
  }
  const auto& p = rep["poisson"];
  std::cout << "  family " << p["family"].get<std::string>() << ": commutator "
            << p["commutativity"]["residual"].get<double>();
  if (!p["completeness"].is_null()) {
    std::cout << ", ddim_B " << p["completeness"]["ddim_b"] << " / target "
              << p["completeness"]["target"];
  }
  std::cout << "\n";
  const auto& f = rep["flow"];
  if (f["available"].get<bool>()) {
    std::cout << "  flow: closure dimension " << f["closure_dimension"] << ", planarity "
              << f["planarity_residual"].get<double>() << "\n";
  }
  std::cout << "verdict: " << rep["verdict"].get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesic-orbit and integrability checks for homogeneous spaces"};
  app.set_version_flag("--version", std::string(GOSPACE_VERSION));
  app.require_subcommand(1);

  Common common;
  bool json_out = false;
  bool csv_out = false;

  auto* list = app.add_subcommand("list", "print the catalog manifest");
  list->add_flag("--json", json_out, "JSON manifest");
  list->add_option("--row", common.row, "only this Table 1 row");

  auto* an = app.add_subcommand("analyze", "full report for one space and metric");
  add_space_options(an, common);
  add_metric_options(an, common);
  add_sampling_options(an, common);
  an->add_flag("--json", json_out, "JSON report");
  bool no_flow = false;
  an->add_flag("--no-flow", no_flow, "skip the sample trajectory");

  auto* t1 = app.add_subcommand("table1", "Table 1 sweep at minimal parameters");
  auto* t1_csv = t1->add_flag("--csv", csv_out, "CSV output");
  t1->add_flag("--json", json_out, "JSON output")->excludes(t1_csv);
  add_sampling_options(t1, common);
  bool all_rows = true;
  t1->add_flag("--all", all_rows, "every supported row (default)");

  auto* tr = app.add_subcommand("trajectory", "export a homogeneous geodesic as CSV");
  add_space_options(tr, common);
  add_metric_options(tr, common);
  add_sampling_options(tr, common);
  FlowOptions flow_opt;
  std::string out_path;
  tr->add_option("--t-max", flow_opt.t_max, "final time")->check(CLI::PositiveNumber);
  tr->add_option("--steps", flow_opt.n_steps, "grid points")->check(CLI::Range(16, 10000000));
  tr->add_option("-o,--output", out_path, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_usage;
  }

  try {
    if (list->parsed()) {
      const nlohmann::json manifest = manifest_json(common.row);
      if (json_out) {
        std::cout << manifest.dump(2) << "\n";
      } else {
        for (const auto& e : manifest["entries"]) {
          std::cout << e["id"].get<std::string>() << "\t" << e["g"].get<std::string>() << " > "
                    << e["k"].get<std::string>() << " > " << e["h"].get<std::string>() << "\t"
                    << (e["supported"].get<bool>() ? "supported" : "unsupported");
          if (!e["note"].get<std::string>().empty()) std::cout << "\t" << e["note"].get<std::string>();
          std::cout << "\n";
        }
      }
      return exit_ok;
    }

    const Tolerances tol = resolve_tol(common);
    const std::uint64_t seed = resolve_seed(common.seed);

    if (an->parsed()) {
      AnalyzeOptions opt;
      opt.catalog_id = resolve_id(common);
      opt.params = resolve_params(common, opt.catalog_id);
      const SpacePtr probe = build_space(opt.catalog_id, opt.params, tol);
      opt.metric = resolve_metric(common, probe.get());
      opt.samples = common.samples;
      opt.seed = seed;
      opt.tol = tol;
      opt.flow = !no_flow;
      const AnalyzeResult res = analyze(opt);
      if (json_out) {
        std::cout << res.report.dump(2) << "\n";
      } else {
        print_analysis_text(res.report);
      }
      return res.exit_code;
    }

    if (t1->parsed()) {
      const auto rows = table1(seed, common.samples, tol);
      if (csv_out) {
        write_table1_csv(std::cout, rows);
      } else if (json_out) {
        std::cout << table1_json(rows, seed, tol).dump(2) << "\n";
      } else {
        for (const auto& r : rows) {
          std::cout << "row " << r.row << " (" << r.id << ")";
          for (const auto& c : r.cells) {
            std::cout << "  lambda=" << c.lambda << ":" << verdict_name(c.geodesic_lemma);
          }
          std::cout << "  complexity " << r.complexity << "\n";
        }
      }
      bool indeterminate = false;
      for (const auto& r : rows) {
        for (const auto& c : r.cells) {
          indeterminate = indeterminate || c.geodesic_lemma == Verdict::indeterminate ||
                          c.centrality == Verdict::indeterminate ||
                          (c.gordon && *c.gordon == Verdict::indeterminate);
        }
      }
      return indeterminate ? exit_indeterminate : exit_ok;
    }

    if (tr->parsed()) {
      const std::string id = resolve_id(common);
      const SpacePtr space = build_space(id, resolve_params(common, id), tol);
      const MetricSpec metric = resolve_metric(common, space.get());
      std::mt19937_64 rng(seed);
      flow_opt.seed = seed;
      flow_opt.go_samples = common.samples;
      const Trajectory traj =
          orbit_trajectory(*space, metric, gaussian_vector(rng, space->dim_v()), flow_opt, tol);
      if (out_path.empty()) {
        write_trajectory_csv(std::cout, traj);
      } else {
        std::ofstream file(out_path);
        if (!file) throw std::invalid_argument("cannot open " + out_path);
        write_trajectory_csv(file, traj);
      }
      return exit_ok;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "gospace: " << e.what() << "\n";
    return exit_usage;
  } catch (const StructuralError& e) {
    std::cerr << "gospace: structural failure: " << e.what() << "\n";
    return exit_structural;
  } catch (const std::invalid_argument& e) {
    std::cerr << "gospace: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::domain_error& e) {
    std::cerr << "gospace: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "gospace: internal failure: " << e.what() << "\n";
    return exit_structural;
  }
  return exit_usage;
}
