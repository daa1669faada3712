#include "gospace/report.hpp"

#include "gospace/flow.hpp"
#include "gospace/poisson.hpp"
#include "gospace/structure.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

namespace gospace {

using nlohmann::json;

namespace {

// Infinite rank gaps (no discarded singular value) serialize as null.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json params_json(const CatalogParams& p) { return {{"n", p.n}, {"r", p.r}}; }

json flags_json(const SpaceFlags& f) {
  return {{"l_commutes_h", f.l_commutes_h},
          {"l_closed", f.l_closed},
          {"l_abelian", f.l_abelian},
          {"symmetric", f.symmetric}};
}

json space_json(const HomogeneousSpace& s) {
  const StructureResiduals& r = s.residuals;
  return {{"id", s.catalog_id},
          {"table_row", s.table_row ? json(*s.table_row) : json(nullptr)},
          {"params", params_json(s.params)},
          {"description", s.description},
          {"is_pair", s.is_pair},
          {"dims",
           {{"g", s.dim_g()}, {"h", s.dim_h()}, {"l", s.dim_l()}, {"m", s.dim_m()}, {"v", s.dim_v()}}},
          {"flags", flags_json(s.flags)},
          {"base_point", s.base_point.has_value()},
          {"structure",
           {{"orthogonality", r.orthogonality},
            {"h_closure", r.h_closure},
            {"reductivity", r.reductivity},
            {"k_closure", r.k_closure},
            {"l_commutes_h", r.l_commutes_h},
            {"l_closed", r.l_closed},
            {"l_abelian", r.l_abelian},
            {"symmetric", r.symmetric},
            {"base_point", r.base_point}}}};
}

json complexity_json(const ComplexityReport& c) {
  return {{"submodule", c.submodule},
          {"ddim", c.ddim},
          {"dind", c.dind},
          {"complexity", c.complexity},
          {"generic",
           {{"g_x", c.generic.g_x},
            {"acting_x", c.generic.s_x},
            {"j_x", c.generic.j_x},
            {"ker_lambda", c.generic.ker_lambda}}},
          {"rank_g", c.rank_g},
          {"generic_g_xm", c.generic_g_xm >= 0 ? json(c.generic_g_xm) : json(nullptr)},
          {"n_samples", c.n_samples},
          {"samples_at_minimum", c.samples_at_minimum},
          {"rank_gap", finite_or_null(c.rank_gap)},
          {"consistent", c.consistent},
          {"issues", c.issues}};
}

// Gordon's condition characterizes g.o. for every lambda at once, so it is
// compared with the other criteria only for a genuine deformation lambda != 1.
std::string gordon_not_applicable(const HomogeneousSpace& s, const MetricSpec& m) {
  if (s.dim_l() == 0) return "l = 0";
  if (std::holds_alternative<FiberMetric>(m)) return "not a lambda-deformation";
  const auto* lam = std::get_if<LambdaMetric>(&m);
  if (!lam || lam->lambda == 1.0) return "normal metric: g.o. for every triple";
  return "";
}

}  // namespace

json tolerances_json(const Tolerances& tol) {
  return {{"zero", tol.zero}, {"rank_rel", tol.rank_rel}, {"accept", tol.accept},
          {"reject", tol.reject}};
}

json certificate_json(const GoCertificate& cert) {
  return {{"criterion", criterion_name(cert.criterion)},
          {"applicable", true},
          {"verdict", verdict_name(cert.verdict)},
          {"max_residual", cert.max_residual()},
          {"min_residual", cert.min_residual()},
          {"accept_tol", cert.accept_tol},
          {"reject_tol", cert.reject_tol},
          {"n_samples", static_cast<int>(cert.samples.size())},
          {"n_degenerate", static_cast<int>(cert.degenerate.size())},
          {"generic_h_x", cert.generic_h_x},
          {"seed", cert.seed}};
}

json manifest_json(std::optional<int> row) {
  json entries = json::array();
  for (const CatalogEntry& e : catalog()) {
    if (row && e.table_row != row) continue;
    entries.push_back({{"id", e.id},
                       {"table_row", e.table_row ? json(*e.table_row) : json(nullptr)},
                       {"g", e.g},
                       {"k", e.k},
                       {"h", e.h},
                       {"supported", e.supported},
                       {"uses_n", e.uses_n},
                       {"uses_r", e.uses_r},
                       {"n_min", e.n_min},
                       {"r_min", e.r_min},
                       {"minimal", params_json(e.minimal)},
                       {"flags", flags_json(e.flags)},
                       {"base_point", e.has_base_point},
                       {"is_pair", e.is_pair},
                       {"note", e.note}});
  }
  if (row && entries.empty()) {
    throw std::invalid_argument("no catalog entry for row " + std::to_string(*row));
  }
  return {{"schema", kSchemaVersion},
          {"kind", "manifest"},
          {"tool", {{"name", "gospace"}, {"version", GOSPACE_VERSION}}},
          {"entries", entries}};
}

AnalyzeResult analyze(const AnalyzeOptions& opt) {
  AnalyzeResult out;
  json& rep = out.report;
  rep["schema"] = kSchemaVersion;
  rep["kind"] = "analysis";
  rep["tool"] = {{"name", "gospace"}, {"version", GOSPACE_VERSION}};
  rep["request"] = {{"id", opt.catalog_id},
                    {"params", params_json(opt.params)},
                    {"metric", metric_label(opt.metric)}};
  rep["thresholds"] = tolerances_json(opt.tol);
  rep["seed"] = opt.seed;
  rep["samples"] = opt.samples;
  rep["inner_product"] = "trace form <X,Y> = -tr(XY)";

  SpacePtr space;
  try {
    space = build_space(opt.catalog_id, opt.params, opt.tol);
  } catch (const StructuralError& e) {
    rep["status"] = {{"structural_ok", false},
                     {"indeterminate", false},
                     {"error", e.what()},
                     {"exit_code", exit_structural}};
    out.exit_code = exit_structural;
    return out;
  }
  const HomogeneousSpace& s = *space;
  rep["space"] = space_json(s);

  const MetricOperator op = metric_operator(s, opt.metric, opt.tol);
  rep["metric"] = {{"label", metric_label(opt.metric)},
                   {"min_eigenvalue", op.min_eigenvalue},
                   {"invariance_residual", op.invariance_residual},
                   {"natural_reductivity_residual", natural_reductivity_residual(s, op)}};

  bool indeterminate = false;
  bool structural_ok = true;
  json go = json::array();
  std::vector<Verdict> verdicts;
  auto record = [&](const GoCertificate& c) {
    go.push_back(certificate_json(c));
    verdicts.push_back(c.verdict);
    indeterminate = indeterminate || c.verdict == Verdict::indeterminate;
  };
  const GoCertificate lemma = go_check(s, op, opt.samples, opt.seed, opt.tol);
  record(lemma);
  record(centrality_check(s, op, opt.samples, opt.seed, opt.tol));
  if (const std::string why = gordon_not_applicable(s, opt.metric); why.empty()) {
    record(gordon_certificate(s, opt.metric, opt.samples, opt.seed, opt.tol));
  } else {
    go.push_back({{"criterion", "gordon"}, {"applicable", false}, {"reason", why}});
  }
  rep["go"] = go;
  rep["verdict"] = verdict_name(lemma.verdict);
  rep["go_agreement"] =
      std::all_of(verdicts.begin(), verdicts.end(), [&](Verdict v) { return v == verdicts[0]; });

  json complexity = json::array();
  const ComplexityReport on_v = generic_dims(s, std::max(opt.samples, 4), opt.seed, opt.tol);
  complexity.push_back(complexity_json(on_v));
  structural_ok = structural_ok && on_v.consistent;
  if (s.dim_l() > 0 && s.dim_m() > 0) {
    const ComplexityReport on_m = complexity_on_submodule(s, Submodule::m, opt.samples, opt.seed, opt.tol);
    complexity.push_back(complexity_json(on_m));
    structural_ok = structural_ok && on_m.consistent;
  }
  rep["complexity"] = complexity;

  Recipe recipe;
  recipe.items = {NormalHamiltonian{}, MetricHamiltonianItem{opt.metric}, Traces{2}};
  if (s.dim_l() > 0) recipe.items.push_back(Delta{});
  const PolynomialFamily fam = build_family(s, recipe, opt.tol);
  const CommutativityResult comm = commutativity_residual(fam, opt.samples, opt.seed);
  json poisson = {{"family", fam.recipe},
                  {"members", json::array()},
                  {"commutativity",
                   {{"residual", comm.max_residual}, {"accept_tol", opt.tol.accept},
                    {"commutes", comm.max_residual < opt.tol.accept}}}};
  for (const auto& f : fam.members) poisson["members"].push_back(f.label());
  if (comm.max_residual < opt.tol.accept) {
    const CompletenessResult comp = completeness_check(s, fam, opt.seed, opt.tol, opt.samples);
    poisson["completeness"] = {{"ddim_b", comp.ddim_b}, {"target", comp.target},
                               {"complete", comp.complete}};
  } else {
    poisson["completeness"] = nullptr;
    poisson["offending_pair"] = {fam.members[comm.worst_i].label(), fam.members[comm.worst_j].label()};
  }
  rep["poisson"] = poisson;

  json flow = {{"available", false}};
  if (!opt.flow) {
    flow["reason"] = "disabled";
  } else if (!s.base_point) {
    flow["reason"] = "no base point in the defining representation";
  } else if (lemma.verdict != Verdict::go) {
    flow["reason"] = "metric is " + verdict_name(lemma.verdict);
  } else {
    std::mt19937_64 rng(opt.seed ^ 0x5851f42d4c957f2dULL);
    FlowOptions fo;
    fo.n_steps = opt.flow_steps;
    fo.seed = opt.seed;
    fo.go_samples = opt.samples;
    const Trajectory traj =
        orbit_trajectory(s, opt.metric, gaussian_vector(rng, s.dim_v()), fo, opt.tol);
    const ClosureEstimate closure = closure_dim_estimate(s, traj.generator);
    flow = {{"available", true},
            {"t_max", fo.t_max},
            {"n_steps", fo.n_steps},
            {"max_norm_error", traj.max_norm_error},
            {"planarity_residual", planarity_residual(traj)},
            {"closure_dimension", closure.dimension},
            {"frequencies", closure.frequencies},
            {"closure_indeterminate", closure.indeterminate}};
    indeterminate = indeterminate || closure.indeterminate;
  }
  rep["flow"] = flow;

  out.exit_code = !structural_ok ? exit_structural : indeterminate ? exit_indeterminate : exit_ok;
  rep["status"] = {{"structural_ok", structural_ok},
                   {"indeterminate", indeterminate},
                   {"exit_code", out.exit_code}};
  return out;
}

std::vector<Table1Row> table1(std::uint64_t seed, int samples, const Tolerances& tol) {
  std::vector<Table1Row> rows;
  for (const CatalogEntry& e : catalog()) {
    if (!e.table_row || !e.supported) continue;
    const SpacePtr space = build_space(e.id, e.minimal, tol);
    const HomogeneousSpace& s = *space;
    Table1Row row;
    row.row = *e.table_row;
    row.id = e.id;
    row.params = s.params;
    row.dim_g = s.dim_g();
    row.dim_h = s.dim_h();
    row.dim_l = s.dim_l();
    row.dim_m = s.dim_m();
    for (double lambda : table1_lambdas()) {
      const MetricSpec spec = LambdaMetric{lambda};
      const MetricOperator op = metric_operator(s, spec, tol);
      const GoCertificate lemma = go_check(s, op, samples, seed, tol);
      const GoCertificate central = centrality_check(s, op, samples, seed, tol);
      Table1Cell cell;
      cell.lambda = lambda;
      cell.geodesic_lemma = lemma.verdict;
      cell.centrality = central.verdict;
      cell.max_residual = std::max(lemma.max_residual(), central.max_residual());
      cell.agreement = lemma.verdict == central.verdict;
      if (s.dim_l() > 0) {
        const GoCertificate gordon = gordon_certificate(s, spec, samples, seed, tol);
        cell.gordon = gordon.verdict;
        cell.max_residual = std::max(cell.max_residual, gordon.max_residual());
        cell.agreement = cell.agreement && gordon.verdict == lemma.verdict;
      }
      row.cells.push_back(cell);
    }
    row.lambda_independent = std::all_of(row.cells.begin(), row.cells.end(), [&](const Table1Cell& c) {
      return c.geodesic_lemma == row.cells.front().geodesic_lemma;
    });
    const ComplexityReport c = generic_dims(s, std::max(samples, 4), seed, tol);
    row.ddim = c.ddim;
    row.dind = c.dind;
    row.complexity = c.complexity;
    row.structure_consistent = c.consistent;
    rows.push_back(std::move(row));
  }
  return rows;
}

json table1_json(const std::vector<Table1Row>& rows, std::uint64_t seed, const Tolerances& tol) {
  json out = {{"schema", kSchemaVersion},
              {"kind", "table1"},
              {"tool", {{"name", "gospace"}, {"version", GOSPACE_VERSION}}},
              {"seed", seed},
              {"thresholds", tolerances_json(tol)},
              {"lambdas", table1_lambdas()},
              {"rows", json::array()}};
  for (const Table1Row& r : rows) {
    json cells = json::array();
    for (const Table1Cell& c : r.cells) {
      cells.push_back({{"lambda", c.lambda},
                       {"geodesic_lemma", verdict_name(c.geodesic_lemma)},
                       {"centrality", verdict_name(c.centrality)},
                       {"gordon", c.gordon ? json(verdict_name(*c.gordon)) : json(nullptr)},
                       {"max_residual", c.max_residual},
                       {"agreement", c.agreement}});
    }
    out["rows"].push_back({{"row", r.row},
                           {"id", r.id},
                           {"params", params_json(r.params)},
                           {"dims", {{"g", r.dim_g}, {"h", r.dim_h}, {"l", r.dim_l}, {"m", r.dim_m}}},
                           {"cells", cells},
                           {"lambda_independent", r.lambda_independent},
                           {"ddim", r.ddim},
                           {"dind", r.dind},
                           {"complexity", r.complexity},
                           {"structure_consistent", r.structure_consistent}});
  }
  return out;
}

void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows) {
  out << "row,id,n,r,dim_g,dim_h,dim_l,dim_m";
  for (double lambda : table1_lambdas()) out << ",verdict_" << lambda;
  out << ",max_residual,agreement,lambda_independent,ddim,dind,complexity\n";
  const auto old = out.precision(17);
  for (const Table1Row& r : rows) {
    out << r.row << "," << r.id << "," << r.params.n << "," << r.params.r << "," << r.dim_g << ","
        << r.dim_h << "," << r.dim_l << "," << r.dim_m;
    double worst = 0.0;
    bool agree = true;
    for (const Table1Cell& c : r.cells) {
      out << "," << verdict_name(c.geodesic_lemma);
      worst = std::max(worst, c.max_residual);
      agree = agree && c.agreement;
    }
    out << "," << worst << "," << (agree ? "true" : "false") << ","
        << (r.lambda_independent ? "true" : "false") << "," << r.ddim << "," << r.dind << ","
        << r.complexity << "\n";
  }
  out.precision(old);
}

}  // namespace gospace
