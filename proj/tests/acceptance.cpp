// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "gospace/flow.hpp"
#include "gospace/goverify.hpp"
#include "gospace/liealg.hpp"
#include "gospace/poisson.hpp"
#include "gospace/report.hpp"
#include "gospace/structure.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace gospace;

namespace {

// Pinned tolerances.
constexpr double kExample1Seconds = 10.0;
constexpr double kTableSeconds = 300.0;
constexpr double kGoResidual = 1e-8;
constexpr double kNormalResidual = 1e-12;
constexpr double kNaturalReductivity = 1e-9;
constexpr double kNegativeResidual = 1e-3;
constexpr int kNegativeMinCount = 7;
constexpr double kCasimirBracket = 1e-10;
constexpr double kTraceBracket = 1e-8;
constexpr double kFamilyBracket = 1e-8;
constexpr double kFdError = 1e-6;
constexpr double kGreatCircle = 1e-8;
constexpr double kNormPreservation = 1e-9;
constexpr double kClosureFraction = 0.9;
constexpr double kNonPlanar = 1e-2;
constexpr double kAxioms = 1e-10;
constexpr int kSamples = 8;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void fail(Outcome& o, const std::string& why) {
  o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += why;
}

Outcome example_dims(const std::string& id, std::vector<int> ns, Submodule sub,
                     std::function<std::string(int, const ComplexityReport&)> check,
                     double max_seconds = 0.0) {
  Outcome o;
  for (int n : ns) {
    const auto t0 = Clock::now();
    const SpacePtr s = build_space(id, {n, 0});
    const ComplexityReport c = complexity_on_submodule(*s, sub, kSamples, kSeed);
    const double dt = seconds_since(t0);
    const std::string why = check(n, c);
    if (!why.empty()) fail(o, id + " n=" + std::to_string(n) + ": " + why);
    if (max_seconds > 0 && dt >= max_seconds) fail(o, fmt("runtime %.2fs", dt));
    o.detail += (o.detail.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + " (" +
                std::to_string(c.ddim) + "," + std::to_string(c.dind) + "," +
                std::to_string(c.complexity) + ")";
  }
  return o;
}

Outcome criterion1() {
  return example_dims("row9", {1, 2}, Submodule::v, [](int, const ComplexityReport& c) {
    return c.ddim == 4 && c.dind == 2 && c.complexity == 1 ? "" : "expected (4,2,1)";
  }, kExample1Seconds);
}

Outcome criterion2() {
  return example_dims("row5", {2, 3}, Submodule::v, [](int, const ComplexityReport& c) {
    return c.ddim == 2 && c.dind == 2 && c.complexity == 0 ? "" : "expected (2,2,0)";
  });
}

Outcome criterion3() {
  return example_dims("row8", {1, 2}, Submodule::v, [](int, const ComplexityReport& c) {
    return c.complexity == 0 ? "" : "expected complexity 0";
  });
}

Outcome criterion4() {
  Outcome m = example_dims("ex4", {2, 3}, Submodule::m, [](int n, const ComplexityReport& c) {
    return c.ddim == n && c.dind == n && c.complexity == 0 ? "" : "expected (n,n,0) on m";
  });
  const Outcome v = example_dims("ex4", {2, 3}, Submodule::v, [](int, const ComplexityReport& c) {
    return c.complexity == 1 ? "" : "expected complexity 1 on v";
  });
  m.pass = m.pass && v.pass;
  m.detail = "m: " + m.detail + " | v: " + v.detail;
  return m;
}

std::vector<Table1Row> g_table;

Outcome criterion5() {
  Outcome o;
  const auto t0 = Clock::now();
  g_table = table1(kSeed, kSamples);
  const double dt = seconds_since(t0);
  double worst = 0.0;
  for (const Table1Row& r : g_table) {
    for (const Table1Cell& c : r.cells) {
      worst = std::max(worst, c.max_residual);
      if (c.geodesic_lemma != Verdict::go || c.max_residual >= kGoResidual) {
        fail(o, r.id + fmt(" not GO at lambda=%g", c.lambda));
      }
    }
    if (!r.lambda_independent) fail(o, r.id + " verdict depends on lambda");
  }
  if (g_table.size() != 9) fail(o, "expected 9 rows");
  if (dt >= kTableSeconds) fail(o, fmt("runtime %.1fs", dt));
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("max residual %.2e", worst) + fmt(", %.2fs", dt);
  return o;
}

Outcome criterion6() {
  Outcome o;
  int compared = 0;
  for (const CatalogEntry& e : catalog()) {
    if (!e.table_row || !e.supported) continue;
    const SpacePtr s = build_space(e.id, e.minimal);
    for (double lambda : table1_lambdas()) {
      const LambdaMetric metric{lambda};
      const MetricOperator op = metric_operator(*s, metric);
      std::vector<GoCertificate> certs{go_check(*s, op, kSamples, kSeed),
                                       centrality_check(*s, op, kSamples, kSeed)};
      if (s->dim_l() > 0) certs.push_back(gordon_certificate(*s, metric, kSamples, kSeed));
      for (const GoCertificate& c : certs) {
        if (c.verdict == Verdict::indeterminate) fail(o, e.id + " INDETERMINATE");
        if (c.verdict != certs[0].verdict) fail(o, e.id + fmt(" verdicts differ at lambda=%g", lambda));
        if (c.samples.size() != certs[0].samples.size()) {
          fail(o, e.id + " sample counts differ");
          continue;
        }
        for (std::size_t i = 0; i < c.samples.size(); ++i) {
          const bool a = c.samples[i].residual < kGoResidual;
          const bool b = certs[0].samples[i].residual < kGoResidual;
          if (a != b) fail(o, e.id + fmt(" sample disagreement at lambda=%g", lambda));
          ++compared;
        }
      }
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(compared) + " sample verdicts compared";
  return o;
}

Outcome criterion7() {
  Outcome o;
  double worst = 0.0, worst_nr = 0.0;
  for (const CatalogEntry& e : catalog()) {
    if (!e.supported) continue;
    const SpacePtr s = build_space(e.id, e.minimal);
    const MetricOperator op = metric_operator(*s, NormalMetric{});
    const GoCertificate c = go_check(*s, op, kSamples, kSeed);
    double f = 0.0;
    for (const auto& sample : c.samples) f = std::max(f, sample.solver_output.norm());
    const double nr = natural_reductivity_residual(*s, op);
    worst = std::max({worst, c.max_residual(), f});
    worst_nr = std::max(worst_nr, nr);
    if (c.verdict != Verdict::go || c.max_residual() >= kNormalResidual || f >= kNormalResidual) {
      fail(o, e.id + " normal metric");
    }
    if (nr >= kNaturalReductivity) fail(o, e.id + " natural reductivity");
  }
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("max residual/|F| %.2e", worst) +
              fmt(", natural reductivity %.2e", worst_nr);
  return o;
}

Outcome criterion8() {
  Outcome o;
  const SpacePtr s = build_space("row9", {1, 0});
  const MetricOperator op =
      metric_operator(*s, FiberMetric{Eigen::Vector3d(1, 2, 3).asDiagonal(), 1.0});
  const GoCertificate lemma = go_check(*s, op, kSamples, kSeed);
  const GoCertificate central = centrality_check(*s, op, kSamples, kSeed);
  const int above = lemma.count_above(kNegativeResidual);
  if (lemma.verdict != Verdict::not_go || above < kNegativeMinCount) fail(o, "geodesic lemma");
  if (central.verdict != Verdict::not_go || central.count_above(kNegativeResidual) < kNegativeMinCount) {
    fail(o, "centrality");
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(above) + "/8 above 1e-3" +
              fmt(", min residual %.2e", lemma.min_residual());
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::mt19937_64 rng(kSeed);
  double casimir = 0.0, traces = 0.0, fd = 0.0;
  auto scan = [&](const PolynomialFamily& fam, int dim) {
    for (int t = 0; t < kSamples; ++t) {
      const Eigen::VectorXd x = gaussian_vector(rng, dim);
      const Eigen::VectorXd dir = gaussian_vector(rng, dim);
      for (const auto& f : fam.members) {
        fd = std::max(fd, gradient_fd_error(f, x, dir));
        if (fam.members[0].label() == "h_0") {
          casimir = std::max(casimir, std::abs(lie_poisson_bracket(fam.members[0], f, x)));
        }
      }
    }
  };
  for (const CatalogEntry& e : catalog()) {
    if (!e.supported) continue;
    const SpacePtr s = build_space(e.id, e.minimal);
    Recipe r{Submodule::v, {NormalHamiltonian{}, Traces{2}, MetricHamiltonianItem{NormalMetric{}}}};
    if (s->dim_l() > 0) {
      r.items.push_back(Delta{});
      r.items.push_back(MetricHamiltonianItem{LambdaMetric{2.0}});
    }
    scan(build_family(*s, r), s->dim_v());
  }

  const SpacePtr ex4 = build_space("ex4", {2, 0});
  const PolynomialFamily p = build_family(*ex4, Recipe{Submodule::m, {Traces{2}}});
  for (int t = 0; t < kSamples; ++t) {
    const Eigen::VectorXd x = gaussian_vector(rng, ex4->dim_m());
    traces = std::max(traces, std::abs(lie_poisson_bracket(p.members[0], p.members[1], x)));
    for (const auto& f : p.members) fd = std::max(fd, gradient_fd_error(f, x, gaussian_vector(rng, 6)));
  }

  const SpacePtr row9 = build_space("row9", {1, 0});
  const PolynomialFamily fam = build_family(
      *row9, Recipe{Submodule::v,
                    {NormalHamiltonian{}, Delta{}, QuadraticOnL{Eigen::Vector3d(1, 2, 3).asDiagonal()}}});
  scan(fam, 7);
  const CompletenessResult c = completeness_check(*row9, fam, kSeed);

  if (casimir >= kCasimirBracket) fail(o, "h_0 bracket");
  if (traces >= kTraceBracket) fail(o, "trace bracket");
  if (c.commutativity >= kFamilyBracket) fail(o, "family bracket");
  if (!(c.ddim_b == 3 && c.target == 3)) fail(o, "completeness");
  if (fd >= kFdError) fail(o, "finite differences");
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("|{h_0,f}| %.1e", casimir) +
              fmt(", |{p1,p2}| %.1e", traces) + fmt(", family %.1e", c.commutativity) +
              ", ddim_B " + std::to_string(c.ddim_b) + "/" + std::to_string(c.target) +
              fmt(", fd %.1e", fd);
  return o;
}

Outcome criterion10() {
  Outcome o;
  int checked = 0;
  for (const CatalogEntry& e : catalog()) {
    if (!e.supported) continue;
    const SpacePtr s = build_space(e.id, e.minimal);
    std::vector<Submodule> subs{Submodule::v};
    if (s->dim_l() > 0 && s->dim_m() > 0) subs.push_back(Submodule::m);
    for (Submodule sub : subs) {
      const ComplexityReport c = complexity_on_submodule(*s, sub, kSamples, kSeed);
      if (c.generic.j_x != c.ddim || c.generic.ker_lambda != c.dind || !c.consistent) {
        fail(o, e.id + " on " + submodule_name(sub));
      }
      ++checked;
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(checked) + " (entry, submodule) pairs";
  return o;
}

Outcome criterion11() {
  Outcome o;
  const SpacePtr sphere = build_space("sphere", {4, 0});
  std::mt19937_64 rng(kSeed);
  const Trajectory circle =
      orbit_trajectory(*sphere, NormalMetric{}, gaussian_vector(rng, 4), {200.0, 4096, kSamples, kSeed});
  const double circle_planarity = planarity_residual(circle);
  if (circle_planarity >= kGreatCircle) fail(o, "great circle");

  const SpacePtr s = build_space("row9", {1, 0});
  int two_tori = 0, non_planar = 0;
  double norm_error = 0.0;
  constexpr int kTrials = 50;
  for (int t = 0; t < kTrials; ++t) {
    const Trajectory tr =
        orbit_trajectory(*s, LambdaMetric{2.0}, gaussian_vector(rng, 7), {200.0, 4096, kSamples, kSeed});
    norm_error = std::max(norm_error, tr.max_norm_error);
    if (closure_dim_estimate(*s, tr.generator).dimension == 2) ++two_tori;
    if (planarity_residual(tr) > kNonPlanar) ++non_planar;
  }
  if (norm_error >= kNormPreservation) fail(o, "norm preservation");
  if (two_tori < kClosureFraction * kTrials) fail(o, "closure dimension 2 on " + std::to_string(two_tori) + "/50");
  if (non_planar < two_tori || non_planar == 0) fail(o, "planarity > 1e-2 on " + std::to_string(non_planar) + "/50");
  o.detail += fmt(" | circle %.1e", circle_planarity) + fmt(", norm error %.1e", norm_error);
  return o;
}

Outcome criterion12() {
  Outcome o;
  std::mt19937_64 rng(kSeed);
  double jacobi = 0.0, invariance = 0.0;
  int built = 0;
  for (Family f : {Family::so, Family::su, Family::u, Family::sp}) {
    for (int n = 1;; ++n) {
      const int ambient = f == Family::so ? n : f == Family::sp ? 4 * n : 2 * n;
      if (ambient > 30) break;
      AlgebraPtr g;
      try {
        g = build_algebra(f, n);
      } catch (const std::invalid_argument&) {
        continue;
      }
      ++built;
      for (int t = 0; t < 10; ++t) {
        const Eigen::VectorXd x = gaussian_vector(rng, g->dim()).normalized();
        const Eigen::VectorXd y = gaussian_vector(rng, g->dim()).normalized();
        const Eigen::VectorXd z = gaussian_vector(rng, g->dim()).normalized();
        jacobi = std::max(jacobi, (g->bracket(x, g->bracket(y, z)) + g->bracket(y, g->bracket(z, x)) +
                                   g->bracket(z, g->bracket(x, y))).norm());
        invariance = std::max(invariance, std::abs(g->inner(g->bracket(z, x), y) +
                                                   g->inner(x, g->bracket(z, y))));
      }
    }
  }
  if (jacobi >= kAxioms) fail(o, "Jacobi");
  if (invariance >= kAxioms) fail(o, "ad-invariance");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(built) + " algebras" +
              fmt(", Jacobi %.1e", jacobi) + fmt(", invariance %.1e", invariance);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{
      criterion1, criterion2, criterion3, criterion4,  criterion5,  criterion6,
      criterion7, criterion8, criterion9, criterion10, criterion11, criterion12};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
