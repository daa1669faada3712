#include "gospace/goverify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gospace {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::go: return "GO";
    case Verdict::not_go: return "NOT_GO";
    case Verdict::indeterminate: return "INDETERMINATE";
  }
  return "?";
}

std::string criterion_name(Criterion c) {
  switch (c) {
    case Criterion::geodesic_lemma: return "geodesic_lemma";
    case Criterion::centrality: return "centrality";
    case Criterion::gordon: return "gordon";
  }
  return "?";
}

Verdict classify(const std::vector<double>& residuals, double accept, double reject) {
  if (residuals.empty()) return Verdict::indeterminate;
  bool all_accepted = true;
  for (double r : residuals) {
    if (!(r <= reject)) return Verdict::not_go;  // NaN counts as failure
    if (!(r < accept)) all_accepted = false;
  }
  return all_accepted ? Verdict::go : Verdict::indeterminate;
}

double GoCertificate::max_residual() const {
  double out = 0.0;
  for (const auto& s : samples) out = std::max(out, s.residual);
  return out;
}

double GoCertificate::min_residual() const {
  double out = samples.empty() ? 0.0 : samples.front().residual;
  for (const auto& s : samples) out = std::min(out, s.residual);
  return out;
}

int GoCertificate::count_above(double threshold) const {
  return static_cast<int>(std::count_if(samples.begin(), samples.end(),
                                        [&](const GoSample& s) { return s.residual > threshold; }));
}

Eigen::VectorXd gaussian_vector(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd out(dim);
  for (int i = 0; i < dim; ++i) out(i) = normal(rng);
  return out;
}

namespace {

constexpr std::uint64_t kProbeStream = 0x9e3779b97f4a7c15ULL;

int h_x_dim(const HomogeneousSpace& space, const Eigen::VectorXd& x, const Tolerances& tol) {
  if (space.dim_h() == 0) return 0;
  const Eigen::VectorXd xg = space.from_v(x.normalized());
  return space.dim_h() -
         numerical_rank(space.g->ad(xg) * space.h, tol.rank_rel, nullptr, tol.rank_rel).rank;
}

template <class Evaluate>
GoCertificate sample_certificate(const HomogeneousSpace& space, const std::string& metric,
                                 Criterion criterion, int n_samples, std::uint64_t seed,
                                 const Tolerances& tol, Evaluate evaluate) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be at least 1");
  if (space.dim_v() == 0) throw std::invalid_argument("v is trivial");
  GoCertificate cert;
  cert.space_id = space.catalog_id;
  cert.metric = metric;
  cert.criterion = criterion;
  cert.accept_tol = tol.accept;
  cert.reject_tol = tol.reject;
  cert.seed = seed;
  cert.generic_h_x = probe_generic_h_x(space, seed, tol);

  std::mt19937_64 rng(seed);
  const int max_draws = 8 * n_samples;
  for (int draw = 0; draw < max_draws && static_cast<int>(cert.samples.size()) < n_samples;
       ++draw) {
    Eigen::VectorXd x = gaussian_vector(rng, space.dim_v());
    x.normalize();
    GoSample sample;
    sample.x = x;
    std::tie(sample.solver_output, sample.residual) = evaluate(x);
    if (h_x_dim(space, x, tol) > cert.generic_h_x) {
      cert.degenerate.push_back(std::move(sample));
    } else {
      cert.samples.push_back(std::move(sample));
    }
  }
  std::vector<double> residuals;
  for (const auto& s : cert.samples) residuals.push_back(s.residual);
  cert.verdict = classify(residuals, tol.accept, tol.reject);
  return cert;
}

}  // namespace

int probe_generic_h_x(const HomogeneousSpace& space, std::uint64_t seed, const Tolerances& tol,
                      int probes) {
  std::mt19937_64 rng(seed ^ kProbeStream);
  int best = space.dim_h();
  for (int i = 0; i < probes; ++i) {
    best = std::min(best, h_x_dim(space, gaussian_vector(rng, space.dim_v()), tol));
  }
  return best;
}

GeodesicGenerator solve_geodesic_generator(const HomogeneousSpace& space,
                                           const MetricOperator& metric,
                                           const Eigen::VectorXd& x_in, const Tolerances& tol) {
  if (x_in.size() != space.dim_v()) throw std::invalid_argument("X must be a v-coordinate vector");
  const double inorm2 = x_in.dot(metric.inertia * x_in);
  if (!(inorm2 > 0.0)) throw std::invalid_argument("X must be nonzero");
  const Eigen::VectorXd x = x_in / std::sqrt(inorm2);

  const LieAlgebra& g = *space.g;
  const Eigen::MatrixXd v = space.v();
  const Eigen::VectorXd xg = v * x;
  const Eigen::VectorXd ixg = v * (metric.inertia * x);
  // r_j(F) = <I X, [X + F, Y_j]> = <[I X, X + F], Y_j>
  const Eigen::MatrixXd ad_ix = g.ad(ixg);
  const Eigen::VectorXd b = v.transpose() * (ad_ix * xg);
  const Eigen::MatrixXd a = v.transpose() * ad_ix * space.h;

  GeodesicGenerator out;
  const LeastSquares ls = min_norm_solve(a, -b, tol.rank_rel, nullptr, tol.rank_rel);
  out.f = ls.solution;
  out.rank = ls.rank;
  out.rank_deficient = ls.rank.rank < space.dim_h();
  out.residual = (a * ls.solution + b).norm() / x.squaredNorm();
  return out;
}

GoCertificate go_check(const HomogeneousSpace& space, const MetricOperator& metric,
                       int n_samples, std::uint64_t seed, const Tolerances& tol) {
  return sample_certificate(space, metric_label(metric.spec), Criterion::geodesic_lemma,
                            n_samples, seed, tol, [&](const Eigen::VectorXd& x) {
                              GeodesicGenerator gen = solve_geodesic_generator(space, metric, x, tol);
                              return std::make_pair(gen.f, gen.residual);
                            });
}

CentralityResidual centrality_residual(const HomogeneousSpace& space,
                                       const MetricOperator& metric, const Eigen::VectorXd& x_in,
                                       const Tolerances& tol) {
  if (x_in.size() != space.dim_v()) throw std::invalid_argument("x must be a v-coordinate vector");
  if (!(x_in.squaredNorm() > 0.0)) throw std::invalid_argument("x must be nonzero");
  const Eigen::VectorXd x = x_in.normalized();
  if (!(ad_h_invariance_residual(space, metric.inertia) < tol.zero)) {
    throw std::invalid_argument("metric operator is not Ad_H-invariant");
  }
  const LieAlgebra& g = *space.g;
  const Eigen::VectorXd xg = space.from_v(x);
  const Eigen::VectorXd axg = space.from_v(metric.inverse * x);
  const Eigen::MatrixXd ad_x = g.ad(xg);

  CentralityResidual out;
  // [a + A x, x] = -ad_x (H a + A x)
  const Eigen::MatrixXd lhs = ad_x * space.h;
  const Eigen::VectorXd rhs = -(ad_x * axg);
  const LeastSquares ls = min_norm_solve(lhs, rhs, tol.rank_rel, nullptr, tol.rank_rel);
  out.a = ls.solution;
  out.residual = ls.residual.norm();
  out.h_part = (space.h.transpose() * (ad_x * axg)).norm();
  return out;
}

GoCertificate centrality_check(const HomogeneousSpace& space, const MetricOperator& metric,
                               int n_samples, std::uint64_t seed, const Tolerances& tol) {
  return sample_certificate(space, metric_label(metric.spec), Criterion::centrality, n_samples,
                            seed, tol, [&](const Eigen::VectorXd& x) {
                              CentralityResidual c = centrality_residual(space, metric, x, tol);
                              return std::make_pair(c.a, c.residual);
                            });
}

double GordonResidual::combined() const { return std::hypot(residual_l, residual_m); }

GordonResidual gordon_check(const HomogeneousSpace& space, double lambda,
                            const Eigen::VectorXd& x_in, const Tolerances& tol) {
  if (space.dim_l() == 0) throw std::invalid_argument("Gordon's condition needs l != 0");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be a positive real");
  if (x_in.size() != space.dim_v()) throw std::invalid_argument("x must be a v-coordinate vector");
  if (!(x_in.squaredNorm() > 0.0)) throw std::invalid_argument("x must be nonzero");
  const Eigen::VectorXd x = x_in.normalized();
  const LieAlgebra& g = *space.g;
  const Eigen::VectorXd xl = space.from_v(space.l_part(x));
  const Eigen::VectorXd xm = space.from_v(space.m_part(x));
  const Eigen::MatrixXd ad_l = g.ad(xl);
  const Eigen::MatrixXd ad_m = g.ad(xm);
  const int d = g.dim();

  // minimize ||ad_l H a||^2 + ||ad_m (H a + x_l)||^2
  Eigen::MatrixXd lhs(2 * d, space.dim_h());
  lhs << ad_l * space.h, ad_m * space.h;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * d);
  rhs.tail(d) = -(ad_m * xl);
  const LeastSquares ls = min_norm_solve(lhs, rhs, tol.rank_rel, nullptr, tol.rank_rel);

  GordonResidual out;
  out.a = ls.solution;
  const Eigen::VectorXd ag = space.h * ls.solution;
  out.residual_l = (ad_l * ag).norm();
  out.residual_m = (ad_m * (ag + xl)).norm();
  return out;
}

namespace {
double gordon_lambda(const MetricSpec& metric) {
  if (std::holds_alternative<NormalMetric>(metric)) return 1.0;
  if (const auto* lam = std::get_if<LambdaMetric>(&metric)) return lam->lambda;
  throw std::invalid_argument("Gordon's condition applies to lambda-deformations only, not " +
                              metric_label(metric));
}
}  // namespace

GordonResidual gordon_check(const HomogeneousSpace& space, const MetricSpec& metric,
                            const Eigen::VectorXd& x, const Tolerances& tol) {
  return gordon_check(space, gordon_lambda(metric), x, tol);
}

GoCertificate gordon_certificate(const HomogeneousSpace& space, const MetricSpec& metric,
                                 int n_samples, std::uint64_t seed, const Tolerances& tol) {
  const double lambda = gordon_lambda(metric);
  return sample_certificate(space, metric_label(metric), Criterion::gordon, n_samples, seed, tol,
                            [&](const Eigen::VectorXd& x) {
                              GordonResidual r = gordon_check(space, lambda, x, tol);
                              return std::make_pair(r.a, r.combined());
                            });
}

double natural_reductivity_residual(const HomogeneousSpace& space, const MetricOperator& metric) {
  const Eigen::MatrixXd v = space.v();
  const Eigen::MatrixXd& inertia = metric.inertia;
  const double scale =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(inertia).eigenvalues().cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (int i = 0; i < space.dim_v(); ++i) {
    // R(j, k) = <[X_i, Y_j]_v, Z_k>; term(j, k) = (I R)(k, j) + (I R)(j, k)
    const Eigen::MatrixXd r = ad_on_v(space, v.col(i));
    const Eigen::MatrixXd ir = inertia * r;
    worst = std::max(worst, (ir + ir.transpose()).cwiseAbs().maxCoeff());
  }
  return worst / scale;
}

}  // namespace gospace
