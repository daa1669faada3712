#pragma once

// Geodesic-orbit verification. Three independent criteria decide whether
// (G/H, ds^2_I) is a g.o. space on sampled directions:
//   * geodesic lemma: some F in h makes <I X, [X + F, Y]_v> vanish for all Y in v;
//   * centrality: grad h_A(x) = A x lies in pr_v g_x, i.e. [a + A x, x] = 0;
//   * Gordon's split condition for lambda-deformations of the normal metric.
// Inputs are normalized to unit length first, so residuals and solver
// outputs are invariant under x -> c x.

#include "gospace/homspace.hpp"
#include "gospace/linalg.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace gospace {

enum class Verdict { go, not_go, indeterminate };
enum class Criterion { geodesic_lemma, centrality, gordon };

std::string verdict_name(Verdict v);
std::string criterion_name(Criterion c);

/// GO iff every residual < accept, NOT_GO iff some residual > reject.
Verdict classify(const std::vector<double>& residuals, double accept, double reject);

struct GoSample {
  Eigen::VectorXd x;              // v-coordinates
  Eigen::VectorXd solver_output;  // h-coordinates (F or a)
  double residual = 0.0;
};

/// Sampled evidence for one criterion. A GO verdict is a sampled
/// certificate, not a proof.
struct GoCertificate {
  std::string space_id;
  std::string metric;
  Criterion criterion = Criterion::geodesic_lemma;
  std::vector<GoSample> samples;
  std::vector<GoSample> degenerate;  // non-generic isotropy, excluded from the verdict
  Verdict verdict = Verdict::indeterminate;
  double accept_tol = 0.0;
  double reject_tol = 0.0;
  std::uint64_t seed = 0;
  int generic_h_x = 0;

  double max_residual() const;
  double min_residual() const;
  int count_above(double threshold) const;
};

struct GeodesicGenerator {
  Eigen::VectorXd f;   // minimum-norm F, h-coordinates
  double residual = 0.0;
  RankInfo rank;
  bool rank_deficient = false;
};

/// Least-squares solve of the geodesic lemma for X in v (v-coordinates).
GeodesicGenerator solve_geodesic_generator(const HomogeneousSpace& space,
                                           const MetricOperator& metric,
                                           const Eigen::VectorXd& x,
                                           const Tolerances& tol = {});

GoCertificate go_check(const HomogeneousSpace& space, const MetricOperator& metric,
                       int n_samples, std::uint64_t seed, const Tolerances& tol = {});

struct CentralityResidual {
  double residual = 0.0;  // min_a ||[a + A x, x]|| / ||x||^2
  double h_part = 0.0;    // ||[x, A x]_h|| / ||x||^2, zero by Ad_H-invariance
  Eigen::VectorXd a;      // minimizer for x / |x|, h-coordinates
};

CentralityResidual centrality_residual(const HomogeneousSpace& space,
                                       const MetricOperator& metric, const Eigen::VectorXd& x,
                                       const Tolerances& tol = {});

GoCertificate centrality_check(const HomogeneousSpace& space, const MetricOperator& metric,
                               int n_samples, std::uint64_t seed, const Tolerances& tol = {});

struct GordonResidual {
  double residual_l = 0.0;  // ||[a, x_l]|| / ||x||^2
  double residual_m = 0.0;  // ||[a + x_l, x_m]|| / ||x||^2
  Eigen::VectorXd a;
  double combined() const;
};

/// Gordon's condition for ds^2_lambda. Rejects spaces with l = 0.
GordonResidual gordon_check(const HomogeneousSpace& space, double lambda,
                            const Eigen::VectorXd& x, const Tolerances& tol = {});
/// Same, dispatching on a metric; only Normal and Lambda metrics are in domain.
GordonResidual gordon_check(const HomogeneousSpace& space, const MetricSpec& metric,
                            const Eigen::VectorXd& x, const Tolerances& tol = {});

GoCertificate gordon_certificate(const HomogeneousSpace& space, const MetricSpec& metric,
                                 int n_samples, std::uint64_t seed, const Tolerances& tol = {});

/// max over orthonormal basis triples of v of
/// |<I [X,Y]_v, Z> + <I Y, [X,Z]_v>| / ||I||.
double natural_reductivity_residual(const HomogeneousSpace& space, const MetricOperator& metric);

/// Generic dim h_x over a few probe draws (minimum, by semicontinuity).
int probe_generic_h_x(const HomogeneousSpace& space, std::uint64_t seed, const Tolerances& tol,
                      int probes = 4);

/// Standard-normal coordinate vector.
Eigen::VectorXd gaussian_vector(std::mt19937_64& rng, int dim);

}  // namespace gospace
