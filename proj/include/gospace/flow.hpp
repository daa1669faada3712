#pragma once

// Homogeneous geodesics gamma(t) = exp(t(X + F)) o in the defining
// representation, and the closure of their orbits.

#include "gospace/homspace.hpp"
#include "gospace/linalg.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace gospace {

struct Trajectory {
  std::string space_id;
  std::string metric;
  Eigen::VectorXd x;         // v-coordinates, unit I-norm
  Eigen::VectorXd f;         // h-coordinates from the geodesic lemma
  Eigen::MatrixXd generator; // realized Z = X + F
  Eigen::VectorXd times;
  Eigen::MatrixXd points;    // one row per time
  double max_norm_error = 0.0;
  std::uint64_t seed = 0;
};

struct FlowOptions {
  double t_max = 200.0;
  int n_steps = 4096;
  int go_samples = 8;  // samples for the metric's GO certificate
  std::uint64_t seed = 0;
};

/// Rejects spaces without a base point, metrics that are not GO, and X = 0.
Trajectory orbit_trajectory(const HomogeneousSpace& space, const MetricSpec& metric,
                            const Eigen::VectorXd& x, const FlowOptions& options = {},
                            const Tolerances& tol = {});

/// RMS distance of the points to their best 2-plane through the origin,
/// over the mean point norm. Needs at least 16 points.
double planarity_residual(const Eigen::MatrixXd& points);
double planarity_residual(const Trajectory& traj);

struct ClosureOptions {
  int max_denominator = 64;
  int ambiguity_denominator = 1024;
  double ratio_tol = 1e-9;
  double amplitude_tol = 1e-8;
};

struct ClosureEstimate {
  int dimension = 0;
  std::vector<double> frequencies;  // retained, ascending
  bool indeterminate = false;
  double offending_ratio = 0.0;
};

/// Number of rational-dependence classes among the frequencies of Z that
/// move the base point.
ClosureEstimate closure_dim_estimate(const Eigen::MatrixXd& z, const Eigen::VectorXd& base_point,
                                     const ClosureOptions& options = {});
ClosureEstimate closure_dim_estimate(const HomogeneousSpace& space, const Eigen::MatrixXd& z,
                                     const ClosureOptions& options = {});

/// p/q with q <= max_denominator matching `ratio` within tol, if any.
struct RationalMatch {
  bool found = false;
  long p = 0;
  long q = 0;
};
RationalMatch rational_approximation(double ratio, int max_denominator, double tol);

/// CSV with header t,x0,...,x{N-1}.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace gospace
