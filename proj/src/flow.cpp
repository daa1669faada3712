#include "gospace/flow.hpp"

#include "gospace/goverify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace gospace {

Trajectory orbit_trajectory(const HomogeneousSpace& space, const MetricSpec& metric,
                            const Eigen::VectorXd& x_in, const FlowOptions& options,
                            const Tolerances& tol) {
  if (!space.base_point) {
    throw std::invalid_argument(space.catalog_id + " has no base point in its defining representation");
  }
  if (x_in.size() != space.dim_v()) throw std::invalid_argument("X must be a v-coordinate vector");
  if (!(x_in.squaredNorm() > 0.0)) throw std::invalid_argument("X must be nonzero");
  if (!(options.t_max > 0.0) || options.n_steps < 2) {
    throw std::invalid_argument("time grid needs t_max > 0 and at least 2 steps");
  }
  const MetricOperator op = metric_operator(space, metric, tol);
  const GoCertificate cert = go_check(space, op, options.go_samples, options.seed, tol);
  if (cert.verdict != Verdict::go) {
    throw std::invalid_argument("metric " + metric_label(metric) + " on " + space.catalog_id +
                                " is " + verdict_name(cert.verdict) +
                                ": its orbits are not geodesics");
  }
  const GeodesicGenerator gen = solve_geodesic_generator(space, op, x_in, tol);
  if (!(gen.residual < tol.accept)) {
    throw std::invalid_argument("no F solves the geodesic lemma for this X");
  }

  Trajectory traj;
  traj.space_id = space.catalog_id;
  traj.metric = metric_label(metric);
  traj.seed = options.seed;
  traj.x = x_in / std::sqrt(x_in.dot(op.inertia * x_in));
  traj.f = gen.f;
  traj.generator = space.g->matrix(space.from_v(traj.x) + space.h * gen.f);

  const Eigen::VectorXd& o = *space.base_point;
  const int n = options.n_steps;
  traj.times.resize(n);
  traj.points.resize(n, o.size());
  for (int k = 0; k < n; ++k) {
    const double t = options.t_max * k / (n - 1);
    traj.times(k) = t;
    traj.points.row(k) = (mat_exp(traj.generator, t) * o).transpose();
    traj.max_norm_error = std::max(traj.max_norm_error, std::abs(traj.points.row(k).norm() - 1.0));
  }
  if (!(traj.max_norm_error < tol.zero)) {
    throw StructuralError("trajectory left the unit sphere", traj.max_norm_error);
  }
  return traj;
}

double planarity_residual(const Eigen::MatrixXd& points) {
  if (points.rows() < 16) throw std::invalid_argument("planarity needs at least 16 points");
  if (points.cols() < 3) return 0.0;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(points).singularValues();
  const double off_plane = sv.tail(sv.size() - 2).squaredNorm();
  const double mean_norm = points.rowwise().norm().mean();
  if (!(mean_norm > 0.0)) throw std::invalid_argument("points are all zero");
  return std::sqrt(off_plane / static_cast<double>(points.rows())) / mean_norm;
}

double planarity_residual(const Trajectory& traj) { return planarity_residual(traj.points); }

RationalMatch rational_approximation(double ratio, int max_denominator, double tol) {
  RationalMatch out;
  if (!(ratio > 0.0) || !std::isfinite(ratio)) return out;
  // Convergents h/k of the continued fraction; any p/q within 1/(2q^2) is one.
  long h_prev = 1, h = static_cast<long>(std::floor(ratio));
  long k_prev = 0, k = 1;
  double rem = ratio - std::floor(ratio);
  const double scale = std::max(1.0, ratio);
  for (int iter = 0; iter < 64 && k <= max_denominator; ++iter) {
    if (std::abs(ratio - static_cast<double>(h) / k) <= tol * scale) {
      out = {true, h, k};
      return out;
    }
    if (rem < 1e-15) break;
    const double inv = 1.0 / rem;
    const long a = static_cast<long>(std::floor(inv));
    rem = inv - std::floor(inv);
    const long h_next = a * h + h_prev;
    const long k_next = a * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
  }
  return out;
}

ClosureEstimate closure_dim_estimate(const Eigen::MatrixXd& z, const Eigen::VectorXd& base_point,
                                     const ClosureOptions& options) {
  if (z.rows() != z.cols() || z.rows() != base_point.size()) {
    throw std::invalid_argument("Z and base point sizes disagree");
  }
  const double scale = z.norm();
  if (!(scale > 0.0)) throw std::invalid_argument("Z must be nonzero");
  if ((z + z.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("Z must be skew-symmetric");
  }
  // iZ is Hermitian with eigenvalues +-theta_j.
  const Eigen::MatrixXcd iz = std::complex<double>(0.0, 1.0) * z.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(iz);
  const Eigen::VectorXd mu = eig.eigenvalues();
  const Eigen::MatrixXcd vecs = eig.eigenvectors();
  const Eigen::VectorXcd b = base_point.cast<std::complex<double>>();

  const double merge_tol = 1e-9 * scale;
  std::vector<std::pair<double, double>> groups;  // theta, amplitude^2
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (!(mu(i) > merge_tol)) continue;
    const double amp2 = 2.0 * std::norm(vecs.col(i).dot(b));
    if (!groups.empty() && std::abs(mu(i) - groups.back().first) <= merge_tol) {
      groups.back().second += amp2;
    } else {
      groups.emplace_back(mu(i), amp2);
    }
  }
  ClosureEstimate out;
  for (const auto& [theta, amp2] : groups) {
    if (std::sqrt(amp2) > options.amplitude_tol) out.frequencies.push_back(theta);
  }
  const int n = static_cast<int>(out.frequencies.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double ratio = out.frequencies[j] / out.frequencies[i];
      if (rational_approximation(ratio, options.max_denominator, options.ratio_tol).found) {
        parent[find(j)] = find(i);
      } else if (rational_approximation(ratio, options.ambiguity_denominator, options.ratio_tol)
                     .found) {
        out.indeterminate = true;
        out.offending_ratio = ratio;
      }
    }
  }
  for (int i = 0; i < n; ++i) out.dimension += find(i) == i ? 1 : 0;
  return out;
}

ClosureEstimate closure_dim_estimate(const HomogeneousSpace& space, const Eigen::MatrixXd& z,
                                     const ClosureOptions& options) {
  if (!space.base_point) {
    throw std::invalid_argument(space.catalog_id + " has no base point in its defining representation");
  }
  return closure_dim_estimate(z, *space.base_point, options);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t";
  for (Eigen::Index j = 0; j < traj.points.cols(); ++j) out << ",x" << j;
  out << "\n";
  const auto old = out.precision(17);
  for (Eigen::Index k = 0; k < traj.points.rows(); ++k) {
    out << traj.times(k);
    for (Eigen::Index j = 0; j < traj.points.cols(); ++j) out << "," << traj.points(k, j);
    out << "\n";
  }
  out.precision(old);
}

}  // namespace gospace
