#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>

namespace gospace {

/// Numerical thresholds shared by every module. All are recorded in reports.
struct Tolerances {
  double zero = 1e-9;       // absolute, on unit-normalized inputs
  double rank_rel = 1e-8;   // singular values above rank_rel * sigma_max count
  double accept = 1e-8;     // normalized residual accepted as zero
  double reject = 1e-4;     // normalized residual proving failure
};

/// Thrown when a structural invariant fails numerically.
class StructuralError : public std::runtime_error {
 public:
  StructuralError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Outcome of one SVD rank decision.
struct RankInfo {
  int rank = 0;
  double smallest_kept = std::numeric_limits<double>::infinity();
  double largest_dropped = 0.0;

  /// Ratio of the weakest retained to the strongest discarded singular value.
  double gap() const {
    if (largest_dropped == 0.0) return std::numeric_limits<double>::infinity();
    return smallest_kept / largest_dropped;
  }
};

/// Accumulates rank decisions so a report can quote the worst separation.
class RankLedger {
 public:
  void record(const RankInfo& info) {
    const double g = info.gap();
    if (g < worst_gap_) worst_gap_ = g;
    ++decisions_;
  }
  double worst_gap() const { return worst_gap_; }
  int decisions() const { return decisions_; }

 private:
  double worst_gap_ = std::numeric_limits<double>::infinity();
  int decisions_ = 0;
};

/// Singular values above max(rel_tol * sigma_max, abs_floor) count toward the
/// rank. The floor matters for matrices that vanish up to rounding, where a
/// purely relative cut would keep noise; use it only on normalized inputs.
RankInfo rank_from_singular_values(const Eigen::VectorXd& sv, double rel_tol,
                                   double abs_floor = 0.0);

RankInfo numerical_rank(const Eigen::MatrixXd& a, double rel_tol,
                        RankLedger* ledger = nullptr, double abs_floor = 0.0);

/// Orthonormal basis (columns) of the kernel of `a`.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_tol,
                           RankLedger* ledger = nullptr, double abs_floor = 0.0);

/// Orthonormal basis of the column span of `columns`.
Eigen::MatrixXd orthonormal_range(const Eigen::MatrixXd& columns, double rel_tol,
                                  RankLedger* ledger = nullptr);

/// Orthonormal basis of the orthogonal complement of span(sub) inside
/// span(ambient). Both inputs must have orthonormal columns.
Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& sub,
                                      const Eigen::MatrixXd& ambient,
                                      double rel_tol);

struct LeastSquares {
  Eigen::VectorXd solution;   // minimum-norm minimizer
  Eigen::VectorXd residual;   // a * solution - b
  RankInfo rank;
};

/// Minimum-norm least-squares solution of a * s = b via thresholded SVD.
LeastSquares min_norm_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                            double rel_tol, RankLedger* ledger = nullptr,
                            double abs_floor = 0.0);

}  // namespace gospace
