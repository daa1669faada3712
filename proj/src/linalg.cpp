#include "gospace/linalg.hpp"

#include <algorithm>

namespace gospace {

RankInfo rank_from_singular_values(const Eigen::VectorXd& sv, double rel_tol, double abs_floor) {
  RankInfo info;
  if (sv.size() == 0) return info;
  const double top = sv.maxCoeff();
  if (!(top > 0.0)) return info;
  const double cut = std::max(rel_tol * top, abs_floor);
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) {
      ++info.rank;
      info.smallest_kept = std::min(info.smallest_kept, sv(i));
    } else {
      info.largest_dropped = std::max(info.largest_dropped, sv(i));
    }
  }
  return info;
}

RankInfo numerical_rank(const Eigen::MatrixXd& a, double rel_tol, RankLedger* ledger,
                        double abs_floor) {
  if (a.size() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  RankInfo info = rank_from_singular_values(svd.singularValues(), rel_tol, abs_floor);
  if (ledger) ledger->record(info);
  return info;
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_tol, RankLedger* ledger,
                           double abs_floor) {
  const Eigen::Index n = a.cols();
  if (n == 0) return Eigen::MatrixXd(0, 0);
  if (a.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  RankInfo info = rank_from_singular_values(svd.singularValues(), rel_tol, abs_floor);
  if (ledger) ledger->record(info);
  return svd.matrixV().rightCols(n - info.rank);
}

Eigen::MatrixXd orthonormal_range(const Eigen::MatrixXd& columns, double rel_tol,
                                  RankLedger* ledger) {
  if (columns.cols() == 0) return Eigen::MatrixXd(columns.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(columns, Eigen::ComputeThinU);
  RankInfo info = rank_from_singular_values(svd.singularValues(), rel_tol);
  if (ledger) ledger->record(info);
  return svd.matrixU().leftCols(info.rank);
}

Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& sub,
                                      const Eigen::MatrixXd& ambient, double rel_tol) {
  if (sub.cols() == 0) return ambient;
  Eigen::MatrixXd residual = ambient - sub * (sub.transpose() * ambient);
  Eigen::MatrixXd basis = orthonormal_range(residual, rel_tol);
  if (basis.cols() != ambient.cols() - sub.cols()) {
    throw StructuralError("orthogonal complement has unexpected dimension",
                          static_cast<double>(basis.cols()));
  }
  return basis;
}

LeastSquares min_norm_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                            double rel_tol, RankLedger* ledger, double abs_floor) {
  LeastSquares out;
  if (a.cols() == 0) {
    out.solution = Eigen::VectorXd(0);
    out.residual = -b;
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  out.rank = rank_from_singular_values(svd.singularValues(), rel_tol, abs_floor);
  if (ledger) ledger->record(out.rank);
  const int r = out.rank.rank;
  const auto& sv = svd.singularValues();
  Eigen::VectorXd coeffs = svd.matrixU().leftCols(r).transpose() * b;
  for (int i = 0; i < r; ++i) coeffs(i) /= sv(i);
  out.solution = svd.matrixV().leftCols(r) * coeffs;
  out.residual = a * out.solution - b;
  return out;
}

}  // namespace gospace
