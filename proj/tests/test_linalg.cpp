#include "gospace/linalg.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace gospace;

TEST_CASE("rank separates kept and dropped singular values") {
  Eigen::VectorXd sv(3);
  sv << 1.0, 1e-3, 1e-12;
  const RankInfo info = rank_from_singular_values(sv, 1e-8);
  CHECK(info.rank == 2);
  CHECK(info.smallest_kept == doctest::Approx(1e-3));
  CHECK(info.largest_dropped == doctest::Approx(1e-12));
  CHECK(info.gap() == doctest::Approx(1e9));
}

TEST_CASE("absolute floor discards rounding-level matrices") {
  std::mt19937_64 rng(3);
  const Eigen::MatrixXd noise = 1e-17 * Eigen::MatrixXd::Random(4, 4);
  CHECK(numerical_rank(noise, 1e-8).rank == 4);
  CHECK(numerical_rank(noise, 1e-8, nullptr, 1e-8).rank == 0);
  CHECK(numerical_rank(Eigen::MatrixXd::Zero(3, 3), 1e-8).rank == 0);
}

TEST_CASE("null space is orthonormal and annihilated") {
  Eigen::MatrixXd a(2, 3);
  a << 1, 1, 0,
       0, 1, 1;
  const Eigen::MatrixXd ns = null_space(a, 1e-8);
  REQUIRE(ns.cols() == 1);
  CHECK((a * ns).norm() < 1e-14);
  CHECK(ns.col(0).norm() == doctest::Approx(1.0));
  CHECK(null_space(Eigen::MatrixXd(0, 2), 1e-8).cols() == 2);
}

TEST_CASE("orthogonal complement") {
  const Eigen::MatrixXd ambient = Eigen::MatrixXd::Identity(4, 4);
  const Eigen::MatrixXd sub = Eigen::MatrixXd::Identity(4, 4).leftCols(1);
  const Eigen::MatrixXd c = orthogonal_complement(sub, ambient, 1e-10);
  CHECK(c.cols() == 3);
  CHECK((sub.transpose() * c).norm() < 1e-15);

  // A sub outside the ambient span leaves a complement of the wrong size.
  const Eigen::MatrixXd plane = Eigen::MatrixXd::Identity(4, 4).leftCols(2);
  const Eigen::MatrixXd outside = Eigen::MatrixXd::Identity(4, 4).col(3);
  CHECK_THROWS_AS(orthogonal_complement(outside, plane, 1e-10), StructuralError);
}

TEST_CASE("minimum-norm least squares") {
  Eigen::MatrixXd a(2, 2);
  a << 1, 1,
       1, 1;
  Eigen::VectorXd b(2);
  b << 2, 2;
  RankLedger ledger;
  const LeastSquares ls = min_norm_solve(a, b, 1e-8, &ledger);
  CHECK(ls.rank.rank == 1);
  CHECK(ls.solution(0) == doctest::Approx(1.0));
  CHECK(ls.solution(1) == doctest::Approx(1.0));
  CHECK(ls.residual.norm() < 1e-14);
  CHECK(ledger.decisions() == 1);

  // Inconsistent system: residual is a * s - b at the minimizer.
  b << 1, 3;
  const LeastSquares ls2 = min_norm_solve(a, b, 1e-8);
  CHECK((a * ls2.solution - b - ls2.residual).norm() < 1e-14);
  CHECK(ls2.residual.norm() == doctest::Approx(std::sqrt(2.0)));

  const LeastSquares empty = min_norm_solve(Eigen::MatrixXd(2, 0), b, 1e-8);
  CHECK(empty.solution.size() == 0);
  CHECK((empty.residual + b).norm() == 0.0);
}

TEST_CASE("rank ledger keeps the worst gap") {
  RankLedger ledger;
  CHECK(std::isinf(ledger.worst_gap()));
  ledger.record({2, 1.0, 1e-10});
  ledger.record({1, 1e-2, 1e-9});
  CHECK(ledger.worst_gap() == doctest::Approx(1e7));
  CHECK(ledger.decisions() == 2);
}
