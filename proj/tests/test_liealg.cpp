#include "gospace/liealg.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <tuple>

using namespace gospace;

namespace {

Eigen::MatrixXd wedge(int n, int i, int j) {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
  e(i, j) = 1.0;
  e(j, i) = -1.0;
  return e;
}

}  // namespace

TEST_CASE("dimensions, ambient sizes and ranks") {
  struct Row {
    Family f;
    int n, dim, ambient, rank;
  };
  const Row rows[] = {
      {Family::so, 5, 10, 5, 2}, {Family::su, 3, 8, 6, 2}, {Family::sp, 2, 10, 8, 2},
      {Family::so, 2, 1, 2, 1},  {Family::u, 3, 9, 6, 3},  {Family::sp, 1, 3, 4, 1},
      {Family::so, 6, 15, 6, 3}, {Family::su, 2, 3, 4, 1}, {Family::u, 1, 1, 2, 1},
  };
  for (const Row& r : rows) {
    CAPTURE(family_name(r.f));
    CAPTURE(r.n);
    const AlgebraPtr g = build_algebra(r.f, r.n);
    CHECK(g->dim() == r.dim);
    CHECK(g->ambient() == r.ambient);
    CHECK(g->rank() == r.rank);
  }
}

TEST_CASE("unsupported parameters are rejected") {
  CHECK_THROWS_AS(build_algebra(Family::su, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_algebra(Family::so, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_algebra(Family::sp, -1), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("g2"), std::invalid_argument);
  CHECK(parse_family("sp") == Family::sp);
}

TEST_CASE("basis is exactly skew and orthonormal") {
  for (auto [f, n] : {std::pair{Family::so, 4}, {Family::su, 3}, {Family::u, 2}, {Family::sp, 2}}) {
    const AlgebraPtr g = build_algebra(f, n);
    const auto& b = g->basis();
    for (int i = 0; i < g->dim(); ++i) {
      CHECK((b[i] + b[i].transpose()).cwiseAbs().maxCoeff() == 0.0);
      for (int j = 0; j < g->dim(); ++j) {
        CHECK(std::abs(-(b[i] * b[j]).trace() - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
    }
    CHECK(g->closure_residual() < 1e-9);
  }
}

TEST_CASE("so(3) bracket of two wedges") {
  const AlgebraPtr g = build_algebra(Family::so, 3);
  const double s = 1.0 / std::sqrt(2.0);
  const Eigen::VectorXd e12 = g->coords(s * wedge(3, 0, 1));
  const Eigen::VectorXd e23 = g->coords(s * wedge(3, 1, 2));
  const Eigen::VectorXd e13 = g->coords(s * wedge(3, 0, 2));
  // [A12, A23] = A13 for unnormalized wedges, so the unit elements pick up 1/sqrt(2).
  const Eigen::VectorXd br = g->bracket(e12, e23);
  CHECK((br - s * e13).norm() < 1e-14);
  CHECK(std::abs(std::abs(br.dot(e13)) - s) < 1e-14);
}

TEST_CASE("Lie algebra axioms on random triples") {
  std::mt19937_64 rng(11);
  for (auto [f, n] : {std::pair{Family::so, 5}, {Family::su, 3}, {Family::u, 3}, {Family::sp, 2}}) {
    const AlgebraPtr g = build_algebra(f, n);
    double jacobi = 0, anti = 0, invariance = 0;
    for (int t = 0; t < 100; ++t) {
      const Eigen::VectorXd x = testing::randn(rng, g->dim()).normalized();
      const Eigen::VectorXd y = testing::randn(rng, g->dim()).normalized();
      const Eigen::VectorXd z = testing::randn(rng, g->dim()).normalized();
      jacobi = std::max(jacobi, (g->bracket(x, g->bracket(y, z)) + g->bracket(y, g->bracket(z, x)) +
                                 g->bracket(z, g->bracket(x, y))).norm());
      anti = std::max(anti, (g->bracket(x, y) + g->bracket(y, x)).norm());
      invariance = std::max(invariance, std::abs(g->inner(g->bracket(z, x), y) +
                                                 g->inner(x, g->bracket(z, y))));
    }
    CHECK(jacobi < 1e-9);
    CHECK(anti < 1e-9);
    CHECK(invariance < 1e-9);
  }
}

TEST_CASE("algebra elements") {
  const AlgebraPtr g = build_algebra(Family::su, 3);
  const AlgebraPtr h = build_algebra(Family::su, 3);
  const AlgebraElement a = basis_element(g, 0);
  const AlgebraElement b = basis_element(g, 1);
  CHECK(inner(a, a) == doctest::Approx(1.0));
  CHECK(std::abs(inner(a, b)) < 1e-14);
  CHECK(bracket(a, a).coeffs.norm() < 1e-14);
  CHECK_THROWS_AS(bracket(a, basis_element(h, 0)), std::invalid_argument);
  CHECK_THROWS_AS(inner(a, basis_element(h, 0)), std::invalid_argument);
  CHECK_THROWS_AS(basis_element(g, 8), std::out_of_range);

  std::mt19937_64 rng(5);
  const AlgebraElement x{g, testing::randn(rng, g->dim())};
  CHECK(inner(x, x) > 0.0);
  CHECK(inner(x, x) == doctest::Approx(x.coeffs.squaredNorm()));
}

TEST_CASE("nullspace in a subspace") {
  std::mt19937_64 rng(2);
  const AlgebraPtr sp2 = build_algebra(Family::sp, 2);
  const Eigen::MatrixXd all = Eigen::MatrixXd::Identity(sp2->dim(), sp2->dim());
  CHECK(nullspace_in_subspace(*sp2, Eigen::VectorXd::Zero(10), all, 1e-8).cols() == 10);
  CHECK(nullspace_in_subspace(*sp2, testing::randn(rng, 10), all, 1e-8).cols() == 2);

  const AlgebraPtr so4 = build_algebra(Family::so, 4);
  const Eigen::VectorXd torus = so4->coords(wedge(4, 0, 1) / std::sqrt(2.0));
  const Eigen::MatrixXd c = nullspace_in_subspace(*so4, torus, Eigen::MatrixXd::Identity(6, 6), 1e-8);
  CHECK(c.cols() == 2);
  for (Eigen::Index j = 0; j < c.cols(); ++j) CHECK(so4->bracket(c.col(j), torus).norm() < 1e-12);

  const Eigen::VectorXd e0 = Eigen::VectorXd::Unit(6, 0);
  Eigen::MatrixXd degenerate(6, 2);
  degenerate << e0, 2.0 * e0;
  CHECK_THROWS_AS(nullspace_in_subspace(*so4, torus, degenerate, 1e-8), std::invalid_argument);
  CHECK_THROWS_AS(nullspace_in_subspace(*so4, torus, Eigen::MatrixXd::Identity(5, 5), 1e-8),
                  std::invalid_argument);
}

TEST_CASE("matrix exponential") {
  std::mt19937_64 rng(9);
  const AlgebraPtr g = build_algebra(Family::sp, 2);
  const Eigen::MatrixXd x = g->matrix(testing::randn(rng, g->dim()));
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(8, 8);
  CHECK((mat_exp(x, 0.0) - eye).norm() == 0.0);
  for (double t : {0.5, 3.0, 10.0}) {
    const Eigen::MatrixXd e = mat_exp(x, t);
    CHECK((e.transpose() * e - eye).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK((mat_exp(x, 1.7) - mat_exp(x, 0.4) * mat_exp(x, 1.3)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_THROWS_AS(mat_exp(x, 1e9), std::domain_error);
  CHECK_THROWS_AS(mat_exp(Eigen::MatrixXd::Zero(2, 3), 1.0), std::invalid_argument);
  CHECK((mat_exp(AlgebraElement{g, g->coords(x)}, 2.0) - mat_exp(x, 2.0)).norm() < 1e-12);
}

TEST_CASE("Ad_exp(tX) Y matches Y + t[X, Y] to second order") {
  std::mt19937_64 rng(4);
  const AlgebraPtr g = build_algebra(Family::su, 3);
  const Eigen::VectorXd xv = testing::randn(rng, g->dim()).normalized();
  const Eigen::VectorXd yv = testing::randn(rng, g->dim()).normalized();
  const Eigen::MatrixXd x = g->matrix(xv), y = g->matrix(yv);
  const Eigen::MatrixXd br = g->matrix(g->bracket(xv, yv));
  auto err = [&](double t) {
    const Eigen::MatrixXd ad = mat_exp(x, t) * y * mat_exp(x, -t);
    return (ad - y - t * br).norm();
  };
  // Quadratic remainder: halving t divides the error by about four.
  const double ratio = err(1e-2) / err(5e-3);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.02));
}
