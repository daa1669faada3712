#pragma once

// Compact matrix Lie algebras realized as real skew-symmetric matrices.
//
// Complex and quaternionic algebras are carried through the real block
// embedding a + bi -> [[a, -b], [b, a]], so every element is a real
// skew-symmetric N x N matrix. The invariant form is the positive trace
// form <X, Y> = -tr(XY), and every basis is orthonormal for it; the
// coordinate dot product therefore equals the form.

#include "gospace/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace gospace {

enum class Family { so, su, u, sp };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

using ComplexMatrix = Eigen::MatrixXcd;

class LieAlgebra {
 public:
  /// Validates skew-symmetry, orthonormality and bracket closure of `basis`.
  LieAlgebra(std::string name, std::vector<Eigen::MatrixXd> basis, int rank,
             double zero_tol = 1e-9);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int ambient() const { return ambient_; }
  int rank() const { return rank_; }
  const std::vector<Eigen::MatrixXd>& basis() const { return basis_; }

  /// Realized matrix of a coefficient vector.
  Eigen::MatrixXd matrix(const Eigen::VectorXd& x) const;
  /// Orthogonal projection of a real N x N matrix onto the algebra.
  Eigen::VectorXd coords(const Eigen::MatrixXd& m) const;
  /// Norm of the part of `m` lying outside the algebra.
  double outside_residual(const Eigen::MatrixXd& m) const;

  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const { return x.dot(y); }

  /// Matrix of ad_x in the basis: column j holds [x, B_j].
  Eigen::MatrixXd ad(const Eigen::VectorXd& x) const;

  /// Largest basis-closure re-expansion residual found at construction.
  double closure_residual() const { return closure_residual_; }

 private:
  std::string name_;
  std::vector<Eigen::MatrixXd> basis_;
  int ambient_ = 0;
  int rank_ = 0;
  Eigen::SparseMatrix<double> flat_;                 // N^2 x dim, vectorized basis
  std::vector<Eigen::SparseMatrix<double>> ad_basis_;  // ad(B_i)
  double closure_residual_ = 0.0;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// so(n), su(n), u(n) or sp(n) with the expected dimension and rank.
AlgebraPtr build_algebra(Family family, int n, double zero_tol = 1e-9);

/// An element tied to the algebra that owns its coordinates.
struct AlgebraElement {
  AlgebraPtr owner;
  Eigen::VectorXd coeffs;
};

AlgebraElement basis_element(const AlgebraPtr& owner, int index);
AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);
/// -tr(XY) of the realized matrices.
double inner(const AlgebraElement& x, const AlgebraElement& y);

/// Orthonormal basis (g-coordinates, columns) of {xi in span(S) : [xi, x] = 0}.
/// Rejects rank-deficient S.
Eigen::MatrixXd nullspace_in_subspace(const LieAlgebra& g, const Eigen::VectorXd& x,
                                      const Eigen::MatrixXd& subspace, double rel_tol,
                                      RankLedger* ledger = nullptr);

/// Largest |t| * ||X||_F accepted by mat_exp.
inline constexpr double kMaxExpArgument = 1e6;

/// exp(tX) by scaling and squaring.
Eigen::MatrixXd mat_exp(const Eigen::MatrixXd& x, double t);
Eigen::MatrixXd mat_exp(const AlgebraElement& x, double t);

// Real embeddings used to assemble subalgebras.

/// a + bi -> [[a, -b], [b, a]].
Eigen::MatrixXd realify(const ComplexMatrix& z);

/// P + iQ -> [[P, Q], [-Q, P]], the standard inclusion u(n) in so(2n).
Eigen::MatrixXd unitary_in_orthogonal(const ComplexMatrix& z);

/// Places `block` at rows/cols `indices` of a size x size zero matrix.
Eigen::MatrixXd embed_real(const Eigen::MatrixXd& block, int size,
                           const std::vector<int>& indices);
ComplexMatrix embed_complex(const ComplexMatrix& block, int size,
                            const std::vector<int>& indices);

/// Spanning generators of the compact forms as complex matrices
/// (sp(n) in its 2n x 2n complex form [[A, -conj B], [B, conj A]]).
std::vector<ComplexMatrix> unitary_generators(int n);
std::vector<ComplexMatrix> special_unitary_generators(int n);
std::vector<ComplexMatrix> symplectic_generators(int n);
std::vector<Eigen::MatrixXd> orthogonal_generators(int n);

}  // namespace gospace
