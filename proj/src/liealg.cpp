#include "gospace/liealg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace gospace {

namespace {

using cd = std::complex<double>;

Eigen::MatrixXd normalized(Eigen::MatrixXd m) {
  const double n = m.norm();
  return m / n;
}

int expected_rank(Family f, int n) {
  switch (f) {
    case Family::so: return n / 2;
    case Family::su: return n - 1;
    case Family::u: return n;
    case Family::sp: return n;
  }
  return 0;
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::so: return "so";
    case Family::su: return "su";
    case Family::u: return "u";
    case Family::sp: return "sp";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "so") return Family::so;
  if (name == "su") return Family::su;
  if (name == "u") return Family::u;
  if (name == "sp") return Family::sp;
  throw std::invalid_argument("unsupported algebra family '" + std::string(name) + "'");
}

LieAlgebra::LieAlgebra(std::string name, std::vector<Eigen::MatrixXd> basis, int rank,
                       double zero_tol)
    : name_(std::move(name)), basis_(std::move(basis)), rank_(rank) {
  if (basis_.empty()) {
    ambient_ = 0;
    flat_.resize(0, 0);
    return;
  }
  ambient_ = static_cast<int>(basis_.front().rows());
  const int n2 = ambient_ * ambient_;
  std::vector<Eigen::SparseMatrix<double>> sparse(dim());
  std::vector<Eigen::Triplet<double>> entries;
  for (int i = 0; i < dim(); ++i) {
    const auto& b = basis_[i];
    if (b.rows() != ambient_ || b.cols() != ambient_) {
      throw std::invalid_argument("basis matrices of " + name_ + " differ in size");
    }
    if ((b + b.transpose()).cwiseAbs().maxCoeff() != 0.0) {
      throw StructuralError("basis matrix of " + name_ + " is not skew-symmetric",
                            (b + b.transpose()).norm());
    }
    sparse[i] = b.sparseView();
    for (int k = 0; k < sparse[i].outerSize(); ++k) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(sparse[i], k); it; ++it) {
        entries.emplace_back(static_cast<int>(it.col()) * ambient_ + static_cast<int>(it.row()), i,
                             it.value());
      }
    }
  }
  flat_.resize(n2, dim());
  flat_.setFromTriplets(entries.begin(), entries.end());
  const Eigen::MatrixXd gram = Eigen::MatrixXd(flat_.transpose() * flat_);
  const double ortho = (gram - Eigen::MatrixXd::Identity(dim(), dim())).cwiseAbs().maxCoeff();
  if (ortho >= zero_tol) {
    throw StructuralError("basis of " + name_ + " is not orthonormal", ortho);
  }

  // Structure constants from sparse products; basis matrices have O(1) entries
  // in the standard realizations, so this stays cheap up to ambient size 30.
  const Eigen::SparseMatrix<double> flat_t = flat_.transpose();
  std::vector<std::vector<Eigen::Triplet<double>>> ad_entries(dim());
  for (int i = 0; i < dim(); ++i) {
    for (int j = i + 1; j < dim(); ++j) {
      Eigen::SparseMatrix<double> c = sparse[i] * sparse[j] - sparse[j] * sparse[i];
      c.prune(0.0);
      if (c.nonZeros() == 0) continue;
      Eigen::VectorXd cv = Eigen::VectorXd::Zero(n2);
      for (int col = 0; col < c.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(c, col); it; ++it) {
          cv(static_cast<int>(it.col()) * ambient_ + static_cast<int>(it.row())) = it.value();
        }
      }
      const Eigen::VectorXd k = flat_t * cv;
      const double outside = (cv - flat_ * k).norm();
      closure_residual_ = std::max(closure_residual_, outside);
      for (int a = 0; a < dim(); ++a) {
        if (k(a) == 0.0) continue;
        ad_entries[i].emplace_back(a, j, k(a));
        ad_entries[j].emplace_back(a, i, -k(a));
      }
    }
  }
  ad_basis_.assign(dim(), Eigen::SparseMatrix<double>(dim(), dim()));
  for (int i = 0; i < dim(); ++i) ad_basis_[i].setFromTriplets(ad_entries[i].begin(), ad_entries[i].end());
  if (closure_residual_ >= zero_tol) {
    throw StructuralError("basis of " + name_ + " is not closed under the bracket",
                          closure_residual_);
  }
}

Eigen::MatrixXd LieAlgebra::matrix(const Eigen::VectorXd& x) const {
  if (x.size() != dim()) throw std::invalid_argument("coefficient length mismatch");
  Eigen::VectorXd flat = flat_ * x;
  return Eigen::Map<Eigen::MatrixXd>(flat.data(), ambient_, ambient_);
}

Eigen::VectorXd LieAlgebra::coords(const Eigen::MatrixXd& m) const {
  if (m.rows() != ambient_ || m.cols() != ambient_) {
    throw std::invalid_argument("matrix size does not match the ambient representation");
  }
  return flat_.transpose() * Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

double LieAlgebra::outside_residual(const Eigen::MatrixXd& m) const {
  return (m - matrix(coords(m))).norm();
}

Eigen::VectorXd LieAlgebra::bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  if (x.size() != dim() || y.size() != dim()) throw std::invalid_argument("coefficient length mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
  for (int i = 0; i < dim(); ++i) {
    if (x(i) != 0.0) out += x(i) * (ad_basis_[i] * y);
  }
  return out;
}

Eigen::MatrixXd LieAlgebra::ad(const Eigen::VectorXd& x) const {
  if (x.size() != dim()) throw std::invalid_argument("coefficient length mismatch");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) {
    if (x(i) != 0.0) out += x(i) * ad_basis_[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generators

std::vector<Eigen::MatrixXd> orthogonal_generators(int n) {
  std::vector<Eigen::MatrixXd> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
      e(i, j) = 1.0;
      e(j, i) = -1.0;
      out.push_back(e);
    }
  }
  return out;
}

namespace {

std::vector<ComplexMatrix> offdiagonal_skew_hermitian(int n) {
  std::vector<ComplexMatrix> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      ComplexMatrix a = ComplexMatrix::Zero(n, n);
      a(i, j) = 1.0;
      a(j, i) = -1.0;
      out.push_back(a);
      ComplexMatrix b = ComplexMatrix::Zero(n, n);
      b(i, j) = cd(0, 1);
      b(j, i) = cd(0, 1);
      out.push_back(b);
    }
  }
  return out;
}

}  // namespace

std::vector<ComplexMatrix> unitary_generators(int n) {
  auto out = offdiagonal_skew_hermitian(n);
  for (int j = 0; j < n; ++j) {
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    d(j, j) = cd(0, 1);
    out.push_back(d);
  }
  return out;
}

std::vector<ComplexMatrix> special_unitary_generators(int n) {
  auto out = offdiagonal_skew_hermitian(n);
  // i * diag(1, ..., 1, -k, 0, ...), mutually orthogonal Cartan generators.
  for (int k = 1; k < n; ++k) {
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < k; ++j) d(j, j) = cd(0, 1);
    d(k, k) = cd(0, -static_cast<double>(k));
    out.push_back(d);
  }
  return out;
}

std::vector<ComplexMatrix> symplectic_generators(int n) {
  std::vector<ComplexMatrix> out;
  const int size = 2 * n;
  auto from_a = [&](const ComplexMatrix& a) {
    ComplexMatrix x = ComplexMatrix::Zero(size, size);
    x.topLeftCorner(n, n) = a;
    x.bottomRightCorner(n, n) = a.conjugate();
    return x;
  };
  auto from_b = [&](const ComplexMatrix& b) {
    ComplexMatrix x = ComplexMatrix::Zero(size, size);
    x.bottomLeftCorner(n, n) = b;
    x.topRightCorner(n, n) = -b.conjugate();
    return x;
  };
  for (const auto& a : unitary_generators(n)) out.push_back(from_a(a));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (cd c : {cd(1, 0), cd(0, 1)}) {
        ComplexMatrix b = ComplexMatrix::Zero(n, n);
        b(i, j) = c;
        b(j, i) = c;
        out.push_back(from_b(b));
      }
    }
  }
  return out;
}

Eigen::MatrixXd realify(const ComplexMatrix& z) {
  const Eigen::Index n = z.rows();
  Eigen::MatrixXd r(2 * n, 2 * n);
  const Eigen::MatrixXd a = z.real();
  const Eigen::MatrixXd b = z.imag();
  r.topLeftCorner(n, n) = a;
  r.topRightCorner(n, n) = -b;
  r.bottomLeftCorner(n, n) = b;
  r.bottomRightCorner(n, n) = a;
  return r;
}

Eigen::MatrixXd unitary_in_orthogonal(const ComplexMatrix& z) {
  const Eigen::Index n = z.rows();
  Eigen::MatrixXd r(2 * n, 2 * n);
  const Eigen::MatrixXd p = z.real();
  const Eigen::MatrixXd q = z.imag();
  r.topLeftCorner(n, n) = p;
  r.topRightCorner(n, n) = q;
  r.bottomLeftCorner(n, n) = -q;
  r.bottomRightCorner(n, n) = p;
  return r;
}

Eigen::MatrixXd embed_real(const Eigen::MatrixXd& block, int size,
                           const std::vector<int>& indices) {
  if (static_cast<Eigen::Index>(indices.size()) != block.rows()) {
    throw std::invalid_argument("embedding index count does not match block size");
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(size, size);
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = 0; b < indices.size(); ++b) out(indices[a], indices[b]) = block(a, b);
  return out;
}

ComplexMatrix embed_complex(const ComplexMatrix& block, int size,
                            const std::vector<int>& indices) {
  if (static_cast<Eigen::Index>(indices.size()) != block.rows()) {
    throw std::invalid_argument("embedding index count does not match block size");
  }
  ComplexMatrix out = ComplexMatrix::Zero(size, size);
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = 0; b < indices.size(); ++b) out(indices[a], indices[b]) = block(a, b);
  return out;
}

AlgebraPtr build_algebra(Family family, int n, double zero_tol) {
  if (n < 1 || (family == Family::su && n < 2)) {
    throw std::invalid_argument(std::string(family_name(family)) + "(" + std::to_string(n) +
                                ") is not supported");
  }
  std::vector<Eigen::MatrixXd> basis;
  switch (family) {
    case Family::so:
      for (auto& m : orthogonal_generators(n)) basis.push_back(normalized(m));
      break;
    case Family::su:
      for (auto& z : special_unitary_generators(n)) basis.push_back(normalized(realify(z)));
      break;
    case Family::u:
      for (auto& z : unitary_generators(n)) basis.push_back(normalized(realify(z)));
      break;
    case Family::sp:
      for (auto& z : symplectic_generators(n)) basis.push_back(normalized(realify(z)));
      break;
  }
  if (basis.empty()) {
    throw std::invalid_argument(std::string(family_name(family)) + "(" + std::to_string(n) +
                                ") is zero-dimensional");
  }
  const std::string name = std::string(family_name(family)) + "(" + std::to_string(n) + ")";
  return std::make_shared<const LieAlgebra>(name, std::move(basis), expected_rank(family, n),
                                            zero_tol);
}

// ---------------------------------------------------------------------------

AlgebraElement basis_element(const AlgebraPtr& owner, int index) {
  if (!owner || index < 0 || index >= owner->dim()) {
    throw std::out_of_range("basis index out of range");
  }
  return {owner, Eigen::VectorXd::Unit(owner->dim(), index)};
}

namespace {
void require_same_owner(const AlgebraElement& x, const AlgebraElement& y) {
  if (!x.owner || x.owner != y.owner) {
    throw std::invalid_argument("elements belong to different algebras");
  }
  if (x.coeffs.size() != x.owner->dim() || y.coeffs.size() != y.owner->dim()) {
    throw std::invalid_argument("coefficient length does not match the owning basis");
  }
}
}  // namespace

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_owner(x, y);
  const Eigen::MatrixXd a = x.owner->matrix(x.coeffs);
  const Eigen::MatrixXd b = x.owner->matrix(y.coeffs);
  return {x.owner, x.owner->coords(a * b - b * a)};
}

double inner(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_owner(x, y);
  return -(x.owner->matrix(x.coeffs) * x.owner->matrix(y.coeffs)).trace();
}

Eigen::MatrixXd nullspace_in_subspace(const LieAlgebra& g, const Eigen::VectorXd& x,
                                      const Eigen::MatrixXd& subspace, double rel_tol,
                                      RankLedger* ledger) {
  if (subspace.rows() != g.dim()) {
    throw std::invalid_argument("subspace is not given in the algebra's coordinates");
  }
  if (subspace.cols() == 0) return Eigen::MatrixXd(g.dim(), 0);
  if (numerical_rank(subspace, rel_tol).rank != subspace.cols()) {
    throw std::invalid_argument("subspace basis is rank deficient");
  }
  const double scale = x.norm();
  if (scale == 0.0) return orthonormal_range(subspace, rel_tol);
  // Unit x and an independent S put the image on an O(1) scale.
  const Eigen::MatrixXd image = g.ad(x / scale) * subspace;
  const Eigen::MatrixXd kernel = null_space(image, rel_tol, ledger, rel_tol);
  return orthonormal_range(subspace * kernel, rel_tol);
}

Eigen::MatrixXd mat_exp(const Eigen::MatrixXd& x, double t) {
  if (x.rows() != x.cols()) throw std::invalid_argument("mat_exp needs a square matrix");
  const double arg = std::abs(t) * x.norm();
  if (!std::isfinite(arg) || arg > kMaxExpArgument) {
    throw std::domain_error("mat_exp argument |t|*||X|| exceeds the supported bound");
  }
  const Eigen::MatrixXd tx = t * x;
  return tx.exp();
}

Eigen::MatrixXd mat_exp(const AlgebraElement& x, double t) {
  return mat_exp(x.owner->matrix(x.coeffs), t);
}

}  // namespace gospace
