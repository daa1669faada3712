#pragma once

// Homogeneous spaces G/H fibered over G/K: embedded chains h < k < g with the
// orthogonal decomposition g = h + l + m, k = h + l, v = l + m, and the
// Ad_H-invariant metric operators acting on v.

#include "gospace/liealg.hpp"
#include "gospace/polynomial.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gospace {

struct CatalogParams {
  int n = 0;
  int r = 0;
};

/// Structural claims recorded for a catalog entry.
struct SpaceFlags {
  bool l_commutes_h = false;  // [l, h] = 0
  bool l_closed = false;      // [l, l] in l
  bool l_abelian = false;     // [l, l] = 0
  bool symmetric = false;     // (g, k) symmetric: [m, m] in k
};

/// Measured structural residuals (max norms over basis elements).
struct StructureResiduals {
  double orthogonality = 0.0;
  double h_closure = 0.0;
  double reductivity = 0.0;
  double k_closure = 0.0;
  double l_commutes_h = 0.0;
  double l_closed = 0.0;
  double l_abelian = 0.0;
  double symmetric = 0.0;
  double base_point = 0.0;
};

struct HomogeneousSpace {
  std::string catalog_id;
  CatalogParams params;
  std::string description;   // e.g. "sp(2) > sp(1)+sp(1) > sp(1)"
  std::optional<int> table_row;
  bool is_pair = false;      // K = H, l = 0
  AlgebraPtr g;
  Eigen::MatrixXd h, l, m;   // g-coordinates, orthonormal columns
  SpaceFlags flags;
  StructureResiduals residuals;
  std::optional<Eigen::VectorXd> base_point;  // unit vector in R^N fixed by H

  int dim_g() const { return g->dim(); }
  int dim_h() const { return static_cast<int>(h.cols()); }
  int dim_l() const { return static_cast<int>(l.cols()); }
  int dim_m() const { return static_cast<int>(m.cols()); }
  int dim_v() const { return dim_l() + dim_m(); }
  int dim_k() const { return dim_h() + dim_l(); }

  /// Basis of v = l + m in g-coordinates; v-coordinates list l first.
  Eigen::MatrixXd v() const;
  Eigen::MatrixXd k() const;

  /// Embeds v-coordinates into g-coordinates and back.
  Eigen::VectorXd from_v(const Eigen::VectorXd& x) const { return v() * x; }
  Eigen::VectorXd to_v(const Eigen::VectorXd& y) const { return v().transpose() * y; }
  /// x_l and x_m parts of a v-coordinate vector, still in v-coordinates.
  Eigen::VectorXd l_part(const Eigen::VectorXd& x) const;
  Eigen::VectorXd m_part(const Eigen::VectorXd& x) const;

  /// Domain basis and acting subalgebra for a submodule (v with h, m with k).
  Eigen::MatrixXd domain_basis(Submodule s) const;
  Eigen::MatrixXd acting_basis(Submodule s) const;
};

using SpacePtr = std::shared_ptr<const HomogeneousSpace>;

struct CatalogEntry {
  std::string id;
  std::optional<int> table_row;
  std::string g, k, h;       // human-readable chain
  bool supported = true;
  bool uses_n = false;
  bool uses_r = false;
  int n_min = 0;
  int r_min = 0;
  CatalogParams minimal;
  SpaceFlags flags;
  bool has_base_point = false;
  bool is_pair = false;
  std::string note;
};

/// Every catalog entry, supported or not, in manifest order.
const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& id);
/// Table 1 row number -> catalog id ("row9").
std::string row_id(int row);

/// Builds and verifies a catalog space. Throws std::invalid_argument for
/// unknown ids or out-of-range parameters and StructuralError when a
/// structural invariant fails.
SpacePtr build_space(const std::string& catalog_id, CatalogParams params,
                     const Tolerances& tol = {});

/// The same G/H viewed as a pair: K = H, so l = 0 and m = v.
SpacePtr as_pair(const HomogeneousSpace& space, const Tolerances& tol = {});

/// Recomputes every structural residual of a space.
StructureResiduals measure_structure(const HomogeneousSpace& space);

// ---------------------------------------------------------------------------
// Metrics

struct NormalMetric {};
struct LambdaMetric {
  double lambda = 1.0;
};
struct FiberMetric {
  Eigen::MatrixXd a_l;  // symmetric positive operator on l (l-coordinates)
  double lambda_m = 1.0;
};
using MetricSpec = std::variant<NormalMetric, LambdaMetric, FiberMetric>;

std::string metric_label(const MetricSpec& spec);

/// The positive Ad_H-invariant operator I on v and its inverse A.
struct MetricOperator {
  MetricSpec spec;
  Eigen::MatrixXd inertia;  // I, v-coordinates
  Eigen::MatrixXd inverse;  // A = I^-1
  double invariance_residual = 0.0;
  double min_eigenvalue = 0.0;
};

MetricOperator metric_operator(const HomogeneousSpace& space, const MetricSpec& spec,
                               const Tolerances& tol = {});

/// max over h-basis eta of ||[ad_eta|v, I]||, scaled by ||I||.
double ad_h_invariance_residual(const HomogeneousSpace& space, const Eigen::MatrixXd& op);

/// Restriction of ad_eta to v, in v-coordinates.
Eigen::MatrixXd ad_on_v(const HomogeneousSpace& space, const Eigen::VectorXd& eta);

struct MetricHamiltonians {
  InvariantPolynomial h_a;    // 1/2 <A x, x>
  InvariantPolynomial h_0;    // 1/2 <x, x>
  InvariantPolynomial delta;  // 1/2 <x_l, x_l>
};

MetricHamiltonians hamiltonian(const HomogeneousSpace& space, const MetricOperator& metric);

struct PerturbedHamiltonian {
  InvariantPolynomial h;          // h_lambda + 1/2 <x_l, A_l x_l>
  Eigen::MatrixXd quadratic_form;  // symmetric operator Q with h = 1/2 <Q x, x>
  double min_eigenvalue = 0.0;     // positivity certificate
  MetricOperator metric;          // the metric whose Hamiltonian is h
};

/// Rejects a_l of the wrong size and indefinite total forms.
PerturbedHamiltonian perturbed_hamiltonian(const HomogeneousSpace& space, double lambda,
                                           const Eigen::MatrixXd& a_l,
                                           const Tolerances& tol = {});

}  // namespace gospace
