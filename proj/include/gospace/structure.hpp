#pragma once

// Generic isotropy dimensions and the integrability invariants of the
// invariant-polynomial algebra on v (or on m with k acting):
//   ddim = dim v - dim h + dim h_x = dim j_x
//   dind = dim g_x - dim h_x = dim ker Lambda_x
//   complexity = (ddim - dind) / 2

#include "gospace/homspace.hpp"
#include "gospace/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gospace {

struct IsotropyDims {
  int g_x = 0;
  int h_x = 0;
};

/// Kernel dimensions of xi -> [xi, x] on g and on h, for x in v (v-coordinates).
IsotropyDims isotropy_dimensions(const HomogeneousSpace& space, const Eigen::VectorXd& x,
                                 const Tolerances& tol = {}, RankLedger* ledger = nullptr);

/// All directly computed dimensions at one point of a domain.
struct PointDims {
  int g_x = 0;
  int s_x = 0;         // isotropy in the acting subalgebra
  int j_x = 0;         // complement of the acting orbit tangent in the domain
  int ker_lambda = 0;  // kernel of Lambda_x on j_x
};

PointDims point_dimensions(const HomogeneousSpace& space, Submodule submodule,
                           const Eigen::VectorXd& x, const Tolerances& tol = {},
                           RankLedger* ledger = nullptr);

struct ComplexityReport {
  std::string space_id;
  std::string submodule;  // "v" or "m"
  int dim_g = 0;
  int dim_acting = 0;     // dim h (on v) or dim k (on m)
  int dim_domain = 0;     // dim v or dim m
  PointDims generic;
  int ddim = 0;
  int dind = 0;
  int complexity = 0;
  int n_samples = 0;
  int samples_at_minimum = 0;
  std::uint64_t seed = 0;
  double rank_gap = 0.0;
  int rank_g = 0;
  // Inequality dim g_x <= dim g_{x_m} for triples on v; -1 when not computed.
  int generic_g_xm = -1;
  bool consistent = true;
  std::vector<std::string> issues;
};

/// Generic dims on v; generic values are minima over samples, with at least
/// half the samples required to attain them (more are drawn, up to 64).
ComplexityReport generic_dims(const HomogeneousSpace& space, int n_samples, std::uint64_t seed,
                              const Tolerances& tol = {});

/// Same pipeline on a chosen submodule: m is acted on by k. Rejects m = 0.
ComplexityReport complexity_on_submodule(const HomogeneousSpace& space, Submodule submodule,
                                         int n_samples, std::uint64_t seed,
                                         const Tolerances& tol = {});

}  // namespace gospace
