#pragma once

// Reduced Lie-Poisson bracket {f, g}(x) = -<x, [grad f(x), grad g(x)]> on
// invariant polynomials, and the commutative families built from them.

#include "gospace/homspace.hpp"
#include "gospace/linalg.hpp"
#include "gospace/polynomial.hpp"
#include "gospace/structure.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace gospace {

/// Rejects polynomials living on different domains.
double lie_poisson_bracket(const InvariantPolynomial& f, const InvariantPolynomial& g,
                           const Eigen::VectorXd& x);

// Recipe items. l-based items need the domain v and l != 0.
struct Traces {
  int k_max = 1;  // p_i = tr(X^{2i}), i = 1..k_max
};
struct NormalHamiltonian {};  // h_0 = 1/2 |x|^2
struct Delta {};              // 1/2 |x_l|^2
struct LinearOnL {};          // <eta, x> for each basis eta of l; needs [h, l] = 0
struct QuadraticOnL {
  Eigen::MatrixXd a;          // q_A = 1/2 <x_l, A x_l>, A symmetric and Ad_H-invariant
};
struct MetricHamiltonianItem {
  MetricSpec metric;          // h_A = 1/2 <A x, x>
};
using RecipeItem =
    std::variant<Traces, NormalHamiltonian, Delta, LinearOnL, QuadraticOnL, MetricHamiltonianItem>;

struct Recipe {
  Submodule domain = Submodule::v;
  std::vector<RecipeItem> items;
};

std::string recipe_label(const Recipe& recipe);

struct PolynomialFamily {
  std::string recipe;
  Domain domain;
  std::vector<InvariantPolynomial> members;
};

PolynomialFamily build_family(const HomogeneousSpace& space, const Recipe& recipe,
                              const Tolerances& tol = {});

/// Restricted trace invariants tr(X^{2i}) on a domain, with exact gradients
/// -2i pr(X^{2i-1}).
std::vector<InvariantPolynomial> trace_invariants(const HomogeneousSpace& space,
                                                  Submodule domain, int k_max);

struct CommutativityResult {
  double max_residual = 0.0;  // max |{f_i, f_j}| / (|grad f_i| |grad f_j| |x|)
  int worst_i = -1;
  int worst_j = -1;
};

CommutativityResult commutativity_residual(const PolynomialFamily& family, int n_samples,
                                           std::uint64_t seed);

struct CompletenessResult {
  int ddim_b = 0;   // generic rank of the family's gradient matrix
  int target = 0;   // (ddim + dind) / 2
  bool complete = false;
  double commutativity = 0.0;
  ComplexityReport complexity;
};

/// Rejects non-commuting families, naming the offending pair.
CompletenessResult completeness_check(const HomogeneousSpace& space,
                                      const PolynomialFamily& family, std::uint64_t seed,
                                      const Tolerances& tol = {}, int n_samples = 8);

/// Generic rank of the gradient matrix (max over samples).
int gradient_rank(const PolynomialFamily& family, int n_samples, std::uint64_t seed,
                  const Tolerances& tol = {});

struct CentralityTest {
  bool central = false;
  double max_residual = 0.0;  // |grad f - pr(g_x part)| / |grad f|
};

/// grad f(x) lies in the domain projection of g_x at every sample.
CentralityTest centrality_test(const InvariantPolynomial& f, int n_samples, std::uint64_t seed,
                               const Tolerances& tol = {});

}  // namespace gospace
