#include "gospace/poisson.hpp"

#include "gospace/goverify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gospace {

double lie_poisson_bracket(const InvariantPolynomial& f, const InvariantPolynomial& g,
                           const Eigen::VectorXd& x) {
  if (!(f.domain() == g.domain())) {
    throw std::invalid_argument("bracket of " + f.label() + " and " + g.label() +
                                " across different domains");
  }
  const Domain& dom = f.domain();
  if (!dom.space) throw std::invalid_argument("polynomial has no domain space");
  const Eigen::MatrixXd d = dom.space->domain_basis(dom.submodule);
  if (x.size() != d.cols()) throw std::invalid_argument("x has the wrong domain dimension");
  const LieAlgebra& alg = *dom.space->g;
  return -(d * x).dot(alg.bracket(d * f.gradient(x), d * g.gradient(x)));
}

namespace {

std::string item_label(const RecipeItem& item) {
  struct {
    std::string operator()(const Traces& t) { return "traces(" + std::to_string(t.k_max) + ")"; }
    std::string operator()(const NormalHamiltonian&) { return "h_0"; }
    std::string operator()(const Delta&) { return "delta"; }
    std::string operator()(const LinearOnL&) { return "linear_on_l"; }
    std::string operator()(const QuadraticOnL&) { return "q_A"; }
    std::string operator()(const MetricHamiltonianItem& m) {
      return "h_A[" + metric_label(m.metric) + "]";
    }
  } visitor;
  return std::visit(visitor, item);
}

void require_l_on_v(const HomogeneousSpace& space, Submodule domain, const std::string& what) {
  if (domain != Submodule::v) throw std::invalid_argument(what + " lives on v, not m");
  if (space.dim_l() == 0) throw std::invalid_argument(what + " needs l != 0");
}

}  // namespace

std::string recipe_label(const Recipe& recipe) {
  std::ostringstream out;
  out << submodule_name(recipe.domain) << ":";
  for (std::size_t i = 0; i < recipe.items.size(); ++i) {
    out << (i ? "," : "") << item_label(recipe.items[i]);
  }
  return out.str();
}

std::vector<InvariantPolynomial> trace_invariants(const HomogeneousSpace& space,
                                                  Submodule domain, int k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  const Eigen::MatrixXd d = space.domain_basis(domain);
  if (d.cols() == 0) throw std::invalid_argument("trace invariants on a trivial domain");
  const AlgebraPtr g = space.g;
  std::vector<InvariantPolynomial> out;
  for (int i = 1; i <= k_max; ++i) {
    const int k = 2 * i;
    auto eval = [g, d, k](const Eigen::VectorXd& x) {
      const Eigen::MatrixXd xm = g->matrix(d * x);
      Eigen::MatrixXd power = xm;
      for (int p = 1; p < k; ++p) power = power * xm;
      return power.trace();
    };
    // d/dt tr((X + tY)^k) = k tr(X^{k-1} Y) = -k <X^{k-1}, Y>
    auto grad = [g, d, k](const Eigen::VectorXd& x) -> Eigen::VectorXd {
      const Eigen::MatrixXd xm = g->matrix(d * x);
      Eigen::MatrixXd power = xm;
      for (int p = 2; p < k; ++p) power = power * xm;
      return -static_cast<double>(k) * (d.transpose() * g->coords(power));
    };
    out.emplace_back("p_" + std::to_string(i), k, Domain{&space, domain}, eval, grad);
  }
  return out;
}

PolynomialFamily build_family(const HomogeneousSpace& space, const Recipe& recipe,
                              const Tolerances& tol) {
  PolynomialFamily fam;
  fam.recipe = recipe_label(recipe);
  fam.domain = Domain{&space, recipe.domain};
  const int dim = static_cast<int>(space.domain_basis(recipe.domain).cols());
  if (dim == 0) throw std::invalid_argument("recipe on a trivial domain");
  const int dl = space.dim_l();

  for (const RecipeItem& item : recipe.items) {
    if (const auto* t = std::get_if<Traces>(&item)) {
      for (auto& p : trace_invariants(space, recipe.domain, t->k_max)) {
        fam.members.push_back(std::move(p));
      }
    } else if (std::holds_alternative<NormalHamiltonian>(item)) {
      fam.members.emplace_back(
          "h_0", 2, fam.domain, [](const Eigen::VectorXd& x) { return 0.5 * x.squaredNorm(); },
          [](const Eigen::VectorXd& x) -> Eigen::VectorXd { return x; });
    } else if (std::holds_alternative<Delta>(item)) {
      require_l_on_v(space, recipe.domain, "delta");
      fam.members.emplace_back(
          "delta", 2, fam.domain,
          [dl](const Eigen::VectorXd& x) { return 0.5 * x.head(dl).squaredNorm(); },
          [dl](const Eigen::VectorXd& x) -> Eigen::VectorXd {
            Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
            out.head(dl) = x.head(dl);
            return out;
          });
    } else if (std::holds_alternative<LinearOnL>(item)) {
      require_l_on_v(space, recipe.domain, "linear_on_l");
      if (!(space.residuals.l_commutes_h < tol.zero)) {
        throw std::invalid_argument("linear functions on l are not Ad_H-invariant: [h, l] != 0");
      }
      for (int j = 0; j < dl; ++j) {
        fam.members.emplace_back(
            "l_" + std::to_string(j), 1, fam.domain,
            [j](const Eigen::VectorXd& x) { return x(j); },
            [j, dim](const Eigen::VectorXd&) -> Eigen::VectorXd {
              return Eigen::VectorXd::Unit(dim, j);
            });
      }
    } else if (const auto* q = std::get_if<QuadraticOnL>(&item)) {
      require_l_on_v(space, recipe.domain, "q_A");
      const Eigen::MatrixXd a = q->a;
      if (a.rows() != dl || a.cols() != dl) {
        throw std::invalid_argument("A must be " + std::to_string(dl) + "x" + std::to_string(dl));
      }
      if ((a - a.transpose()).cwiseAbs().maxCoeff() > tol.zero) {
        throw std::invalid_argument("A is not symmetric");
      }
      Eigen::MatrixXd full = Eigen::MatrixXd::Zero(dim, dim);
      full.topLeftCorner(dl, dl) = a;
      if (!(ad_h_invariance_residual(space, full) < tol.zero)) {
        throw std::invalid_argument("q_A is not Ad_H-invariant");
      }
      fam.members.emplace_back(
          "q_A", 2, fam.domain,
          [full](const Eigen::VectorXd& x) { return 0.5 * x.dot(full * x); },
          [full](const Eigen::VectorXd& x) -> Eigen::VectorXd { return full * x; });
    } else if (const auto* mh = std::get_if<MetricHamiltonianItem>(&item)) {
      if (recipe.domain != Submodule::v) throw std::invalid_argument("h_A lives on v, not m");
      const MetricOperator op = metric_operator(space, mh->metric, tol);
      InvariantPolynomial h = hamiltonian(space, op).h_a;
      fam.members.emplace_back("h_A", 2, fam.domain,
                               [h](const Eigen::VectorXd& x) { return h(x); },
                               [h](const Eigen::VectorXd& x) { return h.gradient(x); });
    }
  }
  if (fam.members.empty()) throw std::invalid_argument("recipe produced no polynomials");
  return fam;
}

CommutativityResult commutativity_residual(const PolynomialFamily& family, int n_samples,
                                           std::uint64_t seed) {
  if (family.members.empty()) throw std::invalid_argument("family is empty");
  if (n_samples < 1) throw std::invalid_argument("n_samples must be at least 1");
  const int dim = static_cast<int>(
      family.domain.space->domain_basis(family.domain.submodule).cols());
  std::mt19937_64 rng(seed);
  CommutativityResult out;
  const int n = static_cast<int>(family.members.size());
  for (int s = 0; s < n_samples; ++s) {
    const Eigen::VectorXd x = gaussian_vector(rng, dim);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const auto& f = family.members[i];
        const auto& g = family.members[j];
        const double scale = f.gradient(x).norm() * g.gradient(x).norm() * x.norm();
        if (scale == 0.0) continue;
        const double r = std::abs(lie_poisson_bracket(f, g, x)) / scale;
        if (!(r <= out.max_residual)) {
          out.max_residual = r;
          out.worst_i = i;
          out.worst_j = j;
        }
      }
    }
  }
  return out;
}

int gradient_rank(const PolynomialFamily& family, int n_samples, std::uint64_t seed,
                  const Tolerances& tol) {
  const int dim = static_cast<int>(
      family.domain.space->domain_basis(family.domain.submodule).cols());
  std::mt19937_64 rng(seed);
  int best = 0;
  for (int s = 0; s < n_samples; ++s) {
    const Eigen::VectorXd x = gaussian_vector(rng, dim);
    Eigen::MatrixXd grads(family.members.size(), dim);
    for (std::size_t i = 0; i < family.members.size(); ++i) {
      grads.row(static_cast<Eigen::Index>(i)) = family.members[i].gradient(x).transpose();
    }
    best = std::max(best, numerical_rank(grads, tol.rank_rel).rank);
  }
  return best;
}

CompletenessResult completeness_check(const HomogeneousSpace& space,
                                      const PolynomialFamily& family, std::uint64_t seed,
                                      const Tolerances& tol, int n_samples) {
  if (family.domain.space != &space) throw std::invalid_argument("family belongs to another space");
  const CommutativityResult comm = commutativity_residual(family, n_samples, seed);
  if (!(comm.max_residual < tol.accept)) {
    std::ostringstream msg;
    msg << "family does not commute: {" << family.members[comm.worst_i].label() << ", "
        << family.members[comm.worst_j].label() << "} residual " << comm.max_residual;
    throw std::invalid_argument(msg.str());
  }
  CompletenessResult out;
  out.commutativity = comm.max_residual;
  out.complexity = complexity_on_submodule(space, family.domain.submodule, n_samples, seed, tol);
  out.target = (out.complexity.ddim + out.complexity.dind) / 2;
  out.ddim_b = gradient_rank(family, n_samples, seed, tol);
  out.complete = out.ddim_b == out.target;
  return out;
}

CentralityTest centrality_test(const InvariantPolynomial& f, int n_samples, std::uint64_t seed,
                               const Tolerances& tol) {
  const Domain& dom = f.domain();
  if (!dom.space) throw std::invalid_argument("polynomial has no domain space");
  const HomogeneousSpace& space = *dom.space;
  const LieAlgebra& g = *space.g;
  const Eigen::MatrixXd d = space.domain_basis(dom.submodule);
  const Eigen::MatrixXd all = Eigen::MatrixXd::Identity(g.dim(), g.dim());
  std::mt19937_64 rng(seed);
  CentralityTest out;
  for (int s = 0; s < n_samples; ++s) {
    const Eigen::VectorXd x = gaussian_vector(rng, static_cast<int>(d.cols()));
    const Eigen::VectorXd grad = f.gradient(x);
    const double norm = grad.norm();
    if (norm == 0.0) continue;
    const Eigen::MatrixXd gx = nullspace_in_subspace(g, d * x, all, tol.rank_rel);
    const Eigen::MatrixXd proj = d.transpose() * gx;
    const LeastSquares ls = min_norm_solve(proj, grad, tol.rank_rel);
    out.max_residual = std::max(out.max_residual, ls.residual.norm() / norm);
  }
  out.central = out.max_residual < tol.accept;
  return out;
}

}  // namespace gospace
