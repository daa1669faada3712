#include "gospace/structure.hpp"

#include "gospace/goverify.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace gospace {

IsotropyDims isotropy_dimensions(const HomogeneousSpace& space, const Eigen::VectorXd& x,
                                 const Tolerances& tol, RankLedger* ledger) {
  if (x.size() != space.dim_v()) throw std::invalid_argument("x must be a v-coordinate vector");
  if (!(x.squaredNorm() > 0.0)) throw std::invalid_argument("x must be nonzero");
  const LieAlgebra& g = *space.g;
  const Eigen::VectorXd xg = space.from_v(x.normalized());
  const Eigen::MatrixXd all = Eigen::MatrixXd::Identity(g.dim(), g.dim());
  IsotropyDims out;
  out.g_x = static_cast<int>(nullspace_in_subspace(g, xg, all, tol.rank_rel, ledger).cols());
  out.h_x = static_cast<int>(nullspace_in_subspace(g, xg, space.h, tol.rank_rel, ledger).cols());
  return out;
}

PointDims point_dimensions(const HomogeneousSpace& space, Submodule submodule,
                           const Eigen::VectorXd& x, const Tolerances& tol, RankLedger* ledger) {
  const LieAlgebra& g = *space.g;
  const Eigen::MatrixXd dom = space.domain_basis(submodule);
  const Eigen::MatrixXd act = space.acting_basis(submodule);
  if (x.size() != dom.cols()) throw std::invalid_argument("x has the wrong domain dimension");
  if (!(x.squaredNorm() > 0.0)) throw std::invalid_argument("x must be nonzero");

  const Eigen::VectorXd xg = dom * x.normalized();
  const Eigen::MatrixXd ad_x = g.ad(xg);
  PointDims out;
  out.g_x = g.dim() - numerical_rank(ad_x, tol.rank_rel, ledger, tol.rank_rel).rank;
  out.s_x = static_cast<int>(nullspace_in_subspace(g, xg, act, tol.rank_rel, ledger).cols());

  // j_x: vectors of the domain orthogonal to [x, acting].
  const Eigen::MatrixXd tangent = dom.transpose() * ad_x * act;
  const Eigen::MatrixXd j = null_space(tangent.transpose(), tol.rank_rel, ledger, tol.rank_rel);
  out.j_x = static_cast<int>(j.cols());

  // Lambda_x(eta1, eta2) = -<x, [eta1, eta2]> = tr(X [E1, E2]), from realized matrices.
  const Eigen::MatrixXd xm = g.matrix(xg);
  std::vector<Eigen::MatrixXd> eta;
  for (Eigen::Index a = 0; a < j.cols(); ++a) eta.push_back(g.matrix(dom * j.col(a)));
  Eigen::MatrixXd form = Eigen::MatrixXd::Zero(j.cols(), j.cols());
  for (Eigen::Index a = 0; a < j.cols(); ++a) {
    for (Eigen::Index b = a + 1; b < j.cols(); ++b) {
      const double value = (xm * (eta[a] * eta[b] - eta[b] * eta[a])).trace();
      form(a, b) = value;
      form(b, a) = -value;
    }
  }
  out.ker_lambda =
      out.j_x - (out.j_x ? numerical_rank(form, tol.rank_rel, ledger, tol.rank_rel).rank : 0);
  return out;
}

namespace {

constexpr int kMaxSamples = 64;
constexpr std::uint64_t kMStream = 0xd1b54a32d192ed03ULL;

}  // namespace

ComplexityReport complexity_on_submodule(const HomogeneousSpace& space, Submodule submodule,
                                         int n_samples, std::uint64_t seed,
                                         const Tolerances& tol) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be at least 1");
  const Eigen::MatrixXd dom = space.domain_basis(submodule);
  const Eigen::MatrixXd act = space.acting_basis(submodule);
  if (dom.cols() == 0) {
    throw std::invalid_argument("submodule " + submodule_name(submodule) + " of " +
                                space.catalog_id + " is trivial");
  }
  RankLedger ledger;
  ComplexityReport rep;
  rep.space_id = space.catalog_id;
  rep.submodule = submodule_name(submodule);
  rep.dim_g = space.dim_g();
  rep.dim_acting = static_cast<int>(act.cols());
  rep.dim_domain = static_cast<int>(dom.cols());
  rep.seed = seed;
  rep.rank_g = space.g->rank();

  std::mt19937_64 rng(seed);
  std::vector<PointDims> points;
  auto draw = [&] {
    points.push_back(point_dimensions(space, submodule, gaussian_vector(rng, rep.dim_domain), tol,
                                      &ledger));
  };
  for (int i = 0; i < n_samples; ++i) draw();

  auto minimum = [&] {
    PointDims best = points.front();
    for (const auto& p : points) {
      if (p.g_x < best.g_x || (p.g_x == best.g_x && p.s_x < best.s_x)) best = p;
    }
    return best;
  };
  auto attaining = [&](const PointDims& best) {
    return static_cast<int>(std::count_if(points.begin(), points.end(), [&](const PointDims& p) {
      return p.g_x == best.g_x && p.s_x == best.s_x;
    }));
  };
  PointDims best = minimum();
  while (2 * attaining(best) < static_cast<int>(points.size()) &&
         static_cast<int>(points.size()) < kMaxSamples) {
    draw();
    best = minimum();
  }
  rep.generic = best;
  rep.n_samples = static_cast<int>(points.size());
  rep.samples_at_minimum = attaining(best);
  if (2 * rep.samples_at_minimum < rep.n_samples) {
    rep.issues.push_back("fewer than half the samples attain the generic isotropy");
  }
  // Independent direct values must agree at every generic sample.
  for (const auto& p : points) {
    if (p.g_x == best.g_x && p.s_x == best.s_x &&
        (p.j_x != best.j_x || p.ker_lambda != best.ker_lambda)) {
      rep.issues.push_back("generic samples disagree on dim j_x or dim ker Lambda_x");
      break;
    }
  }

  rep.ddim = rep.dim_domain - rep.dim_acting + best.s_x;
  rep.dind = best.g_x - best.s_x;
  if (rep.ddim != best.j_x) {
    rep.issues.push_back("ddim formula " + std::to_string(rep.ddim) + " != dim j_x " +
                         std::to_string(best.j_x));
  }
  if (rep.dind != best.ker_lambda) {
    rep.issues.push_back("dind formula " + std::to_string(rep.dind) + " != dim ker Lambda_x " +
                         std::to_string(best.ker_lambda));
  }
  const int gap = rep.ddim - rep.dind;
  if (gap < 0 || gap % 2 != 0) {
    rep.issues.push_back("ddim - dind = " + std::to_string(gap) + " is not a nonnegative even integer");
  }
  rep.complexity = gap / 2;
  if (best.s_x < 0 || best.s_x > rep.dim_acting) rep.issues.push_back("isotropy dimension out of range");
  if (rep.dind > rep.rank_g) rep.issues.push_back("dind exceeds rank g");

  if (submodule == Submodule::v && space.dim_l() > 0 && space.dim_m() > 0) {
    std::mt19937_64 mrng(seed ^ kMStream);
    int g_xm = rep.dim_g;
    for (int i = 0; i < rep.n_samples; ++i) {
      Eigen::VectorXd xm = Eigen::VectorXd::Zero(rep.dim_domain);
      xm.tail(space.dim_m()) = gaussian_vector(mrng, space.dim_m());
      g_xm = std::min(g_xm, point_dimensions(space, Submodule::v, xm, tol, &ledger).g_x);
    }
    rep.generic_g_xm = g_xm;
    if (best.g_x > g_xm) rep.issues.push_back("dim g_x > dim g_{x_m}");
  }
  rep.rank_gap = ledger.worst_gap();
  rep.consistent = rep.issues.empty();
  return rep;
}

ComplexityReport generic_dims(const HomogeneousSpace& space, int n_samples, std::uint64_t seed,
                              const Tolerances& tol) {
  if (n_samples < 4) throw std::invalid_argument("generic_dims needs at least 4 samples");
  return complexity_on_submodule(space, Submodule::v, n_samples, seed, tol);
}

}  // namespace gospace
