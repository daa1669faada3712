#include "gospace/homspace.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gospace {

namespace {

using cd = std::complex<double>;

std::vector<int> range(int begin, int end) {
  std::vector<int> out;
  for (int i = begin; i < end; ++i) out.push_back(i);
  return out;
}

// Collects realized generators and turns them into an orthonormal
// g-coordinate basis, rejecting anything that leaves g.
class SubspaceBuilder {
 public:
  explicit SubspaceBuilder(const LieAlgebra& g) : g_(g) {}

  void add(const Eigen::MatrixXd& m) {
    const double outside = g_.outside_residual(m) / m.norm();
    if (outside > 1e-12) throw StructuralError("generator lies outside " + g_.name(), outside);
    cols_.push_back(g_.coords(m));
  }
  void add_complex(const ComplexMatrix& z) { add(realify(z)); }

  Eigen::MatrixXd basis() const {
    if (cols_.empty()) return Eigen::MatrixXd(g_.dim(), 0);
    Eigen::MatrixXd a(g_.dim(), cols_.size());
    for (std::size_t i = 0; i < cols_.size(); ++i) a.col(i) = cols_[i];
    return orthonormal_range(a, 1e-10);
  }

 private:
  const LieAlgebra& g_;
  std::vector<Eigen::VectorXd> cols_;
};

// i * diag(a on [0, split), b on [split, size)) with a*split + b*(size-split) = 0.
ComplexMatrix center_generator(int size, int split) {
  ComplexMatrix d = ComplexMatrix::Zero(size, size);
  const double a = static_cast<double>(size - split);
  const double b = -static_cast<double>(split);
  for (int i = 0; i < size; ++i) d(i, i) = cd(0, i < split ? a : b);
  return d;
}

struct Chain {
  AlgebraPtr g;
  Eigen::MatrixXd h, k;
  std::optional<Eigen::VectorXd> base_point;
  std::string description;
};

Eigen::VectorXd first_unit(int size) { return Eigen::VectorXd::Unit(size, 0); }

Chain orthogonal_unitary_chain(int big, int even, bool special) {
  // so(big) > so(even) > u(even/2) or su(even/2), standard P + iQ inclusion.
  Chain c;
  c.g = build_algebra(Family::so, big);
  const int half = even / 2;
  SubspaceBuilder k(*c.g), h(*c.g);
  for (const auto& e : orthogonal_generators(even)) k.add(embed_real(e, big, range(0, even)));
  const auto gens = special ? special_unitary_generators(half) : unitary_generators(half);
  for (const auto& z : gens) h.add(embed_real(unitary_in_orthogonal(z), big, range(0, even)));
  c.k = k.basis();
  c.h = h.basis();
  return c;
}

Chain build_chain(const std::string& id, const CatalogParams& p) {
  const int n = p.n;
  const int r = p.r;
  if (id == "row1") {
    Chain c = orthogonal_unitary_chain(2 * n + 1, 2 * n, false);
    c.description = "so(" + std::to_string(2 * n + 1) + ") > so(" + std::to_string(2 * n) +
                    ") > u(" + std::to_string(n) + ")";
    return c;
  }
  if (id == "row2") {
    Chain c = orthogonal_unitary_chain(4 * n + 1, 4 * n, true);
    c.description = "so(" + std::to_string(4 * n + 1) + ") > so(" + std::to_string(4 * n) +
                    ") > su(" + std::to_string(2 * n) + ")";
    return c;
  }
  if (id == "ex4") {
    // so(2n+1) > u(n) > su(n)
    Chain c;
    const int big = 2 * n + 1;
    c.g = build_algebra(Family::so, big);
    SubspaceBuilder k(*c.g), h(*c.g);
    for (const auto& z : unitary_generators(n))
      k.add(embed_real(unitary_in_orthogonal(z), big, range(0, 2 * n)));
    for (const auto& z : special_unitary_generators(n))
      h.add(embed_real(unitary_in_orthogonal(z), big, range(0, 2 * n)));
    c.k = k.basis();
    c.h = h.basis();
    c.description = "so(" + std::to_string(big) + ") > u(" + std::to_string(n) + ") > su(" +
                    std::to_string(n) + ")";
    return c;
  }
  if (id == "row5") {
    // su(n+1) > s(u(1) + u(n)) > su(n); su(n) acts on coordinates 1..n.
    Chain c;
    const int s = n + 1;
    c.g = build_algebra(Family::su, s);
    SubspaceBuilder k(*c.g), h(*c.g);
    for (const auto& z : special_unitary_generators(n)) {
      const auto e = embed_complex(z, s, range(1, s));
      k.add_complex(e);
      h.add_complex(e);
    }
    k.add_complex(center_generator(s, 1));
    c.k = k.basis();
    c.h = h.basis();
    c.base_point = first_unit(2 * s);
    c.description = "su(" + std::to_string(s) + ") > u(" + std::to_string(n) + ") > su(" +
                    std::to_string(n) + ")";
    return c;
  }
  if (id == "row6" || id == "row7") {
    // su(2n+1) > s(u(1) + u(2n)) > [u(1) +] sp(n); the 2n block sits at 1..2n.
    Chain c;
    const int s = 2 * n + 1;
    c.g = build_algebra(Family::su, s);
    SubspaceBuilder k(*c.g), h(*c.g);
    for (const auto& z : special_unitary_generators(2 * n))
      k.add_complex(embed_complex(z, s, range(1, s)));
    for (const auto& z : symplectic_generators(n))
      h.add_complex(embed_complex(z, s, range(1, s)));
    const auto center = center_generator(s, 1);
    k.add_complex(center);
    if (id == "row6") h.add_complex(center);
    c.k = k.basis();
    c.h = h.basis();
    c.description = "su(" + std::to_string(s) + ") > u(" + std::to_string(2 * n) + ") > " +
                    (id == "row6" ? "u(1)+sp(" : "sp(") + std::to_string(n) + ")";
    return c;
  }
  if (id == "row8" || id == "row9") {
    // sp(n+1) > sp(1) + sp(n) > [u(1) +] sp(n). Quaternionic coordinate q uses
    // complex indices q and q + n + 1; sp(1) acts on q = 0.
    Chain c;
    const int q = n + 1;
    const int s = 2 * q;
    c.g = build_algebra(Family::sp, q);
    SubspaceBuilder k(*c.g), h(*c.g);
    std::vector<int> first = {0, q};
    std::vector<int> rest = range(1, q);
    for (int i = 1; i < q; ++i) rest.push_back(i + q);
    for (const auto& z : symplectic_generators(1)) k.add_complex(embed_complex(z, s, first));
    for (const auto& z : symplectic_generators(n)) {
      const auto e = embed_complex(z, s, rest);
      k.add_complex(e);
      h.add_complex(e);
    }
    if (id == "row8") {
      ComplexMatrix u1 = ComplexMatrix::Zero(s, s);
      u1(0, 0) = cd(0, 1);
      u1(q, q) = cd(0, -1);
      h.add_complex(u1);
    }
    c.k = k.basis();
    c.h = h.basis();
    c.base_point = first_unit(2 * s);
    c.description = "sp(" + std::to_string(q) + ") > sp(1)+sp(" + std::to_string(n) + ") > " +
                    (id == "row8" ? "u(1)+sp(" : "sp(") + std::to_string(n) + ")";
    return c;
  }
  if (id == "row10") {
    // su(2r+n) > su(r) + su(r+n) + R > su(r) + su(r+n)
    Chain c;
    const int s = 2 * r + n;
    c.g = build_algebra(Family::su, s);
    SubspaceBuilder k(*c.g), h(*c.g);
    for (const auto& z : special_unitary_generators(r)) {
      const auto e = embed_complex(z, s, range(0, r));
      k.add_complex(e);
      h.add_complex(e);
    }
    for (const auto& z : special_unitary_generators(r + n)) {
      const auto e = embed_complex(z, s, range(r, s));
      k.add_complex(e);
      h.add_complex(e);
    }
    k.add_complex(center_generator(s, r));
    c.k = k.basis();
    c.h = h.basis();
    c.description = "su(" + std::to_string(s) + ") > su(" + std::to_string(r) + ")+su(" +
                    std::to_string(r + n) + ")+R > su(" + std::to_string(r) + ")+su(" +
                    std::to_string(r + n) + ")";
    return c;
  }
  if (id == "row11") {
    // so(4r+2) > u(2r+1) > su(2r+1)
    Chain c;
    const int m = 2 * r + 1;
    c.g = build_algebra(Family::so, 2 * m);
    SubspaceBuilder k(*c.g), h(*c.g);
    for (const auto& z : unitary_generators(m)) k.add(unitary_in_orthogonal(z));
    for (const auto& z : special_unitary_generators(m)) h.add(unitary_in_orthogonal(z));
    c.k = k.basis();
    c.h = h.basis();
    c.description = "so(" + std::to_string(2 * m) + ") > u(" + std::to_string(m) + ") > su(" +
                    std::to_string(m) + ")";
    return c;
  }
  if (id == "sphere") {
    // (so(n+1), so(n)) with so(n) on coordinates 1..n.
    Chain c;
    c.g = build_algebra(Family::so, n + 1);
    SubspaceBuilder h(*c.g);
    for (const auto& e : orthogonal_generators(n)) h.add(embed_real(e, n + 1, range(1, n + 1)));
    c.h = h.basis();
    c.k = c.h;
    c.base_point = first_unit(n + 1);
    c.description = "so(" + std::to_string(n + 1) + ") > so(" + std::to_string(n) + ")";
    return c;
  }
  if (id == "so-group") {
    Chain c;
    c.g = build_algebra(Family::so, n);
    c.h = Eigen::MatrixXd(c.g->dim(), 0);
    c.k = c.h;
    c.description = "so(" + std::to_string(n) + ") > 0";
    return c;
  }
  throw std::invalid_argument("unknown catalog id '" + id + "'");
}

std::vector<CatalogEntry> make_catalog() {
  std::vector<CatalogEntry> out;
  auto add = [&](CatalogEntry e) { out.push_back(std::move(e)); };
  SpaceFlags sym;
  sym.symmetric = true;
  SpaceFlags central;  // l central in k
  central.l_commutes_h = central.l_closed = central.l_abelian = central.symmetric = true;
  SpaceFlags row9_flags;
  row9_flags.l_commutes_h = row9_flags.l_closed = row9_flags.symmetric = true;

  add({"row1", 1, "so(2n+1)", "so(2n)", "u(n)", true, true, false, 2, 0, {2, 0}, sym, false, false, ""});
  add({"row2", 2, "so(4n+1)", "so(4n)", "su(2n)", true, true, false, 1, 0, {1, 0}, sym, false, false,
       "standard complex-structure embedding of su(2n)"});
  add({"row3", 3, "so(8)", "so(7)", "g2", false, false, false, 0, 0, {}, {}, false, false,
       "unsupported: exceptional g2"});
  add({"row4", 4, "so(9)", "so(8)", "spin(7)", false, false, false, 0, 0, {}, {}, false, false,
       "unsupported: spin representation"});
  add({"row5", 5, "su(n+1)", "u(n)", "su(n)", true, true, false, 2, 0, {2, 0}, central, true, false,
       "distance sphere S^(2n+1)"});
  add({"row6", 6, "su(2n+1)", "u(2n)", "u(1)+sp(n)", true, true, false, 2, 0, {2, 0}, sym, false,
       false, ""});
  add({"row7", 7, "su(2n+1)", "u(2n)", "sp(n)", true, true, false, 2, 0, {2, 0}, sym, false, false,
       ""});
  add({"row8", 8, "sp(n+1)", "sp(1)+sp(n)", "u(1)+sp(n)", true, true, false, 1, 0, {1, 0}, sym, true,
       false, "CP^(2n+1); base point lifts to S^(4n+3), its H-orbit is a circle"});
  add({"row9", 9, "sp(n+1)", "sp(1)+sp(n)", "sp(n)", true, true, false, 1, 0, {1, 0}, row9_flags,
       true, false, "distance sphere S^(4n+3)"});
  add({"row10", 10, "su(2r+n)", "su(r)+su(r+n)+R", "su(r)+su(r+n)", true, true, true, 1, 2, {1, 2},
       central, false, false, ""});
  add({"row11", 11, "so(4r+2)", "u(2r+1)", "su(2r+1)", true, false, true, 0, 2, {0, 2}, central,
       false, false, ""});
  add({"row12", 12, "e6", "so(10)+R", "so(10)", false, false, false, 0, 0, {}, {}, false, false,
       "unsupported: exceptional e6"});
  add({"row13", 13, "so(9)", "so(7)+so(2)", "g2+so(2)", false, false, false, 0, 0, {}, {}, false,
       false, "unsupported: exceptional g2"});
  add({"row14", 14, "so(10)", "so(8)+so(2)", "spin(7)+so(2)", false, false, false, 0, 0, {}, {},
       false, false, "unsupported: spin representation"});
  add({"row15", 15, "so(11)", "so(8)+so(3)", "spin(7)+so(3)", false, false, false, 0, 0, {}, {},
       false, false, "unsupported: spin representation"});

  SpaceFlags ex4_flags;
  ex4_flags.l_commutes_h = ex4_flags.l_closed = ex4_flags.l_abelian = true;
  add({"ex4", std::nullopt, "so(2n+1)", "u(n)", "su(n)", true, true, false, 1, 0, {2, 0}, ex4_flags,
       false, false, "flag manifold SO(2n+1)/U(n) fibered by U(n)/SU(n)"});
  SpaceFlags pair_sym;
  pair_sym.l_commutes_h = pair_sym.l_closed = pair_sym.l_abelian = pair_sym.symmetric = true;
  add({"sphere", std::nullopt, "so(n+1)", "so(n)", "so(n)", true, true, false, 2, 0, {4, 0},
       pair_sym, true, true, "round sphere S^n as a symmetric pair"});
  SpaceFlags group_flags;
  group_flags.l_commutes_h = group_flags.l_closed = group_flags.l_abelian = true;
  add({"so-group", std::nullopt, "so(n)", "0", "0", true, true, false, 2, 0, {3, 0}, group_flags,
       false, true, "the group SO(n) itself, H trivial"});
  return out;
}

double max_bracket_outside(const LieAlgebra& g, const Eigen::MatrixXd& a,
                           const Eigen::MatrixXd& b, const Eigen::MatrixXd& target,
                           bool same_set) {
  // max over basis pairs of the norm of [a_i, b_j] outside span(target).
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    const Eigen::MatrixXd ad = g.ad(a.col(i));
    for (Eigen::Index j = same_set ? i + 1 : 0; j < b.cols(); ++j) {
      Eigen::VectorXd c = ad * b.col(j);
      if (target.cols() > 0) c -= target * (target.transpose() * c);
      worst = std::max(worst, c.norm());
    }
  }
  return worst;
}

}  // namespace

// ---------------------------------------------------------------------------

Eigen::MatrixXd HomogeneousSpace::v() const {
  Eigen::MatrixXd out(g->dim(), dim_v());
  out << l, m;
  return out;
}

Eigen::MatrixXd HomogeneousSpace::k() const {
  Eigen::MatrixXd out(g->dim(), dim_k());
  out << h, l;
  return out;
}

Eigen::VectorXd HomogeneousSpace::l_part(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  out.head(dim_l()) = x.head(dim_l());
  return out;
}

Eigen::VectorXd HomogeneousSpace::m_part(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  out.tail(dim_m()) = x.tail(dim_m());
  return out;
}

Eigen::MatrixXd HomogeneousSpace::domain_basis(Submodule s) const {
  return s == Submodule::v ? v() : m;
}

Eigen::MatrixXd HomogeneousSpace::acting_basis(Submodule s) const {
  return s == Submodule::v ? h : k();
}

std::string submodule_name(Submodule s) { return s == Submodule::v ? "v" : "m"; }

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = make_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& id) {
  for (const auto& e : catalog())
    if (e.id == id) return e;
  throw std::invalid_argument("unknown catalog id '" + id + "'");
}

std::string row_id(int row) { return "row" + std::to_string(row); }

StructureResiduals measure_structure(const HomogeneousSpace& s) {
  const LieAlgebra& g = *s.g;
  StructureResiduals r;
  Eigen::MatrixXd all(g.dim(), s.dim_h() + s.dim_l() + s.dim_m());
  all << s.h, s.l, s.m;
  r.orthogonality =
      (all.transpose() * all - Eigen::MatrixXd::Identity(all.cols(), all.cols())).cwiseAbs().maxCoeff();
  if (all.cols() != g.dim()) r.orthogonality = std::max(r.orthogonality, 1.0);
  const Eigen::MatrixXd v = s.v();
  const Eigen::MatrixXd k = s.k();
  r.h_closure = max_bracket_outside(g, s.h, s.h, s.h, true);
  // [h, v] in v: remove the v-part, what is left is the h-part.
  r.reductivity = max_bracket_outside(g, s.h, v, v, false);
  r.k_closure = max_bracket_outside(g, k, k, k, true);
  r.l_commutes_h = max_bracket_outside(g, s.l, s.h, Eigen::MatrixXd(g.dim(), 0), false);
  r.l_closed = max_bracket_outside(g, s.l, s.l, s.l, true);
  r.l_abelian = max_bracket_outside(g, s.l, s.l, Eigen::MatrixXd(g.dim(), 0), true);
  r.symmetric = max_bracket_outside(g, s.m, s.m, k, true);
  if (s.base_point) {
    for (Eigen::Index j = 0; j < s.h.cols(); ++j) {
      r.base_point = std::max(r.base_point, (g.matrix(s.h.col(j)) * *s.base_point).norm());
    }
  }
  return r;
}

namespace {

void require_below(const std::string& what, double value, double tol) {
  if (!(value < tol)) throw StructuralError(what, value);
}

void verify(HomogeneousSpace& s, const Tolerances& tol, bool base_point_fixed) {
  s.residuals = measure_structure(s);
  const auto& r = s.residuals;
  const std::string who = s.catalog_id + " [" + s.description + "]: ";
  require_below(who + "h + l + m is not an orthonormal splitting of g", r.orthogonality, tol.zero);
  require_below(who + "h is not a subalgebra", r.h_closure, tol.zero);
  require_below(who + "[h, v] is not contained in v", r.reductivity, tol.zero);
  require_below(who + "k = h + l is not a subalgebra", r.k_closure, tol.zero);
  if (s.flags.l_commutes_h) require_below(who + "[l, h] != 0", r.l_commutes_h, tol.zero);
  if (s.flags.l_closed) require_below(who + "[l, l] not in l", r.l_closed, tol.zero);
  if (s.flags.l_abelian) require_below(who + "l is not abelian", r.l_abelian, tol.zero);
  if (s.flags.symmetric) require_below(who + "(g, k) is not symmetric", r.symmetric, tol.zero);
  if (s.base_point && base_point_fixed)
    require_below(who + "H does not fix the base point", r.base_point, tol.zero);
}

void check_params(const CatalogEntry& e, const CatalogParams& p) {
  if (!e.supported) {
    throw std::invalid_argument("catalog entry " + e.id + " is unsupported: " + e.note);
  }
  if (e.uses_n && p.n < e.n_min) {
    throw std::invalid_argument(e.id + " needs n >= " + std::to_string(e.n_min));
  }
  if (e.uses_r && p.r < e.r_min) {
    throw std::invalid_argument(e.id + " needs r >= " + std::to_string(e.r_min));
  }
}

}  // namespace

SpacePtr build_space(const std::string& catalog_id, CatalogParams params, const Tolerances& tol) {
  const CatalogEntry& entry = catalog_entry(catalog_id);
  check_params(entry, params);
  if (!entry.uses_n) params.n = 0;
  if (!entry.uses_r) params.r = 0;
  Chain chain = build_chain(catalog_id, params);

  auto s = std::make_shared<HomogeneousSpace>();
  s->catalog_id = catalog_id;
  s->params = params;
  s->description = chain.description;
  s->table_row = entry.table_row;
  s->is_pair = entry.is_pair;
  s->g = chain.g;
  s->h = chain.h;
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(chain.g->dim(), chain.g->dim());
  s->l = orthogonal_complement(chain.h, chain.k, 1e-10);
  s->m = orthogonal_complement(chain.k, identity, 1e-10);
  s->flags = entry.flags;
  s->base_point = chain.base_point;
  verify(*s, tol, catalog_id != "row8");
  return s;
}

SpacePtr as_pair(const HomogeneousSpace& space, const Tolerances& tol) {
  auto s = std::make_shared<HomogeneousSpace>(space);
  s->m = space.v();
  s->l = Eigen::MatrixXd(space.g->dim(), 0);
  s->is_pair = true;
  s->description = space.description + " (as pair G/H)";
  s->flags = SpaceFlags{true, true, true, false};
  verify(*s, tol, space.catalog_id != "row8");
  return s;
}

// ---------------------------------------------------------------------------
// Metrics

std::string metric_label(const MetricSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NormalMetric>) {
          os << "normal";
        } else if constexpr (std::is_same_v<T, LambdaMetric>) {
          os << "lambda:" << m.lambda;
        } else {
          os << "fiber:[";
          for (Eigen::Index i = 0; i < m.a_l.rows(); ++i) {
            if (i) os << ";";
            for (Eigen::Index j = 0; j < m.a_l.cols(); ++j) os << (j ? "," : "") << m.a_l(i, j);
          }
          os << "],lambda_m:" << m.lambda_m;
        }
      },
      spec);
  return os.str();
}

Eigen::MatrixXd ad_on_v(const HomogeneousSpace& space, const Eigen::VectorXd& eta) {
  const Eigen::MatrixXd v = space.v();
  return v.transpose() * space.g->ad(eta) * v;
}

double ad_h_invariance_residual(const HomogeneousSpace& space, const Eigen::MatrixXd& op) {
  double worst = 0.0;
  const double scale = std::max(1.0, op.norm());
  for (Eigen::Index j = 0; j < space.h.cols(); ++j) {
    const Eigen::MatrixXd ad = ad_on_v(space, space.h.col(j));
    worst = std::max(worst, (ad * op - op * ad).norm() / scale);
  }
  return worst;
}

MetricOperator metric_operator(const HomogeneousSpace& space, const MetricSpec& spec,
                               const Tolerances& tol) {
  const int dl = space.dim_l();
  const int dm = space.dim_m();
  const int dv = dl + dm;
  MetricOperator out;
  out.spec = spec;
  out.inertia = Eigen::MatrixXd::Identity(dv, dv);
  out.inverse = Eigen::MatrixXd::Identity(dv, dv);

  if (const auto* lam = std::get_if<LambdaMetric>(&spec)) {
    if (!(lam->lambda > 0.0) || !std::isfinite(lam->lambda)) {
      throw std::invalid_argument("lambda must be a positive real");
    }
    out.inertia.topLeftCorner(dl, dl) *= lam->lambda;
    out.inverse.topLeftCorner(dl, dl) /= lam->lambda;
  } else if (const auto* fib = std::get_if<FiberMetric>(&spec)) {
    if (dl == 0) throw std::invalid_argument("fiber metric needs a nontrivial l");
    if (fib->a_l.rows() != dl || fib->a_l.cols() != dl) {
      throw std::invalid_argument("fiber operator must be " + std::to_string(dl) + "x" +
                                  std::to_string(dl));
    }
    if ((fib->a_l - fib->a_l.transpose()).cwiseAbs().maxCoeff() > tol.zero) {
      throw std::invalid_argument("fiber operator is not symmetric");
    }
    const double lo = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(fib->a_l).eigenvalues().minCoeff();
    if (!(lo > 0.0)) {
      throw std::invalid_argument("fiber operator is not positive definite (min eigenvalue " +
                                  std::to_string(lo) + ")");
    }
    if (!(fib->lambda_m > 0.0)) throw std::invalid_argument("lambda_m must be positive");
    out.inertia.topLeftCorner(dl, dl) = fib->a_l;
    out.inertia.bottomRightCorner(dm, dm) *= fib->lambda_m;
    out.inverse.topLeftCorner(dl, dl) = fib->a_l.inverse();
    out.inverse.bottomRightCorner(dm, dm) /= fib->lambda_m;
  }
  out.min_eigenvalue =
      dv ? Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(out.inertia).eigenvalues().minCoeff() : 1.0;
  out.invariance_residual = ad_h_invariance_residual(space, out.inertia);
  if (!(out.invariance_residual < tol.zero)) {
    throw std::invalid_argument("metric " + metric_label(spec) + " is not Ad_H-invariant on " +
                                space.catalog_id + " (residual " +
                                std::to_string(out.invariance_residual) + ")");
  }
  return out;
}

MetricHamiltonians hamiltonian(const HomogeneousSpace& space, const MetricOperator& metric) {
  const Domain dom{&space, Submodule::v};
  const Eigen::MatrixXd a = metric.inverse;
  const int dl = space.dim_l();
  auto l_only = [dl](const Eigen::VectorXd& x) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
    out.head(dl) = x.head(dl);
    return out;
  };
  return MetricHamiltonians{
      InvariantPolynomial(
          "h_A", 2, dom, [a](const Eigen::VectorXd& x) { return 0.5 * x.dot(a * x); },
          [a](const Eigen::VectorXd& x) -> Eigen::VectorXd { return a * x; }),
      InvariantPolynomial(
          "h_0", 2, dom, [](const Eigen::VectorXd& x) { return 0.5 * x.squaredNorm(); },
          [](const Eigen::VectorXd& x) -> Eigen::VectorXd { return x; }),
      InvariantPolynomial(
          "delta", 2, dom,
          [dl](const Eigen::VectorXd& x) { return 0.5 * x.head(dl).squaredNorm(); }, l_only),
  };
}

PerturbedHamiltonian perturbed_hamiltonian(const HomogeneousSpace& space, double lambda,
                                           const Eigen::MatrixXd& a_l, const Tolerances& tol) {
  const int dl = space.dim_l();
  const int dv = space.dim_v();
  if (dl == 0) throw std::invalid_argument("perturbed Hamiltonian needs a nontrivial l");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be a positive real");
  if (a_l.rows() != dl || a_l.cols() != dl) {
    throw std::invalid_argument("A_l must be " + std::to_string(dl) + "x" + std::to_string(dl));
  }
  if ((a_l - a_l.transpose()).cwiseAbs().maxCoeff() > tol.zero) {
    throw std::invalid_argument("A_l is not symmetric");
  }
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(dv, dv);
  q.topLeftCorner(dl, dl) = Eigen::MatrixXd::Identity(dl, dl) / lambda + a_l;
  const double lo = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(q).eigenvalues().minCoeff();
  if (!(lo > 0.0)) {
    throw std::invalid_argument("h_{lambda,A} is not positive definite (smallest eigenvalue " +
                                std::to_string(lo) + ")");
  }
  FiberMetric fib{q.topLeftCorner(dl, dl).inverse(), 1.0};
  fib.a_l = 0.5 * (fib.a_l + fib.a_l.transpose());
  MetricOperator metric = metric_operator(space, fib, tol);
  const Domain dom{&space, Submodule::v};
  InvariantPolynomial h(
      "h_lambda_A", 2, dom, [q](const Eigen::VectorXd& x) { return 0.5 * x.dot(q * x); },
      [q](const Eigen::VectorXd& x) -> Eigen::VectorXd { return q * x; });
  return PerturbedHamiltonian{std::move(h), q, lo, std::move(metric)};
}

}  // namespace gospace
