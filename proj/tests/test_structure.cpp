#include "gospace/structure.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace gospace;

TEST_CASE("Sp(n+1)/Sp(n): ddim 4, dind 2, complexity 1") {
  // generic (g_x, h_x) from an independent SVD oracle: (2, 0) and (5, 3).
  const int gx[] = {2, 5}, hx[] = {0, 3};
  for (int n : {1, 2}) {
    CAPTURE(n);
    const ComplexityReport c = generic_dims(*testing::space("row9", n), 8, 7);
    CHECK(c.ddim == 4);
    CHECK(c.dind == 2);
    CHECK(c.complexity == 1);
    CHECK(c.generic.g_x == gx[n - 1]);
    CHECK(c.generic.s_x == hx[n - 1]);
    CHECK(c.consistent);
  }
}

TEST_CASE("SU(n+1)/SU(n): ddim = dind = 2") {
  for (int n : {2, 3}) {
    const ComplexityReport c = generic_dims(*testing::space("row5", n), 8, 7);
    CHECK(c.ddim == 2);
    CHECK(c.dind == 2);
    CHECK(c.complexity == 0);
    CHECK(c.consistent);
  }
}

TEST_CASE("Sp(n+1)/U(1)Sp(n): complexity 0") {
  for (int n : {1, 2}) {
    const ComplexityReport c = generic_dims(*testing::space("row8", n), 8, 7);
    CHECK(c.ddim == 2);
    CHECK(c.dind == 2);
    CHECK(c.complexity == 0);
  }
}

TEST_CASE("SO(2n+1)/U(n) on m and SO(2n+1)/SU(n) on v") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    const SpacePtr s = testing::space("ex4", n);
    const ComplexityReport m = complexity_on_submodule(*s, Submodule::m, 8, 3);
    CHECK(m.ddim == n);
    CHECK(m.dind == n);
    CHECK(m.complexity == 0);
    CHECK(m.consistent);
    const ComplexityReport v = generic_dims(*s, 8, 3);
    CHECK(v.complexity == 1);
    CHECK(v.consistent);
    // Equality case of dim g_x <= dim g_{x_m}.
    CHECK(v.generic_g_xm == v.generic.g_x);
  }
}

TEST_CASE("cross identities on every catalog entry") {
  for (const CatalogEntry& e : catalog()) {
    if (!e.supported) continue;
    CAPTURE(e.id);
    const SpacePtr s = build_space(e.id, e.minimal);
    const ComplexityReport c = generic_dims(*s, 8, 13);
    CHECK(c.consistent);
    CHECK(c.generic.j_x == c.ddim);
    CHECK(c.generic.ker_lambda == c.dind);
    CHECK((c.ddim - c.dind) % 2 == 0);
    CHECK(c.dind <= c.rank_g);
    if (c.generic_g_xm >= 0) CHECK(c.generic.g_x <= c.generic_g_xm);
    CHECK(c.rank_gap > 1e6);
  }
}

TEST_CASE("isotropy dimensions at a point") {
  const SpacePtr s = testing::space("row9", 1);
  std::mt19937_64 rng(1);
  const IsotropyDims d = isotropy_dimensions(*s, testing::randn(rng, 7));
  CHECK(d.g_x == 2);
  CHECK(d.h_x == 0);

  // x in m: Sp(2)/Sp(1)Sp(1) is rank one, so the isotropy jumps.
  Eigen::VectorXd xm = Eigen::VectorXd::Zero(7);
  xm.tail(4) = testing::randn(rng, 4);
  CHECK(isotropy_dimensions(*s, xm).g_x > 2);

  CHECK_THROWS_AS(isotropy_dimensions(*s, Eigen::VectorXd::Zero(7)), std::invalid_argument);
  CHECK_THROWS_AS(point_dimensions(*s, Submodule::m, Eigen::VectorXd::Ones(7)), std::invalid_argument);
}

TEST_CASE("trivial submodule is rejected") {
  HomogeneousSpace s = *testing::space("row9", 1);
  s.m = Eigen::MatrixXd(s.dim_g(), 0);
  CHECK_THROWS_AS(complexity_on_submodule(s, Submodule::m, 8, 1), std::invalid_argument);
  CHECK_THROWS_AS(generic_dims(*testing::space("row9", 1), 2, 1), std::invalid_argument);
}

TEST_CASE("generic dims do not depend on the seed") {
  const SpacePtr s = testing::space("row7", 2);
  const ComplexityReport a = generic_dims(*s, 8, 1);
  const ComplexityReport b = generic_dims(*s, 8, 12345);
  CHECK(a.ddim == b.ddim);
  CHECK(a.dind == b.dind);
}
