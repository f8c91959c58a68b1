#include "doctest.h"
#include "mloop/errors.hpp"
#include "mloop/torus.hpp"

using namespace mloop;

namespace {

std::shared_ptr<const LieAlgebra> alg(char t, int r) { return std::make_shared<const LieAlgebra>(chevalley(t, r)); }

Multiloop build(std::shared_ptr<const LieAlgebra> g, const std::vector<Mat>& ms, std::vector<long> m) {
  return build_multiloop(g, aut_tuple(*g, ms, std::move(m)));
}

Multiloop untwisted(std::shared_ptr<const LieAlgebra> g, int n = 1) {
  return build(g, std::vector<Mat>(n, Mat::identity(g->dim())), std::vector<long>(n, 1));
}

std::vector<Multiloop> nonzero_configs() {
  auto g1 = alg('A', 1), g2 = alg('A', 2);
  std::vector<Multiloop> out;
  out.push_back(untwisted(g1));
  out.push_back(untwisted(g1, 2));
  out.push_back(build(g1, {chevalley_involution(*g1)}, {2}));
  out.push_back(build(g1, {torus_automorphism(*g1, {Rational(1, 3)})}, {3}));
  out.push_back(build(g2, {diagram_automorphism(*g2, {1, 0})}, {2}));
  out.push_back(build(g2, {diagram_automorphism(*g2, {1, 0}), torus_automorphism(*g2, {Rational(1, 2), Rational(1, 2)})},
                      {2, 2}));
  out.push_back(untwisted(alg('B', 2)));
  out.push_back(untwisted(alg('G', 2)));
  out.push_back(build(g2, {diagram_automorphism(*g2, {1, 0}), diagram_automorphism(*g2, {1, 0})}, {2, 2}));
  return out;
}

}  // namespace

TEST_SUITE("torus") {

TEST_CASE("check_torus examples") {
  auto g = alg('A', 1);
  TorusReport u = check_torus(untwisted(g));
  CHECK(u.a0.pass);
  CHECK(u.a1.pass);
  CHECK(u.a2.pass);
  CHECK(u.a3.pass);
  CHECK(u.is_torus);

  TorusReport w = check_torus(build(g, {chevalley_involution(*g)}, {2}));
  CHECK(w.a0.pass);
  CHECK_FALSE(w.a1.pass);
  CHECK_FALSE(w.is_torus);

  TorusReport w4 = check_torus(build(g, {chevalley_involution(*g)}, {4}));
  CHECK_FALSE(w4.a0.pass);
  CHECK(w4.a0.witness.find("= 2") != std::string::npos);
  CHECK_FALSE(w4.is_torus);

  // (omega, omega): group of order 2, product of orders 4
  Mat om = chevalley_involution(*g);
  TorusReport ww = check_torus(build(g, {om, om}, {2, 2}));
  CHECK_FALSE(ww.a3.pass);

  // order-3 torus automorphism: g^sigma = span{h}, not simple
  CHECK_FALSE(check_torus(build(g, {torus_automorphism(*g, {Rational(1, 3)})}, {3})).a1.pass);
}

TEST_CASE("sl3 with the diagram automorphism is a torus") {
  auto g = alg('A', 2);
  Multiloop L = build(g, {diagram_automorphism(*g, {1, 0})}, {2});
  TorusReport r = check_torus(L);
  CHECK(r.delta_type == "A1");
  REQUIRE(r.components.size() == 1);
  const A2Component& c = r.components[0];
  CHECK(c.dim_w == 5);
  CHECK(c.dim_u == 0);
  CHECK(c.dim_v == 5);
  CHECK(c.irreducible);
  // weights 0, +-beta, +-2beta; the doubled ones are only allowed through Delta_en
  CHECK(c.weights.size() == 5);
  CHECK(c.weights_ok);
  CHECK(r.is_torus);
}

TEST_CASE("module closure") {
  auto g = alg('A', 2);
  std::vector<Vec> all;
  for (int i = 0; i < g->dim(); ++i) all.push_back(g->basis(i));
  CHECK(module_closure(*g, all, g->basis(0)).dim() == 8);
  std::vector<Vec> hs;
  for (int i : g->chevalley->h_index) hs.push_back(g->basis(i));
  CHECK(module_closure(*g, hs, g->basis(0)).dim() == 1);
}

TEST_CASE("find_P_for_A3") {
  auto g = alg('A', 1);
  Mat om = chevalley_involution(*g);
  AutTuple pair = aut_tuple(*g, {om, om}, {2, 2});
  IntMat p = find_P_for_A3(pair);
  CHECK(p == IntMat{{1, 0}, {1, 1}});
  AutTuple sp = gl_action(pair, p);
  CHECK(is_identity(sp.autos[0].m));
  CHECK(sp.autos[1].m == om);
  CHECK(group_order(pair) == 2);

  CHECK(find_P_for_A3(aut_tuple(*g, {om}, {2})) == IntMat{{1}});
  AutTuple good = aut_tuple(*g, {om, torus_automorphism(*g, {Rational(1, 2)})}, {2, 2});
  CHECK(find_P_for_A3(good) == int_identity(2));

  // n = 3 goes through transvection words
  AutTuple triple = aut_tuple(*g, {om, om, om}, {2, 2, 2});
  IntMat p3 = find_P_for_A3(triple, 2);
  long prod = 1;
  for (long o : gl_action(triple, p3).orders()) prod *= o;
  CHECK(prod == 2);
  CHECK_THROWS_AS(find_P_for_A3(triple, 0), Error);
}

TEST_CASE("toralize examples") {
  auto g = alg('A', 1);
  ToralizationCertificate u = toralize(untwisted(g));
  CHECK(u.lambda == std::vector<IntVec>{{0}});
  CHECK(u.P == IntMat{{1}});
  CHECK(u.result.sigma.autos[0].m == Mat::identity(3));

  Multiloop w = build(g, {chevalley_involution(*g)}, {2});
  ToralizationCertificate c = toralize(w);
  CHECK(c.lambda == std::vector<IntVec>{{1}});
  CHECK(c.s == std::vector<std::vector<Rational>>{{Rational(1)}});
  // tau sigma is the identity: tau = -1 on the root spaces of e - f, which is where sigma is -1
  CHECK(is_identity(c.twisted.autos[0].m));
  CHECK(c.result.m() == std::vector<long>{1});
  CHECK(c.result.rd->h == w.rd->h);
  CHECK(check_torus(c.result).is_torus);

  Multiloop z = build(g, {chevalley_involution(*g), torus_automorphism(*g, {Rational(1, 2)})}, {2, 2});
  try {
    toralize(z);
    FAIL("expected ZeroFixedAlgebra");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroFixedAlgebra);
  }
}

TEST_CASE("toralization succeeds on every configuration with nonzero g^sigma") {
  for (const auto& L : nonzero_configs()) {
    ToralizationCertificate c = toralize(L);
    TorusReport r = check_torus(c.result);
    CAPTURE(r.a0.witness);
    CAPTURE(r.a1.witness);
    CAPTURE(r.a2.witness);
    CAPTURE(r.a3.witness);
    CHECK(r.is_torus);
    for (const auto& comp : r.components) CHECK(comp.dim_u + comp.dim_v == comp.dim_w);
    // g^{tau sigma} carries every simple root
    Grade zero(c.result.n(), 0);
    for (int a : c.base) CHECK(c.result.rd->refined.count({a, zero}));
    CHECK(c.result.rd->h == L.rd->h);
  }
}

}
