#include "doctest.h"
#include "helpers.hpp"
#include "mloop/errors.hpp"
#include "mloop/multiloop.hpp"

using namespace mloop;

namespace {

std::shared_ptr<const LieAlgebra> sl(int r) { return std::make_shared<const LieAlgebra>(chevalley('A', r)); }

Multiloop untwisted(std::shared_ptr<const LieAlgebra> g, int n, long m = 1) {
  std::vector<Mat> ms(n, Mat::identity(g->dim()));
  return make_multiloop(g, aut_tuple(*g, ms, std::vector<long>(n, m)));
}

Multiloop involution_sl2(long m = 2) {
  auto g = sl(1);
  return make_multiloop(g, aut_tuple(*g, {chevalley_involution(*g)}, {m}));
}

std::vector<Multiloop> configs() {
  auto g1 = sl(1), g2 = sl(2);
  std::vector<Multiloop> out;
  out.push_back(untwisted(g1, 1));
  out.push_back(untwisted(g1, 2));
  out.push_back(involution_sl2());
  out.push_back(make_multiloop(g1, aut_tuple(*g1, {torus_automorphism(*g1, {Rational(1, 3)})}, {3})));
  out.push_back(make_multiloop(g2, aut_tuple(*g2, {diagram_automorphism(*g2, {1, 0})}, {2})));
  out.push_back(make_multiloop(
      g2, aut_tuple(*g2, {diagram_automorphism(*g2, {1, 0}), torus_automorphism(*g2, {Rational(1, 2), Rational(1, 2)})},
                     {2, 2})));
  out.push_back(make_multiloop(g1, aut_tuple(*g1, {torus_automorphism(*g1, {Rational(1, 2)}),
                                                    torus_automorphism(*g1, {Rational(1, 3)})},
                                              {2, 3})));
  return out;
}

}  // namespace

TEST_SUITE("multiloop") {

TEST_CASE("eigengrade examples") {
  Multiloop u = untwisted(sl(1), 1);
  CHECK(u.comps.size() == 1);
  CHECK(u.comp_dim({0}) == 3);
  Multiloop w = involution_sl2();
  CHECK(w.comp_dim({0}) == 1);
  CHECK(w.comp_dim({1}) == 2);
  CHECK(w.component({0}).contains(w.g->basis(0) - w.g->basis(2)));
  auto g = sl(1);
  Multiloop t = make_multiloop(g, aut_tuple(*g, {torus_automorphism(*g, {Rational(1, 3)})}, {3}));
  for (long l = 0; l < 3; ++l) CHECK(t.comp_dim({l}) == 1);
  CHECK(t.component({1}).contains(g->basis(0)));
}

TEST_CASE("eigengrade invariants on all configurations") {
  for (const auto& L : configs()) {
    const LieAlgebra& g = *L.g;
    int total = 0;
    for (const auto& [gr, sub] : L.comps) {
      total += sub.dim();
      for (const auto& x : sub.basis)
        for (int i = 0; i < L.n(); ++i)
          CHECK(L.sigma.autos[i].m * x == CycNum::zeta(static_cast<int>(L.m()[i]), gr[i]) * x);
    }
    CHECK(total == g.dim());
    // [g^a, g^b] in g^{a+b}
    for (const auto& [ga, sa] : L.comps)
      for (const auto& [gb, sb] : L.comps) {
        IntVec s(ga.size());
        for (size_t i = 0; i < s.size(); ++i) s[i] = ga[i] + gb[i];
        Subspace target = L.component(s);
        for (const auto& x : sa.basis)
          for (const auto& y : sb.basis) CHECK(target.contains(g.bracket(x, y)));
      }
    // support periodicity
    for (const auto& lam : window_box(L.n(), 3))
      for (int i = 0; i < L.n(); ++i) {
        IntVec sh = lam;
        sh[i] += L.m()[i];
        CHECK((L.comp_dim(lam) > 0) == (L.comp_dim(sh) > 0));
      }
  }
}

TEST_CASE("loop brackets") {
  Multiloop u = untwisted(sl(1), 1);
  const LieAlgebra& g = *u.g;
  LoopElement a, b;
  a.add({1}, g.basis(0));
  b.add({-1}, g.basis(2));
  LoopElement r = loop_bracket(u, a, b);
  LoopElement want;
  want.add({0}, g.basis(1));
  CHECK(r == want);
  CHECK(loop_bracket(u, a, a).is_zero());

  // twisted: matrix oracle [[0,1],[-1,0]] and [[0,1],[1,0]] commute to diag(2,-2) = 2h
  Multiloop w = involution_sl2();
  LoopElement x, y;
  x.add({0}, g.basis(0) - g.basis(2));
  y.add({1}, g.basis(0) + g.basis(2));
  LoopElement z = loop_bracket(w, x, y);
  LoopElement want2;
  want2.add({1}, CycNum(2) * g.basis(1));
  CHECK(z == want2);
  check_loop_element(w, z);
  LoopElement bad;
  bad.add({0}, g.basis(0));
  CHECK_THROWS_AS(loop_bracket(w, bad, x), Error);
}

TEST_CASE("supports and support groups") {
  CHECK(support_group(untwisted(sl(1), 1)) == IntMat{{1}});
  CHECK(support_group(involution_sl2()) == IntMat{{1}});
  Multiloop even = untwisted(sl(1), 1, 2);
  CHECK(support_group(even) == IntMat{{2}});
  auto s = zn_support(even, 3);
  CHECK(s == std::vector<IntVec>{{-2}, {0}, {2}});
  CHECK(zn_support(involution_sl2(), 1).size() == 3);
  CHECK(support_group(untwisted(sl(1), 2)) == int_identity(2));
}

TEST_CASE("central grading group") {
  CHECK(central_grading_group(involution_sl2()) == IntMat{{2}});
  CHECK(central_grading_group(untwisted(sl(1), 1)) == IntMat{{1}});
  auto cs = configs();
  CHECK(central_grading_group(cs.back()) == IntMat{{2, 0}, {0, 3}});
  for (const auto& L : cs) {
    CentralGradingReport rep = verify_central_grading(L, 2);
    CHECK(rep.agrees);
    CHECK(rep.centroid_dims.at(Grade(L.n(), 0)) == 1);
  }
  // m larger than the true order: the solver sees the full lattice m Z, still matching
  CentralGradingReport rep = verify_central_grading(involution_sl2(4), 4);
  CHECK(rep.agrees);
}

TEST_CASE("admissibility") {
  CHECK(admissible({{1}}, {2}, {2}));
  CHECK_FALSE(admissible({{1}}, {3}, {2}));
  CHECK(admissible({{0, 1}, {1, 0}}, {3, 2}, {2, 3}));
  CHECK(*admissible_matrix({{0, 1}, {1, 0}}, {3, 2}, {2, 3}) == IntMat{{0, 1}, {1, 0}});
  CHECK_FALSE(admissible({{0, 1}, {1, 0}}, {2, 3}, {2, 3}));
  CHECK_THROWS_AS(admissible({{2}}, {1}, {1}), Error);
}

TEST_CASE("realization isomorphisms") {
  Multiloop w = involution_sl2();
  const LieAlgebra& g = *w.g;
  RealizationMap id = realization_iso(w, w, Mat::identity(3), {{1}});
  CHECK(id.degree({5}) == IntVec{5});

  Mat th = inner_reflection(g, g.basis(0), g.basis(2));
  Mat conj = th * w.sigma.autos[0].m * inverse(th);
  Multiloop w2 = make_multiloop(w.g, aut_tuple(g, {conj}, {2}));
  CHECK_NOTHROW(realization_iso(w, w2, th, {{1}}, 2));
  Mat bad = torus_automorphism(g, {Rational(1, 3)});
  CHECK_THROWS_AS(realization_iso(w, w2, bad, {{1}}), Error);

  auto cs = configs();
  const Multiloop& pair = cs.back();  // m = (2, 3)
  Multiloop swapped = make_multiloop(pair.g, gl_action(pair.sigma, {{0, 1}, {1, 0}}));
  RealizationMap r = realization_iso(pair, swapped, Mat::identity(3), {{0, 1}, {1, 0}}, 2);
  CHECK(r.degree({1, 2}) == IntVec{2, 1});
}

}
