#include <functional>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "mloop/autos.hpp"
#include "mloop/errors.hpp"

using namespace mloop;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ParseError;
}

}  // namespace

TEST_SUITE("autos") {

TEST_CASE("orders of basic automorphisms of sl2") {
  LieAlgebra g = chevalley('A', 1);
  CHECK(check_automorphism(g, Mat::identity(3)).order == 1);
  Mat w = chevalley_involution(g);
  // e -> -f, h -> -h, f -> -e
  CHECK(w.col(0) == -g.basis(2));
  CHECK(w.col(1) == -g.basis(1));
  CHECK(w.col(2) == -g.basis(0));
  CHECK(is_identity(w * w));
  CHECK(check_automorphism(g, w).order == 2);
  Mat t(3, 3);
  t(0, 0) = CycNum::zeta(3, 1);
  t(1, 1) = 1;
  t(2, 2) = CycNum::zeta(3, 2);
  CHECK(torus_automorphism(g, {Rational(1, 3)}) == t);
  CHECK(check_automorphism(g, t).order == 3);
}

TEST_CASE("validation failures") {
  LieAlgebra g = chevalley('A', 1);
  Mat d = Mat::identity(3);
  d(0, 0) = 2;
  CHECK(kind_of([&] { check_automorphism(g, d); }) == ErrorKind::NotBracketPreserving);
  Mat z = Mat::identity(3);
  z(1, 1) = 0;
  CHECK(kind_of([&] { check_automorphism(g, z); }) == ErrorKind::NotInvertible);
  // order 7 torus with a cap of 5
  CHECK(kind_of([&] { check_automorphism(g, torus_automorphism(g, {Rational(1, 7)}), 5); }) ==
        ErrorKind::OrderBoundExceeded);
  Mat w = chevalley_involution(g), t = torus_automorphism(g, {Rational(1, 3)});
  CHECK(kind_of([&] { aut_tuple(g, {w, t}, {2, 3}); }) == ErrorKind::NotCommuting);
  CHECK(kind_of([&] { aut_tuple(g, {t}, {2}); }) == ErrorKind::ValidationError);
  CHECK(aut_tuple(g, {t}, {6}).m[0] == 6);
}

TEST_CASE("named automorphisms pass validation on every type") {
  for (auto [t, r] : std::vector<std::pair<char, int>>{{'A', 2}, {'A', 3}, {'B', 2}, {'C', 2}, {'D', 4}, {'G', 2}}) {
    CAPTURE(t);
    LieAlgebra g = chevalley(t, r);
    CHECK(check_automorphism(g, chevalley_involution(g)).order == 2);
    std::vector<Rational> wts(r, Rational(1, 2));
    CHECK(check_automorphism(g, torus_automorphism(g, wts)).order <= 2);
    std::vector<int> id(r);
    for (int i = 0; i < r; ++i) id[i] = i;
    CHECK(is_identity(diagram_automorphism(g, id)));
  }
  LieAlgebra a2 = chevalley('A', 2);
  CHECK(check_automorphism(a2, diagram_automorphism(a2, {1, 0})).order == 2);
  LieAlgebra a3 = chevalley('A', 3);
  CHECK(check_automorphism(a3, diagram_automorphism(a3, {2, 1, 0})).order == 2);
  LieAlgebra d4 = chevalley('D', 4);
  CHECK(check_automorphism(d4, diagram_automorphism(d4, {2, 1, 3, 0})).order == 3);
  CHECK(check_automorphism(d4, diagram_automorphism(d4, {0, 1, 3, 2})).order == 2);
  LieAlgebra b2 = chevalley('B', 2);
  CHECK_THROWS_AS(diagram_automorphism(b2, {1, 0}), Error);
}

TEST_CASE("automorphisms preserve the Killing form") {
  std::mt19937_64 rng(5);
  LieAlgebra g = chevalley('A', 2);
  std::vector<Mat> ms{chevalley_involution(g), diagram_automorphism(g, {1, 0}),
                      torus_automorphism(g, {Rational(1, 3), Rational(1, 4)}),
                      inner_reflection(g, g.basis(0), g.basis(g.chevalley->f_index[0]))};
  for (const auto& m : ms) {
    check_automorphism(g, m);
    for (int it = 0; it < 10; ++it) {
      Vec x = testutil::rand_vec(rng, 8), y = testutil::rand_vec(rng, 8, 3);
      CHECK(g.killing(m * x, m * y) == g.killing(x, y));
    }
  }
}

TEST_CASE("GL_n(Z) action") {
  LieAlgebra g = chevalley('A', 1);
  Mat w = chevalley_involution(g);
  AutTuple s = aut_tuple(g, {w, Mat::identity(3)}, {2, 1});
  AutTuple sw = gl_action(s, {{0, 1}, {1, 0}});
  CHECK(is_identity(sw.autos[0].m));
  CHECK(sw.autos[1].m == w);
  CHECK(sw.m == std::vector<long>{1, 2});
  CHECK_THROWS_AS(gl_action(s, {{2, 0}, {0, 1}}), Error);
  AutTuple same = gl_action(s, int_identity(2));
  CHECK(same.autos[0].m == w);

  // right action on a commuting pair of sl3: (sigma^P)^Q = sigma^{PQ}
  LieAlgebra a2 = chevalley('A', 2);
  AutTuple t = aut_tuple(a2, {diagram_automorphism(a2, {1, 0}),
                               torus_automorphism(a2, {Rational(1, 3), Rational(1, 3)})}, {2, 3});
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> ent(-2, 2);
  auto rand_gl = [&] {
    while (true) {
      IntMat p{{ent(rng), ent(rng)}, {ent(rng), ent(rng)}};
      if (is_unimodular(p)) return p;
    }
  };
  for (int it = 0; it < 15; ++it) {
    IntMat p = rand_gl(), q = rand_gl();
    AutTuple a = gl_action(gl_action(t, p), q), b = gl_action(t, int_mul(p, q));
    for (int i = 0; i < 2; ++i) CHECK(a.autos[i].m == b.autos[i].m);
    AutTuple back = gl_action(gl_action(t, p), int_inverse(p));
    for (int i = 0; i < 2; ++i) CHECK(back.autos[i].m == t.autos[i].m);
  }
}

TEST_CASE("group orders") {
  LieAlgebra g = chevalley('A', 1);
  Mat w = chevalley_involution(g);
  CHECK(group_order(aut_tuple(g, {Mat::identity(3)}, {1})) == 1);
  CHECK(group_order(aut_tuple(g, {w, w}, {2, 2})) == 2);
  CHECK(group_order(aut_tuple(g, {w, Mat::identity(3)}, {2, 1})) == 2);
  LieAlgebra a2 = chevalley('A', 2);
  AutTuple t = aut_tuple(a2, {diagram_automorphism(a2, {1, 0}),
                               torus_automorphism(a2, {Rational(1, 3), Rational(1, 3)})}, {2, 3});
  CHECK(group_order(t) == 6);
  CHECK_THROWS_AS(group_order(t, 4), Error);
}

TEST_CASE("inner reflections") {
  LieAlgebra g = chevalley('A', 1);
  Mat th = inner_reflection(g, g.basis(0), g.basis(2));
  check_automorphism(g, th);
  CHECK(th * g.basis(1) == -g.basis(1));
  CHECK(th * (th * g.basis(1)) == g.basis(1));
  // ad h is not nilpotent
  CHECK_THROWS_AS(exp_ad(g, g.basis(1)), Error);

  // on sl3 the reflection moves root lines according to s_alpha
  LieAlgebra a2 = chevalley('A', 2);
  const auto& ci = *a2.chevalley;
  for (int a = 0; a < 3; ++a) {
    Mat t = inner_reflection(a2, a2.basis(ci.e_index[a]), a2.basis(ci.f_index[a]));
    check_automorphism(a2, t);
    const auto& va = ci.pos[a];
    long aa = ci.pair(va, va);
    for (int sign : {1, -1})
      for (size_t b = 0; b < ci.pos.size(); ++b) {
        std::vector<long> vb = ci.pos[b];
        for (auto& x : vb) x *= sign;
        long c = 2 * ci.pair(vb, va) / aa;
        std::vector<long> img{vb[0] - c * va[0], vb[1] - c * va[1]};
        bool neg = img[0] < 0 || img[1] < 0;
        std::vector<long> absimg{neg ? -img[0] : img[0], neg ? -img[1] : img[1]};
        int target = neg ? ci.f_index[ci.find_pos(absimg)] : ci.e_index[ci.find_pos(absimg)];
        int src = sign > 0 ? ci.e_index[b] : ci.f_index[b];
        Vec col = t.col(src);
        for (int k = 0; k < a2.dim(); ++k) CHECK(col[k].is_zero() == (k != target));
      }
  }
}

}
