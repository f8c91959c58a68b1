#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "mloop/errors.hpp"
#include "mloop/lattice.hpp"

using namespace mloop;

TEST_SUITE("linalg") {

TEST_CASE("nullspace and rank") {
  Mat m(2, 3);
  m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
  m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6;
  CHECK(rank(m) == 1);
  auto ns = nullspace(m);
  CHECK(ns.size() == 2);
  for (const auto& v : ns) CHECK(is_zero(m * v));
}

TEST_CASE("solve and inverse with cyclotomic entries") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 10; ++it) {
    int n = 4;
    Mat a(n, n);
    for (auto& x : a.a) x = testutil::rand_cyc(rng, it % 2 ? 4 : 3);
    if (rank(a) < n) continue;
    Mat ai = inverse(a);
    CHECK(is_identity(a * ai));
    CHECK(is_identity(ai * a));
    Vec b = testutil::rand_vec(rng, n, 12);
    auto x = solve(a, b);
    REQUIRE(x);
    CHECK(a * *x == b);
  }
  Mat s(2, 2);
  s(0, 0) = 1; s(0, 1) = 1; s(1, 0) = 1; s(1, 1) = 1;
  CHECK_THROWS_AS(inverse(s), Error);
  Vec b{CycNum(1), CycNum(0)};
  CHECK_FALSE(solve(s, b).has_value());
}

TEST_CASE("subspaces") {
  int n = 4;
  Subspace u = span(n, {unit_vec(n, 0), unit_vec(n, 1)});
  Subspace w = span(n, {unit_vec(n, 1) + unit_vec(n, 2), unit_vec(n, 0) - unit_vec(n, 2)});
  Subspace i = intersect(u, w);
  CHECK(i.dim() == 1);
  CHECK(i.contains(unit_vec(n, 0) + unit_vec(n, 1)));
  CHECK(sum(u, w).dim() == 3);
  CHECK(same(u, span(n, {unit_vec(n, 0) + unit_vec(n, 1), unit_vec(n, 1)})));
}

TEST_CASE("integer lattices") {
  CHECK(int_det({{2, 1}, {1, 1}}) == 1);
  CHECK(is_unimodular({{0, 1}, {1, 0}}));
  CHECK_FALSE(is_unimodular({{2, 0}, {0, 1}}));
  IntMat p{{2, 1}, {1, 1}};
  CHECK(int_mul(p, int_inverse(p)) == int_identity(2));
  IntMat h = hermite_basis({{2, 0}, {0, 3}, {1, 1}}, 2);
  CHECK(lattice_contains(h, {1, 0}));
  CHECK(lattice_contains(h, {0, 1}));
  CHECK(smith_invariants({{2, 0}, {0, 3}}, 2) == std::vector<long long>{1, 6});
  CHECK(smith_invariants({{2, 4}, {4, 8}}, 2) == std::vector<long long>{2});
  IntMat h2 = hermite_basis({{2}, {4}}, 1);
  CHECK(h2 == IntMat{{2}});
  CHECK_FALSE(lattice_contains(h2, {1}));
}

}
