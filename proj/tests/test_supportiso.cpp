#include "doctest.h"
#include "mloop/errors.hpp"
#include "mloop/supportiso.hpp"

using namespace mloop;

namespace {

std::shared_ptr<const LieAlgebra> alg(char t, int r) { return std::make_shared<const LieAlgebra>(chevalley(t, r)); }

Multiloop build(std::shared_ptr<const LieAlgebra> g, const std::vector<Mat>& ms, std::vector<long> m) {
  return build_multiloop(g, aut_tuple(*g, ms, std::move(m)));
}

Multiloop untwisted(std::shared_ptr<const LieAlgebra> g, int n = 1) {
  return build(g, std::vector<Mat>(n, Mat::identity(g->dim())), std::vector<long>(n, 1));
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ParseError;  // sentinel: nothing thrown
}

// L' = L_{ord}(g, phi (tau sigma)^P phi^{-1}) for a planted certificate
Multiloop plant(const Multiloop& L, const IsoCertificate& c) {
  AutTuple tau = certificate_tau(L, c.s);
  std::vector<Mat> ts;
  std::vector<long> m;
  for (int i = 0; i < L.n(); ++i) {
    ts.push_back(tau.autos[i].m * L.sigma.autos[i].m);
    m.push_back(matrix_order(ts.back()));
  }
  AutTuple tsp = gl_action(aut_tuple(*L.g, ts, m), c.P);
  Mat inv = inverse(c.phi);
  std::vector<Mat> conj;
  std::vector<long> ord;
  for (const auto& a : tsp.autos) {
    conj.push_back(c.phi * a.m * inv);
    ord.push_back(matrix_order(conj.back()));
  }
  return build(L.g, conj, ord);
}

}  // namespace

TEST_SUITE("supportiso") {

TEST_CASE("regraded view basics") {
  auto g = alg('A', 1);
  Multiloop L = build(g, {Mat::identity(3)}, {2});
  RegradedView v(L);
  CHECK(same_on_window(v, L, 2).ok);
  // the support of L_2(sl2, id) is 2Z; rho: 2 -> 1 recovers L_1(sl2, id)
  CHECK(v.support_lattice() == IntMat{{2}});
  Multiloop L1 = build(g, {Mat::identity(3)}, {1});
  CHECK(RegradedView(L1).support_lattice() == IntMat{{1}});
  CHECK(same_on_window(v.then(rho_regrade({{2}}, {{1}})), L1, 3).ok);
  CHECK(kind_of([&] { v.then(rho_regrade({{1}}, {{1}})); }) == ErrorKind::DomainMismatch);

  Multiloop w = build(g, {chevalley_involution(*g)}, {2});
  RegradedView vw(w);
  CHECK(vw.support_lattice() == IntMat{{1}});
  CHECK(kind_of([&] { vw.then(rho_regrade({{1}}, {{0}})); }) == ErrorKind::NotMonomorphism);
  RegradedView doubled = vw.then(rho_regrade({{1}}, {{2}}));
  CHECK(doubled.support_lattice() == IntMat{{2}});
  CHECK(doubled.component(RegradedView::kAll, {1}).dim() == 0);
  CHECK(same(doubled.component(RegradedView::kAll, {2}), w.component({1})));
  RegradedView back = doubled.then(rho_regrade({{2}}, {{1}}));
  CHECK(same_on_window(back, w, 3).ok);
}

TEST_CASE("s-shifts") {
  auto g = alg('A', 2);
  Multiloop L = build(g, {diagram_automorphism(*g, {1, 0})}, {2});
  REQUIRE(L.rd);
  size_t l = L.rd->base.simple.size();
  RegradedView zero = apply_regrade(L, shift_regrade(std::vector<IntVec>(l, IntVec{0})));
  CHECK(same_on_window(zero, L, 2).ok);

  std::vector<IntVec> s(l, IntVec{1}), ms(l, IntVec{-1});
  RegradedView there = RegradedView(L).then(shift_regrade(s));
  RegradedView round = there.then(shift_regrade(ms));
  CHECK(same_on_window(round, L, 3).ok);
  // the whole degree-lambda part is a sum of root parts
  for (const auto& lam : window_box(1, 2)) {
    int total = 0;
    for (int a = -1; a < L.rd->size(); ++a) total += there.component(a, lam).dim();
    CHECK(total == there.component(RegradedView::kAll, lam).dim());
  }
  CHECK(shift_value({{1, 2}, {3, 4}}, {1, -1}) == IntVec{-2, -2});

  Multiloop z = build(alg('A', 1), {chevalley_involution(*alg('A', 1)), torus_automorphism(*alg('A', 1), {Rational(1, 2)})},
                      {2, 2});
  CHECK_FALSE(z.rd);
  CHECK(kind_of([&] { RegradedView(z).then(shift_regrade({{1, 0}})); }) == ErrorKind::DomainMismatch);
}

TEST_CASE("Z^n-isograded certificates") {
  auto g = alg('A', 1);
  Mat om = chevalley_involution(*g);
  Multiloop w = build(g, {om}, {2});
  CHECK(verify_zn_certificate(w, w, {{1}}, Mat::identity(3)).ok);

  // conjugating by theta moves sigma to theta sigma theta^{-1}
  Mat th = inner_reflection(*g, g->basis(0), g->basis(2));
  Multiloop conj = build(g, {th * om * inverse(th)}, {2});
  CHECK(verify_zn_certificate(w, conj, {{1}}, th).ok);

  Multiloop pair = build(g, {om, om}, {2, 2});
  Multiloop shear = build(g, {Mat::identity(3), om}, {1, 2});
  CHECK(verify_zn_certificate(pair, shear, {{1, 0}, {1, 1}}, Mat::identity(3)).ok);
  Verdict bad = verify_zn_certificate(pair, shear, int_identity(2), Mat::identity(3));
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.witness.empty());
  CHECK_FALSE(verify_zn_certificate(pair, shear, {{2, 0}, {0, 1}}, Mat::identity(3)).ok);
}

TEST_CASE("support-isomorphism certificates") {
  auto g = alg('A', 1);
  Multiloop w = build(g, {chevalley_involution(*g)}, {2});
  IsoCertificate triv{{{Rational(0)}}, {{1}}, Mat::identity(3)};
  CHECK(verify_supp_certificate(w, w, triv).ok);

  ToralizationCertificate t = toralize(w);
  IsoCertificate c = certificate_from_toralization(w, t);
  CHECK(c.s == std::vector<std::vector<Rational>>{{Rational(1, 2)}});
  CHECK(verify_supp_certificate(w, t.result, c).ok);

  // s is only defined modulo Z^n
  IsoCertificate c2 = c;
  c2.s[0][0] += 3;
  CHECK(verify_supp_certificate(w, t.result, c2).ok);
  IsoCertificate c3 = c;
  c3.s[0][0] = Rational(1, 4);
  CHECK_FALSE(verify_supp_certificate(w, t.result, c3).ok);

  // s = 1/3 needs cube roots of unity
  IsoCertificate c4 = c;
  c4.s[0][0] = Rational(1, 3);
  CHECK(kind_of([&] { verify_supp_certificate(w, t.result, c4, 2); }) == ErrorKind::FieldTooSmall);
}

TEST_CASE("inverse certificates") {
  auto g2 = alg('A', 2);
  std::vector<Multiloop> ls;
  ls.push_back(build(alg('A', 1), {chevalley_involution(*alg('A', 1))}, {2}));
  ls.push_back(build(g2, {diagram_automorphism(*g2, {1, 0})}, {2}));
  ls.push_back(build(g2, {diagram_automorphism(*g2, {1, 0}), diagram_automorphism(*g2, {1, 0})}, {2, 2}));
  for (const auto& L : ls) {
    ToralizationCertificate t = toralize(L);
    IsoCertificate c = certificate_from_toralization(L, t);
    REQUIRE(verify_supp_certificate(L, t.result, c).ok);
    IsoCertificate r = invert_certificate(L, t.result, c);
    Verdict v = verify_supp_certificate(t.result, L, r);
    CAPTURE(v.witness);
    CHECK(v.ok);
    IsoCertificate rr = invert_certificate(t.result, L, r);
    CHECK(rr.P == c.P);
    CHECK(rr.phi == c.phi);
  }
}

TEST_CASE("regrading chains") {
  auto g = alg('A', 1);
  Multiloop w = build(g, {chevalley_involution(*g)}, {2});
  IsoCertificate triv{{{Rational(0)}}, {{1}}, Mat::identity(3)};
  Chain e = chain_from_certificate(triv, w, w);
  CHECK(e.steps.empty());
  CHECK(verify_chain(e, w, w, 3).ok);

  ToralizationCertificate t = toralize(w);
  IsoCertificate c = certificate_from_toralization(w, t);
  Chain ch = chain_from_certificate(c, w, t.result);
  CHECK(ch.m_tilde == std::vector<long>{4});
  CHECK(ch.steps.size() == 3);
  Verdict v = verify_chain(ch, w, t.result, 4);
  CAPTURE(v.witness);
  CHECK(v.ok);

  IsoCertificate bad = c;
  bad.s[0][0] = Rational(1, 4);
  CHECK(kind_of([&] { chain_from_certificate(bad, w, t.result); }) == ErrorKind::CertificateInvalid);
}

TEST_CASE("chains for toralization certificates") {
  auto g1 = alg('A', 1), g2 = alg('A', 2);
  std::vector<Multiloop> ls;
  ls.push_back(untwisted(g1, 2));
  ls.push_back(build(g1, {torus_automorphism(*g1, {Rational(1, 3)})}, {3}));
  ls.push_back(build(g2, {diagram_automorphism(*g2, {1, 0})}, {2}));
  ls.push_back(build(g2, {diagram_automorphism(*g2, {1, 0}), diagram_automorphism(*g2, {1, 0})}, {2, 2}));
  for (const auto& L : ls) {
    ToralizationCertificate t = toralize(L);
    IsoCertificate c = certificate_from_toralization(L, t);
    Chain ch = chain_from_certificate(c, L, t.result);
    Verdict v = verify_chain(ch, L, t.result, 3);
    CAPTURE(v.witness);
    CHECK(v.ok);
  }
}

TEST_CASE("certificate search") {
  auto g1 = alg('A', 1), g2 = alg('A', 2);
  Multiloop w = build(g1, {chevalley_involution(*g1)}, {2});
  SearchResult same_alg = search_certificate(w, w);
  REQUIRE(same_alg.cert);
  CHECK(same_alg.cert->P == IntMat{{1}});
  CHECK(same_alg.cert->phi == Mat::identity(3));

  // plant a certificate and recover one
  std::vector<std::pair<Multiloop, IsoCertificate>> planted;
  planted.push_back({w, {{{Rational(1, 2)}}, {{1}}, Mat::identity(3)}});
  planted.push_back({untwisted(g1, 2), {{{Rational(0), Rational(1, 2)}}, {{1, 0}, {1, 1}}, chevalley_involution(*g1)}});
  Multiloop d = build(g2, {diagram_automorphism(*g2, {1, 0})}, {2});
  planted.push_back({d, {{{Rational(1, 2)}}, {{-1}}, chevalley_involution(*g2)}});
  for (const auto& [L, c] : planted) {
    Multiloop Lp = plant(L, c);
    REQUIRE(verify_supp_certificate(L, Lp, c).ok);
    SearchResult r = search_certificate(L, Lp);
    CAPTURE(r.note);
    REQUIRE(r.cert);
    CHECK(verify_supp_certificate(L, Lp, *r.cert).ok);
  }

  SearchResult none = search_certificate(untwisted(g1), untwisted(g2));
  CHECK_FALSE(none.cert);
  CHECK(none.note == "dimensions differ");
}

}
