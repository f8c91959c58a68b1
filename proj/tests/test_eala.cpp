#include "doctest.h"
#include "mloop/eala.hpp"
#include "mloop/errors.hpp"

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
  return ErrorKind::ParseError;
}

std::string failing(const EalaReport& r) {
  std::string s;
  for (const auto& c : r.axioms)
    if (!c.pass) s += c.name + ": " + c.witness + "; ";
  return s;
}

}  // namespace

TEST_SUITE("eala") {

TEST_CASE("frames") {
  auto g = alg('A', 1);
  EalaFrame f = build_frame(untwisted(g));
  CHECK(f.d_slice({0}).dim() == 1);
  CHECK(f.d_slice({1}).dim() == 0);
  CHECK(f.dim_H() == 3);
  CHECK(H_basis(f).size() == 3);
  CHECK(f.d_window().size() == 1);

  EalaFrame f2 = build_frame(untwisted(g, 2));
  CHECK(f2.dim_H() == 5);

  CHECK(parse_dspec("degree0").kind == DSpec::Degree0);
  DSpec w = parse_dspec("scder_window:1");
  CHECK(w.kind == DSpec::ScderWindow);
  CHECK(w.k == 1);
  CHECK(kind_of([] { parse_dspec("scder_window:x"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_dspec("all"); }) == ErrorKind::ParseError);

  EalaFrame s2 = build_frame(untwisted(g, 2), w);
  CHECK(s2.d_slice({1, 0}).dim() == 1);
  CHECK(s2.d_slice({0, 0}).dim() == 2);
  CHECK(s2.d_window().size() == 2 + 8);

  Multiloop z = build(g, {chevalley_involution(*g), torus_automorphism(*g, {Rational(1, 2)})}, {2, 2});
  CHECK(kind_of([&] { build_frame(z); }) == ErrorKind::L4Violation);
}

TEST_CASE("ev injectivity and degenerate frames") {
  auto g = alg('A', 1);
  DSpec half;
  half.kind = DSpec::Explicit;
  half.basis.push_back({{0, 0}, {CycNum(1), CycNum(0)}});
  CHECK(kind_of([&] { build_frame(untwisted(g, 2), half); }) == ErrorKind::EvNotInjective);
  FrameOptions raw;
  raw.validate = false;
  EalaFrame f = build_frame(untwisted(g, 2), half, {}, raw);
  EalaReport r = verify_axioms(f, 1);
  CHECK_FALSE(r.axioms[1].pass);
  CHECK(r.axioms[1].witness.find("centralizer") != std::string::npos);
}

TEST_CASE("cocycle validation") {
  auto g = alg('A', 1);
  CHECK(kind_of([&] { build_frame(untwisted(g), {}, {{0, 0, 0, CycNum(1)}}); }) == ErrorKind::CocycleInvalid);
  EalaFrame f = build_frame(untwisted(g, 2), parse_dspec("scder_window:1"));
  auto win = f.d_window();
  int i = -1, j = -1, k = -1;
  for (int a = 0; a < static_cast<int>(win.size()); ++a) {
    if (win[a].mu == IntVec{1, 0}) i = a;
    if (win[a].mu == IntVec{0, 1}) j = a;
    if (win[a].mu == IntVec{-1, -1}) k = a;
  }
  REQUIRE(i >= 0);
  REQUIRE(j >= 0);
  REQUIRE(k >= 0);
  // a lone entry is neither skew nor invariant
  CHECK(kind_of([&] { build_frame(untwisted(g, 2), parse_dspec("scder_window:1"), {{i, j, k, CycNum(1)}}); }) ==
        ErrorKind::CocycleInvalid);
  // the alternating completion passes
  std::vector<TauEntry> alt{{i, j, k, 1}, {j, k, i, 1}, {k, i, j, 1}, {j, i, k, -1}, {k, j, i, -1}, {i, k, j, -1}};
  EalaFrame ft = build_frame(untwisted(g, 2), parse_dspec("scder_window:1"), alt);
  EalaElement d1 = d_elem(ft, win[i].mu, win[i].theta), d2 = d_elem(ft, win[j].mu, win[j].theta);
  EalaElement br = eala_bracket(ft, d1, d2);
  CHECK(br.c.count({1, 1}));
  // degree-mismatched entries
  CHECK(kind_of([&] { build_frame(untwisted(g, 2), parse_dspec("scder_window:1"), {{i, i, k, CycNum(1)}}); }) ==
        ErrorKind::CocycleInvalid);
}

TEST_CASE("bracket and form examples") {
  auto g = alg('A', 1);
  EalaFrame f = build_frame(untwisted(g));
  Vec e = g->basis(0), h = g->basis(1), fv = g->basis(2);
  REQUIRE(g->killing(e, fv) == CycNum(4));
  EalaElement a = loop_elem(f, {1}, e), b = loop_elem(f, {-1}, fv);
  EalaElement r = eala_bracket(f, a, b);
  CHECK(r.x.terms.size() == 1);
  CHECK(r.x.terms.at({0}) == g->bracket(e, fv));
  CHECK(r.c.at({0}) == Vec{CycNum(4)});
  CHECK(r.d.empty());

  // [d, x t^lambda] = theta(lambda) x t^lambda
  EalaElement d = d_elem(f, {0}, {CycNum(1)});
  CHECK(eala_bracket(f, d, loop_elem(f, {3}, h)) == CycNum(3) * loop_elem(f, {3}, h));
  CHECK(eala_bracket(f, loop_elem(f, {3}, h), d) == CycNum(-3) * loop_elem(f, {3}, h));

  // C is central in the degree0 frame
  EalaElement c = c_elem(f, {0}, 0);
  for (const auto& y : window_basis(f, 2)) CHECK(eala_bracket(f, c, y).is_zero());

  CHECK(eala_form(f, c, d) == CycNum(1));
  CHECK(eala_form(f, d, c) == CycNum(1));
  CHECK(eala_form(f, a, b) == CycNum(4));
  CHECK(eala_form(f, a, loop_elem(f, {1}, fv)).is_zero());
  for (const auto& y : window_basis(f, 2))
    if (!y.x.is_zero()) CHECK(eala_form(f, y, d).is_zero());

  EalaFrame other = build_frame(untwisted(g));
  CHECK(kind_of([&] { eala_bracket(f, a, loop_elem(other, {0}, h)); }) == ErrorKind::FrameMismatch);
  CHECK(kind_of([&] { eala_form(other, a, a); }) == ErrorKind::FrameMismatch);
}

TEST_CASE("degree derivation brackets match composition") {
  auto g = alg('A', 1);
  EalaFrame f = build_frame(untwisted(g, 2), parse_dspec("scder_window:1"));
  auto win = f.d_window();
  std::vector<LoopElement> xs;
  for (const auto& lam : window_box(2, 1)) {
    LoopElement x;
    x.add(lam, g->basis(0));
    xs.push_back(x);
  }
  for (const auto& a : win)
    for (const auto& b : win) {
      DegreeDerivation c = der_bracket(a, b);
      CHECK((is_zero(c.theta) || f.d_slice(c.mu).contains(c.theta)));
      for (const auto& x : xs) {
        LoopElement lhs = apply_derivation(c, x);
        LoopElement ab = apply_derivation(a, apply_derivation(b, x)), ba = apply_derivation(b, apply_derivation(a, x));
        for (const auto& [l, v] : ba.terms) ab.add(l, -v);
        CHECK(lhs == ab);
      }
    }
}

TEST_CASE("axioms on affine sl2") {
  auto g = alg('A', 1);
  EalaFrame f = build_frame(untwisted(g));
  EalaReport r = verify_axioms(f, 3);
  CAPTURE(failing(r));
  CHECK(r.all_pass());
  CHECK(r.axioms.size() == 6);
  CHECK(r.dim_H == 3);
  CHECK(r.real_roots == 14);
  CHECK(r.null_rank == 1);
  CHECK(r.max_nilpotency <= 5);
  CHECK(r.ea5_witnesses >= 1);
}

TEST_CASE("axioms on twisted and nullity-2 frames") {
  auto g1 = alg('A', 1), g2 = alg('A', 2);
  Multiloop w = build(g1, {chevalley_involution(*g1)}, {2});
  ToralizationCertificate t = toralize(w);
  EalaReport r = verify_axioms(build_frame(t.result), 3);
  CAPTURE(failing(r));
  CHECK(r.all_pass());

  Multiloop d = build(g2, {diagram_automorphism(*g2, {1, 0})}, {2});
  EalaReport rd = verify_axioms(build_frame(d), 2);
  CAPTURE(failing(rd));
  CHECK(rd.all_pass());

  EalaReport r2 = verify_axioms(build_frame(untwisted(g1, 2)), 1);
  CAPTURE(failing(r2));
  CHECK(r2.all_pass());
  CHECK(r2.null_rank == 2);

  EalaReport rs = verify_axioms(build_frame(untwisted(g1, 2), parse_dspec("scder_window:1")), 1);
  CAPTURE(failing(rs));
  CHECK(rs.all_pass());
}

TEST_CASE("Jacobi and invariance on samples") {
  auto g1 = alg('A', 1), g2 = alg('A', 2);
  std::vector<EalaFrame> frames;
  frames.push_back(build_frame(untwisted(g1)));
  frames.push_back(build_frame(untwisted(g1, 2), parse_dspec("scder_window:1")));
  frames.push_back(build_frame(build(g2, {diagram_automorphism(*g2, {1, 0})}, {2})));
  for (const auto& f : frames) {
    SampleReport j = jacobi_samples(f, 2, 200, 7);
    CAPTURE(j.witness);
    CHECK(j.samples == 200);
    CHECK(j.failures == 0);
    SampleReport i = invariance_samples(f, 2, 200, 7);
    CAPTURE(i.witness);
    CHECK(i.failures == 0);
  }
}

TEST_CASE("form uniqueness") {
  auto g = alg('A', 1);
  Multiloop u = untwisted(g);
  FormUniqueness fu = form_uniqueness(u, 3);
  CHECK(fu.dimension == 1);
  CHECK(fu.unknowns == 63);
  CHECK(form_solves_system(u, 3, CycNum(5)));
  CHECK(form_solves_system(u, 3, CycNum(1)));

  Multiloop w = build(g, {chevalley_involution(*g)}, {2});
  CHECK(form_uniqueness(w, 3).dimension == 1);
  CHECK(form_solves_system(w, 3, CycNum(5)));
}

TEST_CASE("equivalence probe") {
  auto g1 = alg('A', 1);
  Multiloop w = build(g1, {chevalley_involution(*g1)}, {2});
  CHECK(kind_of([&] { eala_equivalence_probe(w, w, std::nullopt, 1); }) == ErrorKind::CertificateRequired);

  IsoCertificate id{{{Rational(0)}}, {{1}}, Mat::identity(3)};
  ProbeReport same = eala_equivalence_probe(w, w, id, 2);
  CHECK(same.agree);
  REQUIRE(same.steps.size() == 1);
  CHECK(same.steps[0].scale == CycNum(1));

  // rho, s-shift and rho again, each step an EALA isomorphism on the window
  ToralizationCertificate t = toralize(w);
  ProbeReport tr = eala_equivalence_probe(w, t.result, certificate_from_toralization(w, t), 2);
  CHECK(tr.steps.size() == 4);
  for (const auto& s : tr.steps) {
    CAPTURE(s.what);
    CAPTURE(s.witness);
    CHECK(s.ok());
  }
  CHECK(tr.agree);

  auto g2 = alg('A', 2);
  Multiloop d = build(g2, {diagram_automorphism(*g2, {1, 0})}, {2});
  ToralizationCertificate td = toralize(d);
  ProbeReport pd = eala_equivalence_probe(d, td.result, certificate_from_toralization(d, td), 1);
  for (const auto& s : pd.steps) {
    CAPTURE(s.what);
    CAPTURE(s.witness);
    CHECK(s.ok());
  }
}

}
