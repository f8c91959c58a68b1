#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "mloop/errors.hpp"
#include "mloop/spec_io.hpp"

using namespace mloop;

namespace {

ErrorKind kind_of(const std::function<void()>& f, std::string* msg = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (msg) *msg = e.detail();
    return e.kind();
  }
  return ErrorKind::Unsupported;  // sentinel: nothing thrown
}

std::string corpus(const std::string& name) { return std::string(MLOOP_CORPUS_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("spec_io") {

TEST_CASE("minimal untwisted sl2 spec") {
  Spec s = parse_spec(corpus("untwisted_sl2.json"));
  CHECK(s.g->dim() == 3);
  CHECK(s.sigma.n() == 1);
  CHECK(s.sigma.m == std::vector<long>{1});
  CHECK(s.sigma.autos[0].m == Mat::identity(3));
  CHECK(s.order == 1);
  CHECK(s.opt.window == 3);
  CHECK(s.opt.gamma_window == 2);
  CHECK(s.opt.seed == 0);
  CHECK_FALSE(s.eala);
}

TEST_CASE("named constructor equals the explicit matrix") {
  // omega(e) = -f, omega(h) = -h, omega(f) = -e in the basis (e, h, f)
  Spec named = parse_spec_text(R"({"algebra": {"type": "A", "rank": 1}, "automorphisms": ["chevalley_involution"], "m": [2]})");
  Spec explicit_ = parse_spec_text(R"({"algebra": {"type": "A", "rank": 1},
    "automorphisms": [{"matrix": [["0","0","-1"],["0","-1","0"],["-1","0","0"]]}], "m": [2]})");
  REQUIRE(named.g->labels() == std::vector<std::string>{"e[1]", "h1", "f[1]"});
  CHECK(named.sigma.autos[0].m == explicit_.sigma.autos[0].m);
  CHECK(explicit_.sigma.autos[0].order == 2);
}

TEST_CASE("validation errors carry the field") {
  std::string msg;
  // omega t != t omega for t of order 3
  CHECK(kind_of([] {
          parse_spec_text(R"({"cyclotomic_order": 6, "algebra": {"type": "A", "rank": 1},
            "automorphisms": ["chevalley_involution", {"named": "torus", "weights": ["1/3"]}], "m": [2, 3]})");
        }, &msg) == ErrorKind::ValidationError);
  CHECK(msg == "automorphisms[0] and automorphisms[1] do not commute");

  CHECK(kind_of([] {
          parse_spec_text(R"({"algebra": {"type": "A", "rank": 1}, "automorphisms": ["chevalley_involution"], "m": [3]})");
        }, &msg) == ErrorKind::ValidationError);
  CHECK(msg.find("automorphisms[0]") == 0);

  CHECK(kind_of([] {
          parse_spec_text(R"({"algebra": {"type": "A", "rank": 1},
            "automorphisms": [{"matrix": [["1","0","0"],["0","1","0"],["0","0","2"]]}], "m": [1]})");
        }, &msg) == ErrorKind::NotBracketPreserving);
  CHECK(msg.find("automorphisms[0]") == 0);

  CHECK(kind_of([] { parse_spec_text(R"({"algebra": {"type": "A", "rank": 1}, "m": [1]})"); }, &msg) ==
        ErrorKind::ParseError);
  CHECK(msg.find("automorphisms") != std::string::npos);
  CHECK(kind_of([] { parse_spec_text("{\"m\": [1],"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] {
          parse_spec_text(R"({"algebra": {"type": "A", "rank": 1}, "automorphisms": ["identity"], "m": ["x"]})");
        }, &msg) == ErrorKind::ParseError);
  CHECK(msg == "m[0]: expected an integer");
  CHECK(kind_of([] {
          parse_spec_text(R"({"cyclotomic_order": 2, "algebra": {"type": "A", "rank": 1}, "automorphisms": ["identity"], "m": [3]})");
        }) == ErrorKind::ValidationError);
  CHECK(kind_of([] { parse_spec(corpus("missing.json")); }) == ErrorKind::ParseError);
}

TEST_CASE("structure-constant algebras") {
  // sl2 from sparse triples: [e,f] = h, [h,e] = 2e, [h,f] = -2f
  Spec s = parse_spec_text(R"({"algebra": {"dim": 3, "labels": ["e","h","f"],
    "structure": [[0,2,1,"1"],[2,0,1,"-1"],[1,0,0,"2"],[0,1,0,"-2"],[1,2,2,"-2"],[2,1,2,"2"]]},
    "automorphisms": ["identity"], "m": [1]})");
  CHECK(s.g->dim() == 3);
  CHECK(is_simple(*s.g));
  Multiloop L = spec_multiloop(s);
  REQUIRE(L.rd);
  CHECK(L.rd->size() == 2);
}

TEST_CASE("cyclotomic values round-trip") {
  std::mt19937_64 rng(7);
  for (int order : {1, 3, 4, 6, 12}) {
    for (int k = 0; k < 20; ++k) {
      CycNum x = testutil::rand_cyc(rng, order);
      CHECK(cycnum_from_json(cycnum_json(x, order), order, "x") == x);
      // a value from a field not dividing the session order keeps its own order
      CHECK(cycnum_from_json(cycnum_json(x, 5), 5, "x") == x);
    }
  }
  CHECK(cycnum_json(CycNum(Rational(-3, 4)), 6) == "-3/4");
  // zeta_4 = i on the power basis of Q(zeta_4)
  CHECK(cycnum_json(CycNum::zeta(4), 4) == json::array({"0", "1"}));
  CHECK(cycnum_from_json(json::array({"0", "0", "1"}), 3, "x") == CycNum::zeta(3, 2));
}

TEST_CASE("certificate JSON round-trip") {
  Spec s = parse_spec(corpus("sl3_diagram_torus.json"));
  Multiloop L = spec_multiloop(s);
  ToralizationCertificate t = toralize(L);
  IsoCertificate c = certificate_from_toralization(L, t);
  json j = certificate_json(L, c, s.order);
  CHECK(j["schema"] == 1);
  CHECK(j["s"].size() == L.rd->base.simple.size());
  IsoCertificate back = certificate_from_json(L, json::parse(j.dump()));
  CHECK(back.s == c.s);
  CHECK(back.P == c.P);
  CHECK(back.phi == c.phi);
  CHECK(verify_supp_certificate(L, t.result, back).ok);

  json missing = j;
  missing["s"].erase(missing["s"].begin());
  CHECK(kind_of([&] { certificate_from_json(L, missing); }) == ErrorKind::ParseError);
}

TEST_CASE("eala sections and frames") {
  Spec s = parse_spec_text(R"({"algebra": {"type": "A", "rank": 1}, "automorphisms": ["identity", "identity"], "m": [1, 1],
    "eala": {"D_spec": "scder_window:1", "tau": []}, "options": {"window": 2, "gamma_window": 1, "seed": 5}})");
  REQUIRE(s.eala);
  CHECK(s.eala->d.kind == DSpec::ScderWindow);
  CHECK(s.opt.seed == 5);
  FrameOptions o;
  o.gamma_radius = s.opt.gamma_window;
  EalaFrame f = build_frame(spec_multiloop(s), s.eala->d, s.eala->tau, o);
  json fj = frame_json(s, f);
  CHECK(fj["D_spec"] == "scder_window:1");
  CHECK(fj["gamma_window"] == 1);
  CHECK(fj["window"] == 2);
  CHECK(fj["dim_H"] == 5);

  Spec e = parse_spec_text(R"({"algebra": {"type": "A", "rank": 1}, "automorphisms": ["identity"], "m": [1],
    "eala": {"D_spec": {"explicit": [{"mu": [0], "theta": ["1"]}]}}})");
  REQUIRE(e.eala);
  CHECK(e.eala->d.kind == DSpec::Explicit);
  CHECK(e.eala->d.basis.size() == 1);
  CHECK(kind_of([] {
          parse_spec_text(R"({"algebra": {"type": "A", "rank": 1}, "automorphisms": ["identity"], "m": [1],
            "eala": {"D_spec": "everything"}})");
        }) == ErrorKind::ParseError);
}

TEST_CASE("digest is stable and content-sensitive") {
  json a = json::parse(R"({"m": [1], "x": "1/2"})");
  json b = json::parse(R"({"m": [1], "x": "1/3"})");
  CHECK(digest(a) == digest(json::parse(a.dump())));
  CHECK(digest(a) != digest(b));
  CHECK(digest(a).size() == 16);
}

}
