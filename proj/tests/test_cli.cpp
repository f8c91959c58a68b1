#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "mloop/spec_io.hpp"

using namespace mloop;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(MLOOP_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string corpus(const std::string& name) { return std::string(MLOOP_CORPUS_DIR) + "/" + name; }

std::filesystem::path scratch() {
  auto d = std::filesystem::temp_directory_path() / "mloop_cli_test";
  std::filesystem::create_directories(d);
  return d;
}

void write(const std::filesystem::path& p, const json& j) { std::ofstream(p) << j.dump(1) << '\n'; }

// spec with explicit matrices for a tuple
json explicit_spec(const std::string& type, int rank, const AutTuple& t, long order) {
  json autos = json::array();
  for (const auto& a : t.autos) autos.push_back(json{{"matrix", mat_json(a.m, order)}});
  return json{{"schema", 1}, {"cyclotomic_order", order}, {"algebra", {{"type", type}, {"rank", rank}}},
              {"automorphisms", autos}, {"m", t.m}};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("torus-check on untwisted sl2") {
  Run r = run("torus-check --json " + corpus("untwisted_sl2.json"));
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "torus-check");
  CHECK(j["result"]["is_torus"] == true);
  CHECK(j["options"]["window"] == 3);
  CHECK(j["options"]["gamma_window"] == 2);
  CHECK(j["options"]["seed"] == 0);

  Run w = run("torus-check --json " + corpus("sl2_chevalley.json"));
  CHECK(w.code == 1);
  CHECK(json::parse(w.out)["result"]["is_torus"] == false);
}

TEST_CASE("toralize on the zero-fixed configuration") {
  Run r = run("toralize --json " + corpus("zero_fixed.json"));
  CHECK(r.code == 2);
  json j = json::parse(r.out);
  CHECK(j["status"] == "error");
  CHECK(j["error"]["kind"] == "ZeroFixedAlgebra");

  Run ok = run("toralize --json " + corpus("sl2_chevalley.json"));
  CHECK(ok.code == 0);
  json t = json::parse(ok.out)["result"];
  CHECK(t["result_is_torus"] == true);
  CHECK(t["certificate_verdict"]["ok"] == true);
  CHECK(t["chain"]["verdict"]["ok"] == true);
}

TEST_CASE("iso-verify with a planted certificate") {
  Spec a = parse_spec(corpus("sl2_chevalley.json"));
  Multiloop L = spec_multiloop(a);
  // plant: L' = L(g, phi (tau sigma) phi^-1) with s = 1/2, phi = omega
  IsoCertificate c{{{Rational(1, 2)}}, {{1}}, chevalley_involution(*L.g)};
  AutTuple tau = certificate_tau(L, c.s);
  Mat ts = c.phi * tau.autos[0].m * L.sigma.autos[0].m * inverse(c.phi);
  AutTuple planted = aut_tuple(*L.g, std::vector<Mat>{ts}, {matrix_order(ts)});
  auto d = scratch();
  write(d / "b.json", explicit_spec("A", 1, planted, 4));
  write(d / "cert.json", certificate_json(L, c, 4));

  Run r = run("iso-verify --json " + corpus("sl2_chevalley.json") + " " + (d / "b.json").string() + " " +
              (d / "cert.json").string());
  CAPTURE(r.out);
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["result"]["verdict"]["ok"] == true);
  CHECK(j["result"]["chain"]["verdict"]["ok"] == true);

  IsoCertificate wrong = c;
  wrong.s[0][0] = Rational(1, 4);
  write(d / "wrong.json", certificate_json(L, wrong, 4));
  Run bad = run("iso-verify --json " + corpus("sl2_chevalley.json") + " " + (d / "b.json").string() + " " +
                (d / "wrong.json").string());
  CHECK(bad.code == 1);

  Run s = run("iso-search --json " + corpus("sl2_chevalley.json") + " " + (d / "b.json").string());
  CHECK(s.code == 0);
  CHECK(json::parse(s.out)["result"]["found"] == true);
  Run none = run("iso-search --json " + corpus("untwisted_sl2.json") + " " + corpus("sl3_diagram.json"));
  CHECK(none.code == 1);
}

TEST_CASE("grade, roots and flags") {
  Run g = run("grade --json " + corpus("sl2_chevalley.json"));
  CHECK(g.code == 0);
  json t = json::parse(g.out)["result"];
  CHECK(t["dim_sum"] == 3);
  CHECK(t["table"].size() == 2);
  CHECK(t["table"][0]["dim"] == 1);
  CHECK(t["table"][1]["dim"] == 2);

  Run r = run("roots --json --seed 3 --window 2 " + corpus("g2_untwisted.json"));
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["result"]["type"] == "G2");
  CHECK(j["result"]["roots"].size() == 12);
  CHECK(j["options"]["seed"] == 3);
  CHECK(j["options"]["window"] == 2);

  Run text = run("grade " + corpus("untwisted_sl2.json"));
  CHECK(text.code == 0);
  CHECK(text.out.find("result.dim_sum") != std::string::npos);

  CHECK(run("grade --json " + corpus("missing.json")).code == 2);
  CHECK(run("nonsense").code != 0);
}

TEST_CASE("eala-build and eala-verify") {
  Run b = run("eala-build --json --d scder_window:1 " + corpus("untwisted_sl2_n2.json"));
  CHECK(b.code == 0);
  json f = json::parse(b.out)["result"];
  CHECK(f["D_spec"] == "scder_window:1");
  CHECK(f["window"] == 3);
  CHECK(f["gamma_window"] == 1);  // scder_window:k fixes the Gamma window to k
  CHECK(f["tau"].empty());

  Run v = run("eala-verify --json --window 2 " + corpus("untwisted_sl2.json"));
  CHECK(v.code == 0);
  json j = json::parse(v.out)["result"];
  CHECK(j["dim_H"] == 3);
  CHECK(j["window"] == 2);
  CHECK(j["jacobi"]["failures"] == 0);
}

TEST_CASE("report-all is deterministic") {
  std::string args = "report-all --json";
  for (const char* n : {"untwisted_sl2.json", "sl2_chevalley.json", "zero_fixed.json"}) args += " " + corpus(n);
  Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  json j = json::parse(a.out);
  CHECK(j["result"]["configs"].size() == 3);
  CHECK(j["result"]["configs"][2]["toralize"]["error"]["kind"] == "ZeroFixedAlgebra");
}

}
