#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "mloop/errors.hpp"

using namespace mloop;
using namespace mloop::cli;

namespace {

bool scalar_array(const json& j) {
  for (const auto& x : j)
    if (x.is_structured()) return false;
  return true;
}

void flatten(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && !scalar_array(j)) {
    for (size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

void print_text(const json& report, double seconds) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  for (const auto& [k, v] : rows) std::cout << k << std::string(w - k.size() + 2, ' ') << v << '\n';
  std::cout << "time" << std::string(w > 2 ? w - 2 : 2, ' ') << seconds << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiloop Lie algebras, Lie tori and EALAs"};
  app.require_subcommand(1);
  bool as_json = false;
  Flags flags;
  int window = 0, gamma = 0, bound = 0;
  std::uint64_t seed = 0;
  long field_order = 0;
  std::vector<std::string> files;
  std::string cert;

  auto common = [&](CLI::App* c) {
    c->add_flag("--json", as_json, "emit JSON");
    c->add_option("--window", window, "Z^n window radius (default 3)");
    c->add_option("--gamma-window", gamma, "Gamma window radius (default 2)");
    c->add_option("--bound", bound, "search bound");
    c->add_option("--seed", seed, "random seed (default 0)");
    c->add_option("--field-order", field_order, "restrict eigenvalues to Q(zeta_N)");
  };
  std::map<std::string, CLI::App*> subs;
  auto sub = [&](const std::string& name, const std::string& help, int nfiles) {
    CLI::App* c = app.add_subcommand(name, help);
    common(c);
    c->add_option("specs", files, "spec files")->required()->expected(nfiles < 0 ? 1 : nfiles, nfiles < 0 ? 1 << 20 : nfiles);
    subs[name] = c;
    return c;
  };
  sub("grade", "grading table and per-root refinement", 1);
  sub("roots", "root system of the fixed algebra and its checks", 1);
  sub("torus-check", "conditions A0-A3", 1);
  sub("toralize", "construct a support-isomorphic Lie torus", 1);
  sub("iso-verify", "verify a support-isomorphism certificate: A B CERT", 3);
  sub("iso-search", "search for a support-isomorphism certificate: A B", 2);
  sub("eala-build", "build the EALA frame", 1)->add_option("--d", flags.d_spec, "degree0 | scder_window:k");
  sub("eala-verify", "verify EA1-EA6 on the window", 1)->add_option("--d", flags.d_spec, "degree0 | scder_window:k");
  sub("report-all", "run the pipeline over several specs", -1);

  CLI11_PARSE(app, argc, argv);

  std::string command;
  for (const auto& [name, c] : subs) {
    if (!c->parsed()) continue;
    command = name;
    if (c->count("--window")) flags.window = window;
    if (c->count("--gamma-window")) flags.gamma_window = gamma;
    if (c->count("--bound")) flags.bound = bound;
    if (c->count("--seed")) flags.seed = seed;
    if (c->count("--field-order")) flags.field_order = field_order;
  }

  json report{{"schema", 1}, {"command", command}};
  int code = 0;
  auto t0 = std::chrono::steady_clock::now();
  try {
    std::vector<Spec> specs;
    size_t nspecs = command == "iso-verify" ? 2 : files.size();
    json inputs = json::array();
    for (size_t i = 0; i < nspecs; ++i) {
      specs.push_back(load(files[i], flags));
      inputs.push_back(json{{"path", files[i]}, {"digest", digest(specs.back().raw)}});
    }
    if (command == "iso-verify") inputs.push_back(json{{"path", files[2]}, {"role", "certificate"}});
    report["inputs"] = inputs;
    if (specs.size() == 1) report["options"] = options_json(specs[0].opt);

    Outcome o;
    if (command == "grade") o = grade(specs[0]);
    else if (command == "roots") o = roots(specs[0]);
    else if (command == "torus-check") o = torus_check(specs[0]);
    else if (command == "toralize") o = toralize_cmd(specs[0]);
    else if (command == "iso-verify") o = iso_verify(specs[0], specs[1], files[2]);
    else if (command == "iso-search") {
      report["options"] = options_json(specs[0].opt);
      o = iso_search(specs[0], specs[1], flags.bound.value_or(2));
    }
    else if (command == "eala-build") o = eala_build(specs[0], flags.d_spec);
    else if (command == "eala-verify") o = eala_verify(specs[0], flags.d_spec);
    else o = report_all(specs);
    report["status"] = o.code == 0 ? "pass" : "fail";
    report["result"] = o.result;
    code = o.code;
  } catch (const Error& e) {
    report["status"] = "error";
    report["error"] = json{{"kind", kind_name(e.kind())}, {"detail", e.detail()}};
    code = 2;
  } catch (const std::exception& e) {
    report["status"] = "error";
    report["error"] = json{{"kind", "internal"}, {"detail", e.what()}};
    code = 2;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (as_json) std::cout << report.dump(2) << '\n';
  else print_text(report, secs);
  return code;
}
