#include "commands.hpp"

#include <numeric>

#include "mloop/errors.hpp"

namespace mloop::cli {

namespace {

std::string grade_str(const IntVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

json check_json(const Check& c) {
  json j{{"name", c.name}, {"pass", c.pass}};
  if (!c.witness.empty()) j["witness"] = c.witness;
  return j;
}

bool all_pass(const std::vector<Check>& cs) {
  for (const auto& c : cs)
    if (!c.pass) return false;
  return true;
}

json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(rat_str(q));
  return a;
}

json error_json(const Error& e) { return json{{"kind", kind_name(e.kind())}, {"detail", e.detail()}}; }

template <class F>
json guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return json{{"error", error_json(e)}};
  }
}

json torus_json(const TorusReport& r) {
  json comps = json::array();
  for (const auto& c : r.components) {
    json j{{"grade", grade_str(c.grade)}, {"dim_W", c.dim_w}, {"dim_U", c.dim_u}, {"dim_V", c.dim_v}, {"pass", c.pass()}};
    if (!c.weights.empty()) j["weights"] = c.weights;
    if (!c.witness.empty()) j["witness"] = c.witness;
    comps.push_back(j);
  }
  return json{{"is_torus", r.is_torus},
              {"delta_type", r.delta_type},
              {"conditions", json::array({check_json(r.a0), check_json(r.a1), check_json(r.a2), check_json(r.a3)})},
              {"components", comps}};
}

json verdict_json(const Verdict& v) {
  json j{{"ok", v.ok}};
  if (!v.witness.empty()) j["witness"] = v.witness;
  return j;
}

json chain_json(const Chain& ch, const Verdict& v) {
  json steps = json::array();
  for (const auto& st : ch.steps) steps.push_back(st.what);
  return json{{"m_tilde", ch.m_tilde}, {"steps", steps}, {"verdict", verdict_json(v)}};
}

EalaFrame frame_for(const Spec& s, const Multiloop& L, const std::string& d_spec) {
  EalaSection e = s.eala.value_or(EalaSection{});
  if (!d_spec.empty()) e.d = parse_dspec(d_spec);
  FrameOptions o;
  o.gamma_radius = s.opt.gamma_window;
  return build_frame(L, e.d, e.tau, o);
}

// sl2-triple reflections send h_alpha to -h_alpha
json reflection_json(const Multiloop& L) {
  int n = 0, bad = 0;
  std::string witness;
  for (const auto& t : all_triples(L)) {
    ++n;
    Vec img = inner_reflection(*L.g, t.xp, t.xm) * t.h;
    Vec neg = t.h;
    for (auto& x : neg) x = -x;
    if (img != neg && !bad++) witness = L.rd->label(t.alpha) + " at " + grade_str(t.grade);
  }
  json j{{"triples", n}, {"failures", bad}};
  if (bad) j["witness"] = witness;
  return j;
}

json eala_json(const EalaFrame& f, int radius, std::uint64_t seed, bool& pass) {
  EalaReport r = verify_axioms(f, radius, seed);
  SampleReport jac = jacobi_samples(f, radius, 200, seed);
  SampleReport inv = invariance_samples(f, radius, 200, seed);
  pass = r.all_pass() && jac.failures == 0 && inv.failures == 0;
  json ax = json::array();
  for (const auto& c : r.axioms) ax.push_back(check_json(c));
  auto sample = [](const SampleReport& s) {
    json j{{"samples", s.samples}, {"failures", s.failures}};
    if (!s.witness.empty()) j["witness"] = s.witness;
    return j;
  };
  return json{{"D_spec", dspec_str(f.dspec)},
              {"window", r.radius},
              {"gamma_window", r.gamma_radius},
              {"axioms", ax},
              {"dim_H", r.dim_H},
              {"real_roots", r.real_roots},
              {"null_roots", r.null_roots},
              {"nullity", r.null_rank},
              {"max_nilpotency", r.max_nilpotency},
              {"ea5_witnesses", r.ea5_witnesses},
              {"jacobi", sample(jac)},
              {"invariance", sample(inv)},
              {"pass", pass}};
}

}  // namespace

Spec load(const std::string& path, const Flags& f) {
  Spec s = parse_spec(path);
  if (f.window) s.opt.window = *f.window;
  if (f.gamma_window) s.opt.gamma_window = *f.gamma_window;
  if (f.bound) s.opt.bound = *f.bound;
  if (f.seed) s.opt.seed = *f.seed;
  if (f.field_order) s.opt.field_order = *f.field_order;
  if (s.opt.window < 0 || s.opt.gamma_window < 0 || s.opt.bound < 0)
    fail(ErrorKind::ValidationError, "window radii and bounds must be non-negative");
  return s;
}

json options_json(const SpecOptions& o) {
  return json{{"window", o.window},
              {"gamma_window", o.gamma_window},
              {"bound", o.bound},
              {"seed", o.seed},
              {"field_order", o.field_order}};
}

Outcome grade(const Spec& s) {
  Multiloop L = spec_multiloop(s);
  json table = json::array();
  int total = 0;
  for (const auto& lam : fundamental_box(L.m())) {
    int d = L.comp_dim(lam);
    total += d;
    table.push_back(json{{"grade", grade_str(lam)}, {"dim", d}});
  }
  json refined = json::array();
  if (L.rd) {
    for (const auto& [g, sp] : L.rd->refined0) refined.push_back(json{{"root", "0"}, {"grade", grade_str(g)}, {"dim", sp.dim()}});
    for (const auto& [key, sp] : L.rd->refined)
      refined.push_back(json{{"root", L.rd->label(key.first)}, {"grade", grade_str(key.second)}, {"dim", sp.dim()}});
  }
  return {json{{"m", L.m()},
               {"dim_g", L.g->dim()},
               {"table", table},
               {"dim_sum", total},
               {"refined", refined},
               {"support_group", intmat_json(support_group(L))}},
          total == L.g->dim() ? 0 : 1};
}

Outcome roots(const Spec& s) {
  Multiloop L = spec_multiloop(s);
  if (!L.rd) fail(ErrorKind::ZeroFixedAlgebra, "the fixed algebra g^sigma is zero");
  const RootDatum& rd = *L.rd;
  json labels = json::array();
  for (int i = 0; i < rd.size(); ++i) labels.push_back(rd.label(i));
  json simple = json::array();
  for (int i : rd.base.simple) simple.push_back(rd.label(i));
  RootSystemReport rep = verify_root_system(L);
  std::vector<Check> mult = multiplicity_checks(L);
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back(check_json(c));
  for (const auto& c : mult) checks.push_back(check_json(c));
  json dims = json::array();
  for (const auto& [key, sp] : rd.refined)
    dims.push_back(json{{"root", rd.label(key.first)}, {"grade", grade_str(key.second)}, {"dim", sp.dim()}});
  bool ok = rep.all_pass() && all_pass(mult);
  return {json{{"type", rep.cls.type},
               {"rank", rd.rank()},
               {"reduced", rep.cls.reduced},
               {"cartan_method", rd.cartan_method},
               {"roots", labels},
               {"simple", simple},
               {"cartan", rd.base.cartan},
               {"dims", dims},
               {"checks", checks},
               {"pass", ok}},
          ok ? 0 : 1};
}

Outcome torus_check(const Spec& s) {
  Multiloop L = spec_multiloop(s);
  TorusReport r = check_torus(L);
  return {torus_json(r), r.is_torus ? 0 : 1};
}

Outcome toralize_cmd(const Spec& s) {
  Multiloop L = spec_multiloop(s);
  ToralizationCertificate t = toralize(L, s.opt.bound);
  TorusReport tr = check_torus(t.result);
  IsoCertificate c = certificate_from_toralization(L, t);
  Verdict v = verify_supp_certificate(L, t.result, c, s.opt.field_order);
  Chain ch = chain_from_certificate(c, L, t.result);
  Verdict cv = verify_chain(ch, L, t.result, s.opt.window);
  json lam = json::array(), sv = json::array(), base = json::array();
  for (size_t k = 0; k < t.base.size(); ++k) {
    base.push_back(L.rd->label(t.base[k]));
    lam.push_back(t.lambda[k]);
    sv.push_back(rationals(t.s[k]));
  }
  bool ok = tr.is_torus && v.ok && cv.ok;
  return {json{{"base", base},
               {"lambda", lam},
               {"s", sv},
               {"P", intmat_json(t.P)},
               {"result_m", t.result.m()},
               {"result_is_torus", tr.is_torus},
               {"certificate", certificate_json(L, c, s.order)},
               {"certificate_verdict", verdict_json(v)},
               {"chain", chain_json(ch, cv)}},
          ok ? 0 : 1};
}

Outcome iso_verify(const Spec& a, const Spec& b, const std::string& cert_path) {
  Multiloop L = spec_multiloop(a), Lp = spec_multiloop(b);
  IsoCertificate c = read_certificate(L, cert_path);
  Verdict v = verify_supp_certificate(L, Lp, c, a.opt.field_order);
  json r{{"verdict", verdict_json(v)}};
  if (v.ok) {
    r["chain"] = guarded([&] {
      Chain ch = chain_from_certificate(c, L, Lp);
      return chain_json(ch, verify_chain(ch, L, Lp, a.opt.window));
    });
  }
  return {r, v.ok ? 0 : 1};
}

Outcome iso_search(const Spec& a, const Spec& b, int bound) {
  Multiloop L = spec_multiloop(a), Lp = spec_multiloop(b);
  SearchBounds sb;
  sb.p_bound = bound;
  sb.word_length = bound;
  SearchResult r = search_certificate(L, Lp, sb);
  json j{{"found", r.cert.has_value()}, {"checked", r.checked}, {"p_bound", sb.p_bound}, {"word_length", sb.word_length}};
  if (!r.note.empty()) j["note"] = r.note;
  if (r.cert) j["certificate"] = certificate_json(L, *r.cert, std::lcm(a.order, b.order));
  return {j, r.cert ? 0 : 1};
}

Outcome eala_build(const Spec& s, const std::string& d_spec) {
  Multiloop L = spec_multiloop(s);
  return {frame_json(s, frame_for(s, L, d_spec)), 0};
}

Outcome eala_verify(const Spec& s, const std::string& d_spec) {
  Multiloop L = spec_multiloop(s);
  EalaFrame f = frame_for(s, L, d_spec);
  bool pass = false;
  json j = eala_json(f, s.opt.window, s.opt.seed, pass);
  return {j, pass ? 0 : 1};
}

Outcome report_all(const std::vector<Spec>& specs) {
  json entries = json::array();
  bool ok = true;
  for (const auto& s : specs) {
    json e{{"spec", s.name}, {"digest", digest(s.raw)}, {"options", options_json(s.opt)}};
    Multiloop L = spec_multiloop(s);
    bool zero_fixed = !L.rd;
    e["fixed_algebra_zero"] = zero_fixed;
    e["grade"] = grade(s).result;
    e["central_grading"] = guarded([&] {
      CentralGradingReport r = verify_central_grading(L, 1);
      ok = ok && r.agrees;
      return json{{"closed_form", intmat_json(r.closed_form)}, {"agrees", r.agrees}};
    });
    if (zero_fixed) {
      // toralization must refuse
      json t = guarded([&] { return toralize_cmd(s).result; });
      bool refused = t.contains("error") && t["error"]["kind"] == "ZeroFixedAlgebra";
      ok = ok && refused;
      e["toralize"] = t;
      entries.push_back(e);
      continue;
    }
    e["roots"] = guarded([&] {
      Outcome o = roots(s);
      ok = ok && o.code == 0;
      return o.result;
    });
    e["torus_check"] = guarded([&] { return torus_check(s).result; });
    e["toralize"] = guarded([&] {
      Outcome o = toralize_cmd(s);
      ok = ok && o.code == 0;
      return o.result;
    });
    e["reflections"] = reflection_json(L);
    ok = ok && e["reflections"]["failures"] == 0;
    e["form_uniqueness"] = guarded([&] {
      FormUniqueness u = form_uniqueness(L, s.opt.window);
      ok = ok && u.dimension == 1;
      return json{{"window", s.opt.window}, {"unknowns", u.unknowns}, {"equations", u.equations}, {"dimension", u.dimension}};
    });
    e["eala"] = guarded([&] {
      bool pass = false;
      json j = eala_json(frame_for(s, L, "degree0"), s.opt.window, s.opt.seed, pass);
      ok = ok && pass;
      return j;
    });
    e["eala_probe"] = guarded([&] {
      ToralizationCertificate t = toralize(L, s.opt.bound);
      ProbeReport p = eala_equivalence_probe(L, t.result, certificate_from_toralization(L, t), 1);
      json steps = json::array();
      for (const auto& st : p.steps) {
        json j{{"step", st.what}, {"pairs", st.pairs}, {"ok", st.ok()}};
        if (!st.witness.empty()) j["witness"] = st.witness;
        steps.push_back(j);
      }
      ok = ok && p.agree;
      json j{{"window", 1}, {"steps", steps}, {"agree", p.agree}};
      if (!p.note.empty()) j["note"] = p.note;
      return j;
    });
    for (auto& [k, v] : e.items())
      if (v.is_object() && v.contains("error")) ok = false;
    entries.push_back(e);
  }
  return {json{{"configs", entries}, {"pass", ok}}, ok ? 0 : 1};
}

}  // namespace mloop::cli
