#include "mloop/spec_io.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "mloop/errors.hpp"

namespace mloop {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& msg) {
  fail(ErrorKind::ParseError, where + ": " + msg);
}

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

long as_long(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<long>();
}

Rational as_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) bad(where, "expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    bad(where, e.what());
  }
}

std::string at(const std::string& where, size_t i) { return where + "[" + std::to_string(i) + "]"; }

// errors from the library keep their kind and gain the field they came from
template <class F>
auto in_field(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    fail(e.kind(), where + ": " + e.detail());
  }
}

Mat named_automorphism(const LieAlgebra& g, const json& a, long order, const std::string& where) {
  if (a.is_string()) {
    std::string n = a.get<std::string>();
    if (n == "identity") return Mat::identity(g.dim());
    if (n == "chevalley_involution") return in_field(where, [&] { return chevalley_involution(g); });
    bad(where, "unknown automorphism '" + n + "'");
  }
  if (!a.is_object()) bad(where, "expected a name or an object");
  if (a.contains("matrix")) return mat_from_json(a.at("matrix"), order, where + ".matrix");
  std::string n = need(a, "named", where).get<std::string>();
  if (n == "identity") return Mat::identity(g.dim());
  if (n == "chevalley_involution") return in_field(where, [&] { return chevalley_involution(g); });
  if (n == "diagram") {
    std::vector<int> perm;
    const json& p = need(a, "perm", where);
    for (size_t i = 0; i < p.size(); ++i) perm.push_back(static_cast<int>(as_long(p[i], at(where + ".perm", i))));
    return in_field(where, [&] { return diagram_automorphism(g, perm); });
  }
  if (n == "torus") {
    std::vector<Rational> w;
    const json& p = need(a, "weights", where);
    for (size_t i = 0; i < p.size(); ++i) w.push_back(as_rational(p[i], at(where + ".weights", i)));
    return in_field(where, [&] { return torus_automorphism(g, w); });
  }
  if (n == "product") {
    const json& fs = need(a, "factors", where);
    Mat r = Mat::identity(g.dim());
    for (size_t i = 0; i < fs.size(); ++i) r = r * named_automorphism(g, fs[i], order, at(where + ".factors", i));
    return r;
  }
  bad(where, "unknown automorphism '" + n + "'");
}

std::shared_ptr<const LieAlgebra> parse_algebra(const json& a, long order, const std::string& where) {
  if (a.contains("type")) {
    std::string t = a.at("type").get<std::string>();
    if (t.size() != 1) bad(where + ".type", "expected a single letter");
    long r = as_long(need(a, "rank", where), where + ".rank");
    return in_field(where, [&] { return std::make_shared<const LieAlgebra>(chevalley(t[0], static_cast<int>(r))); });
  }
  long dim = as_long(need(a, "dim", where), where + ".dim");
  std::vector<std::tuple<int, int, int, CycNum>> e;
  const json& st = need(a, "structure", where);
  for (size_t k = 0; k < st.size(); ++k) {
    std::string w = at(where + ".structure", k);
    if (!st[k].is_array() || st[k].size() != 4) bad(w, "expected [i, j, k, value]");
    int i = static_cast<int>(as_long(st[k][0], w)), j = static_cast<int>(as_long(st[k][1], w)),
        l = static_cast<int>(as_long(st[k][2], w));
    if (i < 0 || j < 0 || l < 0 || i >= dim || j >= dim || l >= dim) bad(w, "index out of range");
    e.emplace_back(i, j, l, cycnum_from_json(st[k][3], order, w));
  }
  std::vector<std::string> labels;
  if (a.contains("labels")) labels = a.at("labels").get<std::vector<std::string>>();
  return in_field(where, [&] { return std::make_shared<const LieAlgebra>(from_structure(static_cast<int>(dim), e, labels)); });
}

DegreeDerivation parse_derivation(const json& j, long order, const std::string& where) {
  DegreeDerivation d;
  const json& mu = need(j, "mu", where);
  for (size_t i = 0; i < mu.size(); ++i) d.mu.push_back(as_long(mu[i], at(where + ".mu", i)));
  const json& th = need(j, "theta", where);
  for (size_t i = 0; i < th.size(); ++i) d.theta.push_back(cycnum_from_json(th[i], order, at(where + ".theta", i)));
  return d;
}

EalaSection parse_eala(const json& e, long order) {
  EalaSection s;
  if (e.contains("D_spec")) {
    const json& d = e.at("D_spec");
    if (d.is_string()) {
      s.d = parse_dspec(d.get<std::string>());
    } else {
      const json& ex = need(d, "explicit", "eala.D_spec");
      s.d.kind = DSpec::Explicit;
      for (size_t i = 0; i < ex.size(); ++i) s.d.basis.push_back(parse_derivation(ex[i], order, at("eala.D_spec.explicit", i)));
    }
  }
  if (e.contains("tau")) {
    const json& t = e.at("tau");
    for (size_t k = 0; k < t.size(); ++k) {
      std::string w = at("eala.tau", k);
      if (!t[k].is_array() || t[k].size() != 4) bad(w, "expected [i, j, k, value]");
      s.tau.push_back({static_cast<int>(as_long(t[k][0], w)), static_cast<int>(as_long(t[k][1], w)),
                       static_cast<int>(as_long(t[k][2], w)), cycnum_from_json(t[k][3], order, w)});
    }
  }
  return s;
}

}  // namespace

json cycnum_json(const CycNum& x, long order) {
  if (x.is_rational()) return rat_str(x.rational());
  long o = order % x.order() == 0 ? order : std::lcm(order, static_cast<long>(x.order()));
  CycNum y = lift(x, static_cast<int>(o));
  json a = json::array();
  for (const auto& q : y.coeffs()) a.push_back(rat_str(q));
  if (o != order) return json{{"order", o}, {"coeffs", a}};
  return a;
}

CycNum cycnum_from_json(const json& j, long order, const std::string& where) {
  if (j.is_string() || j.is_number_integer()) return CycNum(as_rational(j, where));
  std::vector<Rational> c;
  long o = order;
  const json* a = &j;
  if (j.is_object()) {
    o = as_long(need(j, "order", where), where + ".order");
    a = &need(j, "coeffs", where);
  }
  if (!a->is_array()) bad(where, "expected a rational string or a coefficient array");
  if (o < 1) bad(where, "cyclotomic order must be positive");
  for (size_t i = 0; i < a->size(); ++i) c.push_back(as_rational((*a)[i], at(where, i)));
  return CycNum::from_coeffs(static_cast<int>(o), c);
}

json mat_json(const Mat& m, long order) {
  json r = json::array();
  for (int i = 0; i < m.r; ++i) {
    json row = json::array();
    for (int j = 0; j < m.c; ++j) row.push_back(cycnum_json(m(i, j), order));
    r.push_back(row);
  }
  return r;
}

Mat mat_from_json(const json& j, long order, const std::string& where) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) bad(where, "expected a matrix");
  Mat m(static_cast<int>(j.size()), static_cast<int>(j[0].size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != j[0].size()) bad(at(where, i), "ragged matrix row");
    for (size_t k = 0; k < j[i].size(); ++k)
      m(static_cast<int>(i), static_cast<int>(k)) = cycnum_from_json(j[i][k], order, at(at(where, i), k));
  }
  return m;
}

json intmat_json(const IntMat& m) {
  json r = json::array();
  for (const auto& row : m) r.push_back(row);
  return r;
}

IntMat intmat_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an integer matrix");
  IntMat m;
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != j.size()) bad(at(where, i), "expected a square integer matrix");
    IntVec row;
    for (size_t k = 0; k < j[i].size(); ++k) row.push_back(as_long(j[i][k], at(at(where, i), k)));
    m.push_back(row);
  }
  return m;
}

Spec parse_spec_json(const json& j, const std::string& name) {
  Spec s;
  s.name = name;
  s.raw = j;
  if (!j.is_object()) bad(name, "expected a JSON object");
  if (j.contains("schema") && j.at("schema") != 1) bad(name + ".schema", "unsupported schema version");

  long declared = j.contains("cyclotomic_order") ? as_long(j.at("cyclotomic_order"), "cyclotomic_order") : 0;
  if (j.contains("options")) {
    const json& o = j.at("options");
    if (o.contains("window")) s.opt.window = static_cast<int>(as_long(o.at("window"), "options.window"));
    if (o.contains("gamma_window")) s.opt.gamma_window = static_cast<int>(as_long(o.at("gamma_window"), "options.gamma_window"));
    if (o.contains("bound")) s.opt.bound = static_cast<int>(as_long(o.at("bound"), "options.bound"));
    if (o.contains("seed")) s.opt.seed = static_cast<std::uint64_t>(as_long(o.at("seed"), "options.seed"));
    if (o.contains("field_order")) s.opt.field_order = as_long(o.at("field_order"), "options.field_order");
  }

  std::vector<long> m;
  const json& mj = need(j, "m", name);
  for (size_t i = 0; i < mj.size(); ++i) m.push_back(as_long(mj[i], at("m", i)));
  long order = declared ? declared : 1;
  for (long x : m) {
    if (x < 1) fail(ErrorKind::ValidationError, "m: entries must be positive");
    if (declared && declared % x) {
      fail(ErrorKind::ValidationError,
           "m: " + std::to_string(x) + " does not divide cyclotomic_order " + std::to_string(declared));
    }
    order = std::lcm(order, x);
  }
  s.order = order;

  s.g = parse_algebra(need(j, "algebra", name), order, "algebra");
  const json& aj = need(j, "automorphisms", name);
  if (!aj.is_array()) bad("automorphisms", "expected an array");
  if (aj.size() != m.size())
    fail(ErrorKind::ValidationError, "automorphisms: " + std::to_string(aj.size()) + " entries but m has " +
                                         std::to_string(m.size()));
  std::vector<Automorphism> autos;
  for (size_t i = 0; i < aj.size(); ++i) {
    std::string w = at("automorphisms", i);
    Mat a = named_automorphism(*s.g, aj[i], order, w);
    autos.push_back(in_field(w, [&] { return check_automorphism(*s.g, a); }));
    if (m[i] % autos.back().order)
      fail(ErrorKind::ValidationError, w + ": order " + std::to_string(autos.back().order) +
                                           " does not divide m = " + std::to_string(m[i]));
  }
  for (size_t i = 0; i < autos.size(); ++i)
    for (size_t k = i + 1; k < autos.size(); ++k)
      if (autos[i].m * autos[k].m != autos[k].m * autos[i].m)
        fail(ErrorKind::ValidationError, at("automorphisms", i) + " and " + at("automorphisms", k) + " do not commute");
  s.sigma = aut_tuple(*s.g, std::move(autos), m);
  if (j.contains("eala")) s.eala = parse_eala(j.at("eala"), order);
  return s;
}

Spec parse_spec_text(const std::string& text, const std::string& name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(name, e.what());
  }
  try {
    return parse_spec_json(j, name);
  } catch (const json::exception& e) {
    bad(name, e.what());
  }
}

Spec parse_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str(), path);
}

Multiloop spec_multiloop(const Spec& s) {
  RootOptions o;
  o.seed = s.opt.seed;
  o.field_order = s.opt.field_order;
  return build_multiloop(s.g, s.sigma, o);
}

json certificate_json(const Multiloop& L, const IsoCertificate& c, long order) {
  if (!L.rd) fail(ErrorKind::DomainMismatch, "certificate needs a root datum on L");
  json s = json::object();
  for (size_t k = 0; k < c.s.size(); ++k) {
    json v = json::array();
    for (const auto& q : c.s[k]) v.push_back(rat_str(q));
    s[L.rd->label(L.rd->base.simple[k])] = v;
  }
  return json{{"schema", 1}, {"cyclotomic_order", order}, {"s", s}, {"P", intmat_json(c.P)}, {"phi", mat_json(c.phi, order)}};
}

IsoCertificate certificate_from_json(const Multiloop& L, const json& j) {
  if (!L.rd) fail(ErrorKind::DomainMismatch, "certificate needs a root datum on L");
  if (j.contains("schema") && j.at("schema") != 1) bad("certificate.schema", "unsupported schema version");
  long order = j.contains("cyclotomic_order") ? as_long(j.at("cyclotomic_order"), "certificate.cyclotomic_order") : 1;
  IsoCertificate c;
  const json& s = need(j, "s", "certificate");
  for (int a : L.rd->base.simple) {
    std::string lab = L.rd->label(a);
    const json& v = need(s, lab.c_str(), "certificate.s");
    if (!v.is_array() || static_cast<int>(v.size()) != L.n()) bad("certificate.s." + lab, "expected n rationals");
    std::vector<Rational> row;
    for (size_t i = 0; i < v.size(); ++i) row.push_back(as_rational(v[i], at("certificate.s." + lab, i)));
    c.s.push_back(row);
  }
  if (s.size() != L.rd->base.simple.size()) bad("certificate.s", "labels must be exactly the simple roots of L");
  c.P = intmat_from_json(need(j, "P", "certificate"), "certificate.P");
  c.phi = mat_from_json(need(j, "phi", "certificate"), order, "certificate.phi");
  return c;
}

IsoCertificate read_certificate(const Multiloop& L, const std::string& path) {
  std::ifstream in(path);
  if (!in) bad(path, "cannot open file");
  try {
    return certificate_from_json(L, json::parse(in));
  } catch (const json::exception& e) {
    bad(path, e.what());
  }
}

json frame_json(const Spec& s, const EalaFrame& f) {
  json tau = json::array();
  for (const auto& t : f.tau) tau.push_back(json::array({t.i, t.j, t.k, cycnum_json(t.value, s.order)}));
  json dw = json::array();
  for (const auto& d : f.d_window()) {
    json th = json::array();
    for (const auto& x : d.theta) th.push_back(cycnum_json(x, s.order));
    dw.push_back(json{{"mu", d.mu}, {"theta", th}});
  }
  return json{{"schema", 1},
              {"spec", s.name},
              {"cyclotomic_order", s.order},
              {"D_spec", dspec_str(f.dspec)},
              {"tau", tau},
              {"gamma", intmat_json(f.gamma)},
              {"window", s.opt.window},
              {"gamma_window", f.gamma_radius},
              {"dim_H", f.dim_H()},
              {"d_window", dw}};
}

std::string digest(const json& j) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream o;
  o << std::hex;
  o.width(16);
  o.fill('0');
  o << h;
  return o.str();
}

}  // namespace mloop
