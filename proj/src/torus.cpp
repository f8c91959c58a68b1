#include "mloop/torus.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "mloop/errors.hpp"

namespace mloop {

Subspace module_closure(const LieAlgebra& g, const std::vector<Vec>& acting, const Vec& v) {
  Echelon e(g.dim());
  std::vector<Vec> found;
  if (e.add(v)) found.push_back(v);
  std::vector<Mat> ads;
  for (const auto& x : acting) ads.push_back(g.ad(x));
  for (size_t q = 0; q < found.size(); ++q)
    for (const auto& a : ads) {
      Vec y = a * found[q];
      if (e.add(y)) found.push_back(y);
    }
  return span(g.dim(), found);
}

namespace {

std::string grade_str(const Grade& g) {
  std::string s = "(";
  for (size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + std::to_string(g[i]);
  return s + ")";
}

A2Component decompose(const Multiloop& L, const Grade& gr, const Subspace& w, const Subspace& fixed,
                      const std::vector<Vec>& en, const RootDatum* rd) {
  const LieAlgebra& g = *L.g;
  A2Component c;
  c.grade = gr;
  c.dim_w = w.dim();
  std::vector<Mat> ads;
  for (const auto& x : fixed.basis) ads.push_back(g.ad(x));
  Subspace u = intersect(joint_kernel(g.dim(), ads), w);
  std::vector<Vec> img;
  for (const auto& a : ads)
    for (const auto& y : w.basis) img.push_back(a * y);
  Subspace v = span(g.dim(), img);
  c.dim_u = u.dim();
  c.dim_v = v.dim();
  c.direct = subset(v, w) && intersect(u, v).dim() == 0 && c.dim_u + c.dim_v == c.dim_w;
  if (!c.direct) c.witness = "U + V is not a direct decomposition of g^l";
  if (v.dim() == 0) return c;
  if (v.dim() == 1) c.witness = "V is one-dimensional";
  if (!rd) return c;
  // weight vectors of V
  std::vector<Vec> wvecs;
  int wsum = 0;
  Subspace v0 = intersect(v, rd->g0);
  wsum += v0.dim();
  wvecs.insert(wvecs.end(), v0.basis.begin(), v0.basis.end());
  if (v0.dim() > 0) c.weights.push_back("0");
  for (int a = 0; a < rd->size(); ++a) {
    Subspace va = intersect(v, rd->spaces[a]);
    if (va.dim() == 0) continue;
    wsum += va.dim();
    wvecs.insert(wvecs.end(), va.basis.begin(), va.basis.end());
    c.weights.push_back(rd->label(a));
    if (std::find(en.begin(), en.end(), rd->rs.roots[a]) == en.end()) {
      c.weights_ok = false;
      c.witness = "weight " + rd->label(a) + " outside Delta_en";
    }
  }
  if (wsum != v.dim()) {
    c.weights_ok = false;
    c.witness = "V is not a sum of h-weight spaces";
  }
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<int> coef(-9, 9);
  Vec mix(g.dim());
  for (const auto& x : v.basis) axpy(mix, CycNum(coef(rng)), x);
  wvecs.push_back(mix);
  for (const auto& x : wvecs) {
    if (is_zero(x)) continue;
    if (module_closure(g, fixed.basis, x).dim() != v.dim()) {
      c.irreducible = false;
      c.witness = "proper submodule of V at grade " + grade_str(gr);
      break;
    }
  }
  return c;
}

}  // namespace

TorusReport check_torus(const Multiloop& L) {
  const LieAlgebra& g = *L.g;
  TorusReport rep;
  auto ord = L.sigma.orders();
  rep.a0 = {"A0", ord == L.m(), ""};
  if (!rep.a0.pass) {
    std::ostringstream os;
    for (int i = 0; i < L.n(); ++i)
      if (ord[i] != L.m()[i]) {
        os << "ord(sigma_" << i + 1 << ") = " << ord[i] << " but m_" << i + 1 << " = " << L.m()[i];
        break;
      }
    rep.a0.witness = os.str();
  }

  Subspace fixed = L.rd ? L.rd->fixed : fixed_subalgebra(g, L.sigma);
  if (fixed.dim() == 0) {
    rep.a1 = {"A1", false, "g^sigma = 0"};
  } else {
    SimplicityReport sr = simplicity(subalgebra(g, fixed));
    rep.a1 = {"A1", sr.simple, sr.simple ? "dim g^sigma = " + std::to_string(fixed.dim()) : sr.witness};
  }

  // root system of g^sigma relative to h and its enlargement
  std::vector<Vec> en;
  const RootDatum* rd = L.rd.get();
  if (rd) {
    RootSet fs;
    fs.form = rd->rs.form;
    Grade zero(L.n(), 0);
    for (int a = 0; a < rd->size(); ++a)
      if (rd->refined.count({a, zero})) fs.roots.push_back(rd->rs.roots[a]);
    if (fs.roots.empty()) {
      rep.delta_type = "empty";
    } else {
      try {
        en = indivisible_and_enlarged(fs).second;
        rep.delta_type = classify(fs, choose_base(fs)).type;
      } catch (const Error&) {
        en = fs.roots;
        rep.delta_type = "unclassified";
      }
    }
  }
  rep.a2 = {"A2", true, ""};
  for (const auto& [gr, sub] : L.comps) {
    if (std::all_of(gr.begin(), gr.end(), [](long long x) { return x == 0; })) continue;
    A2Component c = decompose(L, gr, sub, fixed, en, rd);
    if (!c.pass() && rep.a2.pass) rep.a2 = {"A2", false, "grade " + grade_str(gr) + ": " + c.witness};
    rep.components.push_back(std::move(c));
  }

  long go = group_order(L.sigma);
  long prod = 1;
  for (long o : ord) prod *= o;
  rep.a3 = {"A3", go == prod, "|<sigma>| = " + std::to_string(go) + ", prod ord = " + std::to_string(prod)};
  rep.is_torus = rep.a0.pass && rep.a1.pass && rep.a2.pass && rep.a3.pass;
  return rep;
}

namespace {

bool a3_holds(const AutTuple& s, const IntMat& p, long target) {
  AutTuple sp = gl_action(s, p);
  long prod = 1;
  for (long o : sp.orders()) prod *= o;
  return prod == target;
}

// distance from the identity, then entries of P - I in the order 0, 1, -1, 2, -2, ...
std::tuple<int, long long, std::vector<long long>> p_key(const IntMat& p) {
  int ham = 0;
  long long l1 = 0;
  std::vector<long long> rank;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < p.size(); ++j) {
      long long d = p[i][j] - (i == j ? 1 : 0);
      ham += d != 0;
      l1 += std::llabs(d);
      rank.push_back(d > 0 ? 2 * d - 1 : -2 * d);
    }
  return {ham, l1, rank};
}

}  // namespace

std::vector<IntMat> p_candidates(int n, int bound) {
  IntMat id = int_identity(n);
  std::vector<IntMat> out{id};
  auto by_key = [](const IntMat& x, const IntMat& y) { return p_key(x) < p_key(y); };
  if (n == 1) {
    if (bound >= 1) out.push_back({{-1}});
  } else if (n == 2) {
    std::vector<IntMat> cands;
    for (long long a = -bound; a <= bound; ++a)
      for (long long b = -bound; b <= bound; ++b)
        for (long long c = -bound; c <= bound; ++c)
          for (long long d = -bound; d <= bound; ++d)
            if (std::llabs(a * d - b * c) == 1 && !(a == 1 && b == 0 && c == 0 && d == 1))
              cands.push_back({{a, b}, {c, d}});
    std::sort(cands.begin(), cands.end(), by_key);
    out.insert(out.end(), cands.begin(), cands.end());
  } else if (n > 2) {
    // words in the elementary transvections I +- e_ij, breadth first
    std::vector<IntMat> gens;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j)
          for (int sgn : {1, -1}) {
            IntMat e = id;
            e[i][j] = sgn;
            gens.push_back(e);
          }
    std::set<IntMat> seen{id};
    std::vector<IntMat> level{id};
    for (int len = 1; len <= bound; ++len) {
      std::vector<IntMat> next;
      for (const auto& p : level)
        for (const auto& e : gens) {
          IntMat q = int_mul(p, e);
          if (seen.insert(q).second) next.push_back(q);
        }
      std::sort(next.begin(), next.end(), by_key);
      out.insert(out.end(), next.begin(), next.end());
      level = std::move(next);
    }
  }
  return out;
}

IntMat find_P_for_A3(const AutTuple& s, int bound) {
  int n = s.n();
  if (n <= 1) return int_identity(n);
  long target = group_order(s);
  for (const auto& p : p_candidates(n, bound))
    if (a3_holds(s, p, target)) return p;
  fail(ErrorKind::SearchExhausted, "no P with entries bounded by " + std::to_string(bound) + " satisfies A3");
}

ToralizationCertificate toralize(const Multiloop& L, int bound) {
  if (!L.rd) fail(ErrorKind::ZeroFixedAlgebra, "g^sigma = 0: no support-isomorphic Lie torus exists");
  const RootDatum& rd = *L.rd;
  const LieAlgebra& g = *L.g;
  ToralizationCertificate cert;
  cert.base = rd.base.simple;
  auto box = fundamental_box(L.m());
  for (int a : cert.base) {
    const Grade* pick = nullptr;
    for (const auto& lam : box)
      if (rd.refined.count({a, lam})) {
        pick = &lam;
        break;
      }
    if (!pick) fail(ErrorKind::EmptyComponent, "simple root " + rd.label(a) + " has no nonzero component");
    cert.lambda.push_back(*pick);
    std::vector<Rational> sv;
    for (auto x : *pick) sv.emplace_back(static_cast<long>(x));
    cert.s.push_back(sv);
  }
  AutTuple tau = tau_twist(L, cert.s);
  std::vector<Mat> tw;
  for (int i = 0; i < L.n(); ++i) tw.push_back(tau.autos[i].m * L.sigma.autos[i].m);
  cert.twisted = aut_tuple(g, tw, L.m());
  cert.P = find_P_for_A3(cert.twisted, bound);
  cert.result = make_multiloop(L.g, gl_action(cert.twisted, cert.P));
  attach_roots(cert.result, CartanChoice{rd.h, "inherited from the source algebra", rd.seed});
  return cert;
}

}  // namespace mloop
