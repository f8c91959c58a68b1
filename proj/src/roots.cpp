#include <optional>
#include "mloop/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mloop/errors.hpp"

namespace mloop {

// ---- exact eigenvalues ----

namespace {

bool rationalize(double x, Rational& out) {
  if (!std::isfinite(x)) return false;
  double tol = 1e-9 * std::max(1.0, std::fabs(x));
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double y = x;
  for (int it = 0; it < 40; ++it) {
    double a = std::floor(y);
    if (std::fabs(a) > 1e12) break;
    long long ai = static_cast<long long>(a);
    long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > 100000) break;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    if (std::fabs(x - static_cast<double>(p1) / static_cast<double>(q1)) < tol) {
      out = Rational(static_cast<long>(p1), static_cast<long>(q1));
      out.canonicalize();
      return true;
    }
    double frac = y - a;
    if (frac < 1e-15) break;
    y = 1.0 / frac;
  }
  return false;
}

std::vector<CycNum> candidates(std::complex<double> z) {
  std::vector<CycNum> out;
  Rational a, b;
  if (std::fabs(z.imag()) < 1e-9 && rationalize(z.real(), a)) out.emplace_back(a);
  const double tau = 2 * std::numbers::pi;
  for (int m : {4, 3, 8, 12, 5, 10, 7, 9, 16, 15, 20, 24}) {
    double s = std::sin(tau / m), c = std::cos(tau / m);
    double bb = z.imag() / s;
    if (rationalize(bb, b) && rationalize(z.real() - bb * c, a) && b != 0)
      out.push_back(CycNum(a) + CycNum(b) * CycNum::zeta(m, 1));
  }
  Rational r;
  if (std::abs(z) > 1e-12 && rationalize(std::abs(z), r)) {
    double ang = std::arg(z) / tau;
    for (int m = 1; m <= 24; ++m) {
      double k = ang * m;
      if (std::fabs(k - std::round(k)) < 1e-9) {
        out.push_back(CycNum(r) * CycNum::zeta(m, static_cast<long>(std::lround(k))));
        break;
      }
    }
  }
  return out;
}

bool vec_less(const Vec& a, const Vec& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] == b[i]) continue;
    if (a[i].order() != b[i].order()) return a[i].order() < b[i].order();
    const auto& ca = a[i].coeffs();
    const auto& cb = b[i].coeffs();
    for (size_t k = 0; k < ca.size(); ++k)
      if (ca[k] != cb[k]) return ca[k] < cb[k];
  }
  return a.size() < b.size();
}

}  // namespace

std::vector<CycNum> exact_eigenvalues(const Mat& a, long field_order) {
  int n = a.r;
  std::vector<CycNum> found;
  if (n == 0) return found;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = a(i, j).to_complex();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  if (es.info() != Eigen::Success) fail(ErrorKind::NotDiagonalizable, "eigenvalue solver did not converge");
  std::vector<std::complex<double>> approx;
  for (int i = 0; i < n; ++i) approx.push_back(es.eigenvalues()(i));
  for (const auto& z : approx) {
    bool dup = false;
    for (const auto& f : found)
      if (std::abs(f.to_complex() - z) < 1e-6 * (1 + std::abs(z))) dup = true;
    if (dup) continue;
    bool ok = false, outside = false;
    for (const auto& c : candidates(z)) {
      if (field_order > 0 && field_order % c.order() != 0) {
        outside = true;
        continue;
      }
      if (rank(a - c * Mat::identity(n)) < n) {
        found.push_back(c);
        ok = true;
        break;
      }
    }
    if (!ok) {
      std::ostringstream os;
      os << "eigenvalue near " << z.real() << (z.imag() < 0 ? "-" : "+") << std::fabs(z.imag()) << "i"
         << (outside ? " needs a larger cyclotomic field than the session order" : " is not in a cyclotomic field");
      fail(ErrorKind::FieldTooSmall, os.str());
    }
  }
  return found;
}

std::vector<std::pair<Vec, Subspace>> joint_eigenspaces(const Subspace& s, const std::vector<Mat>& ms,
                                                       long field_order) {
  std::vector<std::pair<Vec, Subspace>> parts{{Vec{}, s}};
  for (const auto& m : ms) {
    std::vector<std::pair<Vec, Subspace>> next;
    for (const auto& [key, sub] : parts) {
      Mat a = restrict_to(sub, m);
      int total = 0;
      for (const auto& ev : exact_eigenvalues(a, field_order)) {
        std::vector<Vec> out;
        for (const auto& k : nullspace(a - ev * Mat::identity(a.r))) out.push_back(sub.from_coords(k));
        total += static_cast<int>(out.size());
        Vec nk = key;
        nk.push_back(ev);
        next.emplace_back(nk, span(s.n, out));
      }
      if (total != sub.dim()) fail(ErrorKind::NotDiagonalizable, "action is not diagonalizable");
    }
    parts = std::move(next);
  }
  std::sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) { return vec_less(x.first, y.first); });
  return parts;
}

// ---- abstract root sets ----

CycNum RootSet::ip(const Vec& a, const Vec& b) const { return dot(a, form * b); }

int RootSet::find(const Vec& a) const {
  for (size_t i = 0; i < roots.size(); ++i)
    if (roots[i] == a) return static_cast<int>(i);
  return -1;
}

namespace {

bool lex_positive(const Vec& c) {
  for (const auto& x : c) {
    if (x.is_zero()) continue;
    return x.rational() > 0;
  }
  return false;
}

long to_long(const CycNum& x, const std::string& what) {
  if (!x.is_integer()) fail(ErrorKind::ValidationError, what + " is not an integer: " + x.str());
  return x.rational().get_num().get_si();
}

}  // namespace

BaseInfo choose_base(const RootSet& rs) {
  BaseInfo b;
  int nr = static_cast<int>(rs.roots.size());
  if (nr == 0) return b;
  int r = static_cast<int>(rs.roots[0].size());
  Echelon e(r);
  std::vector<Vec> qb;
  for (const auto& a : rs.roots)
    if (e.add(a)) qb.push_back(a);
  Mat qm = Mat::from_cols(r, qb);
  auto coords_in = [&](const Mat& m, const Vec& a) {
    auto c = solve(m, a);
    if (!c) fail(ErrorKind::ValidationError, "root outside the span of the chosen basis");
    for (const auto& x : *c)
      if (!x.is_rational()) fail(ErrorKind::ValidationError, "roots are not rationally related");
    return *c;
  };
  std::vector<Vec> qc;
  for (const auto& a : rs.roots) qc.push_back(coords_in(qm, a));
  std::vector<int> pos;
  for (int i = 0; i < nr; ++i)
    if (lex_positive(qc[i])) pos.push_back(i);
  for (int i : pos) {
    bool decomposable = false;
    for (int j : pos) {
      int k = rs.find(rs.roots[i] - rs.roots[j]);
      if (k >= 0 && lex_positive(qc[k])) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) b.simple.push_back(i);
  }
  std::sort(b.simple.begin(), b.simple.end(), [&](int x, int y) { return vec_less(qc[y], qc[x]); });
  std::vector<Vec> sv;
  for (int i : b.simple) sv.push_back(rs.roots[i]);
  Mat sm = Mat::from_cols(r, sv);
  for (const auto& a : rs.roots) {
    Vec c = coords_in(sm, a);
    IntVec ic;
    bool pos_seen = false, neg_seen = false;
    for (const auto& x : c) {
      long v = to_long(x, "root coordinate on the base");
      pos_seen |= v > 0;
      neg_seen |= v < 0;
      ic.push_back(v);
    }
    if (pos_seen && neg_seen) fail(ErrorKind::ValidationError, "root with mixed-sign coordinates on the base");
    b.coords.push_back(ic);
  }
  int l = static_cast<int>(b.simple.size());
  b.cartan.assign(l, std::vector<long>(l));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      const Vec& ai = rs.roots[b.simple[i]];
      const Vec& aj = rs.roots[b.simple[j]];
      b.cartan[i][j] = to_long(CycNum(2) * rs.ip(aj, ai) / rs.ip(ai, ai), "Cartan integer");
    }
  return b;
}

Classification classify(const RootSet& rs, const BaseInfo& b) {
  Classification c;
  int nr = static_cast<int>(rs.roots.size());
  int l = static_cast<int>(b.simple.size());
  c.rank = l;
  for (const auto& a : rs.roots)
    if (rs.find(CycNum(2) * a) >= 0) c.reduced = false;
  // connectivity under nonzero pairing
  std::vector<int> comp(nr, -1);
  std::vector<int> stack;
  if (nr > 0) {
    comp[0] = 0;
    stack.push_back(0);
  }
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < nr; ++j)
      if (comp[j] < 0 && !rs.ip(rs.roots[i], rs.roots[j]).is_zero()) {
        comp[j] = 0;
        stack.push_back(j);
      }
  }
  c.irreducible = nr > 0 && std::all_of(comp.begin(), comp.end(), [](int x) { return x == 0; });
  c.type = "unclassified";
  if (!c.irreducible) return c;
  std::vector<Rational> lens;
  for (const auto& a : rs.roots) {
    CycNum q = rs.ip(a, a);
    if (!q.is_rational()) return c;
    if (std::find(lens.begin(), lens.end(), q.rational()) == lens.end()) lens.push_back(q.rational());
  }
  std::sort(lens.begin(), lens.end());
  if (!c.reduced) {
    c.family = "BC";
  } else if (lens.size() == 1) {
    if (nr == l * (l + 1)) c.family = "A";
    else if (l >= 4 && nr == 2 * l * (l - 1)) c.family = "D";
    else if ((l == 6 && nr == 72) || (l == 7 && nr == 126) || (l == 8 && nr == 240)) c.family = "E";
  } else if (lens.size() == 2) {
    Rational ratio = lens[1] / lens[0];
    int nshort = 0, nlong = 0;
    for (const auto& a : rs.roots) (rs.ip(a, a).rational() == lens[0] ? nshort : nlong)++;
    if (ratio == 3 && l == 2) c.family = "G";
    else if (ratio == 2 && l == 2) c.family = "B";
    else if (ratio == 2 && l == 4 && nshort == 24 && nlong == 24) c.family = "F";
    else if (ratio == 2 && nshort == 2 * l) c.family = "B";
    else if (ratio == 2 && nlong == 2 * l) c.family = "C";
  }
  if (!c.family.empty()) c.type = c.family + std::to_string(l);
  return c;
}

std::pair<std::vector<Vec>, std::vector<Vec>> indivisible_and_enlarged(const RootSet& rs) {
  BaseInfo b = choose_base(rs);
  Classification c = classify(rs, b);
  if (c.family.empty()) fail(ErrorKind::UnclassifiedType, "root system could not be classified");
  std::vector<Vec> ind, en = rs.roots;
  for (const auto& a : rs.roots)
    if (rs.find(CycNum(Rational(1, 2)) * a) < 0) ind.push_back(a);
  // type B_l with l >= 1; a reduced rank-one system is B_1
  bool type_b = c.family == "B" || (c.family == "A" && c.rank == 1);
  if (type_b) {
    Rational shortest = -1;
    for (const auto& a : rs.roots) {
      Rational q = rs.ip(a, a).rational();
      if (shortest < 0 || q < shortest) shortest = q;
    }
    for (const auto& a : rs.roots)
      if (rs.ip(a, a).rational() == shortest) en.push_back(CycNum(2) * a);
  }
  return {ind, en};
}

// ---- root datum ----

std::string RootDatum::label(int i) const {
  std::string s = "a[";
  for (size_t k = 0; k < base.coords[i].size(); ++k) s += (k ? "," : "") + std::to_string(base.coords[i][k]);
  return s + "]";
}

int RootDatum::find_coords(const IntVec& c) const {
  for (size_t i = 0; i < base.coords.size(); ++i)
    if (base.coords[i] == c) return static_cast<int>(i);
  return -1;
}

CycNum RootDatum::pairing(const Vec& gamma, int alpha) const { return dot(gamma, coroots_h[alpha]); }

Subspace fixed_subalgebra(const LieAlgebra& g, const AutTuple& s) {
  std::vector<Mat> ms;
  for (const auto& a : s.autos) ms.push_back(a.m - Mat::identity(g.dim()));
  return joint_kernel(g.dim(), ms);
}

namespace {

bool abelian_span(const LieAlgebra& g, const std::vector<Vec>& b) {
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = i + 1; j < b.size(); ++j)
      if (!is_zero(g.bracket(b[i], b[j]))) return false;
  return true;
}

bool self_centralizing(const LieAlgebra& g, const Subspace& t, const Subspace& g0) {
  return same(intersect(centralizer(g, t.basis), g0), t);
}

bool diagonalizable(const LieAlgebra& g, const std::vector<Vec>& h, long field_order) {
  std::vector<Mat> ms;
  for (const auto& x : h) ms.push_back(g.ad(x));
  try {
    joint_eigenspaces(whole_space(g.dim()), ms, field_order);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotDiagonalizable) return false;
    throw;
  }
  return true;
}

}  // namespace

CartanChoice cartan_subalgebra(const LieAlgebra& g, const Subspace& g0, const RootOptions& opt) {
  if (g0.dim() == 0) fail(ErrorKind::ZeroFixedAlgebra, "fixed-point subalgebra is zero");
  if (g.chevalley) {
    std::vector<Vec> hs;
    for (int i : g.chevalley->h_index) hs.push_back(g.basis(i));
    Subspace t = intersect(span(g.dim(), hs), g0);
    if (t.dim() > 0 && self_centralizing(g, t, g0)) return {t.basis, "fixed part of the standard torus", opt.seed};
  }
  if (abelian_span(g, g0.basis) && diagonalizable(g, g0.basis, opt.field_order))
    return {g0.basis, "abelian fixed algebra", opt.seed};
  int d = g0.dim();
  // basis vectors of g0 first (split elements are often among them), then seeded random elements
  bool field_small = false;
  auto try_element = [&](const Vec& x) -> std::optional<Subspace> {
    Mat p = mat_pow(restrict_to(g0, g.ad(x)), d);
    std::vector<Vec> out;
    for (const auto& k : nullspace(p)) out.push_back(g0.from_coords(k));
    Subspace hsp = span(g.dim(), out);
    if (!abelian_span(g, hsp.basis) || !self_centralizing(g, hsp, g0)) return std::nullopt;
    try {
      if (!diagonalizable(g, hsp.basis, opt.field_order)) return std::nullopt;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::FieldTooSmall) throw;
      field_small = true;
      return std::nullopt;
    }
    return hsp;
  };
  for (const auto& b : g0.basis)
    if (auto h = try_element(b)) return {h->basis, "generalized null space of a basis element", opt.seed};
  for (int attempt = 0; attempt < opt.retries; ++attempt) {
    unsigned long seed = opt.seed + static_cast<unsigned long>(attempt);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-9, 9);
    Vec x(g.dim());
    for (const auto& b : g0.basis) axpy(x, CycNum(coef(rng)), b);
    if (auto h = try_element(x)) return {h->basis, "generalized null space of a generic element", seed};
  }
  fail(field_small ? ErrorKind::FieldTooSmall : ErrorKind::NotDiagonalizable,
       "no Cartan subalgebra found after " + std::to_string(opt.retries) + " seeds");
}

RootDatum root_decomposition(const LieAlgebra& g, const std::vector<Vec>& h, long field_order) {
  RootDatum rd;
  rd.h = h;
  int r = static_cast<int>(h.size());
  std::vector<Mat> ms;
  for (const auto& x : h) ms.push_back(g.ad(x));
  auto parts = joint_eigenspaces(whole_space(g.dim()), ms, field_order);
  rd.gram = Mat(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) rd.gram(i, j) = g.killing(h[i], h[j]);
  rd.rs.form = inverse(rd.gram);
  std::vector<Vec> roots;
  std::vector<Subspace> spaces;
  rd.g0.n = g.dim();
  for (auto& [key, sub] : parts) {
    if (is_zero(key)) {
      rd.g0 = sub;
      continue;
    }
    roots.push_back(key);
    spaces.push_back(sub);
  }
  {
    // roots whose spaces start earliest in the basis come first, so the base
    // follows the Chevalley positive system when h is the standard torus
    std::vector<int> ord(roots.size());
    for (size_t i = 0; i < ord.size(); ++i) ord[i] = static_cast<int>(i);
    std::stable_sort(ord.begin(), ord.end(), [&](int x, int y) {
      if (spaces[x].piv[0] != spaces[y].piv[0]) return spaces[x].piv[0] < spaces[y].piv[0];
      return vec_less(roots[y], roots[x]);
    });
    std::vector<Vec> r2;
    std::vector<Subspace> s2;
    for (int i : ord) r2.push_back(roots[i]), s2.push_back(spaces[i]);
    roots = std::move(r2);
    spaces = std::move(s2);
  }
  rd.rs.roots = roots;
  for (const auto& a : roots)
    if (rd.rs.ip(a, a).is_zero()) fail(ErrorKind::IsotropicRoot, "root with (a|a) = 0");
  BaseInfo b = choose_base(rd.rs);
  // order: positive roots by height then coordinates descending, then negatives in the same order
  int nr = static_cast<int>(roots.size());
  std::vector<int> perm(nr);
  for (int i = 0; i < nr; ++i) perm[i] = i;
  auto key = [&](int i) {
    const IntVec& c = b.coords[i];
    long ht = 0;
    for (auto v : c) ht += v;
    return std::make_pair(ht < 0, std::labs(ht));
  };
  std::sort(perm.begin(), perm.end(), [&](int x, int y) {
    auto kx = key(x), ky = key(y);
    if (kx != ky) return kx < ky;
    IntVec cx = b.coords[x], cy = b.coords[y];
    if (kx.first)
      for (auto& v : cx) v = -v;
    if (kx.first)
      for (auto& v : cy) v = -v;
    return cx > cy;
  });
  std::vector<int> inv(nr);
  for (int i = 0; i < nr; ++i) inv[perm[i]] = i;
  rd.rs.roots.clear();
  for (int i : perm) {
    rd.rs.roots.push_back(roots[i]);
    rd.spaces.push_back(spaces[i]);
    rd.base.coords.push_back(b.coords[i]);
  }
  for (int s : b.simple) rd.base.simple.push_back(inv[s]);
  rd.base.cartan = b.cartan;
  rd.cls = classify(rd.rs, rd.base);
  for (const auto& a : rd.rs.roots) {
    CycNum aa = rd.rs.ip(a, a);
    Vec t = rd.rs.form * a;
    Vec hc = (CycNum(2) / aa) * t;
    Vec hg(g.dim());
    for (int j = 0; j < r; ++j) axpy(hg, hc[j], h[j]);
    rd.coroots_h.push_back(hc);
    rd.coroots.push_back(hg);
  }
  std::vector<Vec> cols = rd.g0.basis;
  for (const auto& s : rd.spaces) cols.insert(cols.end(), s.basis.begin(), s.basis.end());
  rd.from_roots = Mat::from_cols(g.dim(), cols);
  rd.to_roots = inverse(rd.from_roots);
  return rd;
}

void attach_roots(Multiloop& L, const RootOptions& opt) {
  const LieAlgebra& g = *L.g;
  Subspace fixed = fixed_subalgebra(g, L.sigma);
  if (fixed.dim() == 0) {
    L.rd.reset();
    return;
  }
  attach_roots(L, cartan_subalgebra(g, fixed, opt), opt.field_order);
}

void attach_roots(Multiloop& L, const CartanChoice& ch, long field_order) {
  const LieAlgebra& g = *L.g;
  Subspace fixed = fixed_subalgebra(g, L.sigma);
  for (const auto& x : ch.basis)
    if (!fixed.contains(x)) fail(ErrorKind::ValidationError, "Cartan element is not fixed by sigma");
  auto rd = std::make_shared<RootDatum>(root_decomposition(g, ch.basis, field_order));
  rd->fixed = fixed;
  rd->cartan_method = ch.method;
  rd->seed = ch.seed;
  for (int i = 0; i < rd->size(); ++i)
    for (const auto& [gr, sub] : L.comps) {
      Subspace x = intersect(rd->spaces[i], sub);
      if (x.dim() > 0) rd->refined[{i, gr}] = x;
    }
  for (const auto& [gr, sub] : L.comps) {
    Subspace x = intersect(rd->g0, sub);
    if (x.dim() > 0) rd->refined0[gr] = x;
  }
  L.rd = rd;
}

Multiloop build_multiloop(std::shared_ptr<const LieAlgebra> g, AutTuple s, const RootOptions& opt) {
  Multiloop L = make_multiloop(std::move(g), std::move(s));
  attach_roots(L, opt);
  return L;
}

namespace {

const RootDatum& need_rd(const Multiloop& L) {
  if (!L.rd) fail(ErrorKind::ZeroFixedAlgebra, "no root datum: the fixed-point subalgebra is zero");
  return *L.rd;
}

Grade neg_grade(const Grade& g, const std::vector<long>& m) {
  IntVec v(g.size());
  for (size_t i = 0; i < g.size(); ++i) v[i] = -g[i];
  return reduce_mod(v, m);
}

}  // namespace

Sl2Triple coroot_and_triple(const Multiloop& L, int alpha, const Grade& grade) {
  const RootDatum& rd = need_rd(L);
  const LieAlgebra& g = *L.g;
  auto it = rd.refined.find({alpha, reduce_mod(grade, L.m())});
  if (it == rd.refined.end()) fail(ErrorKind::EmptyComponent, "g_alpha^l is zero");
  int nalpha = rd.rs.find(-rd.rs.roots[alpha]);
  auto jt = rd.refined.find({nalpha, neg_grade(grade, L.m())});
  if (nalpha < 0 || jt == rd.refined.end()) fail(ErrorKind::EmptyComponent, "g_-alpha^-l is zero");
  Sl2Triple t;
  t.alpha = alpha;
  t.grade = reduce_mod(grade, L.m());
  t.xp = it->second.basis[0];
  Vec y;
  CycNum k;
  for (const auto& c : jt->second.basis) {
    k = g.killing(t.xp, c);
    if (!k.is_zero()) {
      y = c;
      break;
    }
  }
  if (y.empty()) fail(ErrorKind::ValidationError, "Killing pairing of g_alpha^l and g_-alpha^-l vanishes");
  CycNum aa = rd.rs.ip(rd.rs.roots[alpha], rd.rs.roots[alpha]);
  t.xm = (CycNum(2) / aa / k) * y;
  t.h = rd.coroots[alpha];
  if (g.bracket(t.xp, t.xm) != t.h || g.bracket(t.h, t.xp) != CycNum(2) * t.xp ||
      g.bracket(t.h, t.xm) != CycNum(-2) * t.xm)
    fail(ErrorKind::ValidationError, "sl2-triple relations fail for " + rd.label(alpha));
  return t;
}

std::vector<Sl2Triple> all_triples(const Multiloop& L) {
  std::vector<Sl2Triple> out;
  if (!L.rd) return out;
  for (const auto& [key, sub] : L.rd->refined) out.push_back(coroot_and_triple(L, key.first, key.second));
  return out;
}

Vec reflect(const RootDatum& rd, int alpha, const Vec& gamma) {
  return gamma - rd.pairing(gamma, alpha) * rd.rs.roots[alpha];
}

bool RootSystemReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

RootSystemReport verify_root_system(const Multiloop& L) {
  const RootDatum& rd = need_rd(L);
  RootSystemReport rep;
  rep.cls = rd.cls;
  int total = rd.g0.dim();
  for (const auto& s : rd.spaces) total += s.dim();
  rep.checks.push_back({"dimension sum", total == L.g->dim(),
                        std::to_string(total) + " of " + std::to_string(L.g->dim())});
  rep.checks.push_back({"finite", true, std::to_string(rd.size()) + " roots"});
  Check iso{"nonisotropic", true, ""};
  for (int i = 0; i < rd.size(); ++i)
    if (rd.rs.ip(rd.rs.roots[i], rd.rs.roots[i]).is_zero()) iso = {"nonisotropic", false, rd.label(i)};
  rep.checks.push_back(iso);
  int rk = rank(Mat::from_rows(rd.rank(), rd.rs.roots));
  rep.checks.push_back({"spanning", rk == rd.rank(), "rank " + std::to_string(rk) + " of " + std::to_string(rd.rank())});
  Check integ{"integrality", true, ""}, refl{"reflection stable", true, ""};
  for (int a = 0; a < rd.size(); ++a)
    for (int b = 0; b < rd.size(); ++b) {
      CycNum p = rd.pairing(rd.rs.roots[b], a);
      if (integ.pass && !p.is_integer()) integ = {"integrality", false, "<" + rd.label(b) + ", h_" + rd.label(a) + ">"};
      if (refl.pass && rd.rs.find(reflect(rd, a, rd.rs.roots[b])) < 0)
        refl = {"reflection stable", false, "s_" + rd.label(a) + "(" + rd.label(b) + ")"};
    }
  rep.checks.push_back(integ);
  rep.checks.push_back(refl);
  rep.checks.push_back({"irreducible", rd.cls.irreducible, ""});
  rep.checks.push_back({"classified", !rd.cls.family.empty(), rd.cls.type});
  return rep;
}

std::vector<Check> multiplicity_checks(const Multiloop& L) {
  const RootDatum& rd = need_rd(L);
  std::vector<Check> out;
  for (const auto& [key, sub] : rd.refined) {
    auto [a, gr] = key;
    std::string where = rd.label(a) + " at grade (";
    for (size_t i = 0; i < gr.size(); ++i) where += (i ? "," : "") + std::to_string(gr[i]);
    where += ")";
    out.push_back({"dim one", sub.dim() == 1, where + " has dim " + std::to_string(sub.dim())});
    int a2 = rd.rs.find(CycNum(2) * rd.rs.roots[a]);
    IntVec g2(gr.size());
    for (size_t i = 0; i < gr.size(); ++i) g2[i] = 2 * gr[i];
    bool empty = a2 < 0 || !rd.refined.count({a2, reduce_mod(g2, L.m())});
    out.push_back({"no double", empty, where});
  }
  return out;
}

AutTuple tau_twist(const Multiloop& L, const std::vector<std::vector<Rational>>& s_on_base, long field_order) {
  const RootDatum& rd = need_rd(L);
  int n = L.n();
  int l = static_cast<int>(rd.base.simple.size());
  if (static_cast<int>(s_on_base.size()) != l) fail(ErrorKind::DimensionMismatch, "s needs one value per simple root");
  for (const auto& v : s_on_base)
    if (static_cast<int>(v.size()) != n) fail(ErrorKind::DimensionMismatch, "s values must have length n");
  AutTuple out;
  int d = L.g->dim();
  for (int i = 0; i < n; ++i) {
    Vec diag;
    for (int k = 0; k < rd.g0.dim(); ++k) diag.push_back(CycNum(1));
    for (int a = 0; a < rd.size(); ++a) {
      Rational s = 0;
      for (int k = 0; k < l; ++k) s += Rational(static_cast<long>(rd.base.coords[a][k])) * s_on_base[k][i];
      Rational q = -s / Rational(L.m()[i]);
      CycNum z = root_of_unity(q);
      if (field_order > 0 && field_order % z.order() != 0)
        fail(ErrorKind::FieldTooSmall, "twist needs roots of unity of order " + std::to_string(z.order()));
      for (int k = 0; k < rd.spaces[a].dim(); ++k) diag.push_back(z);
    }
    Mat dm(d, d);
    for (int k = 0; k < d; ++k) dm(k, k) = diag[k];
    Mat t = rd.from_roots * dm * rd.to_roots;
    out.autos.push_back({t, matrix_order(t)});
    out.m.push_back(out.autos.back().order);
  }
  return out;
}

}  // namespace mloop
