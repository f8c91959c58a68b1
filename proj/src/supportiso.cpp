#include "mloop/supportiso.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "mloop/errors.hpp"

namespace mloop {

Regrade rho_regrade(IntMat basis, IntMat images) {
  Regrade r;
  r.kind = Regrade::Rho;
  r.basis = std::move(basis);
  r.images = std::move(images);
  return r;
}

Regrade shift_regrade(std::vector<IntVec> s) {
  Regrade r;
  r.kind = Regrade::SShift;
  r.s = std::move(s);
  return r;
}

IntVec shift_value(const std::vector<IntVec>& s, const IntVec& coords) {
  if (s.empty()) return {};
  IntVec v(s[0].size(), 0);
  for (size_t k = 0; k < coords.size(); ++k)
    for (size_t i = 0; i < v.size(); ++i) v[i] += coords[k] * s[k][i];
  return v;
}

namespace {

Mat int_to_mat(const IntMat& a, int cols) {
  Mat m(static_cast<int>(a.size()), cols);
  for (size_t i = 0; i < a.size(); ++i)
    for (int j = 0; j < cols; ++j) m(static_cast<int>(i), j) = CycNum(Rational(static_cast<long>(a[i][j])));
  return m;
}

bool all_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

// coefficients c with sum c_j rows_j = v, if integral
std::optional<IntVec> int_coords(const IntMat& rows, const IntVec& v) {
  int n = static_cast<int>(v.size());
  if (rows.empty()) return all_zero(v) ? std::optional<IntVec>(IntVec{}) : std::nullopt;
  Mat a = transpose(int_to_mat(rows, n));
  Vec b(n);
  for (int i = 0; i < n; ++i) b[i] = CycNum(Rational(static_cast<long>(v[i])));
  auto c = solve(a, b);
  if (!c) return std::nullopt;
  IntVec out;
  for (const auto& x : *c) {
    if (!x.is_integer()) return std::nullopt;
    out.push_back(x.rational().get_num().get_si());
  }
  return out;
}

IntVec combine(const IntMat& rows, const IntVec& c, int n) {
  IntVec v(n, 0);
  for (size_t j = 0; j < rows.size(); ++j)
    for (int i = 0; i < n; ++i) v[i] += c[j] * rows[j][i];
  return v;
}

IntVec zero_coords(const Multiloop& L) {
  return IntVec(L.rd ? L.rd->base.simple.size() : 0, 0);
}

// generators (Q-part on the base, Z^n part) of the group generated by the support of L
std::vector<std::pair<IntVec, IntVec>> support_generators(const Multiloop& L) {
  std::vector<std::pair<IntVec, IntVec>> gens;
  int n = L.n();
  IntVec z = zero_coords(L);
  for (int i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = L.m()[i];
    gens.emplace_back(z, e);
  }
  if (L.rd) {
    for (const auto& [key, sub] : L.rd->refined) gens.emplace_back(L.rd->base.coords[key.first], key.second);
    for (const auto& [gr, sub] : L.rd->refined0) gens.emplace_back(z, gr);
  } else {
    for (const auto& [gr, sub] : L.comps) gens.emplace_back(z, gr);
  }
  return gens;
}

}  // namespace

IntMat RegradedView::support_lattice() const {
  auto gens = support_generators(*L_);
  int n = L_->n();
  for (const auto& st : steps_) {
    for (auto& [a, lam] : gens) {
      if (st.kind == Regrade::SShift) {
        IntVec sv = shift_value(st.s, a);
        for (int i = 0; i < n; ++i) lam[i] -= sv[i];
      } else {
        auto c = int_coords(st.basis, lam);
        if (!c) fail(ErrorKind::DomainMismatch, "support element outside the domain of rho");
        lam = combine(st.images, *c, n);
      }
    }
  }
  IntMat rows;
  for (const auto& [a, lam] : gens) rows.push_back(lam);
  return hermite_basis(rows, n);
}

RegradedView RegradedView::then(const Regrade& r) const {
  int n = L_->n();
  if (r.kind == Regrade::Rho) {
    if (r.basis.size() != r.images.size()) fail(ErrorKind::DimensionMismatch, "rho needs one image per basis vector");
    for (const auto& v : r.basis)
      if (static_cast<int>(v.size()) != n) fail(ErrorKind::DimensionMismatch, "rho basis vectors need length n");
    for (const auto& v : r.images)
      if (static_cast<int>(v.size()) != n) fail(ErrorKind::DimensionMismatch, "rho images need length n");
    int k = static_cast<int>(r.basis.size());
    if (rank(int_to_mat(r.basis, n)) != k) fail(ErrorKind::DomainMismatch, "rho domain vectors are dependent");
    if (hermite_basis(r.basis, n) != support_lattice())
      fail(ErrorKind::DomainMismatch, "rho is not defined on the lattice generated by the support");
    if (rank(int_to_mat(r.images, n)) != k) fail(ErrorKind::NotMonomorphism, "rho is not injective");
  } else {
    size_t l = L_->rd ? L_->rd->base.simple.size() : 0;
    bool trivial = std::all_of(r.s.begin(), r.s.end(), [](const IntVec& v) { return all_zero(v); });
    if (l == 0 && !trivial) fail(ErrorKind::DomainMismatch, "s-shift needs a root grading (g^sigma = 0)");
    if (!r.s.empty() && r.s.size() != l) fail(ErrorKind::DimensionMismatch, "s needs one value per simple root");
    for (const auto& v : r.s)
      if (static_cast<int>(v.size()) != n) fail(ErrorKind::DimensionMismatch, "s values need length n");
  }
  RegradedView v = *this;
  v.steps_.push_back(r);
  return v;
}

std::optional<IntVec> RegradedView::pull_back(int alpha, IntVec lam) const {
  int n = L_->n();
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    if (it->kind == Regrade::SShift) {
      if (alpha < 0 || it->s.empty()) continue;
      IntVec sv = shift_value(it->s, L_->rd->base.coords[alpha]);
      for (int i = 0; i < n; ++i) lam[i] += sv[i];
    } else {
      auto c = int_coords(it->images, lam);
      if (!c) return std::nullopt;
      lam = combine(it->basis, *c, n);
    }
  }
  return lam;
}

Subspace RegradedView::component(int alpha, const IntVec& lam) const {
  const Multiloop& L = *L_;
  int d = L.g->dim();
  bool shifted = std::any_of(steps_.begin(), steps_.end(), [](const Regrade& r) { return r.kind == Regrade::SShift; });
  if (alpha == kAll) {
    if (!shifted || !L.rd) {
      auto p = pull_back(alpha, lam);
      return p ? L.component(*p) : span(d, {});
    }
    std::vector<Vec> all;
    for (int a = -1; a < L.rd->size(); ++a) {
      Subspace c = component(a, lam);
      all.insert(all.end(), c.basis.begin(), c.basis.end());
    }
    return span(d, all);
  }
  if (!L.rd) fail(ErrorKind::ZeroFixedAlgebra, "no root grading on this algebra");
  auto p = pull_back(alpha, lam);
  if (!p) return span(d, {});
  Grade gr = reduce_mod(*p, L.m());
  if (alpha < 0) {
    auto it = L.rd->refined0.find(gr);
    return it == L.rd->refined0.end() ? span(d, {}) : it->second;
  }
  auto it = L.rd->refined.find({alpha, gr});
  return it == L.rd->refined.end() ? span(d, {}) : it->second;
}

RegradedView apply_regrade(const Multiloop& L, const Regrade& r) { return RegradedView(L).then(r); }

Verdict same_on_window(const RegradedView& v, const Multiloop& target, int radius) {
  const Multiloop& L = v.base();
  for (const auto& lam : window_box(L.n(), radius)) {
    if (!same(v.component(RegradedView::kAll, lam), target.component(lam)))
      return {false, "component differs at degree " + int_mat_str({lam})};
    if (!L.rd || !target.rd) continue;
    Grade gr = reduce_mod(lam, target.m());
    for (int a = -1; a < L.rd->size(); ++a) {
      Subspace t;
      if (a < 0) {
        auto it = target.rd->refined0.find(gr);
        t = it == target.rd->refined0.end() ? span(L.g->dim(), {}) : it->second;
      } else {
        auto it = target.rd->refined.find({a, gr});
        t = it == target.rd->refined.end() ? span(L.g->dim(), {}) : it->second;
      }
      if (!same(v.component(a, lam), t))
        return {false, "root component " + (a < 0 ? std::string("0") : L.rd->label(a)) + " differs at degree " +
                           int_mat_str({lam})};
    }
  }
  return {};
}

// ---- certificates ----

namespace {

Verdict check_iso(const LieAlgebra& g, const LieAlgebra& gp, const Mat& phi) {
  if (g.dim() != gp.dim() || phi.r != gp.dim() || phi.c != g.dim()) return {false, "dimension mismatch"};
  if (rank(phi) != g.dim()) return {false, "phi is not invertible"};
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i + 1; j < g.dim(); ++j)
      if (phi * g.bracket(g.basis(i), g.basis(j)) != gp.bracket(phi.col(i), phi.col(j)))
        return {false, "phi does not preserve [" + g.labels()[i] + ", " + g.labels()[j] + "]"};
  return {};
}

AutTuple plain_tuple(const std::vector<Mat>& ms) {
  AutTuple t;
  for (const auto& m : ms) {
    t.autos.push_back({m, matrix_order(m)});
    t.m.push_back(t.autos.back().order);
  }
  return t;
}

Mat power_col(const AutTuple& s, const IntMat& p, int j) {
  IntVec col(p.size());
  for (size_t i = 0; i < p.size(); ++i) col[i] = p[i][j];
  return tuple_power(s, col);
}

Verdict check_conjugation(const Multiloop& Lp, const AutTuple& s, const IntMat& p, const Mat& phi) {
  for (int j = 0; j < Lp.n(); ++j) {
    Mat t = power_col(s, p, j);
    Mat lhs = Lp.sigma.autos[j].m * phi, rhs = phi * t;
    if (lhs != rhs) {
      for (int c = 0; c < lhs.c; ++c)
        if (lhs.col(c) != rhs.col(c))
          return {false, "sigma'_" + std::to_string(j + 1) + " phi != phi (sigma^P)_" + std::to_string(j + 1) +
                             " on basis vector " + Lp.g->labels()[c]};
    }
  }
  return {};
}

}  // namespace

Verdict verify_zn_certificate(const Multiloop& L, const Multiloop& Lp, const IntMat& P, const Mat& phi) {
  if (L.n() != Lp.n()) return {false, "nullities differ"};
  if (static_cast<int>(P.size()) != L.n() || !is_unimodular(P)) return {false, "P is not in GL_n(Z)"};
  Verdict v = check_iso(*L.g, *Lp.g, phi);
  if (!v.ok) return v;
  return check_conjugation(Lp, L.sigma, P, phi);
}

AutTuple certificate_tau(const Multiloop& L, const std::vector<std::vector<Rational>>& s, long field_order) {
  bool trivial = std::all_of(s.begin(), s.end(), [](const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
  });
  if (!L.rd) {
    if (!trivial) fail(ErrorKind::CertificateInvalid, "g^sigma = 0 admits only s = 0");
    return plain_tuple(std::vector<Mat>(L.n(), Mat::identity(L.g->dim())));
  }
  std::vector<std::vector<Rational>> scaled = s;
  for (auto& v : scaled) {
    if (static_cast<int>(v.size()) != L.n()) fail(ErrorKind::DimensionMismatch, "s values need length n");
    for (int i = 0; i < L.n(); ++i) v[i] *= L.m()[i];
  }
  if (s.empty()) scaled.assign(L.rd->base.simple.size(), std::vector<Rational>(L.n(), Rational(0)));
  return tau_twist(L, scaled, field_order);
}

Verdict verify_supp_certificate(const Multiloop& L, const Multiloop& Lp, const IsoCertificate& c, long field_order) {
  if (L.n() != Lp.n()) return {false, "nullities differ"};
  if (static_cast<int>(c.P.size()) != L.n() || !is_unimodular(c.P)) return {false, "P is not in GL_n(Z)"};
  Verdict v = check_iso(*L.g, *Lp.g, c.phi);
  if (!v.ok) return v;
  AutTuple tau;
  try {
    tau = certificate_tau(L, c.s, field_order);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::FieldTooSmall) throw;
    return {false, e.what()};
  }
  std::vector<Mat> ts;
  for (int i = 0; i < L.n(); ++i) ts.push_back(tau.autos[i].m * L.sigma.autos[i].m);
  return check_conjugation(Lp, plain_tuple(ts), c.P, c.phi);
}

IsoCertificate certificate_from_toralization(const Multiloop& L, const ToralizationCertificate& t) {
  IsoCertificate c;
  for (const auto& lam : t.lambda) {
    std::vector<Rational> v;
    for (int i = 0; i < L.n(); ++i) {
      Rational q(static_cast<long>(lam[i]), L.m()[i]);
      q.canonicalize();
      v.push_back(q);
    }
    c.s.push_back(v);
  }
  c.P = t.P;
  c.phi = Mat::identity(L.g->dim());
  return c;
}

IsoCertificate invert_certificate(const Multiloop& L, const Multiloop& Lp, const IsoCertificate& c) {
  IsoCertificate r;
  r.P = int_inverse(c.P);
  r.phi = inverse(c.phi);
  if (!L.rd || !Lp.rd) return r;
  int n = L.n();
  for (int b : Lp.rd->base.simple) {
    Vec y = r.phi * Lp.rd->spaces[b].basis[0];
    int alpha = -1;
    for (int a = 0; a < L.rd->size(); ++a)
      if (L.rd->spaces[a].contains(y)) alpha = a;
    if (alpha < 0) fail(ErrorKind::CertificateInvalid, "phi does not carry root spaces to root spaces");
    std::vector<Rational> sa(n, Rational(0));
    for (size_t k = 0; k < c.s.size(); ++k)
      for (int i = 0; i < n; ++i) sa[i] += Rational(static_cast<long>(L.rd->base.coords[alpha][k])) * c.s[k][i];
    // s'(phi alpha) = -P^t s(alpha)
    std::vector<Rational> sb(n, Rational(0));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) sb[j] -= Rational(static_cast<long>(c.P[i][j])) * sa[i];
    r.s.push_back(sb);
  }
  return r;
}

// ---- chains ----

namespace {

Multiloop with_h(const Multiloop& L, std::vector<Mat> ms, std::vector<long> m) {
  Multiloop M = make_multiloop(L.g, aut_tuple(*L.g, ms, std::move(m)));
  if (L.rd) attach_roots(M, CartanChoice{L.rd->h, L.rd->cartan_method, L.rd->seed});
  return M;
}

long denom_lcm(const std::vector<std::vector<Rational>>& s, int i) {
  long a = 1;
  for (const auto& v : s) a = std::lcm(a, v[i].get_den().get_si());
  return a;
}

}  // namespace

Chain chain_from_certificate(const IsoCertificate& c, const Multiloop& L, const Multiloop& Lp) {
  Verdict v = verify_supp_certificate(L, Lp, c);
  if (!v.ok) fail(ErrorKind::CertificateInvalid, v.witness);
  int n = L.n();
  Chain ch;
  std::vector<long> a(n);
  for (int i = 0; i < n; ++i) {
    a[i] = c.s.empty() ? 1 : denom_lcm(c.s, i);
    ch.m_tilde.push_back(a[i] * L.m()[i]);
  }
  std::vector<Mat> sig;
  for (const auto& x : L.sigma.autos) sig.push_back(x.m);
  RegradedView view(L);

  // rho_1 = diag(a) into L_{m~}(g, sigma)
  if (std::any_of(a.begin(), a.end(), [](long x) { return x != 1; })) {
    IntMat basis = view.support_lattice(), images = basis;
    for (auto& row : images)
      for (int i = 0; i < n; ++i) row[i] *= a[i];
    ChainStep st{rho_regrade(basis, images), with_h(L, sig, ch.m_tilde), "rho1 = diag(a)"};
    view = view.then(st.regrade);
    ch.steps.push_back(std::move(st));
  }

  // integer shift t = (a_i m_i s_i) into L_{m~}(g, tau sigma)
  AutTuple tau = certificate_tau(L, c.s);
  std::vector<Mat> ts;
  for (int i = 0; i < n; ++i) ts.push_back(tau.autos[i].m * sig[i]);
  std::vector<IntVec> t;
  bool t_zero = true;
  for (const auto& sv : c.s) {
    IntVec row(n);
    for (int i = 0; i < n; ++i) {
      Rational q = sv[i] * Rational(a[i] * L.m()[i]);
      if (q.get_den() != 1) fail(ErrorKind::CertificateInvalid, "a_i m_i s_i is not integral");
      row[i] = q.get_num().get_si();
      t_zero = t_zero && row[i] == 0;
    }
    t.push_back(row);
  }
  if (!t_zero) {
    ChainStep st{shift_regrade(t), with_h(L, ts, ch.m_tilde), "integer shift t"};
    view = view.then(st.regrade);
    ch.steps.push_back(std::move(st));
  }

  // rho_2 = D_{m'} P^t D_{m~}^{-1} into L_{m'}(g, (tau sigma)^P)
  AutTuple tsp = plain_tuple(ts);
  std::vector<Mat> last;
  for (int j = 0; j < n; ++j) last.push_back(power_col(tsp, c.P, j));
  ch.last = with_h(L, last, Lp.m());
  IntMat basis = view.support_lattice(), images;
  bool identity = true;
  for (const auto& b : basis) {
    IntVec img(n);
    for (int i = 0; i < n; ++i) {
      Rational q = 0;
      for (int j = 0; j < n; ++j)
        q += Rational(static_cast<long>(c.P[j][i] * b[j])) / Rational(ch.m_tilde[j]);
      q *= Lp.m()[i];
      if (q.get_den() != 1) fail(ErrorKind::CertificateInvalid, "rho2 is not integral on the support lattice");
      img[i] = q.get_num().get_si();
    }
    identity = identity && img == b;
    images.push_back(img);
  }
  if (!identity) {
    ChainStep st{rho_regrade(basis, images), ch.last, "rho2 = D_m' P^t D_m~^-1"};
    view = view.then(st.regrade);
    ch.steps.push_back(std::move(st));
  }
  ch.phi = c.phi;
  return ch;
}

Verdict verify_chain(const Chain& ch, const Multiloop& L, const Multiloop& Lp, int radius) {
  RegradedView view(L);
  for (size_t k = 0; k < ch.steps.size(); ++k) {
    view = view.then(ch.steps[k].regrade);
    Verdict v = same_on_window(view, ch.steps[k].target, radius);
    if (!v.ok) return {false, "step " + std::to_string(k + 1) + " (" + ch.steps[k].what + "): " + v.witness};
  }
  Verdict v = same_on_window(view, ch.last, radius);
  if (!v.ok) return {false, "end of chain: " + v.witness};
  v = verify_zn_certificate(ch.last, Lp, int_identity(L.n()), ch.phi);
  if (!v.ok) return {false, "final isograded map: " + v.witness};
  return {};
}

// ---- search ----

namespace {

bool same_structure(const LieAlgebra& a, const LieAlgebra& b) {
  if (a.dim() != b.dim()) return false;
  for (int i = 0; i < a.dim(); ++i)
    if (a.ad_basis(i) != b.ad_basis(i)) return false;
  return true;
}

std::vector<Mat> phi_generators(const Multiloop& L, long denom) {
  const LieAlgebra& g = *L.g;
  std::vector<Mat> gens;
  if (g.chevalley) {
    gens.push_back(chevalley_involution(g));
    int r = static_cast<int>(g.chevalley->h_index.size());
    const auto& gram = g.chevalley->gram;
    std::vector<int> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    while (std::next_permutation(perm.begin(), perm.end())) {
      bool ok = true;
      for (int i = 0; i < r && ok; ++i)
        for (int j = 0; j < r && ok; ++j) ok = gram[perm[i]][perm[j]] == gram[i][j];
      if (ok) gens.push_back(diagram_automorphism(g, perm));
    }
    if (denom > 1) {
      std::vector<long> w(r, 0);
      while (true) {
        int k = 0;
        while (k < r && ++w[k] == denom) w[k++] = 0;
        if (k == r) break;
        std::vector<Rational> q;
        for (long x : w) q.emplace_back(x, denom);
        for (auto& x : q) x.canonicalize();
        gens.push_back(torus_automorphism(g, q));
      }
    }
  }
  for (const auto& t : all_triples(L)) gens.push_back(inner_reflection(g, t.xp, t.xm));
  return gens;
}

std::vector<Mat> phi_words(const std::vector<Mat>& gens, int len, int d) {
  std::vector<Mat> words{Mat::identity(d)};
  std::map<std::vector<Rational>, std::vector<size_t>> seen;
  auto key = [](const Mat& x) { return trace(x).coeffs(); };
  seen[key(words[0])].push_back(0);
  size_t lo = 0;
  for (int l = 1; l <= len; ++l) {
    size_t hi = words.size();
    for (size_t w = lo; w < hi; ++w)
      for (const auto& gm : gens) {
        Mat y = words[w] * gm;
        auto& bucket = seen[key(y)];
        bool dup = std::any_of(bucket.begin(), bucket.end(), [&](size_t k) { return words[k] == y; });
        if (dup) continue;
        bucket.push_back(words.size());
        words.push_back(std::move(y));
      }
    lo = hi;
  }
  return words;
}

}  // namespace

SearchResult search_certificate(const Multiloop& L, const Multiloop& Lp, const SearchBounds& b) {
  SearchResult res;
  if (L.n() != Lp.n()) {
    res.note = "nullities differ";
    return res;
  }
  if (L.g->dim() != Lp.g->dim()) {
    res.note = "dimensions differ";
    return res;
  }
  if (!same_structure(*L.g, *Lp.g)) {
    res.note = "search only covers maps between identical structure tables";
    return res;
  }
  int n = L.n(), d = L.g->dim();
  long denom = b.s_denominator;
  if (denom <= 0) {
    denom = 1;
    for (long x : L.m()) denom = std::lcm(denom, x);
    for (long x : Lp.m()) denom = std::lcm(denom, x);
  }
  // s values k/denom on each simple root and coordinate
  int l = L.rd ? static_cast<int>(L.rd->base.simple.size()) : 0;
  std::vector<std::vector<std::vector<Rational>>> s_cands;
  {
    int slots = l * n;
    std::vector<long> w(slots, 0);
    while (true) {
      std::vector<std::vector<Rational>> s(l, std::vector<Rational>(n));
      for (int k = 0; k < l; ++k)
        for (int i = 0; i < n; ++i) {
          s[k][i] = Rational(w[k * n + i], denom);
          s[k][i].canonicalize();
        }
      s_cands.push_back(s);
      if (s_cands.size() >= 4096) {
        res.note = "s candidates truncated at 4096";
        break;
      }
      int k = 0;
      while (k < slots && ++w[k] == denom) w[k++] = 0;
      if (k == slots) break;
    }
  }
  std::vector<Mat> words = phi_words(phi_generators(L, denom), b.word_length, d);
  std::vector<CycNum> tr_target;
  for (const auto& a : Lp.sigma.autos) tr_target.push_back(trace(a.m));
  for (const auto& P : p_candidates(n, b.p_bound)) {
    for (const auto& s : s_cands) {
      AutTuple tau = certificate_tau(L, s);
      std::vector<Mat> ts;
      for (int i = 0; i < n; ++i) ts.push_back(tau.autos[i].m * L.sigma.autos[i].m);
      AutTuple tt = plain_tuple(ts);
      std::vector<Mat> target;
      bool traces = true;
      for (int j = 0; j < n && traces; ++j) {
        target.push_back(power_col(tt, P, j));
        traces = trace(target.back()) == tr_target[j];
      }
      if (!traces) {
        ++res.checked;
        continue;
      }
      for (const auto& phi : words) {
        if (++res.checked > b.max_checks) {
          res.note = "check budget exhausted";
          return res;
        }
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) ok = Lp.sigma.autos[j].m * phi == phi * target[j];
        if (!ok) continue;
        IsoCertificate c{s, P, phi};
        if (verify_supp_certificate(L, Lp, c).ok) {
          res.cert = c;
          return res;
        }
      }
    }
  }
  if (res.note.empty()) res.note = "no certificate within bounds (inconclusive)";
  return res;
}

}  // namespace mloop
