#include "mloop/multiloop.hpp"

#include "mloop/errors.hpp"

namespace mloop {

IntVec reduce_mod(const IntVec& lam, const std::vector<long>& m) {
  IntVec r(lam.size());
  for (size_t i = 0; i < lam.size(); ++i) {
    r[i] = lam[i] % m[i];
    if (r[i] < 0) r[i] += m[i];
  }
  return r;
}

namespace {

std::vector<IntVec> box(const std::vector<long>& lo, const std::vector<long>& hi) {
  std::vector<IntVec> out;
  size_t n = lo.size();
  IntVec cur(lo.begin(), lo.end());
  if (n == 0) return {cur};
  while (true) {
    out.push_back(cur);
    size_t k = n;
    while (k > 0) {
      --k;
      if (cur[k] < hi[k]) {
        ++cur[k];
        for (size_t j = k + 1; j < n; ++j) cur[j] = lo[j];
        break;
      }
      if (k == 0) return out;
    }
  }
}

}  // namespace

std::vector<Grade> fundamental_box(const std::vector<long>& m) {
  std::vector<long> lo(m.size(), 0), hi(m.size());
  for (size_t i = 0; i < m.size(); ++i) hi[i] = m[i] - 1;
  return box(lo, hi);
}

std::vector<IntVec> window_box(int n, int r) {
  return box(std::vector<long>(n, -r), std::vector<long>(n, r));
}

std::map<Grade, Subspace> eigengrade(const LieAlgebra& g, const AutTuple& s) {
  int d = g.dim();
  std::vector<std::pair<Grade, Subspace>> parts{{Grade{}, whole_space(d)}};
  for (int i = 0; i < s.n(); ++i) {
    std::vector<std::pair<Grade, Subspace>> next;
    const Mat& a = s.autos[i].m;
    for (const auto& [gr, sub] : parts) {
      int found = 0;
      for (long l = 0; l < s.m[i]; ++l) {
        Mat shifted = a - CycNum::zeta(static_cast<int>(s.m[i]), l) * Mat::identity(d);
        Subspace k = kernel_on(sub, shifted);
        if (k.dim() == 0) continue;
        found += k.dim();
        Grade ng = gr;
        ng.push_back(l);
        next.emplace_back(ng, k);
      }
      if (found != sub.dim()) fail(ErrorKind::NotDiagonalizable, "automorphism is not diagonalizable over its orders");
    }
    parts = std::move(next);
  }
  std::map<Grade, Subspace> out;
  for (auto& [gr, sub] : parts) out.emplace(gr, std::move(sub));
  return out;
}

Subspace Multiloop::component(const IntVec& lam) const {
  auto it = comps.find(reduce_mod(lam, m()));
  if (it == comps.end()) {
    Subspace z;
    z.n = g->dim();
    return z;
  }
  return it->second;
}

int Multiloop::comp_dim(const IntVec& lam) const {
  auto it = comps.find(reduce_mod(lam, m()));
  return it == comps.end() ? 0 : it->second.dim();
}

Multiloop make_multiloop(std::shared_ptr<const LieAlgebra> g, AutTuple s) {
  Multiloop L;
  L.comps = eigengrade(*g, s);
  L.g = std::move(g);
  L.sigma = std::move(s);
  return L;
}

void LoopElement::add(const IntVec& lam, const Vec& x) {
  auto it = terms.find(lam);
  if (it == terms.end()) {
    if (!mloop::is_zero(x)) terms.emplace(lam, x);
    return;
  }
  it->second = it->second + x;
  if (mloop::is_zero(it->second)) terms.erase(it);
}

bool operator==(const LoopElement& a, const LoopElement& b) { return a.terms == b.terms; }

void check_loop_element(const Multiloop& L, const LoopElement& a) {
  for (const auto& [lam, x] : a.terms) {
    if (static_cast<int>(lam.size()) != L.n()) fail(ErrorKind::DimensionMismatch, "degree length");
    if (!L.component(lam).contains(x)) {
      std::string s;
      for (auto v : lam) s += (s.empty() ? "" : ",") + std::to_string(v);
      fail(ErrorKind::GradeViolation, "term of degree (" + s + ") is not in its eigenspace");
    }
  }
}

LoopElement loop_bracket(const Multiloop& L, const LoopElement& a, const LoopElement& b) {
  check_loop_element(L, a);
  check_loop_element(L, b);
  LoopElement r;
  for (const auto& [la, x] : a.terms)
    for (const auto& [lb, y] : b.terms) {
      IntVec s(la.size());
      for (size_t i = 0; i < s.size(); ++i) s[i] = la[i] + lb[i];
      r.add(s, L.g->bracket(x, y));
    }
  return r;
}

std::vector<IntVec> zn_support(const Multiloop& L, int radius) {
  std::vector<IntVec> out;
  for (const auto& lam : window_box(L.n(), radius))
    if (L.comp_dim(lam) > 0) out.push_back(lam);
  return out;
}

IntMat support_group(const Multiloop& L) {
  int n = L.n();
  IntMat gens;
  for (const auto& [gr, sub] : L.comps) gens.push_back(gr);
  for (int i = 0; i < n; ++i) {
    IntVec v(n, 0);
    v[i] = L.m()[i];
    gens.push_back(v);
  }
  return hermite_basis(gens, n);
}

IntMat central_grading_group(const Multiloop& L) {
  int n = L.n();
  IntMat d(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) d[i][i] = L.m()[i];
  return d;
}

namespace {

// dimension of the space of maps f with f(g^l) in g^{l+mu} and f [x, y] = [x, f y]
int graded_centroid_dim(const Multiloop& L, const Grade& mu) {
  const LieAlgebra& g = *L.g;
  const auto& m = L.m();
  std::vector<Vec> basis;
  std::vector<Grade> grade_of;
  std::map<Grade, int> offset;
  for (const auto& [gr, sub] : L.comps) {
    offset[gr] = static_cast<int>(basis.size());
    for (const auto& v : sub.basis) {
      basis.push_back(v);
      grade_of.push_back(gr);
    }
  }
  int d = static_cast<int>(basis.size());
  auto add = [&](const Grade& a, const Grade& b) {
    IntVec s(a.size());
    for (size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
    return reduce_mod(s, m);
  };
  // unknown f_{p,k}: coefficient of b_p in f(b_k)
  std::vector<std::vector<int>> unk(d, std::vector<int>(d, -1));
  int nu = 0;
  for (int k = 0; k < d; ++k)
    for (int p = 0; p < d; ++p)
      if (grade_of[p] == add(grade_of[k], mu)) unk[p][k] = nu++;
  if (nu == 0) return 0;
  // structure constants in the graded basis
  std::vector<std::vector<std::vector<std::pair<int, CycNum>>>> c(d, std::vector<std::vector<std::pair<int, CycNum>>>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec br = g.bracket(basis[i], basis[j]);
      if (is_zero(br)) continue;
      Grade t = add(grade_of[i], grade_of[j]);
      Vec co = L.comps.at(t).coords(br);
      for (size_t q = 0; q < co.size(); ++q)
        if (!co[q].is_zero()) c[i][j].emplace_back(offset[t] + static_cast<int>(q), co[q]);
    }
  Echelon e(nu);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      // f([b_i, b_j]) - [b_i, f(b_j)] = 0, one row per output coordinate p
      std::map<int, std::map<int, CycNum>> rows;
      for (const auto& [k, v] : c[i][j])
        for (int p = 0; p < d; ++p)
          if (unk[p][k] >= 0) rows[p][unk[p][k]] += v;
      for (int l = 0; l < d; ++l) {
        int u = unk[l][j];
        if (u < 0) continue;
        for (const auto& [p, v] : c[i][l]) rows[p][u] -= v;
      }
      for (auto& [p, r] : rows) {
        std::vector<std::pair<int, CycNum>> sr;
        for (auto& [u, v] : r)
          if (!v.is_zero()) sr.emplace_back(u, v);
        if (!sr.empty()) e.add_sparse(std::move(sr));
      }
    }
  return nu - e.rank();
}

}  // namespace

CentralGradingReport verify_central_grading(const Multiloop& L, int radius) {
  CentralGradingReport rep;
  rep.closed_form = central_grading_group(L);
  for (const auto& mu : fundamental_box(L.m())) rep.centroid_dims[mu] = graded_centroid_dim(L, mu);
  rep.window = window_box(L.n(), radius);
  rep.agrees = true;
  for (const auto& mu : rep.window) {
    bool in_lattice = true;
    for (int i = 0; i < L.n(); ++i)
      if (mu[i] % L.m()[i] != 0) in_lattice = false;
    int dm = rep.centroid_dims[reduce_mod(mu, L.m())];
    if (dm != (in_lattice ? 1 : 0)) rep.agrees = false;
  }
  return rep;
}

std::optional<IntMat> admissible_matrix(const IntMat& p, const std::vector<long>& mp, const std::vector<long>& m) {
  int n = static_cast<int>(p.size());
  if (!is_unimodular(p)) fail(ErrorKind::NotUnimodular, "P = " + int_mat_str(p) + " is not in GL_n(Z)");
  if (static_cast<int>(m.size()) != n || static_cast<int>(mp.size()) != n)
    fail(ErrorKind::DimensionMismatch, "m and m' must have length n");
  IntMat q(n, IntVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long long num = mp[i] * p[j][i];
      if (num % m[j] != 0) return std::nullopt;
      q[i][j] = num / m[j];
    }
  if (!is_unimodular(q)) return std::nullopt;
  return q;
}

bool admissible(const IntMat& p, const std::vector<long>& mp, const std::vector<long>& m) {
  return admissible_matrix(p, mp, m).has_value();
}

IntVec RealizationMap::degree(const IntVec& lam) const { return row_times(lam, int_transpose(q)); }

RealizationMap realization_iso(const Multiloop& L, const Multiloop& Lp, const Mat& phi, const IntMat& p, int radius) {
  const LieAlgebra& g = *L.g;
  const LieAlgebra& gp = *Lp.g;
  if (g.dim() != gp.dim() || phi.r != g.dim() || phi.c != g.dim() || L.n() != Lp.n())
    fail(ErrorKind::DimensionMismatch, "realization between algebras of different shape");
  auto q = admissible_matrix(p, Lp.m(), L.m());
  if (!q) fail(ErrorKind::CertificateInvalid, "P is not (m', m)-admissible");
  if (rank(phi) != g.dim()) fail(ErrorKind::CertificateInvalid, "phi is not invertible");
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i + 1; j < g.dim(); ++j)
      if (phi * g.bracket(g.basis(i), g.basis(j)) != gp.bracket(phi.col(i), phi.col(j)))
        fail(ErrorKind::CertificateInvalid,
             "phi does not preserve the bracket on (" + g.labels()[i] + ", " + g.labels()[j] + ")");
  AutTuple sp = gl_action(L.sigma, p);
  for (int i = 0; i < L.n(); ++i)
    if (Lp.sigma.autos[i].m * phi != phi * sp.autos[i].m)
      fail(ErrorKind::CertificateInvalid, "sigma'_" + std::to_string(i + 1) + " != phi (sigma^P)_" +
                                              std::to_string(i + 1) + " phi^-1");
  RealizationMap r{*q, phi};
  for (const auto& lam : window_box(L.n(), radius)) {
    Subspace src = L.component(lam);
    Subspace dst = Lp.component(r.degree(lam));
    for (const auto& x : src.basis)
      if (!dst.contains(phi * x)) fail(ErrorKind::CertificateInvalid, "component not carried to its image degree");
  }
  return r;
}

}  // namespace mloop
