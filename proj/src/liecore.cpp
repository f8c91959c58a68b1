#include "mloop/liecore.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "mloop/errors.hpp"

namespace mloop {

int ChevalleyInfo::find_pos(const std::vector<long>& coords) const {
  for (size_t i = 0; i < pos.size(); ++i)
    if (pos[i] == coords) return static_cast<int>(i);
  return -1;
}

long ChevalleyInfo::pair(const std::vector<long>& a, const std::vector<long>& b) const {
  long s = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) s += a[i] * gram[i][j] * b[j];
  return s;
}

LieAlgebra::LieAlgebra(int dim, std::vector<std::string> labels, std::vector<std::vector<Term>> table)
    : dim_(dim), labels_(std::move(labels)), table_(std::move(table)) {
  if (static_cast<int>(table_.size()) != dim * dim) fail(ErrorKind::DimensionMismatch, "structure table size");
  if (labels_.empty())
    for (int i = 0; i < dim; ++i) labels_.push_back("b" + std::to_string(i));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j) {
      Vec a(dim), b(dim);
      for (const auto& [k, v] : sc(i, j)) a[k] += v;
      for (const auto& [k, v] : sc(j, i)) b[k] += v;
      if (!is_zero(a + b))
        fail(ErrorKind::ValidationError,
             "structure constants not antisymmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  ad_.reserve(dim);
  for (int i = 0; i < dim; ++i) {
    Mat m(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (const auto& [k, v] : sc(i, j)) m(k, j) += v;
    ad_.push_back(std::move(m));
  }
  // trace(ad e_i ad e_j) from the sparse structure of the ad matrices
  std::vector<std::vector<std::tuple<int, int, CycNum>>> nz(dim);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k)
      for (int l = 0; l < dim; ++l)
        if (!ad_[i](k, l).is_zero()) nz[i].emplace_back(k, l, ad_[i](k, l));
  killing_ = Mat(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      CycNum t;
      for (const auto& [k, l, v] : nz[i]) {
        const CycNum& w = ad_[j](l, k);
        if (!w.is_zero()) t += v * w;
      }
      killing_(i, j) = t;
      killing_(j, i) = t;
    }
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
    fail(ErrorKind::DimensionMismatch, "bracket operands");
  Vec r(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y[j].is_zero()) continue;
      const auto& t = sc(i, j);
      if (t.empty()) continue;
      CycNum c = x[i] * y[j];
      for (const auto& [k, v] : t) r[k] += c * v;
    }
  }
  return r;
}

Mat LieAlgebra::ad(const Vec& x) const {
  Mat m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    if (!x[i].is_zero()) m = m + x[i] * ad_[i];
  return m;
}

CycNum LieAlgebra::killing(const Vec& x, const Vec& y) const { return dot(x, killing_ * y); }

// ---- Chevalley bases ----

namespace {

std::vector<std::vector<long>> simple_gram(char type, int rank) {
  std::vector<std::vector<long>> g(rank, std::vector<long>(rank, 0));
  auto link = [&](int i, int j, long v) { g[i][j] = g[j][i] = v; };
  if (type == 'A' && rank >= 1 && rank <= 3) {
    for (int i = 0; i < rank; ++i) g[i][i] = 2;
    for (int i = 0; i + 1 < rank; ++i) link(i, i + 1, -1);
  } else if (type == 'B' && rank == 2) {
    g[0][0] = 2, g[1][1] = 1;
    link(0, 1, -1);
  } else if (type == 'C' && rank == 2) {
    g[0][0] = 1, g[1][1] = 2;
    link(0, 1, -1);
  } else if (type == 'D' && rank == 4) {
    for (int i = 0; i < 4; ++i) g[i][i] = 2;
    link(0, 1, -1), link(1, 2, -1), link(1, 3, -1);
  } else if (type == 'G' && rank == 2) {
    g[0][0] = 2, g[1][1] = 6;
    link(0, 1, -3);
  } else {
    fail(ErrorKind::Unsupported, std::string("Chevalley type ") + type + std::to_string(rank));
  }
  return g;
}

struct RootTable {
  int rank;
  std::vector<std::vector<long>> gram;
  std::vector<std::vector<long>> roots;  // positive roots then negatives, same order
  std::map<std::vector<long>, int> index;
  std::vector<std::pair<int, int>> extra;  // extraspecial pair per positive root, (-1,-1) for simple
  std::map<std::pair<int, int>, Rational> memo;
  int npos() const { return static_cast<int>(roots.size() / 2); }

  long ip(const std::vector<long>& a, const std::vector<long>& b) const {
    long s = 0;
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) s += a[i] * gram[i][j] * b[j];
    return s;
  }
  int find(const std::vector<long>& v) const {
    auto it = index.find(v);
    return it == index.end() ? -1 : it->second;
  }
  bool positive(int a) const { return a < npos(); }
  int neg(int a) const { return a < npos() ? a + npos() : a - npos(); }
  static std::vector<long> add(const std::vector<long>& a, const std::vector<long>& b, long s = 1) {
    std::vector<long> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
    return r;
  }

  // structure constant N_{a,b} with [e_a, e_b] = N_{a,b} e_{a+b}
  Rational N(int a, int b) {
    auto key = std::make_pair(a, b);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Rational r = compute(a, b);
    memo[key] = r;
    return r;
  }

  Rational compute(int a, int b) {
    const auto& va = roots[a];
    const auto& vb = roots[b];
    std::vector<long> vs = add(va, vb);
    int c = find(vs);
    if (c < 0) return 0;
    if (positive(a) && positive(b)) {
      if (a > b) return -N(b, a);
      auto [g, d] = extra[c];
      if (g == a && d == b) {
        long p = 0;
        while (find(add(vb, va, -(p + 1))) >= 0) ++p;
        return Rational(p + 1);
      }
      const auto& vg = roots[g];
      Rational t = 0;
      std::vector<long> bg = add(vb, vg, -1), ag = add(va, vg, -1);
      if (find(bg) >= 0) t += N(b, neg(g)) * N(a, neg(d)) / Rational(ip(bg, bg));
      if (find(ag) >= 0) t += N(neg(g), a) * N(b, neg(d)) / Rational(ip(ag, ag));
      return Rational(ip(vs, vs)) / N(g, d) * t;
    }
    if (!positive(a) && !positive(b)) return -N(neg(a), neg(b));
    if (!positive(a)) return -N(b, a);
    // a positive, b negative, a + b + gamma = 0
    int gam = neg(c);
    const auto& vgam = roots[gam];
    if (positive(c)) return Rational(ip(vgam, vgam)) / Rational(ip(va, va)) * N(b, gam);
    return Rational(ip(vgam, vgam)) / Rational(ip(vb, vb)) * N(gam, a);
  }
};

std::string coord_label(const std::vector<long>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

LieAlgebra chevalley(char type, int rank) {
  RootTable rt;
  rt.rank = rank;
  rt.gram = simple_gram(type, rank);
  // positive roots by height, via root strings through simple roots
  std::vector<std::vector<long>> pos;
  std::map<std::vector<long>, int> seen;
  for (int i = 0; i < rank; ++i) {
    std::vector<long> v(rank, 0);
    v[i] = 1;
    seen[v] = 1;
    pos.push_back(v);
  }
  for (size_t q = 0; q < pos.size(); ++q) {
    std::vector<long> beta = pos[q];
    for (int i = 0; i < rank; ++i) {
      std::vector<long> ai(rank, 0);
      ai[i] = 1;
      if (beta == ai) continue;
      long p = 0;
      while (seen.count(RootTable::add(beta, ai, -(p + 1)))) ++p;
      long cart = 2 * rt.ip(beta, ai) / rt.gram[i][i];
      if (p - cart > 0) {
        std::vector<long> nb = RootTable::add(beta, ai);
        if (!seen.count(nb)) {
          seen[nb] = 1;
          pos.push_back(nb);
        }
      }
    }
  }
  auto height = [](const std::vector<long>& v) {
    long h = 0;
    for (long x : v) h += x;
    return h;
  };
  std::stable_sort(pos.begin(), pos.end(), [&](const auto& a, const auto& b) {
    long ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a > b;
  });
  int np = static_cast<int>(pos.size());
  for (const auto& v : pos) rt.roots.push_back(v);
  for (const auto& v : pos) rt.roots.push_back(RootTable::add(std::vector<long>(rank, 0), v, -1));
  for (size_t i = 0; i < rt.roots.size(); ++i) rt.index[rt.roots[i]] = static_cast<int>(i);
  rt.extra.assign(np, {-1, -1});
  for (int x = 0; x < np; ++x) {
    if (height(pos[x]) == 1) continue;
    for (int a = 0; a < np; ++a) {
      int d = rt.find(RootTable::add(pos[x], pos[a], -1));
      if (d >= 0 && d < np) {
        rt.extra[x] = {a, d};
        break;
      }
    }
  }

  int dim = 2 * np + rank;
  auto bidx = [&](int root) { return root < np ? root : root - np + np + rank; };
  std::vector<std::string> labels(dim);
  ChevalleyInfo info;
  info.type = type;
  info.rank = rank;
  info.gram = rt.gram;
  info.pos = pos;
  for (int a = 0; a < np; ++a) {
    labels[a] = "e" + coord_label(pos[a]);
    labels[np + rank + a] = "f" + coord_label(pos[a]);
    info.e_index.push_back(a);
    info.f_index.push_back(np + rank + a);
  }
  for (int i = 0; i < rank; ++i) {
    labels[np + i] = "h" + std::to_string(i + 1);
    info.h_index.push_back(np + i);
  }

  std::vector<std::vector<Term>> table(static_cast<size_t>(dim) * dim);
  auto put = [&](int i, int j, int k, const Rational& v) {
    if (v == 0) return;
    table[static_cast<size_t>(i) * dim + j].emplace_back(k, CycNum(v));
  };
  int nroots = 2 * np;
  for (int a = 0; a < nroots; ++a) {
    const auto& va = rt.roots[a];
    for (int b = 0; b < nroots; ++b) {
      const auto& vb = rt.roots[b];
      std::vector<long> s = RootTable::add(va, vb);
      bool zero = std::all_of(s.begin(), s.end(), [](long x) { return x == 0; });
      if (zero) {
        // [e_a, e_-a] = h_a, the coroot in the basis of simple coroots
        long aa = rt.ip(va, va);
        for (int j = 0; j < rank; ++j) {
          long cj = va[j] * rt.gram[j][j];
          if (cj % aa != 0) fail(ErrorKind::ValidationError, "non-integral coroot");
          put(bidx(a), bidx(b), np + j, Rational(cj / aa));
        }
      } else if (rt.find(s) >= 0) {
        put(bidx(a), bidx(b), bidx(rt.find(s)), rt.N(a, b));
      }
    }
    for (int i = 0; i < rank; ++i) {
      std::vector<long> ai(rank, 0);
      ai[i] = 1;
      Rational c(2 * rt.ip(va, ai), rt.gram[i][i]);
      put(np + i, bidx(a), bidx(a), c);
      put(bidx(a), np + i, bidx(a), -c);
    }
  }
  LieAlgebra g(dim, labels, std::move(table));
  g.chevalley = info;
  return g;
}

LieAlgebra from_structure(int dim, const std::vector<std::tuple<int, int, int, CycNum>>& entries,
                          std::vector<std::string> labels) {
  std::vector<Vec> full(static_cast<size_t>(dim) * dim, Vec(dim));
  std::vector<char> given(static_cast<size_t>(dim) * dim, 0);
  for (const auto& [i, j, k, v] : entries) {
    if (i < 0 || j < 0 || k < 0 || i >= dim || j >= dim || k >= dim)
      fail(ErrorKind::ValidationError, "structure index out of range");
    if (i == j) fail(ErrorKind::ValidationError, "[e_i, e_i] must vanish");
    full[static_cast<size_t>(i) * dim + j][k] += v;
    given[static_cast<size_t>(i) * dim + j] = 1;
  }
  std::vector<std::vector<Term>> table(static_cast<size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      size_t ij = static_cast<size_t>(i) * dim + j, ji = static_cast<size_t>(j) * dim + i;
      Vec v = full[ij];
      if (!given[ij] && given[ji]) v = -full[ji];
      for (int k = 0; k < dim; ++k)
        if (!v[k].is_zero()) table[ij].emplace_back(k, v[k]);
    }
  return LieAlgebra(dim, std::move(labels), std::move(table));
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  int n = a.dim() + b.dim();
  std::vector<std::vector<Term>> table(static_cast<size_t>(n) * n);
  std::vector<std::string> labels;
  for (const auto& l : a.labels()) labels.push_back(l + "'");
  for (const auto& l : b.labels()) labels.push_back(l + "''");
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) table[static_cast<size_t>(i) * n + j] = a.sc(i, j);
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) {
      auto t = b.sc(i, j);
      for (auto& [k, v] : t) k += a.dim();
      table[static_cast<size_t>(i + a.dim()) * n + j + a.dim()] = t;
    }
  return LieAlgebra(n, labels, std::move(table));
}

LieAlgebra abelian(int dim) {
  return LieAlgebra(dim, {}, std::vector<std::vector<Term>>(static_cast<size_t>(dim) * dim));
}

LieAlgebra subalgebra(const LieAlgebra& g, const Subspace& s) {
  int k = s.dim();
  std::vector<std::vector<Term>> table(static_cast<size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Vec b = g.bracket(s.basis[i], s.basis[j]);
      if (!s.contains(b)) fail(ErrorKind::ValidationError, "subspace is not closed under the bracket");
      Vec c = s.coords(b);
      for (int l = 0; l < k; ++l)
        if (!c[l].is_zero()) table[static_cast<size_t>(i) * k + j].emplace_back(l, c[l]);
    }
  return LieAlgebra(k, {}, std::move(table));
}

std::optional<std::tuple<int, int, int>> jacobi_failure(const LieAlgebra& g) {
  int n = g.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec ij = g.bracket(g.basis(i), g.basis(j));
      for (int k = j + 1; k < n; ++k) {
        Vec ek = g.basis(k);
        Vec r = g.bracket(ij, ek) + g.bracket(g.bracket(g.basis(j), ek), g.basis(i)) +
                g.bracket(g.bracket(ek, g.basis(i)), g.basis(j));
        if (!is_zero(r)) return std::make_tuple(i, j, k);
      }
    }
  return std::nullopt;
}

Subspace centralizer(const LieAlgebra& g, const std::vector<Vec>& s) {
  std::vector<Mat> ms;
  for (const auto& x : s) ms.push_back(g.ad(x));
  return joint_kernel(g.dim(), ms);
}

namespace {

Subspace close_under(const LieAlgebra& g, const std::vector<Vec>& start, bool ideal) {
  Subspace s = span(g.dim(), start);
  while (true) {
    std::vector<Vec> all = s.basis;
    if (ideal) {
      for (int j = 0; j < g.dim(); ++j)
        for (const auto& b : s.basis) all.push_back(g.ad_basis(j) * b);
    } else {
      for (size_t i = 0; i < s.basis.size(); ++i)
        for (size_t j = i + 1; j < s.basis.size(); ++j) all.push_back(g.bracket(s.basis[i], s.basis[j]));
    }
    Subspace t = span(g.dim(), all);
    if (t.dim() == s.dim()) return s;
    s = t;
  }
}

}  // namespace

Subspace ideal_closure(const LieAlgebra& g, const std::vector<Vec>& s) { return close_under(g, s, true); }
Subspace generated_subalgebra(const LieAlgebra& g, const std::vector<Vec>& s) { return close_under(g, s, false); }

int centroid_dim(const LieAlgebra& g) {
  int n = g.dim();
  if (n == 0) return 0;
  // basis vectors acting diagonally force a block pattern on commuting maps
  std::vector<int> diag;
  for (int i = 0; i < n; ++i) {
    const Mat& a = g.ad_basis(i);
    bool d = true;
    for (int r = 0; r < n && d; ++r)
      for (int c = 0; c < n && d; ++c)
        if (r != c && !a(r, c).is_zero()) d = false;
    if (d) diag.push_back(i);
  }
  std::vector<std::vector<int>> unk(n, std::vector<int>(n, -1));
  int nu = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      bool ok = true;
      for (int i : diag)
        if (g.ad_basis(i)(j, j) != g.ad_basis(i)(k, k)) {
          ok = false;
          break;
        }
      if (ok) unk[j][k] = nu++;
    }
  Echelon e(nu);
  for (int y = 0; y < n; ++y) {
    if (std::find(diag.begin(), diag.end(), y) != diag.end()) continue;
    const Mat& a = g.ad_basis(y);
    // entry (j,k) of c a - a c
    std::map<std::pair<int, int>, std::map<int, CycNum>> rows;
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        int u = unk[j][l];
        if (u < 0) continue;
        for (int k = 0; k < n; ++k)
          if (!a(l, k).is_zero()) rows[{j, k}][u] += a(l, k);
      }
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k) {
        int u = unk[l][k];
        if (u < 0) continue;
        for (int j = 0; j < n; ++j)
          if (!a(j, l).is_zero()) rows[{j, k}][u] -= a(j, l);
      }
    for (auto& [pos, r] : rows) {
      std::vector<std::pair<int, CycNum>> sr;
      for (auto& [u, v] : r)
        if (!v.is_zero()) sr.emplace_back(u, v);
      if (!sr.empty()) e.add_sparse(std::move(sr));
    }
  }
  return nu - e.rank();
}

SimplicityReport simplicity(const LieAlgebra& g) {
  SimplicityReport r;
  int n = g.dim();
  if (n == 0) {
    r.witness = "zero algebra";
    return r;
  }
  r.nondegenerate = rank(g.killing()) == n;
  if (!r.nondegenerate) {
    r.witness = "Killing form degenerate, rank " + std::to_string(rank(g.killing())) + " < " + std::to_string(n);
    return r;
  }
  int probes = n <= 16 ? n : 4;
  for (int i = 0; i < probes; ++i) {
    Subspace id = ideal_closure(g, {g.basis(i)});
    if (id.dim() < n) {
      r.witness = "ideal generated by " + g.labels()[i] + " has dimension " + std::to_string(id.dim());
      return r;
    }
  }
  int cd = centroid_dim(g);
  r.irreducible = cd == 1;
  if (!r.irreducible) r.witness = "centroid has dimension " + std::to_string(cd);
  r.simple = r.irreducible;
  return r;
}

bool is_simple(const LieAlgebra& g) { return simplicity(g).simple; }

}  // namespace mloop
