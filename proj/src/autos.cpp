#include "mloop/autos.hpp"

#include <map>

#include "mloop/errors.hpp"

namespace mloop {

std::vector<long> AutTuple::orders() const {
  std::vector<long> r;
  for (const auto& a : autos) r.push_back(a.order);
  return r;
}

long matrix_order(const Mat& x, long cap) {
  Mat p = x;
  for (long k = 1; k <= cap; ++k) {
    if (is_identity(p)) return k;
    p = p * x;
  }
  fail(ErrorKind::OrderBoundExceeded, "order exceeds cap " + std::to_string(cap));
}

Automorphism check_automorphism(const LieAlgebra& g, const Mat& m, long cap) {
  int n = g.dim();
  if (m.r != n || m.c != n) fail(ErrorKind::DimensionMismatch, "automorphism matrix size");
  if (rank(m) != n) fail(ErrorKind::NotInvertible, "automorphism matrix is singular");
  std::vector<Vec> cols;
  for (int j = 0; j < n; ++j) cols.push_back(m.col(j));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec lhs = m * g.bracket(g.basis(i), g.basis(j));
      Vec rhs = g.bracket(cols[i], cols[j]);
      if (lhs != rhs)
        fail(ErrorKind::NotBracketPreserving,
             "bracket not preserved on (" + g.labels()[i] + ", " + g.labels()[j] + ")");
    }
  return {m, matrix_order(m, cap)};
}

AutTuple aut_tuple(const LieAlgebra& g, std::vector<Automorphism> autos, std::vector<long> m) {
  if (autos.size() != m.size()) fail(ErrorKind::DimensionMismatch, "need one m_i per automorphism");
  for (size_t i = 0; i < autos.size(); ++i) {
    if (autos[i].m.r != g.dim()) fail(ErrorKind::DimensionMismatch, "automorphism size");
    if (m[i] < 1) fail(ErrorKind::ValidationError, "m_i must be positive");
    if (m[i] % autos[i].order != 0)
      fail(ErrorKind::ValidationError, "sigma_" + std::to_string(i + 1) + " has order " +
                                           std::to_string(autos[i].order) + " not dividing m_" +
                                           std::to_string(i + 1) + " = " + std::to_string(m[i]));
    for (size_t j = i + 1; j < autos.size(); ++j)
      if (autos[i].m * autos[j].m != autos[j].m * autos[i].m)
        fail(ErrorKind::NotCommuting,
             "sigma_" + std::to_string(i + 1) + " and sigma_" + std::to_string(j + 1) + " do not commute");
  }
  return {std::move(autos), std::move(m)};
}

AutTuple aut_tuple(const LieAlgebra& g, const std::vector<Mat>& ms, std::vector<long> m) {
  std::vector<Automorphism> a;
  for (const auto& x : ms) a.push_back(check_automorphism(g, x));
  return aut_tuple(g, std::move(a), std::move(m));
}

Mat tuple_power(const AutTuple& s, const IntVec& e) {
  if (static_cast<int>(e.size()) != s.n()) fail(ErrorKind::DimensionMismatch, "exponent vector length");
  int d = s.autos.empty() ? 0 : s.autos[0].m.r;
  Mat r = Mat::identity(d);
  for (int i = 0; i < s.n(); ++i) {
    long k = static_cast<long>(e[i] % s.autos[i].order);
    if (k < 0) k += s.autos[i].order;
    if (k) r = r * mat_pow(s.autos[i].m, k);
  }
  return r;
}

AutTuple gl_action(const AutTuple& s, const IntMat& p) {
  int n = s.n();
  if (static_cast<int>(p.size()) != n) fail(ErrorKind::DimensionMismatch, "P size");
  if (!is_unimodular(p)) fail(ErrorKind::NotUnimodular, "P = " + int_mat_str(p) + " is not in GL_n(Z)");
  AutTuple r;
  for (int j = 0; j < n; ++j) {
    IntVec col(n);
    for (int i = 0; i < n; ++i) col[i] = p[i][j];
    Mat mj = tuple_power(s, col);
    r.autos.push_back({mj, matrix_order(mj)});
    r.m.push_back(r.autos.back().order);
  }
  return r;
}

long group_order(const AutTuple& s, long cap) {
  if (s.n() == 0) return 1;
  int d = s.autos[0].m.r;
  // bucket by trace to keep the dedup scan short
  std::map<std::vector<Rational>, std::vector<Mat>> seen;
  std::vector<Mat> queue{Mat::identity(d)};
  auto key = [](const Mat& x) { return trace(x).coeffs(); };
  seen[key(queue[0])].push_back(queue[0]);
  long count = 1;
  for (size_t q = 0; q < queue.size(); ++q) {
    for (const auto& a : s.autos) {
      Mat y = queue[q] * a.m;
      auto& bucket = seen[key(y)];
      bool dup = false;
      for (const auto& z : bucket)
        if (z == y) {
          dup = true;
          break;
        }
      if (dup) continue;
      if (++count > cap) fail(ErrorKind::OrderBoundExceeded, "group order exceeds cap " + std::to_string(cap));
      bucket.push_back(y);
      queue.push_back(y);
    }
  }
  return count;
}

Mat exp_ad(const LieAlgebra& g, const Vec& x) {
  int n = g.dim();
  Mat a = g.ad(x);
  Mat r = Mat::identity(n);
  Mat term = Mat::identity(n);
  for (int k = 1; k <= n + 1; ++k) {
    term = CycNum(Rational(1, k)) * (term * a);
    bool zero = true;
    for (const auto& v : term.a)
      if (!v.is_zero()) {
        zero = false;
        break;
      }
    if (zero) return r;
    r = r + term;
  }
  fail(ErrorKind::NotNilpotent, "ad x is not nilpotent");
}

Mat inner_reflection(const LieAlgebra& g, const Vec& xplus, const Vec& xminus) {
  Mat a = exp_ad(g, xplus);
  return a * exp_ad(g, -xminus) * a;
}

namespace {

const ChevalleyInfo& info_of(const LieAlgebra& g) {
  if (!g.chevalley) fail(ErrorKind::Unsupported, "named automorphisms need a Chevalley basis");
  return *g.chevalley;
}

}  // namespace

Mat chevalley_involution(const LieAlgebra& g) {
  const auto& ci = info_of(g);
  Mat m(g.dim(), g.dim());
  for (size_t a = 0; a < ci.pos.size(); ++a) {
    m(ci.f_index[a], ci.e_index[a]) = -1;
    m(ci.e_index[a], ci.f_index[a]) = -1;
  }
  for (int h : ci.h_index) m(h, h) = -1;
  return m;
}

Mat extend_from_generators(const LieAlgebra& g, const std::vector<Vec>& e_img, const std::vector<Vec>& f_img) {
  const auto& ci = info_of(g);
  int r = ci.rank;
  if (static_cast<int>(e_img.size()) != r || static_cast<int>(f_img.size()) != r)
    fail(ErrorKind::DimensionMismatch, "one image per simple root");
  std::vector<Vec> img(g.dim());
  for (int i = 0; i < r; ++i) {
    img[ci.e_index[i]] = e_img[i];
    img[ci.f_index[i]] = f_img[i];
  }
  // positive roots are sorted by height, simple roots first
  for (size_t x = r; x < ci.pos.size(); ++x) {
    int i = 0, d = -1;
    for (; i < r; ++i) {
      std::vector<long> v = ci.pos[x];
      v[i] -= 1;
      d = ci.find_pos(v);
      if (d >= 0) break;
    }
    if (d < 0) fail(ErrorKind::ValidationError, "root not reachable from simple roots");
    for (bool pos : {true, false}) {
      const auto& idx = pos ? ci.e_index : ci.f_index;
      Vec b = g.bracket(g.basis(idx[i]), g.basis(idx[d]));
      CycNum nn = b[idx[x]];
      img[idx[x]] = nn.inv() * g.bracket(img[idx[i]], img[idx[d]]);
    }
  }
  for (int i = 0; i < r; ++i) {
    // [e_i, f_i] = h_i
    img[ci.h_index[i]] = g.bracket(img[ci.e_index[i]], img[ci.f_index[i]]);
  }
  return Mat::from_cols(g.dim(), img);
}

Mat diagram_automorphism(const LieAlgebra& g, const std::vector<int>& perm) {
  const auto& ci = info_of(g);
  if (static_cast<int>(perm.size()) != ci.rank) fail(ErrorKind::DimensionMismatch, "permutation length");
  std::vector<char> hit(ci.rank, 0);
  for (int p : perm) {
    if (p < 0 || p >= ci.rank || hit[p]) fail(ErrorKind::ValidationError, "not a permutation");
    hit[p] = 1;
  }
  for (int i = 0; i < ci.rank; ++i)
    for (int j = 0; j < ci.rank; ++j)
      if (ci.gram[perm[i]][perm[j]] != ci.gram[i][j])
        fail(ErrorKind::ValidationError, "permutation is not a diagram symmetry");
  std::vector<Vec> e, f;
  for (int i = 0; i < ci.rank; ++i) {
    e.push_back(g.basis(ci.e_index[perm[i]]));
    f.push_back(g.basis(ci.f_index[perm[i]]));
  }
  return extend_from_generators(g, e, f);
}

Mat torus_automorphism(const LieAlgebra& g, const std::vector<Rational>& weights) {
  const auto& ci = info_of(g);
  if (static_cast<int>(weights.size()) != ci.rank) fail(ErrorKind::DimensionMismatch, "one weight per simple root");
  Mat m = Mat::identity(g.dim());
  for (size_t a = 0; a < ci.pos.size(); ++a) {
    Rational q = 0;
    for (int i = 0; i < ci.rank; ++i) q += ci.pos[a][i] * weights[i];
    m(ci.e_index[a], ci.e_index[a]) = root_of_unity(q);
    m(ci.f_index[a], ci.f_index[a]) = root_of_unity(-q);
  }
  return m;
}

}  // namespace mloop
