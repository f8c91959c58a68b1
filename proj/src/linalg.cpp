#include "mloop/linalg.hpp"

#include <algorithm>

#include "mloop/errors.hpp"

namespace mloop {

Vec zero_vec(int n) { return Vec(n); }

Vec unit_vec(int n, int i) {
  Vec v(n);
  v[i] = CycNum(1);
  return v;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

static void check_len(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "vector lengths differ");
}

Vec operator+(const Vec& a, const Vec& b) {
  check_len(a, b);
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i)
    if (!b[i].is_zero()) r[i] += b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  check_len(a, b);
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i)
    if (!b[i].is_zero()) r[i] -= b[i];
  return r;
}

Vec operator-(const Vec& a) {
  Vec r = a;
  for (auto& x : r) x = -x;
  return r;
}

Vec operator*(const CycNum& s, const Vec& v) {
  Vec r(v.size());
  if (s.is_zero()) return r;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) r[i] = s * v[i];
  return r;
}

Vec& axpy(Vec& y, const CycNum& a, const Vec& x) {
  check_len(y, x);
  if (a.is_zero()) return y;
  for (size_t i = 0; i < y.size(); ++i)
    if (!x[i].is_zero()) y[i] += a * x[i];
  return y;
}

CycNum dot(const Vec& a, const Vec& b) {
  check_len(a, b);
  CycNum s;
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

Vec Mat::row(int i) const { return Vec(a.begin() + static_cast<long>(i) * c, a.begin() + static_cast<long>(i + 1) * c); }

Vec Mat::col(int j) const {
  Vec v(r);
  for (int i = 0; i < r; ++i) v[i] = (*this)(i, j);
  return v;
}

void Mat::set_col(int j, const Vec& v) {
  for (int i = 0; i < r; ++i) (*this)(i, j) = v[i];
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = CycNum(1);
  return m;
}

Mat Mat::from_cols(int rows, const std::vector<Vec>& cols) {
  Mat m(rows, static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) m.set_col(static_cast<int>(j), cols[j]);
  return m;
}

Mat Mat::from_rows(int cols, const std::vector<Vec>& rows) {
  Mat m(static_cast<int>(rows.size()), cols);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < cols; ++j) m(static_cast<int>(i), j) = rows[i][j];
  return m;
}

Mat operator*(const Mat& x, const Mat& y) {
  if (x.c != y.r) fail(ErrorKind::DimensionMismatch, "matrix product shapes");
  Mat z(x.r, y.c);
  for (int i = 0; i < x.r; ++i)
    for (int k = 0; k < x.c; ++k) {
      const CycNum& a = x(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < y.c; ++j) {
        const CycNum& b = y(k, j);
        if (!b.is_zero()) z(i, j) += a * b;
      }
    }
  return z;
}

Vec operator*(const Mat& x, const Vec& v) {
  if (x.c != static_cast<int>(v.size())) fail(ErrorKind::DimensionMismatch, "matrix-vector shapes");
  Vec r(x.r);
  for (int k = 0; k < x.c; ++k) {
    if (v[k].is_zero()) continue;
    for (int i = 0; i < x.r; ++i)
      if (!x(i, k).is_zero()) r[i] += x(i, k) * v[k];
  }
  return r;
}

Mat operator+(const Mat& x, const Mat& y) {
  Mat z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
  return z;
}

Mat operator-(const Mat& x, const Mat& y) {
  Mat z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
  return z;
}

Mat operator*(const CycNum& s, const Mat& x) {
  Mat z = x;
  for (auto& e : z.a) e *= s;
  return z;
}

bool operator==(const Mat& x, const Mat& y) {
  if (x.r != y.r || x.c != y.c) return false;
  for (size_t i = 0; i < x.a.size(); ++i)
    if (x.a[i] != y.a[i]) return false;
  return true;
}

Mat transpose(const Mat& x) {
  Mat t(x.c, x.r);
  for (int i = 0; i < x.r; ++i)
    for (int j = 0; j < x.c; ++j) t(j, i) = x(i, j);
  return t;
}

Mat mat_pow(const Mat& x, long e) {
  if (e < 0) return mat_pow(inverse(x), -e);
  Mat r = Mat::identity(x.r), b = x;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

CycNum trace(const Mat& x) {
  CycNum t;
  for (int i = 0; i < std::min(x.r, x.c); ++i) t += x(i, i);
  return t;
}

bool is_identity(const Mat& x) {
  if (x.r != x.c) return false;
  for (int i = 0; i < x.r; ++i)
    for (int j = 0; j < x.c; ++j) {
      const CycNum& e = x(i, j);
      if (i == j ? !e.is_one() : !e.is_zero()) return false;
    }
  return true;
}

// ---- sparse echelon ----

namespace {

using SRow = std::vector<std::pair<int, CycNum>>;

// a - f * b, both sorted by column
SRow merge_sub(const SRow& a, const CycNum& f, const SRow& b) {
  SRow out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -(f * b[j].second));
      ++j;
    } else {
      CycNum v = a[i].second - f * b[j].second;
      if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

SRow to_sparse(const Vec& v) {
  SRow s;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.emplace_back(static_cast<int>(i), v[i]);
  return s;
}

}  // namespace

Echelon::SRow Echelon::reduce(SRow v) const {
  while (!v.empty()) {
    int lead = v.front().first;
    if (lead >= static_cast<int>(by_col_.size()) || by_col_[lead] < 0) break;
    CycNum f = v.front().second;
    v = merge_sub(v, f, rows_[by_col_[lead]]);
  }
  return v;
}

bool Echelon::add(const Vec& row) {
  if (static_cast<int>(row.size()) != n_) fail(ErrorKind::DimensionMismatch, "echelon row length");
  return add_sparse(to_sparse(row));
}

bool Echelon::add_sparse(SRow row) {
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SRow v = reduce(std::move(row));
  if (v.empty()) return false;
  CycNum iv = v.front().second.inv();
  for (auto& e : v) e.second *= iv;
  v.front().second = CycNum(1);
  if (by_col_.size() < static_cast<size_t>(n_)) by_col_.assign(n_, -1);
  by_col_[v.front().first] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(v));
  reduced_ = false;
  return true;
}

bool Echelon::in_span(const Vec& row) const { return reduce(to_sparse(row)).empty(); }

void Echelon::make_reduced() {
  if (reduced_) return;
  std::vector<int> order(rows_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return rows_[a].front().first > rows_[b].front().first; });
  for (int ri : order) {
    SRow& r = rows_[ri];
    size_t i = 1;
    while (i < r.size()) {
      int col = r[i].first;
      int pr = by_col_[col];
      if (pr >= 0) {
        CycNum f = r[i].second;
        r = merge_sub(r, f, rows_[pr]);
      } else {
        ++i;
      }
    }
  }
  reduced_ = true;
}

std::vector<int> Echelon::pivots() const {
  std::vector<int> p;
  for (const auto& r : rows_) p.push_back(r.front().first);
  std::sort(p.begin(), p.end());
  return p;
}

std::vector<Vec> Echelon::reduced_rows() {
  make_reduced();
  std::vector<Vec> out;
  for (int p : pivots()) {
    Vec v(n_);
    for (const auto& e : rows_[by_col_[p]]) v[e.first] = e.second;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vec> Echelon::nullspace() {
  make_reduced();
  if (by_col_.size() < static_cast<size_t>(n_)) by_col_.assign(n_, -1);
  std::vector<Vec> out;
  for (int f = 0; f < n_; ++f) {
    if (by_col_[f] >= 0) continue;
    Vec x(n_);
    x[f] = CycNum(1);
    for (const auto& r : rows_) {
      auto it = std::lower_bound(r.begin(), r.end(), f,
                                 [](const std::pair<int, CycNum>& e, int c) { return e.first < c; });
      if (it != r.end() && it->first == f) x[r.front().first] = -it->second;
    }
    out.push_back(std::move(x));
  }
  return out;
}

int rank(const Mat& m) {
  Echelon e(m.c);
  for (int i = 0; i < m.r; ++i) e.add(m.row(i));
  return e.rank();
}

std::vector<Vec> nullspace(const Mat& m) {
  Echelon e(m.c);
  for (int i = 0; i < m.r; ++i) e.add(m.row(i));
  return e.nullspace();
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
  Echelon e(m.c + 1);
  for (int i = 0; i < m.r; ++i) {
    Vec row = m.row(i);
    row.push_back(b[i]);
    e.add(row);
  }
  std::vector<Vec> rows = e.reduced_rows();
  Vec x(m.c);
  for (const auto& r : rows) {
    int p = 0;
    while (r[p].is_zero()) ++p;
    if (p == m.c) return std::nullopt;
    x[p] = r[m.c];
  }
  return x;
}

Mat inverse(const Mat& m) {
  if (m.r != m.c) fail(ErrorKind::NotInvertible, "non-square matrix");
  int n = m.r;
  Echelon e(2 * n);
  for (int i = 0; i < n; ++i) {
    Vec row = m.row(i);
    row.resize(2 * n);
    row[n + i] = CycNum(1);
    e.add(row);
  }
  std::vector<Vec> rows = e.reduced_rows();
  std::vector<int> piv = e.pivots();
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) fail(ErrorKind::NotInvertible, "singular matrix");
  Mat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = rows[i][n + j];
  return inv;
}

// ---- subspaces ----

bool Subspace::contains(const Vec& v) const {
  Vec r = v;
  for (size_t i = 0; i < basis.size(); ++i) {
    CycNum f = v[piv[i]];
    if (!f.is_zero()) axpy(r, -f, basis[i]);
  }
  return is_zero(r);
}

Vec Subspace::coords(const Vec& v) const {
  Vec c(basis.size());
  for (size_t i = 0; i < basis.size(); ++i) c[i] = v[piv[i]];
  return c;
}

Vec Subspace::from_coords(const Vec& c) const {
  Vec v(n);
  for (size_t i = 0; i < basis.size(); ++i) axpy(v, c[i], basis[i]);
  return v;
}

Subspace span(int n, const std::vector<Vec>& vs) {
  Echelon e(n);
  for (const auto& v : vs) e.add(v);
  Subspace s;
  s.n = n;
  s.basis = e.reduced_rows();
  s.piv = e.pivots();
  return s;
}

Subspace whole_space(int n) {
  std::vector<Vec> b;
  for (int i = 0; i < n; ++i) b.push_back(unit_vec(n, i));
  return span(n, b);
}

Subspace intersect(const Subspace& u, const Subspace& w) {
  if (u.dim() == 0 || w.dim() == 0) return span(u.n, {});
  std::vector<Vec> cols = u.basis;
  for (const auto& x : w.basis) cols.push_back(-x);
  Mat m = Mat::from_cols(u.n, cols);
  std::vector<Vec> out;
  for (const auto& k : nullspace(m)) {
    Vec v(u.n);
    for (int i = 0; i < u.dim(); ++i) axpy(v, k[i], u.basis[i]);
    out.push_back(std::move(v));
  }
  return span(u.n, out);
}

Subspace sum(const Subspace& u, const Subspace& w) {
  std::vector<Vec> all = u.basis;
  all.insert(all.end(), w.basis.begin(), w.basis.end());
  return span(u.n, all);
}

bool subset(const Subspace& u, const Subspace& w) {
  for (const auto& b : u.basis)
    if (!w.contains(b)) return false;
  return true;
}

bool same(const Subspace& u, const Subspace& w) { return u.dim() == w.dim() && subset(u, w); }

Subspace joint_kernel(int n, const std::vector<Mat>& ms) {
  Echelon e(n);
  for (const auto& m : ms)
    for (int i = 0; i < m.r; ++i) e.add(m.row(i));
  return span(n, e.nullspace());
}

Subspace kernel_on(const Subspace& s, const Mat& m) {
  if (s.dim() == 0) return s;
  std::vector<Vec> imgs;
  for (const auto& b : s.basis) imgs.push_back(m * b);
  Mat mb = Mat::from_cols(m.r, imgs);
  std::vector<Vec> out;
  for (const auto& k : nullspace(mb)) out.push_back(s.from_coords(k));
  return span(s.n, out);
}

Mat restrict_to(const Subspace& s, const Mat& m) {
  int k = s.dim();
  Mat r(k, k);
  for (int j = 0; j < k; ++j) {
    Vec img = m * s.basis[j];
    if (!s.contains(img)) fail(ErrorKind::DimensionMismatch, "subspace is not invariant");
    r.set_col(j, s.coords(img));
  }
  return r;
}

}  // namespace mloop
