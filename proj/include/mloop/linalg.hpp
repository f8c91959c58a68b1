#pragma once

#include <optional>
#include <vector>

#include "mloop/cycfield.hpp"

namespace mloop {

using Vec = std::vector<CycNum>;

Vec zero_vec(int n);
Vec unit_vec(int n, int i);
bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec operator*(const CycNum& s, const Vec& v);
Vec& axpy(Vec& y, const CycNum& a, const Vec& x);  // y += a x
CycNum dot(const Vec& a, const Vec& b);

struct Mat {
  int r = 0, c = 0;
  std::vector<CycNum> a;
  Mat() = default;
  Mat(int rows, int cols) : r(rows), c(cols), a(static_cast<size_t>(rows) * cols) {}
  CycNum& operator()(int i, int j) { return a[static_cast<size_t>(i) * c + j]; }
  const CycNum& operator()(int i, int j) const { return a[static_cast<size_t>(i) * c + j]; }
  Vec row(int i) const;
  Vec col(int j) const;
  void set_col(int j, const Vec& v);
  static Mat identity(int n);
  static Mat from_cols(int rows, const std::vector<Vec>& cols);
  static Mat from_rows(int cols, const std::vector<Vec>& rows);
};

Mat operator*(const Mat& x, const Mat& y);
Vec operator*(const Mat& x, const Vec& v);
Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Mat operator*(const CycNum& s, const Mat& x);
bool operator==(const Mat& x, const Mat& y);
inline bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }
Mat transpose(const Mat& x);
Mat mat_pow(const Mat& x, long e);
CycNum trace(const Mat& x);
bool is_identity(const Mat& x);

// Incremental row echelon form over the cyclotomic field with sparse rows.
// Rows are normalised at their pivot; nullspace() back-substitutes.
class Echelon {
 public:
  explicit Echelon(int ncols) : n_(ncols) {}
  bool add(const Vec& row);
  bool add_sparse(std::vector<std::pair<int, CycNum>> row);
  int rank() const { return static_cast<int>(rows_.size()); }
  int cols() const { return n_; }
  bool in_span(const Vec& row) const;
  std::vector<Vec> nullspace();
  // fully reduced rows sorted by pivot
  std::vector<Vec> reduced_rows();
  std::vector<int> pivots() const;

 private:
  using SRow = std::vector<std::pair<int, CycNum>>;
  SRow reduce(SRow v) const;
  void make_reduced();
  int n_;
  std::vector<SRow> rows_;
  std::vector<int> by_col_;  // pivot column -> row index or -1
  bool reduced_ = true;
};

int rank(const Mat& m);
std::vector<Vec> nullspace(const Mat& m);
std::optional<Vec> solve(const Mat& m, const Vec& b);
Mat inverse(const Mat& m);

// Subspace of K^n with a canonical reduced-echelon basis.
struct Subspace {
  int n = 0;
  std::vector<Vec> basis;
  std::vector<int> piv;
  int dim() const { return static_cast<int>(basis.size()); }
  bool contains(const Vec& v) const;
  // coordinates in the echelon basis (v assumed to lie in the span)
  Vec coords(const Vec& v) const;
  Vec from_coords(const Vec& c) const;
};

Subspace span(int n, const std::vector<Vec>& vs);
Subspace whole_space(int n);
Subspace intersect(const Subspace& u, const Subspace& w);
Subspace sum(const Subspace& u, const Subspace& w);
bool same(const Subspace& u, const Subspace& w);
bool subset(const Subspace& u, const Subspace& w);
// joint kernel of a family of matrices, optionally restricted to a subspace
Subspace joint_kernel(int n, const std::vector<Mat>& ms);
Subspace kernel_on(const Subspace& s, const Mat& m);
// matrix of m restricted to an invariant subspace, in its echelon basis
Mat restrict_to(const Subspace& s, const Mat& m);

}  // namespace mloop
