#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mloop/linalg.hpp"

namespace mloop {

using Term = std::pair<int, CycNum>;

// Root data of a Chevalley-basis algebra. Positive roots are integer
// coordinates on the simple roots; basis order is e_alpha (positive roots),
// h_1..h_r, then e_{-alpha} in the same order as the positive roots.
struct ChevalleyInfo {
  char type = 'A';
  int rank = 0;
  std::vector<std::vector<long>> gram;  // (alpha_i | alpha_j) of simple roots
  std::vector<std::vector<long>> pos;
  std::vector<int> e_index, f_index, h_index;
  int find_pos(const std::vector<long>& coords) const;
  long pair(const std::vector<long>& a, const std::vector<long>& b) const;
};

class LieAlgebra {
 public:
  LieAlgebra(int dim, std::vector<std::string> labels, std::vector<std::vector<Term>> table);

  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  // sparse expansion of [e_i, e_j]
  const std::vector<Term>& sc(int i, int j) const { return table_[static_cast<size_t>(i) * dim_ + j]; }
  Vec bracket(const Vec& x, const Vec& y) const;
  Vec basis(int i) const { return unit_vec(dim_, i); }
  Mat ad(const Vec& x) const;
  const Mat& ad_basis(int i) const { return ad_[i]; }
  const Mat& killing() const { return killing_; }
  CycNum killing(const Vec& x, const Vec& y) const;

  std::optional<ChevalleyInfo> chevalley;

 private:
  int dim_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Term>> table_;
  std::vector<Mat> ad_;
  Mat killing_;
};

using LiePtr = std::shared_ptr<const LieAlgebra>;

LieAlgebra chevalley(char type, int rank);
// structure constants from sparse (i, j, k, value) entries with i < j
LieAlgebra from_structure(int dim, const std::vector<std::tuple<int, int, int, CycNum>>& entries,
                          std::vector<std::string> labels = {});
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);
LieAlgebra abelian(int dim);
// structure constants of a subalgebra in the echelon basis of s
LieAlgebra subalgebra(const LieAlgebra& g, const Subspace& s);

// first failing basis triple, if any
std::optional<std::tuple<int, int, int>> jacobi_failure(const LieAlgebra& g);

Subspace centralizer(const LieAlgebra& g, const std::vector<Vec>& s);
Subspace ideal_closure(const LieAlgebra& g, const std::vector<Vec>& s);
Subspace generated_subalgebra(const LieAlgebra& g, const std::vector<Vec>& s);

// dimension of the space of linear maps commuting with every ad x
int centroid_dim(const LieAlgebra& g);

struct SimplicityReport {
  bool nondegenerate = false;
  bool irreducible = false;
  bool simple = false;
  std::string witness;
};
SimplicityReport simplicity(const LieAlgebra& g);
bool is_simple(const LieAlgebra& g);

}  // namespace mloop
