#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "mloop/autos.hpp"
#include "mloop/lattice.hpp"

namespace mloop {

struct RootDatum;

// Lambda-bar class as a vector of residues 0 <= l_i < m_i
using Grade = IntVec;

IntVec reduce_mod(const IntVec& lam, const std::vector<long>& m);
// all classes of Z/m_1 x ... x Z/m_n in lexicographic order
std::vector<Grade> fundamental_box(const std::vector<long>& m);
// all points of [-r, r]^n in lexicographic order
std::vector<IntVec> window_box(int n, int r);

// simultaneous eigenspaces g^lambda-bar; only nonzero components are stored
std::map<Grade, Subspace> eigengrade(const LieAlgebra& g, const AutTuple& s);

struct Multiloop {
  std::shared_ptr<const LieAlgebra> g;
  AutTuple sigma;
  std::map<Grade, Subspace> comps;
  std::shared_ptr<const RootDatum> rd;  // null iff no root datum was attached

  int n() const { return sigma.n(); }
  const std::vector<long>& m() const { return sigma.m; }
  // component g^{lambda-bar} for any lambda in Z^n (empty subspace if zero)
  Subspace component(const IntVec& lam) const;
  int comp_dim(const IntVec& lam) const;
};

Multiloop make_multiloop(std::shared_ptr<const LieAlgebra> g, AutTuple s);

struct LoopElement {
  std::map<IntVec, Vec> terms;
  void add(const IntVec& lam, const Vec& x);
  bool is_zero() const { return terms.empty(); }
};
bool operator==(const LoopElement& a, const LoopElement& b);

// GradeViolation if some term is outside its eigenspace
void check_loop_element(const Multiloop& L, const LoopElement& a);
LoopElement loop_bracket(const Multiloop& L, const LoopElement& a, const LoopElement& b);

std::vector<IntVec> zn_support(const Multiloop& L, int radius);
// Hermite basis of the subgroup generated by the support
IntMat support_group(const Multiloop& L);

struct CentralGradingReport {
  IntMat closed_form;                 // diag(m)
  std::map<Grade, int> centroid_dims;  // per class of the shift, dimension of degree-mu centroid maps
  std::vector<IntVec> window;         // shifts mu checked
  bool agrees = false;
};
IntMat central_grading_group(const Multiloop& L);
// solves the centroid system for every shift class and compares with diag(m) on the window
CentralGradingReport verify_central_grading(const Multiloop& L, int radius);

// D_{m'} P^t D_m^{-1} when it lies in GL_n(Z)
std::optional<IntMat> admissible_matrix(const IntMat& p, const std::vector<long>& mp, const std::vector<long>& m);
bool admissible(const IntMat& p, const std::vector<long>& mp, const std::vector<long>& m);

struct RealizationMap {
  IntMat q;  // lambda -> lambda q^t
  Mat phi;
  IntVec degree(const IntVec& lam) const;
};
// checks sigma'_i = phi (sigma^P)_i phi^{-1}, component containment on a window and brackets
RealizationMap realization_iso(const Multiloop& L, const Multiloop& Lp, const Mat& phi, const IntMat& p,
                               int radius = 1);

}  // namespace mloop
