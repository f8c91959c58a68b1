#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mloop/multiloop.hpp"

namespace mloop {

// Exact eigenvalues of a square matrix whose eigenvalues lie in some
// cyclotomic field. Candidates come from a floating-point solver and are
// accepted only after an exact kernel check. field_order > 0 forbids
// eigenvalues outside Q(zeta_field_order).
std::vector<CycNum> exact_eigenvalues(const Mat& a, long field_order = 0);

// simultaneous eigenspaces of commuting matrices on an invariant subspace;
// keys are the eigenvalue tuples in the order of the matrices
std::vector<std::pair<Vec, Subspace>> joint_eigenspaces(const Subspace& s, const std::vector<Mat>& ms,
                                                       long field_order = 0);

// finite root system given by coordinate rows and the inverse Gram matrix of the form on h
struct RootSet {
  std::vector<Vec> roots;
  Mat form;  // (a|b) = a^t form b
  CycNum ip(const Vec& a, const Vec& b) const;
  int find(const Vec& a) const;
};

struct BaseInfo {
  std::vector<int> simple;           // indices into the root list
  std::vector<IntVec> coords;        // integer coordinates of every root on the base
  std::vector<std::vector<long>> cartan;  // <alpha_j, h_alpha_i>
};
BaseInfo choose_base(const RootSet& rs);

struct Classification {
  std::string type;  // e.g. "A1", "BC1", "G2"; "unclassified" otherwise
  std::string family;
  int rank = 0;
  bool reduced = true;
  bool irreducible = true;
};
Classification classify(const RootSet& rs, const BaseInfo& b);

// Delta_ind and Delta_en; throws UnclassifiedType
std::pair<std::vector<Vec>, std::vector<Vec>> indivisible_and_enlarged(const RootSet& rs);

struct RootDatum {
  Subspace fixed;
  std::vector<Vec> h;  // basis of the Cartan subalgebra, in g coordinates
  Mat gram;            // kappa(h_i, h_j)
  RootSet rs;          // roots as rows <alpha, h_j>
  std::vector<Subspace> spaces;
  Subspace g0;
  std::vector<Vec> coroots;    // h_alpha in g coordinates
  std::vector<Vec> coroots_h;  // h_alpha in the h basis
  BaseInfo base;
  Classification cls;
  std::map<std::pair<int, Grade>, Subspace> refined;  // nonzero g_alpha^{lambda-bar}
  std::map<Grade, Subspace> refined0;                 // nonzero g_0^{lambda-bar}
  Mat to_roots;   // coordinates in the basis (g0 basis, root space bases)
  Mat from_roots;
  std::string cartan_method;
  unsigned long seed = 0;

  int size() const { return static_cast<int>(rs.roots.size()); }
  int rank() const { return static_cast<int>(h.size()); }
  std::string label(int i) const;
  int find_coords(const IntVec& c) const;
  // <gamma, h_alpha>
  CycNum pairing(const Vec& gamma, int alpha) const;
};

struct RootOptions {
  unsigned long seed = 0;
  int retries = 8;
  long field_order = 0;
};

Subspace fixed_subalgebra(const LieAlgebra& g, const AutTuple& s);

struct CartanChoice {
  std::vector<Vec> basis;
  std::string method;
  unsigned long seed = 0;
};
CartanChoice cartan_subalgebra(const LieAlgebra& g, const Subspace& g0, const RootOptions& opt = {});

RootDatum root_decomposition(const LieAlgebra& g, const std::vector<Vec>& h, long field_order = 0);

// computes g^sigma, a Cartan subalgebra and the refined root decomposition; leaves rd null if g^sigma = 0
void attach_roots(Multiloop& L, const RootOptions& opt = {});
// same with a prescribed Cartan subalgebra of g^sigma
void attach_roots(Multiloop& L, const CartanChoice& ch, long field_order = 0);
Multiloop build_multiloop(std::shared_ptr<const LieAlgebra> g, AutTuple s, const RootOptions& opt = {});

struct Sl2Triple {
  Vec xp, xm, h;
  int alpha = -1;
  Grade grade;
};
Sl2Triple coroot_and_triple(const Multiloop& L, int alpha, const Grade& grade);
// all triples, one per nonzero (alpha, lambda-bar)
std::vector<Sl2Triple> all_triples(const Multiloop& L);

Vec reflect(const RootDatum& rd, int alpha, const Vec& gamma);

struct Check {
  std::string name;
  bool pass = true;
  std::string witness;
};
struct RootSystemReport {
  std::vector<Check> checks;
  Classification cls;
  bool all_pass() const;
};
RootSystemReport verify_root_system(const Multiloop& L);

// dim g_alpha^l <= 1 and g_{2 alpha}^{2 l} = 0 whenever g_alpha^l != 0
std::vector<Check> multiplicity_checks(const Multiloop& L);

// tau_i acts on g_alpha by zeta_{m_i}^{-s_i(alpha)}; s given on the simple roots
AutTuple tau_twist(const Multiloop& L, const std::vector<std::vector<Rational>>& s_on_base,
                   long field_order = 0);

}  // namespace mloop
