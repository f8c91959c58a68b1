#pragma once

#include <string>
#include <vector>

#include "mloop/roots.hpp"

namespace mloop {

// g^l as a g^sigma-module: trivial part U plus the complement V = [g^sigma, g^l]
struct A2Component {
  Grade grade;
  int dim_w = 0, dim_u = 0, dim_v = 0;
  bool direct = true;       // U and V independent and spanning W
  bool irreducible = true;  // V = 0 or every weight vector generates V
  bool weights_ok = true;   // weights of V inside Delta_en + {0}
  std::vector<std::string> weights;
  std::string witness;
  bool pass() const { return direct && irreducible && weights_ok && (dim_v == 0 || dim_v > 1); }
};

struct TorusReport {
  Check a0{"A0", false, ""}, a1{"A1", false, ""}, a2{"A2", false, ""}, a3{"A3", false, ""};
  std::vector<A2Component> components;
  std::string delta_type;  // type of the root system of g^sigma used in A2
  bool is_torus = false;
};

TorusReport check_torus(const Multiloop& L);

// smallest closed submodule of g containing v under ad of the given elements
Subspace module_closure(const LieAlgebra& g, const std::vector<Vec>& acting, const Vec& v);

constexpr int kDefaultPBound = 5;
// GL_n(Z) candidates, identity first then by distance from I: all matrices with entries
// bounded by `bound` for n <= 2, transvection words up to length `bound` for n >= 3
std::vector<IntMat> p_candidates(int n, int bound);
// P in GL_n(Z) with |<sigma>| = prod ord(sigma^P_i)
IntMat find_P_for_A3(const AutTuple& s, int bound = kDefaultPBound);

struct ToralizationCertificate {
  std::vector<int> base;               // simple roots of Delta (indices into the root datum of L)
  std::vector<IntVec> lambda;          // lambda_alpha for each simple root
  std::vector<std::vector<Rational>> s;  // s(alpha) for each simple root
  AutTuple twisted;                    // tau sigma
  IntMat P;
  Multiloop result;                    // L_{ord}(g, (tau sigma)^P, h)
};

ToralizationCertificate toralize(const Multiloop& L, int bound = kDefaultPBound);

}  // namespace mloop
