#pragma once

#include <vector>

#include "mloop/lattice.hpp"
#include "mloop/liecore.hpp"

namespace mloop {

constexpr long kDefaultOrderCap = 360;

struct Automorphism {
  Mat m;
  long order = 0;
};

struct AutTuple {
  std::vector<Automorphism> autos;
  std::vector<long> m;
  int n() const { return static_cast<int>(autos.size()); }
  std::vector<long> orders() const;
};

// smallest k >= 1 with x^k = id
long matrix_order(const Mat& x, long cap = kDefaultOrderCap);
// validates invertibility, bracket preservation and finite order
Automorphism check_automorphism(const LieAlgebra& g, const Mat& m, long cap = kDefaultOrderCap);
// validates pairwise commutation and sigma_i^{m_i} = id
AutTuple aut_tuple(const LieAlgebra& g, std::vector<Automorphism> autos, std::vector<long> m);
AutTuple aut_tuple(const LieAlgebra& g, const std::vector<Mat>& ms, std::vector<long> m);

// prod_i sigma_i^{e_i}
Mat tuple_power(const AutTuple& s, const IntVec& e);
// sigma^P, with m the componentwise orders
AutTuple gl_action(const AutTuple& s, const IntMat& p);
long group_order(const AutTuple& s, long cap = 100000);

// exp(ad x), NotNilpotent if ad x is not nilpotent
Mat exp_ad(const LieAlgebra& g, const Vec& x);
// exp(ad x+) exp(-ad x-) exp(ad x+)
Mat inner_reflection(const LieAlgebra& g, const Vec& xplus, const Vec& xminus);

// named constructors on Chevalley bases
Mat chevalley_involution(const LieAlgebra& g);
// extends e_i -> e_{perm i}, f_i -> f_{perm i} from the generators
Mat diagram_automorphism(const LieAlgebra& g, const std::vector<int>& perm);
// e_alpha -> zeta^{sum k_i q_i} e_alpha for alpha = sum k_i alpha_i
Mat torus_automorphism(const LieAlgebra& g, const std::vector<Rational>& weights);
// extend generator images (e_i, f_i) to a linear map via brackets
Mat extend_from_generators(const LieAlgebra& g, const std::vector<Vec>& e_img, const std::vector<Vec>& f_img);

}  // namespace mloop
