#pragma once

#include <string>
#include <vector>

namespace mloop {

using IntVec = std::vector<long long>;
using IntMat = std::vector<IntVec>;

IntMat int_identity(int n);
IntMat int_mul(const IntMat& a, const IntMat& b);
IntMat int_transpose(const IntMat& a);
long long int_det(const IntMat& a);
bool is_unimodular(const IntMat& a);
IntMat int_inverse(const IntMat& a);  // throws NotUnimodular
IntVec row_times(const IntVec& v, const IntMat& a);  // v a, v a row vector

// echelon (Hermite-style) basis of the lattice spanned by the rows of gens
IntMat hermite_basis(const IntMat& gens, int n);
bool lattice_contains(const IntMat& hermite, const IntVec& v);
// nonzero invariant factors d_1 | d_2 | ... of the row lattice
std::vector<long long> smith_invariants(const IntMat& gens, int n);

std::string int_mat_str(const IntMat& a);

}  // namespace mloop
