#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

namespace mloop {

using Rational = mpq_class;

Rational parse_rational(const std::string& s);
std::string rat_str(const Rational& q);

long euler_phi(long n);
// integer coefficients of the n-th cyclotomic polynomial, constant term first
const std::vector<long>& cyclotomic_poly(int n);

struct FieldTable;

// Element of Q(zeta_N), stored in the power basis 1, z, ..., z^{d-1} modulo Phi_N.
// Rationals are always kept at order 1 so that most arithmetic takes the fast path.
class CycNum {
 public:
  CycNum();
  CycNum(long v);
  CycNum(const Rational& q);

  static CycNum zeta(int n, long k = 1);
  static CycNum from_coeffs(int n, const std::vector<Rational>& c);

  int order() const;
  int degree() const;
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const { return order() == 1; }
  const Rational& rational() const;  // requires is_rational()
  bool is_integer() const;

  CycNum operator-() const;
  CycNum& operator+=(const CycNum& o);
  CycNum& operator-=(const CycNum& o);
  CycNum& operator*=(const CycNum& o);
  CycNum& operator/=(const CycNum& o);
  CycNum inv() const;
  CycNum pow(long e) const;

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
  friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }
  friend bool operator==(const CycNum& a, const CycNum& b);
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  std::complex<double> to_complex() const;
  std::string str() const;
  // rough size in bits, used for pivot choice
  size_t weight() const;

  friend CycNum lift(const CycNum& x, int m);

 private:
  CycNum(const FieldTable* f, std::vector<Rational> c) : f_(f), c_(std::move(c)) {}
  void normalize();
  const FieldTable* f_;
  std::vector<Rational> c_;
};

CycNum lift(const CycNum& x, int m);
// zeta^{a/b} := zeta_b^a
CycNum root_of_unity(const Rational& q);

}  // namespace mloop
