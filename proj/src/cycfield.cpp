#include "mloop/cycfield.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "mloop/errors.hpp"

namespace mloop {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotBracketPreserving: return "NotBracketPreserving";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::OrderBoundExceeded: return "OrderBoundExceeded";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::FieldTooSmall: return "FieldTooSmall";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorKind::IsotropicRoot: return "IsotropicRoot";
    case ErrorKind::EmptyComponent: return "EmptyComponent";
    case ErrorKind::UnclassifiedType: return "UnclassifiedType";
    case ErrorKind::GradeViolation: return "GradeViolation";
    case ErrorKind::CertificateInvalid: return "CertificateInvalid";
    case ErrorKind::ZeroFixedAlgebra: return "ZeroFixedAlgebra";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::NotMonomorphism: return "NotMonomorphism";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::L1Violation: return "L1Violation";
    case ErrorKind::L2Violation: return "L2Violation";
    case ErrorKind::L3Violation: return "L3Violation";
    case ErrorKind::L4Violation: return "L4Violation";
    case ErrorKind::EvNotInjective: return "EvNotInjective";
    case ErrorKind::CocycleInvalid: return "CocycleInvalid";
    case ErrorKind::FrameMismatch: return "FrameMismatch";
    case ErrorKind::CertificateRequired: return "CertificateRequired";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Error";
}

Rational parse_rational(const std::string& s0) {
  std::string s;
  for (char ch : s0)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) fail(ErrorKind::ParseError, "empty rational");
  if (s[0] == '+') s.erase(0, 1);
  auto slash = s.find('/');
  Rational q;
  try {
    if (slash == std::string::npos) {
      q = Rational(mpz_class(s, 10));
    } else {
      mpz_class num(s.substr(0, slash), 10), den(s.substr(slash + 1), 10);
      if (den == 0) fail(ErrorKind::ParseError, "zero denominator in '" + s0 + "'");
      q = Rational(num, den);
      q.canonicalize();
    }
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::ParseError, "bad rational '" + s0 + "'");
  }
  return q;
}

std::string rat_str(const Rational& q) { return q.get_str(10); }

long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

namespace {

std::mutex g_mu;

std::vector<long> compute_cyclotomic(int n) {
  // x^n - 1 divided by Phi_d for every proper divisor d
  std::vector<long> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    const std::vector<long>& q = cyclotomic_poly(d);
    int dq = static_cast<int>(q.size()) - 1;
    int dp = static_cast<int>(p.size()) - 1;
    std::vector<long> quo(dp - dq + 1, 0);
    for (int i = dp; i >= dq; --i) {
      long c = p[i];
      quo[i - dq] = c;
      if (c)
        for (int j = 0; j <= dq; ++j) p[i - dq + j] -= c * q[j];
    }
    p = quo;
  }
  return p;
}

}  // namespace

const std::vector<long>& cyclotomic_poly(int n) {
  static std::map<int, std::vector<long>> cache;
  if (n < 1) fail(ErrorKind::NotDivisible, "cyclotomic order must be positive");
  {
    std::lock_guard<std::mutex> lk(g_mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  std::vector<long> p = n == 1 ? std::vector<long>{-1, 1} : compute_cyclotomic(n);
  std::lock_guard<std::mutex> lk(g_mu);
  return cache.emplace(n, std::move(p)).first->second;
}

struct FieldTable {
  int n = 1;
  int d = 1;
  std::vector<std::vector<long>> pw;  // pw[e] = x^e mod Phi_n, 0 <= e < n
};

namespace {

const FieldTable* table(int n) {
  static std::map<int, std::unique_ptr<FieldTable>> tables;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = tables.find(n);
    if (it != tables.end()) return it->second.get();
  }
  const std::vector<long>& phi = cyclotomic_poly(n);
  auto t = std::make_unique<FieldTable>();
  t->n = n;
  t->d = static_cast<int>(phi.size()) - 1;
  std::vector<long> cur(t->d, 0);
  cur[0] = 1;
  for (int e = 0; e < n; ++e) {
    t->pw.push_back(cur);
    // multiply by x, reduce with the monic Phi_n
    long top = cur[t->d - 1];
    for (int j = t->d - 1; j > 0; --j) cur[j] = cur[j - 1] - top * phi[j];
    cur[0] = -top * phi[0];
  }
  std::lock_guard<std::mutex> lk(mu);
  return tables.emplace(n, std::move(t)).first->second.get();
}

const FieldTable* q_table() {
  static const FieldTable* t = table(1);
  return t;
}

// solve a dense rational system, a is n x n, returns x with a x = b
std::vector<Rational> rat_solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  int n = static_cast<int>(a.size());
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) fail(ErrorKind::DivisionByZero, "singular multiplication map");
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    Rational iv = 1 / a[c][c];
    for (int j = c; j < n; ++j) a[c][j] *= iv;
    b[c] *= iv;
    for (int i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  return b;
}

}  // namespace

CycNum::CycNum() : f_(q_table()), c_(1) {}
CycNum::CycNum(long v) : f_(q_table()), c_{Rational(v)} {}
CycNum::CycNum(const Rational& q) : f_(q_table()), c_{q} { c_[0].canonicalize(); }

CycNum CycNum::zeta(int n, long k) {
  const FieldTable* t = table(n);
  long e = ((k % n) + n) % n;
  std::vector<Rational> c(t->d);
  for (int i = 0; i < t->d; ++i) c[i] = t->pw[e][i];
  CycNum r(t, std::move(c));
  r.normalize();
  return r;
}

CycNum CycNum::from_coeffs(int n, const std::vector<Rational>& c) {
  const FieldTable* t = table(n);
  std::vector<Rational> r(t->d);
  for (size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    Rational q = c[k];
    q.canonicalize();
    const auto& p = t->pw[k % n];
    for (int i = 0; i < t->d; ++i)
      if (p[i]) r[i] += q * p[i];
  }
  CycNum x(t, std::move(r));
  x.normalize();
  return x;
}

int CycNum::order() const { return f_->n; }
int CycNum::degree() const { return f_->d; }

void CycNum::normalize() {
  if (f_->n == 1) return;
  for (int i = 1; i < f_->d; ++i)
    if (sgn(c_[i]) != 0) return;
  Rational q = c_[0];
  f_ = q_table();
  c_.assign(1, q);
}

bool CycNum::is_zero() const {
  for (const auto& q : c_)
    if (sgn(q) != 0) return false;
  return true;
}

bool CycNum::is_one() const { return f_->n == 1 && c_[0] == 1; }

const Rational& CycNum::rational() const {
  if (f_->n != 1) fail(ErrorKind::Unsupported, "not a rational number: " + str());
  return c_[0];
}

bool CycNum::is_integer() const { return f_->n == 1 && c_[0].get_den() == 1; }

CycNum lift(const CycNum& x, int m) {
  int n = x.f_->n;
  if (m % n != 0)
    fail(ErrorKind::NotDivisible, std::to_string(n) + " does not divide " + std::to_string(m));
  if (n == m) return x;
  const FieldTable* t = table(m);
  std::vector<Rational> r(t->d);
  long step = m / n;
  for (int k = 0; k < x.f_->d; ++k) {
    if (sgn(x.c_[k]) == 0) continue;
    const auto& p = t->pw[(k * step) % m];
    for (int i = 0; i < t->d; ++i)
      if (p[i]) r[i] += x.c_[k] * p[i];
  }
  return CycNum(t, std::move(r));
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

CycNum& CycNum::operator+=(const CycNum& o) {
  if (f_ == o.f_) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  } else if (o.f_->n == 1) {
    c_[0] += o.c_[0];
  } else if (f_->n == 1) {
    Rational q = c_[0];
    *this = o;
    c_[0] += q;
  } else {
    int m = std::lcm(f_->n, o.f_->n);
    *this = lift(*this, m);
    CycNum b = lift(o, m);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
  }
  normalize();
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) { return *this += -o; }

CycNum& CycNum::operator*=(const CycNum& o) {
  if (o.f_->n == 1) {
    if (sgn(o.c_[0]) == 0) {
      *this = CycNum();
      return *this;
    }
    for (auto& q : c_) q *= o.c_[0];
    normalize();
    return *this;
  }
  if (f_->n == 1) {
    Rational q = c_[0];
    *this = o;
    if (sgn(q) == 0) {
      *this = CycNum();
      return *this;
    }
    for (auto& x : c_) x *= q;
    normalize();
    return *this;
  }
  CycNum a = *this, b = o;
  if (a.f_ != b.f_) {
    int m = std::lcm(a.f_->n, b.f_->n);
    a = lift(a, m);
    b = lift(b, m);
  }
  const FieldTable* t = a.f_;
  int d = t->d;
  std::vector<Rational> prod(2 * d - 1);
  for (int i = 0; i < d; ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (int j = 0; j < d; ++j)
      if (sgn(b.c_[j]) != 0) prod[i + j] += a.c_[i] * b.c_[j];
  }
  std::vector<Rational> r(prod.begin(), prod.begin() + d);
  for (int k = d; k < 2 * d - 1; ++k) {
    if (sgn(prod[k]) == 0) continue;
    const auto& p = t->pw[k % t->n];
    for (int i = 0; i < d; ++i)
      if (p[i]) r[i] += prod[k] * p[i];
  }
  *this = CycNum(t, std::move(r));
  normalize();
  return *this;
}

CycNum CycNum::inv() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
  if (f_->n == 1) return CycNum(Rational(1) / c_[0]);
  int d = f_->d;
  // columns of the multiplication-by-this map
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d));
  for (int k = 0; k < d; ++k) {
    CycNum col = *this * CycNum::zeta(f_->n, k);
    CycNum cl = lift(col, f_->n);
    for (int i = 0; i < d; ++i) a[i][k] = cl.c_[i];
  }
  std::vector<Rational> e(d);
  e[0] = 1;
  CycNum r(f_, rat_solve(std::move(a), std::move(e)));
  r.normalize();
  return r;
}

CycNum& CycNum::operator/=(const CycNum& o) {
  if (o.f_->n == 1) {
    if (sgn(o.c_[0]) == 0) fail(ErrorKind::DivisionByZero, "division by zero");
    for (auto& q : c_) q /= o.c_[0];
    return *this;
  }
  return *this *= o.inv();
}

CycNum CycNum::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  CycNum r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.f_ == b.f_) return a.c_ == b.c_;
  int m = std::lcm(a.f_->n, b.f_->n);
  return lift(a, m).c_ == lift(b, m).c_;
}

std::complex<double> CycNum::to_complex() const {
  std::complex<double> z = 0;
  const double tau = 2 * std::acos(-1.0);
  for (int k = 0; k < f_->d; ++k) {
    if (sgn(c_[k]) == 0) continue;
    z += c_[k].get_d() * std::polar(1.0, tau * k / f_->n);
  }
  return z;
}

std::string CycNum::str() const {
  if (f_->n == 1) return rat_str(c_[0]);
  std::string s;
  for (int k = 0; k < f_->d; ++k) {
    const Rational& q = c_[k];
    if (sgn(q) == 0) continue;
    if (!s.empty() && sgn(q) > 0) s += "+";
    if (k == 0) {
      s += rat_str(q);
      continue;
    }
    if (q == -1)
      s += "-";
    else if (q != 1)
      s += rat_str(q) + "*";
    s += "z" + std::to_string(f_->n);
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

size_t CycNum::weight() const {
  size_t w = 0;
  for (const auto& q : c_)
    if (sgn(q) != 0) w += mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
  return w + (f_->n == 1 ? 0 : 4);
}

CycNum root_of_unity(const Rational& q0) {
  Rational q = q0;
  q.canonicalize();
  mpz_class b = q.get_den();
  mpz_class a = q.get_num();
  if (!b.fits_sint_p()) fail(ErrorKind::FieldTooSmall, "root of unity order too large");
  int n = static_cast<int>(b.get_si());
  mpz_class r = a % n;
  if (r < 0) r += n;
  return CycNum::zeta(n, r.get_si());
}

}  // namespace mloop
