#include "mloop/lattice.hpp"

#include <algorithm>
#include <cstdlib>

#include "mloop/cycfield.hpp"
#include "mloop/errors.hpp"

namespace mloop {

IntMat int_identity(int n) {
  IntMat m(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMat int_mul(const IntMat& a, const IntMat& b) {
  size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  IntMat c(n, IntVec(p, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l)
      for (size_t j = 0; j < p; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

IntMat int_transpose(const IntMat& a) {
  if (a.empty()) return a;
  IntMat t(a[0].size(), IntVec(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

IntVec row_times(const IntVec& v, const IntMat& a) {
  IntVec r(a.empty() ? 0 : a[0].size(), 0);
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = 0; j < r.size(); ++j) r[j] += v[i] * a[i][j];
  return r;
}

long long int_det(const IntMat& a) {
  // Bareiss fraction-free elimination
  int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = static_cast<long>(a[i][j]);
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1].get_si();
}

bool is_unimodular(const IntMat& a) {
  for (const auto& r : a)
    if (r.size() != a.size()) return false;
  return std::llabs(int_det(a)) == 1;
}

IntMat int_inverse(const IntMat& a) {
  if (!is_unimodular(a)) fail(ErrorKind::NotUnimodular, "matrix " + int_mat_str(a) + " is not in GL_n(Z)");
  int n = static_cast<int>(a.size());
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = static_cast<long>(a[i][j]);
    m[i][n + i] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (m[p][c] == 0) ++p;
    std::swap(m[p], m[c]);
    Rational iv = 1 / m[c][c];
    for (auto& x : m[c]) x *= iv;
    for (int i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (int j = 0; j < 2 * n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  IntMat r(n, IntVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i][j] = m[i][n + j].get_num().get_si();
  return r;
}

IntMat hermite_basis(const IntMat& gens, int n) {
  IntMat m;
  for (const auto& g : gens)
    if (std::any_of(g.begin(), g.end(), [](long long x) { return x != 0; })) m.push_back(g);
  int row = 0;
  for (int c = 0; c < n && row < static_cast<int>(m.size()); ++c) {
    while (true) {
      int best = -1;
      for (int i = row; i < static_cast<int>(m.size()); ++i)
        if (m[i][c] != 0 && (best < 0 || std::llabs(m[i][c]) < std::llabs(m[best][c]))) best = i;
      if (best < 0) break;
      std::swap(m[row], m[best]);
      bool done = true;
      for (int i = row + 1; i < static_cast<int>(m.size()); ++i) {
        if (m[i][c] == 0) continue;
        long long q = m[i][c] / m[row][c];
        for (int j = 0; j < n; ++j) m[i][j] -= q * m[row][j];
        if (m[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (m[row][c] == 0) continue;
    if (m[row][c] < 0)
      for (auto& x : m[row]) x = -x;
    for (int i = 0; i < row; ++i) {
      long long q = m[i][c] / m[row][c];
      if (m[i][c] - q * m[row][c] < 0) --q;
      for (int j = 0; j < n; ++j) m[i][j] -= q * m[row][j];
    }
    ++row;
  }
  m.resize(row);
  return m;
}

bool lattice_contains(const IntMat& h, const IntVec& v0) {
  IntVec v = v0;
  for (const auto& r : h) {
    size_t p = 0;
    while (r[p] == 0) ++p;
    if (v[p] % r[p] != 0) return false;
    long long q = v[p] / r[p];
    for (size_t j = 0; j < v.size(); ++j) v[j] -= q * r[j];
  }
  return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

std::vector<long long> smith_invariants(const IntMat& gens, int n) {
  IntMat m = gens;
  int rows = static_cast<int>(m.size());
  std::vector<long long> d;
  int t = 0;
  while (t < rows && t < n) {
    // pick the smallest nonzero entry in the remaining block as pivot
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < n; ++j)
        if (m[i][j] != 0 && (pi < 0 || std::llabs(m[i][j]) < std::llabs(m[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    std::swap(m[t], m[pi]);
    for (auto& r : m) std::swap(r[t], r[pj]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < rows; ++i) {
        long long q = m[i][t] / m[t][t];
        if (q)
          for (int j = t; j < n; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);
          clean = false;
        }
      }
      for (int j = t + 1; j < n; ++j) {
        long long q = m[t][j] / m[t][t];
        if (q)
          for (int i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (auto& r : m) std::swap(r[t], r[j]);
          clean = false;
        }
      }
      if (clean) {
        // enforce divisibility into the rest of the block
        for (int i = t + 1; i < rows && clean; ++i)
          for (int j = t + 1; j < n; ++j)
            if (m[i][j] % m[t][t] != 0) {
              for (int k = t; k < n; ++k) m[t][k] += m[i][k];
              clean = false;
              break;
            }
      }
    }
    d.push_back(std::llabs(m[t][t]));
    ++t;
  }
  return d;
}

std::string int_mat_str(const IntMat& a) {
  std::string s = "[";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += "[";
    for (size_t j = 0; j < a[i].size(); ++j) {
      if (j) s += ",";
      s += std::to_string(a[i][j]);
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace mloop
