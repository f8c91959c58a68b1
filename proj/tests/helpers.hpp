#pragma once

#include <random>

#include "mloop/cycfield.hpp"
#include "mloop/linalg.hpp"

namespace testutil {

inline mloop::Rational rand_rat(std::mt19937_64& rng, int num = 9, int den = 5) {
  std::uniform_int_distribution<int> n(-num, num), d(1, den);
  mloop::Rational q(n(rng), d(rng));
  q.canonicalize();
  return q;
}

inline mloop::CycNum rand_cyc(std::mt19937_64& rng, int order) {
  std::vector<mloop::Rational> c(mloop::euler_phi(order));
  for (auto& x : c) x = rand_rat(rng);
  return mloop::CycNum::from_coeffs(order, c);
}

inline mloop::Vec rand_vec(std::mt19937_64& rng, int n, int order = 1) {
  mloop::Vec v(n);
  for (auto& x : v) x = rand_cyc(rng, order);
  return v;
}

}  // namespace testutil
