#pragma once

#include <random>
#include <vector>

#include "edc/mixed.hpp"

namespace edc::test {

using Dense = std::vector<std::vector<Rational>>;

inline MixedMap map_from_dense(const MixedSpace& s, const MixedSpace& t, const Dense& m) {
  std::vector<SparseVec> rows;
  for (const auto& r : m) rows.push_back(sparse_from_dense(r));
  return MixedMap(s, t, rows);
}

inline SparseVec vec(std::initializer_list<Rational> v) { return sparse_from_dense(std::vector<Rational>(v)); }

inline Rational random_small(std::mt19937& rng, int lo, int hi) {
  return Rational(std::uniform_int_distribution<int>(lo, hi)(rng));
}

inline Rational random_fraction(std::mt19937& rng, int num, int den) {
  int p = std::uniform_int_distribution<int>(-num, num)(rng);
  int q = std::uniform_int_distribution<int>(1, den)(rng);
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Random element of a mixed space with small entries.
inline SparseVec random_element(std::mt19937& rng, const MixedSpace& s, double density = 0.6) {
  std::bernoulli_distribution keep(density);
  SparseVec v;
  for (int i = 0; i < s.dim(); ++i) {
    if (!keep(rng)) continue;
    Rational x = i < s.nZ ? random_small(rng, -3, 3) : random_fraction(rng, 5, 6);
    if (x != 0) v.emplace_back(i, x);
  }
  return v;
}

}  // namespace edc::test
