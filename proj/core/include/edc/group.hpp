#pragma once

#include <string>
#include <vector>

#include "edc/simplicial.hpp"

namespace edc {

class FiniteGroup {
 public:
  FiniteGroup() : names_{"e"}, table_{{0}}, inverse_{0} {}
  // Validates closure, associativity, identity and inverses; throws InputError naming the failed axiom.
  static FiniteGroup from_table(std::vector<std::string> names, std::vector<std::vector<int>> table);
  static FiniteGroup cyclic(int n);
  static FiniteGroup klein4();
  static FiniteGroup trivial();
  static FiniteGroup dihedral(int n);  // order 2n: rotations r^k then reflections r^k s
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  const std::string& name(int a) const { return names_.at(a); }
  int index_of(const std::string& name) const;  // -1 when absent
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::vector<std::string>& names() const { return names_; }
  // Power-of-order encoding of tuples in G^p, first entry most significant.
  long tuple_count(int p) const;
  long encode(const std::vector<int>& g) const;
  std::vector<int> decode(int p, long code) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

// Named axiom failures of a multiplication table; empty when it defines a group.
std::vector<std::string> group_table_failures(const std::vector<std::vector<int>>& table);

struct SimplicialAction {
  FiniteGroup group;
  SimplicialComplex space;
  std::vector<std::vector<int>> perm;  // perm[g][v]

  static SimplicialAction trivial_action(FiniteGroup g, SimplicialComplex x);
  // Extends generator permutations to all of G via perm(gh) = perm(g)∘perm(h).
  static SimplicialAction from_generators(FiniteGroup g, SimplicialComplex x,
                                          const std::vector<std::pair<int, std::vector<int>>>& gens);

  int act(int g, int v) const { return perm[g][v]; }
  // Sorted image of a simplex with the orientation sign of the sorting.
  Simplex act(int g, const Simplex& s, int* sign = nullptr) const;
  int act_simplex_index(int g, int q, int idx, int* sign = nullptr) const;
};

}  // namespace edc
