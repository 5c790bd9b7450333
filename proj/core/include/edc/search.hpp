#pragma once

#include <functional>

#include "edc/mixed.hpp"

namespace edc {

// Bounded values: rationals with denominator at most `denominator_bound` and |x| <= rational_bound,
// integers with |x| <= integer_bound.
struct SearchDomain {
  int denominator_bound = 8;
  Rational rational_bound = 1;
  int integer_bound = 2;
  long node_limit = 20'000'000;

  bool admits(const Rational& x, bool integral) const;
  std::vector<Rational> values(bool integral) const;  // ascending
};

// Exhaustive search over the bounded domain for the unknown coordinates x of a source vector:
// f(fixed + x) = target, with the coordinates of x outside `unknowns` zero. Unknowns that share
// no equation are searched independently. Equations whose unknowns are all but one assigned
// force that one; otherwise the most constrained equation is branched on.
class BoundedSearch {
 public:
  BoundedSearch(const MixedMap& f, std::vector<int> unknowns, SearchDomain domain = {});

  // Calls visit(fixed + x) per solution until it returns false. Returns the number of solutions seen.
  long run(const SparseVec& fixed, const SparseVec& target, const std::function<bool(const SparseVec&)>& visit);
  std::optional<SparseVec> first(const SparseVec& fixed, const SparseVec& target);
  // False when the node limit cut the search short; results are then not exhaustive.
  bool complete() const { return complete_; }
  long nodes() const { return nodes_; }

 private:
  struct Equation {
    std::vector<std::pair<int, Rational>> terms;  // (unknown slot, coefficient)
    Rational rhs;
  };
  struct Component {
    std::vector<int> vars, eqs;
  };
  // Solutions of one component, as values of its vars; stops after `limit` of them.
  bool descend(const Component& C, std::vector<std::vector<Rational>>& out, long limit);
  long search(const SparseVec& fixed, const SparseVec& target, long per_component,
              const std::function<bool(const SparseVec&)>& visit);
  bool assign(int var, const Rational& v, std::vector<int>& trail);
  void undo(std::vector<int>& trail);

  const MixedMap& f_;
  std::vector<int> unknowns_;
  std::vector<bool> integral_;
  SearchDomain domain_;
  std::vector<Rational> zvals_, qvals_;
  std::vector<std::vector<int>> var_eqs_;
  std::vector<Equation> eqs_;
  std::vector<Component> components_;
  // search state
  std::vector<std::optional<Rational>> value_;
  std::vector<Rational> partial_;
  std::vector<int> open_;
  long nodes_ = 0;
  bool complete_ = true;
};

}  // namespace edc
