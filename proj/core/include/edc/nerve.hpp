#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "edc/group.hpp"

namespace edc {

// A point of G^p × M carrying an M-simplex: (g_1, ..., g_p; x).
struct NervePoint {
  std::vector<int> g;
  Simplex x;
  int level() const { return static_cast<int>(g.size()); }
  bool operator==(const NervePoint&) const = default;
};

// ∂_i for 0 <= i <= p: drop g_1, merge g_i g_{i+1}, or drop g_p and move x by g_p.
NervePoint face_map(const SimplicialAction& a, const NervePoint& pt, int i);
// s_i for 0 <= i <= p: insert the identity at position i.
NervePoint degeneracy_map(const SimplicialAction& a, const NervePoint& pt, int i);

struct ActionReport {
  std::vector<std::string> failures;  // named violations
  std::vector<std::string> warnings;
  bool ok() const { return failures.empty(); }
};

// Group axioms, homomorphism, simplicial-ness and the simplicial identities up to level max_level.
ActionReport validate_action(const SimplicialAction& a, int max_level = 4, unsigned samples = 200);

// Which open cover of G^•×M backs the Čech model.
//  Inductive: index set V^{p+1} at level p, patch cores unwound from the inductive definition.
//  Copywise:  index set V at every level, the star cover of each copy of M.
enum class CoverKind { Copywise, Inductive };

struct Patch {
  int level = 0;
  long copy = 0;               // encoded (g_1..g_p)
  std::vector<long> indices;   // Čech multi-index, local indices of the cover
  Simplex core;                // resolved vertex set
  std::shared_ptr<const StarSubcomplex> star;  // null when the core spans no simplex
  bool empty() const { return !star; }
};

class NerveCover {
 public:
  NerveCover(const SimplicialAction& a, CoverKind kind);

  CoverKind kind() const { return kind_; }
  const SimplicialAction& action() const { return *action_; }
  long index_count(int p) const;
  // Core vertex set of one local index in the given copy (sorted, duplicates removed).
  Simplex index_core(int p, long copy, long index) const;
  // Local index after the l-th face; the copy passed is the source copy at level p.
  long index_face(int p, long copy, long index, int l) const;
  std::string index_name(int p, long index) const;

  // Unwinds the inductive definition recursively (memoized) for a multi-index.
  Patch resolve_patch(int p, const std::vector<long>& indices, long copy) const;
  std::shared_ptr<const StarSubcomplex> star(const Simplex& core) const;

 private:
  Simplex inductive_core_recursive(int p, const std::vector<int>& alpha, const std::vector<int>& g) const;

  const SimplicialAction* action_;
  CoverKind kind_;
  mutable std::mutex mutex_;
  mutable std::map<Simplex, std::shared_ptr<const StarSubcomplex>> stars_;
  mutable std::map<std::tuple<int, std::vector<long>, long>, Patch> patches_;
};

// A nonempty Čech simplex (copy, sorted distinct local indices) at one level.
struct CechSimplex {
  long copy = 0;
  std::vector<long> indices;
  Simplex core;
  std::shared_ptr<const StarSubcomplex> star;
};

// All nonempty Čech simplices of one level, by Čech degree, in deterministic order.
struct LevelCover {
  int level = 0;
  std::vector<std::vector<CechSimplex>> by_degree;
  std::vector<std::map<std::pair<long, std::vector<long>>, int>> lookup;

  int count(int j) const {
    return j >= 0 && j < static_cast<int>(by_degree.size()) ? static_cast<int>(by_degree[j].size()) : 0;
  }
  int find(int j, long copy, const std::vector<long>& indices) const;
};

LevelCover enumerate_level(const NerveCover& cover, int p, int max_cech_degree);

// Augmented Čech column at an M-simplex tau in one copy: Z, then the free abelian groups on
// the Čech simplices whose patch contains tau. Exact when the cover is good at tau.
MixedComplex cech_column(const NerveCover& cover, const LevelCover& level, long copy, int q, int tau);

}  // namespace edc
