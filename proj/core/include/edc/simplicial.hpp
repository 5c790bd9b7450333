#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "edc/mixed.hpp"

namespace edc {

using Simplex = std::vector<int>;  // sorted vertex ids

class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  // Downward closure of the facets. Vertices are 0..nvertices-1; isolated vertices are
  // allowed when nvertices exceeds the vertices used by the facets.
  static SimplicialComplex from_facets(const std::vector<std::vector<int>>& facets, int nvertices = -1,
                                       std::vector<std::string> labels = {});
  static SimplicialComplex from_labelled_facets(const std::vector<std::vector<std::string>>& facets);

  int num_vertices() const { return count(0); }
  int dim() const { return static_cast<int>(simplices_.size()) - 1; }
  int count(int q) const {
    return q >= 0 && q < static_cast<int>(simplices_.size()) ? static_cast<int>(simplices_[q].size()) : 0;
  }
  const Simplex& simplex(int q, int i) const { return simplices_.at(q).at(i); }
  const std::vector<Simplex>& simplices(int q) const { return simplices_.at(q); }
  // Index among simplices of dimension |s|-1, or -1.
  int index_of(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index_of(s) >= 0; }
  std::vector<Simplex> facets() const;
  const std::vector<std::string>& labels() const { return labels_; }
  int euler_characteristic() const;

  // Rows indexed by (q+1)-simplices, columns by q-simplices.
  std::vector<SparseVec> coboundary_rows(int q) const;

 private:
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, int>> index_;
  std::vector<std::string> labels_;
};

// Sign and sorted image of a simplex under a vertex map; sign 0 when vertices collide.
int sort_with_sign(Simplex& s);

// Closed star of the vertex set S: all faces of simplices containing S.
struct StarSubcomplex {
  Simplex core;
  std::vector<std::vector<int>> simplices;  // per dimension, sorted global indices

  bool empty() const { return simplices.empty() || simplices[0].empty(); }
  int count(int q) const {
    return q >= 0 && q < static_cast<int>(simplices.size()) ? static_cast<int>(simplices[q].size()) : 0;
  }
  int local_index(int q, int global) const;
  bool contains(int q, int global) const { return local_index(q, global) >= 0; }
};

StarSubcomplex closed_star(const SimplicialComplex& X, const Simplex& S);

// Coboundary C^q(star) -> C^{q+1}(star) in local coordinates.
std::vector<SparseVec> star_coboundary_rows(const SimplicialComplex& X, const StarSubcomplex& st, int q);

enum class Ring { Z, Q };

struct SimplicialCochain {
  int degree = 0;
  Ring ring = Ring::Q;
  std::shared_ptr<const StarSubcomplex> support;  // null: whole complex
  std::vector<Rational> values;                   // one per simplex of the support

  static SimplicialCochain zero(const SimplicialComplex& X, int q, Ring ring,
                                std::shared_ptr<const StarSubcomplex> support = nullptr);
  Rational value_on(int global_index) const;  // 0 outside the support
};

SimplicialCochain coboundary(const SimplicialComplex& X, const SimplicialCochain& c);

enum class Coefficients { Z, Q, T };  // T: the two-term complex [Z -> Q]

// Cochain complex whose degree-n cohomology is H^n(X; coefficients). For T the complex is the
// cone of Z -> Q and starts one degree higher: its degree n+1 computes H^n(X; T).
MixedComplex simplicial_cochain_complex(const SimplicialComplex& X, Coefficients coeff);
MixedModule simplicial_cohomology(const SimplicialComplex& X, Coefficients coeff, int n);

// Integral basis of the q-cycles (integer kernel of the boundary map).
std::vector<SparseInt> integral_cycles(const SimplicialComplex& X, int q);
// Closed Q-cochain pairs integrally with every integral cycle.
bool is_integral_closed(const SimplicialComplex& X, int q, const std::vector<Rational>& c);
Rational pair_with_chain(const std::vector<Rational>& cochain, const SparseInt& chain);

// Augmented cochain complex of a star: Z (or Q) in degree -1 followed by its cochains.
MixedComplex augmented_star_complex(const SimplicialComplex& X, const StarSubcomplex& st, Ring ring);

}  // namespace edc
