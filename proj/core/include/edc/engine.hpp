#pragma once

#include <memory>
#include <string>

#include "edc/assembly.hpp"
#include "edc/borel.hpp"
#include "edc/gmodule.hpp"

namespace edc {

// Stated in every report: how the model degrees relate to the Deligne degrees.
extern const char* const kConventions;

struct EngineOptions {
  CoverKind cover = CoverKind::Copywise;
  long max_dimension = 20000;  // per total degree
  EliminationOrder order = EliminationOrder::RowMajor;
};

// Cohomology of one model complex in one degree, with representatives kept as cocycles.
struct CohomologyResult {
  int degree = 0;        // Deligne degree m
  int N = 0;
  int model_degree = 0;  // m + 1
  MixedModule group;
  std::vector<SparseVec> representatives;
  std::string conventions;
  std::shared_ptr<const MixedComplex> complex;
  std::shared_ptr<const CohomologyData> data;
  std::shared_ptr<const Assembly> assembly;  // null for the ordinary model

  TripleCochain triple(std::size_t i) const;
  std::vector<Rational> decode(const SparseVec& cocycle) const { return data->decode(cocycle); }
  std::vector<Rational> decode(const TripleCochain& c) const { return decode(assembly->flatten(c)); }
  CoboundaryVerdict coboundary(const SparseVec& cocycle) const;
};

// H^m(G^•×M, F̄(N)).
CohomologyResult equivariant_deligne(const SimplicialAction& a, int N, int m, const EngineOptions& opts = {});
// Same as above on an already assembled model.
CohomologyResult deligne_from_assembly(std::shared_ptr<const Assembly> A, int m, const EngineOptions& opts = {});

// Čech-Deligne complex of M alone over the vertex-star cover, built without any group data.
// Degree t: for each Čech degree j and slot k with j + k = t, one block per j-simplex.
class OrdinaryModel {
 public:
  OrdinaryModel(const SimplicialComplex& X, int N, int t_hi);
  const MixedComplex& complex() const { return complex_; }
  const SimplicialComplex& space() const { return X_; }
  int N() const { return N_; }
  int coordinate(int j, int sigma, int k, int local = 0) const;
  const StarSubcomplex& star(int j, int sigma) const { return *stars_.at(j).at(sigma); }
  // Pullback along the vertex map of g, as a chain map on degree t.
  MixedMap pullback(const SimplicialAction& a, int g, int t) const;

 private:
  SimplicialComplex X_;
  int N_, t_hi_;
  std::vector<std::vector<std::shared_ptr<StarSubcomplex>>> stars_;
  std::vector<std::map<std::pair<int, int>, std::vector<int>>> offsets_;  // [t][(j,k)] per simplex, plus end
  MixedComplex complex_;
};

CohomologyResult ordinary_deligne(const SimplicialComplex& X, int N, int m);
// H^q(M, F(N)) as a module with the pullback action of G.
GModule deligne_coefficient_module(const SimplicialAction& a, int N, int q);

// G-invariant rational q-cochains, their closed part, and the closed ones with integral periods.
struct InvariantForms {
  std::vector<std::vector<Rational>> basis;
  std::vector<std::vector<Rational>> closed;
  Subgroup integral;  // ambient Q^{#q-simplices}
};
InvariantForms invariant_forms(const SimplicialAction& a, int q);
// Averaging projector applied to a cochain.
std::vector<Rational> average(const SimplicialAction& a, int q, const std::vector<Rational>& c);
bool is_invariant(const SimplicialAction& a, int q, const std::vector<Rational>& c);
bool is_closed(const SimplicialComplex& X, int q, const std::vector<Rational>& c);

// Simplicial coboundary of the top slot of a degree-(N+1) cocycle, glued to a global
// (N+1)-cochain. Throws StructuralError when the local pieces disagree.
std::vector<Rational> curvature(const Assembly& A, const TripleCochain& cocycle);
std::vector<Rational> curvature(const CohomologyResult& r, std::size_t representative);

// Image in the double complex (A^j(G^i×M), ∂, d): (F, 0, ..., 0) with F the curvature.
struct DeRhamImage {
  std::vector<Rational> form;  // level-0 component
  bool invariant = false;      // ∂F = 0
  bool closed = false;         // dF = 0
  bool total_cocycle = false;  // D(F, 0, ...) = 0 in the rational Borel complex
};
DeRhamImage equivariant_deRham_map(const Assembly& A, const TripleCochain& cocycle);

}  // namespace edc
