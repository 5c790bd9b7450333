#pragma once

#include "edc/group.hpp"

namespace edc {

// A G-module given as the cokernel of an injective map rel -> top of free mixed spaces.
// G acts on the right: act_top[g] sends a to a·g, so act[gh] = act[h] ∘ act[g]. This is the
// action by pullback that appears on the columns of G^•×M.
struct GModule {
  FiniteGroup group;
  MixedSpace top, rel;
  MixedMap inclusion;  // rel -> top
  std::vector<MixedMap> act_top, act_rel;

  // Trivial action on a module in canonical form.
  static GModule trivial(const FiniteGroup& G, const MixedModule& A);
  // Free module (rel = 0) with the given right action.
  static GModule free(const FiniteGroup& G, const MixedSpace& space, std::vector<MixedMap> act);
  // Degree-n cohomology of a complex with a right G-action by chain maps act[g]: degree n -> n.
  static GModule from_cohomology(const FiniteGroup& G, const MixedComplex& C, int n,
                                 const std::vector<MixedMap>& act);

  MixedModule module() const;
  // Named failures: inclusion not equivariant, action not a right action, identity not trivial.
  std::vector<std::string> validate() const;
};

// Inhomogeneous bar cochains of the cone rel -> top: degree p holds Map(G^p, top) and
// Map(G^{p+1}, rel). Degrees 0..max_degree+1.
MixedComplex bar_complex(const GModule& A, int max_degree);
MixedModule group_cohomology(const GModule& A, int p);

}  // namespace edc
