#pragma once

#include <string>

#include "edc/group.hpp"

namespace edc::fixtures {

SimplicialComplex point();
SimplicialComplex circle(int k);  // k-gon, k >= 3
SimplicialComplex octahedron();
SimplicialComplex boundary_simplex(int n);  // boundary of the n-simplex, a triangulated (n-1)-sphere
SimplicialComplex disjoint_union(const SimplicialComplex& a, const SimplicialComplex& b);

// Preset names understood by the problem loader.
FiniteGroup group_preset(const std::string& name);       // "cyclic:n", "klein4", "trivial", "dihedral:n"
SimplicialComplex complex_preset(const std::string& name);  // "point", "circle:k", "sphere:octahedron", ...

// Z/n rotating a k-gon by k/n steps (n divides k).
SimplicialAction rotation(int n, int k);
// Z/2 swapping the two halves of X ⊔ X.
SimplicialAction swap_copies(const SimplicialComplex& X);
// Antipodal Z/2 on the octahedron (vertices 2i, 2i+1 are antipodal).
SimplicialAction antipodal_octahedron();

}  // namespace edc::fixtures
