#pragma once

#include <optional>

#include "edc/geometry.hpp"

namespace edc {

// Lattice gauge field on a complex of dimension <= 1: one T-valued link variable per edge,
// oriented from the lower to the higher vertex, kept in [0, 1).
struct LatticeConnection {
  std::vector<Rational> link;
};

// Equivariant structure on a lattice field: a vertex function φ_g per group element with
//   (g*U)(e) - U(e) = φ_g(v1) - φ_g(v0)   and   φ_{gh}(v) = φ_g(h v) + φ_h(v)   mod Z.
struct LatticeEquivariance {
  std::vector<std::vector<Rational>> phi;  // [g][v]
};

// Decides whether an equivariant structure exists, for links in (1/D)Z and a cyclic group with
// the given generator. φ_generator is integrated along a spanning forest and the remaining
// constants are enumerated, so the answer is exact. Returns the first structure found.
std::optional<LatticeEquivariance> lattice_equivariance(const SimplicialAction& a, const LatticeConnection& U,
                                                        int generator, int D = 8);
bool check_lattice_equivariance(const SimplicialAction& a, const LatticeConnection& U, const LatticeEquivariance& E);

// Holonomy around a closed edge path given as a vertex cycle.
Rational lattice_holonomy(const SimplicialComplex& X, const LatticeConnection& U, const std::vector<int>& cycle);

// Level-0 Deligne cocycle of the lattice field: the links as a global connection 1-cochain.
TripleCochain lattice_level_zero(const GeometryModel& M, const LatticeConnection& U);

}  // namespace edc
