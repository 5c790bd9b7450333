#pragma once

#include "edc/group.hpp"

namespace edc {

// Cone of Z -> Q on a complex of free abelian groups: degree t holds the integral
// degree-t term and the rational degree-(t-1) term. Degree n+1 computes coefficients in Q/Z.
MixedComplex torsion_cone(const MixedComplex& integral);
// The same complex with every term moved to Q.
MixedComplex rationalize(const MixedComplex& integral);

// Simplicial cochains on G^•×M: degree t is the sum over i + q = t of Map(G^i, C^q(M)),
// with D = ∂ + (-1)^i d and ∂ the alternating sum of face pullbacks.
class BorelComplex {
 public:
  BorelComplex(const SimplicialAction& a, int t_max);

  // Integral complex in degrees 0..t_max (not zero above).
  const MixedComplex& integral() const { return complex_; }
  MixedComplex with(Coefficients coeff) const;
  // Coordinate of (level i, copy, q-simplex) inside degree i + q.
  int coordinate(int i, long copy, int q, int simplex) const;
  int t_max() const { return t_max_; }

 private:
  const SimplicialAction* action_;
  int t_max_;
  std::vector<std::vector<int>> offset_;  // offset_[t][i]
  MixedComplex complex_;
};

// H^m_G(M; coefficients) from the Borel double complex.
MixedModule equivariant_cohomology(const SimplicialAction& a, int m, Coefficients coeff = Coefficients::Z);
inline MixedModule equivariant_integral_cohomology(const SimplicialAction& a, int m) {
  return equivariant_cohomology(a, m, Coefficients::Z);
}

// Integral cochains invariant under G, spanned by orbit sums; requires G to act freely on
// simplices, in which case this computes the cohomology of the quotient complex.
MixedComplex invariant_cochain_complex(const SimplicialAction& a);
MixedModule quotient_cohomology(const SimplicialAction& a, int m);
bool acts_freely(const SimplicialAction& a);

}  // namespace edc
