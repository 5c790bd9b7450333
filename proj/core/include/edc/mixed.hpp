#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edc/int_matrix.hpp"
#include "edc/numeric.hpp"
#include "edc/sparse.hpp"

namespace edc {

// Coordinates [0, nZ) are integral, [nZ, nZ + nQ) rational.
struct MixedSpace {
  int nZ = 0;
  int nQ = 0;
  std::vector<std::string> labels;  // optional, one per coordinate

  int dim() const { return nZ + nQ; }
  bool is_integral(int i) const { return i < nZ; }
  bool operator==(const MixedSpace& o) const { return nZ == o.nZ && nQ == o.nQ; }
  // Throws unless v has integral entries on the Z-block and fits the dimension.
  void check_element(const SparseVec& v) const;
};

// A homomorphism Z^a + Q^b -> Z^c + Q^d. Stored by target rows over source coordinates;
// rows of Z-targets are integral and vanish on Q-sources.
class MixedMap {
 public:
  MixedMap() = default;
  MixedMap(MixedSpace source, MixedSpace target, std::vector<SparseVec> rows);
  static MixedMap zero(MixedSpace source, MixedSpace target);
  static MixedMap identity(MixedSpace space);

  const MixedSpace& source() const { return source_; }
  const MixedSpace& target() const { return target_; }
  const std::vector<SparseVec>& rows() const { return rows_; }
  const std::vector<SparseVec>& cols() const { return cols_; }

  SparseVec apply(const SparseVec& x) const;
  MixedMap compose_after(const MixedMap& first) const;  // this ∘ first
  bool is_zero() const;

  // Rational functional on the target pulled back to the source: phi ∘ f.
  SparseVec pullback(const SparseVec& phi) const;

 private:
  MixedSpace source_, target_;
  std::vector<SparseVec> rows_;
  std::vector<SparseVec> cols_;
};

// Z^rankZ + Q^rankQ + (Q/Z)^rankQZ + sum Z/t_i with t_1 | t_2 | ...
struct MixedModule {
  int rankZ = 0;
  int rankQ = 0;
  int rankQZ = 0;
  std::vector<Integer> torsion;

  bool is_zero() const { return rankZ == 0 && rankQ == 0 && rankQZ == 0 && torsion.empty(); }
  bool operator==(const MixedModule&) const = default;
  std::string str() const;
  static MixedModule parse(const std::string& s);
  // Order of the finite part (product of torsion divisors).
  Integer torsion_order() const;
};

MixedModule direct_sum(const MixedModule& a, const MixedModule& b);
// Canonicalizes a list of cyclic orders (arbitrary positive integers) into invariant factors.
std::vector<Integer> invariant_factors(std::vector<Integer> orders);

// Subgroup of a mixed space: integer combinations of `lattice` plus the Q-span of `space`.
// Space generators vanish on the Z-block.
struct Subgroup {
  MixedSpace ambient;
  std::vector<SparseVec> lattice;
  std::vector<SparseVec> space;

  static Subgroup whole(const MixedSpace& s);
  static Subgroup zero(const MixedSpace& s) { return Subgroup{s, {}, {}}; }
  bool contains(const SparseVec& x) const;
};

Subgroup kernel(const MixedMap& f, EliminationOrder order = EliminationOrder::RowMajor);
Subgroup image(const MixedMap& f);
Subgroup image(const MixedMap& f, const Subgroup& domain);
// {x in domain : f(x) in target}
Subgroup preimage(const MixedMap& f, const Subgroup& target, const Subgroup& domain,
                  EliminationOrder order = EliminationOrder::RowMajor);
Subgroup intersection(const Subgroup& a, const Subgroup& b,
                      EliminationOrder order = EliminationOrder::RowMajor);
Subgroup sum(const Subgroup& a, const Subgroup& b);

enum class SummandKind { Z, Q, QZ, Torsion };

struct Summand {
  SummandKind kind;
  Integer order;      // torsion summands only
  SparseVec generator;  // for QZ: the element hit by coefficient 1 (t * generator, t in [0,1))
};

// Canonical decomposition of H1/H2 for subgroups H2 ⊆ H1 of one ambient space.
class Quotient {
 public:
  Quotient() = default;
  Quotient(const Subgroup& H1, const Subgroup& H2, EliminationOrder order = EliminationOrder::RowMajor);

  const MixedModule& module() const { return module_; }
  const std::vector<Summand>& summands() const { return summands_; }

  // Coefficients of x ∈ H1 along the summands: Z and Q free, Q/Z in [0,1), Z/t in [0,t).
  std::vector<Rational> decode(const SparseVec& x) const;

  // Combination of H2's generators equal to x, when x ∈ H2.
  struct Witness {
    std::vector<Integer> lattice;
    std::vector<Rational> space;
  };
  std::optional<Witness> membership(const SparseVec& x) const;

 private:
  struct Split {
    std::vector<Rational> coeffs;
    Witness witness;
    bool in_H2 = false;
  };
  Split split(const SparseVec& x) const;

  Subgroup H1_, H2_;
  MixedModule module_;
  std::vector<Summand> summands_;

  Reducer R1_{false};           // reduces modulo W1
  Integer scale_ = 1;           // common denominator applied to Q-coordinates after reduction
  ColumnEchelon lattice1_;      // echelon basis of the reduced image of H1's lattice
  IntMatrix U_, V_;             // Smith transforms of the relation matrix
  std::vector<Integer> s_;      // invariant factors, padded with zeros to rank of lattice1_
  std::vector<int> summand_of_; // per Smith index: summand index or -1
  std::vector<SparseVec> rel_;  // rel_[i] = H2 lattice combination V e_i, as vectors
  Reducer RC_{true};            // in W1-coordinates: W2 | lambda | complement
  int nW2_ = 0;
  std::vector<SparseInt> lambda_combo_;  // lambda_j as a combination of H2 lattice generators
  std::vector<int> qz_summand_, q_summand_;
  std::vector<int> complement_labels_;
};

SparseVec w1_coordinates(const Reducer& R, const SparseVec& x);

// A cochain complex of mixed spaces. Terms outside [first, first + terms) are treated as zero
// only when the matching flag is set; otherwise cohomology there is out of range.
struct MixedComplex {
  int first_degree = 0;
  std::vector<MixedSpace> terms;
  std::vector<MixedMap> maps;  // maps[t]: terms[t] -> terms[t+1]
  bool zero_below = true;
  bool zero_above = true;

  bool empty() const { return terms.empty(); }
  int last_degree() const { return first_degree + static_cast<int>(terms.size()) - 1; }
  bool has_degree(int n) const { return !terms.empty() && n >= first_degree && n <= last_degree(); }
  const MixedSpace& term(int n) const;
  // Map out of degree n, or nullptr when the next term is absent.
  const MixedMap* map_from(int n) const;
  const MixedMap* map_into(int n) const;
  // Exact check of d∘d = 0; throws StructuralError naming the degree.
  void validate() const;
};

struct CohomologyData {
  int degree = 0;
  MixedModule module;
  std::vector<SparseVec> representatives;  // one cocycle per summand, nonzero in cohomology
  Quotient quotient;
  Subgroup cocycles, coboundaries;

  std::vector<Rational> decode(const SparseVec& z) const { return quotient.decode(z); }
};

CohomologyData cohomology_at(const MixedComplex& C, int n,
                             EliminationOrder order = EliminationOrder::RowMajor);

struct SolveResult {
  bool solved = false;
  SparseVec x;            // f(x) = y
  SparseVec certificate;  // functional phi on the target: phi∘f integral on Z, zero on Q, phi(y) ∉ Z
  bool rank_obstruction = false;
};
SolveResult solve_mixed(const MixedMap& f, const SparseVec& y,
                        EliminationOrder order = EliminationOrder::RowMajor);
// Checks the certificate property; used by tests and by callers that forward certificates.
bool check_certificate(const MixedMap& f, const SparseVec& y, const SparseVec& phi);

struct CoboundaryVerdict {
  bool is_coboundary = false;
  SparseVec witness;            // d(witness) = z
  int generator = -1;           // summand index with nonzero coefficient
  Rational coefficient;
  std::vector<Rational> coordinates;
};
CoboundaryVerdict is_coboundary(const MixedComplex& C, int n, const SparseVec& z);
CoboundaryVerdict is_coboundary(const MixedComplex& C, const CohomologyData& H, const SparseVec& z);

}  // namespace edc
