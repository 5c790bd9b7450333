#pragma once

#include <optional>

#include "edc/search.hpp"
#include "edc/spectral.hpp"

namespace edc {

// Equivariant circle bundles with connection live in Deligne degree 1, gerbes with connective
// structure and curving in degree 2. Both are total cocycles of the Z(N+1)-model in degree m+1.
enum class GeometryKind { Bundle, Gerbe };
const char* to_string(GeometryKind k);

class GeometryModel {
 public:
  // N defaults to the Deligne degree; a larger N gives the flat model.
  GeometryModel(const SimplicialAction& a, GeometryKind kind, int N = -1, const EngineOptions& opts = {});

  GeometryKind kind() const { return kind_; }
  int degree() const { return m_; }
  int N() const { return A_->spec().N; }
  int model_degree() const { return m_ + 1; }
  const Assembly& assembly() const { return *A_; }
  const SimplicialAction& action() const { return A_->action(); }
  // H^m with stored representatives.
  const CohomologyResult& classes() const { return classes_; }

  TripleCochain zero() const { return A_->zero(model_degree()); }
  // Short component name of a cochain block: z, a, theta, w, b, u for bundles;
  // z, f, theta1, theta2, w, g, omega, v, h, u for gerbes.
  std::string component(const SlotKey& key) const;
  // Name of the condition expressed by one block of D(c).
  std::string condition(const SlotKey& key) const;
  // Σ coefficient_i · representative_i
  TripleCochain representative(const std::vector<Rational>& coefficients) const;

  FilteredPages& pages() const { return *pages_; }

 private:
  GeometryKind kind_;
  int m_;
  std::shared_ptr<Assembly> A_;
  CohomologyResult classes_;
  std::unique_ptr<FilteredComplex> filtered_;
  std::unique_ptr<FilteredPages> pages_;
};

struct Violation {
  std::string condition;
  SlotKey key;         // block of D(c)
  std::string where;   // readable block description
};
struct Validation {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  // The first failing condition, or "ok".
  std::string summary() const;
};
Validation validate(const GeometryModel& M, const TripleCochain& c);

// Coordinates of the class of a valid cocycle; throws PreconditionError on an invalid one.
std::vector<Rational> class_of(const GeometryModel& M, const TripleCochain& c);

struct Isomorphism {
  bool isomorphic = false;
  TripleCochain witness;             // D(witness) = c1 - c2 when isomorphic
  int generator = -1;                // otherwise a summand on which the classes differ
  Rational difference;               // and the coefficient of the difference there
};
Isomorphism isomorphic(const GeometryModel& M, const TripleCochain& c1, const TripleCochain& c2);

// Glued curvature (m+1)-cochain; zero for flat models.
std::vector<Rational> geometry_curvature(const GeometryModel& M, const TripleCochain& c);

// Integral periods of an invariant closed cochain: every integral-cycle pairing lies in Z.
bool has_integral_periods(const SimplicialAction& a, int q, const std::vector<Rational>& form);

struct FlatTest {
  bool flat = false;             // a cocycle of the model with one more slot
  bool zero_curvature = false;
  Validation in_flat_model;
};
FlatTest flat_test(const GeometryModel& M, const TripleCochain& c);

// Staged extension of a level-0 cocycle: stage r evaluates d_r on page r.
struct ObstructionStage {
  int page = 0;
  Bidegree target;
  MixedModule group;                 // the page entry holding the obstruction
  std::vector<Rational> value;
  bool vanishes = false;
};
struct Obstructions {
  std::vector<ObstructionStage> stages;  // stops at the first nonvanishing stage
  std::optional<TripleCochain> extension;  // a full cocycle with the given level-0 part
  bool extends() const { return extension.has_value(); }
};
Obstructions obstructions(const GeometryModel& M, const TripleCochain& level0);
// Level-0 part of a cochain.
TripleCochain level_zero(const TripleCochain& c);
// Level-0 data of a global top form (connection 1-cochain or curving 2-cochain), restricted
// to every patch. An ordinary cocycle whenever the form is, e.g. on complexes of dimension m.
TripleCochain form_level_zero(const GeometryModel& M, const std::vector<Rational>& form);

// Classes of lifts with fixed level-0 cocycle form a torsor under this group.
struct LiftingTorsor {
  MixedModule group;
  std::vector<SummandKind> kinds;
  std::vector<TripleCochain> generators;  // cocycles supported in levels >= 1
  TripleCochain act(const TripleCochain& c, const std::vector<Rational>& coefficients) const;
};
LiftingTorsor lifting_torsor(const GeometryModel& M);

// Rational group cochain with trivial action, one value per tuple (FiniteGroup::encode order).
struct GroupCochain {
  int degree = 0;
  std::vector<Rational> values;
};
GroupCochain group_coboundary(const FiniteGroup& G, const GroupCochain& f);
bool is_cocycle_mod_integers(const FiniteGroup& G, const GroupCochain& f);
// a1 b2 / 2 on Z/2 × Z/2 with the bit encoding of FiniteGroup::klein4.
GroupCochain discrete_torsion_klein4();

// Fills the integer slots next to constant integral slot-1 residues of D(c), so that the unit
// inclusion cancels them. Used to complete T-valued data by its integer witnesses.
TripleCochain with_integer_witnesses(const GeometryModel& M, TripleCochain c);

// Multiplies the transition isomorphisms by γ (the level-2 slot-1 component), restoring the
// cocycle condition with an integral witness one level up.
TripleCochain twist_gerbe(const GeometryModel& M, const TripleCochain& c, const GroupCochain& gamma);

// Brute-force support: all cocycles in the bounded domain, and bounded isomorphism search.
std::vector<TripleCochain> enumerate_cocycles(const GeometryModel& M, const SearchDomain& domain, bool* complete = nullptr);
std::optional<TripleCochain> bounded_isomorphism(const GeometryModel& M, const TripleCochain& c1,
                                                 const TripleCochain& c2, const SearchDomain& domain);
std::optional<TripleCochain> bounded_extension(const GeometryModel& M, const TripleCochain& level0,
                                               const SearchDomain& domain, bool* complete = nullptr);

}  // namespace edc
