#include <doctest.h>

#include "edc/engine.hpp"
#include "edc/fixtures.hpp"
#include "support.hpp"

using namespace edc;

namespace {

SimplicialAction on_point(const FiniteGroup& G) { return SimplicialAction::trivial_action(G, fixtures::point()); }
SimplicialAction plain(const SimplicialComplex& X) { return SimplicialAction::trivial_action(FiniteGroup::trivial(), X); }

}  // namespace

TEST_CASE("group cohomology from the bar complex") {
  auto Z2 = FiniteGroup::cyclic(2), Z3 = FiniteGroup::cyclic(3), V4 = FiniteGroup::klein4();
  const auto QZ = MixedModule::parse("(Q/Z)^1");
  CHECK(group_cohomology(GModule::trivial(Z2, QZ), 0).str() == "(Q/Z)^1");
  CHECK(group_cohomology(GModule::trivial(Z2, QZ), 1).str() == "Z/2");
  CHECK(group_cohomology(GModule::trivial(Z2, QZ), 2).is_zero());
  CHECK(group_cohomology(GModule::trivial(Z3, QZ), 3).str() == "Z/3");
  CHECK(group_cohomology(GModule::trivial(V4, QZ), 2).str() == "Z/2");
  CHECK(group_cohomology(GModule::trivial(V4, QZ), 1).str() == "Z/2 + Z/2");
  CHECK(group_cohomology(GModule::trivial(Z3, MixedModule::parse("Z^1")), 2).str() == "Z/3");
  CHECK(group_cohomology(GModule::trivial(Z2, MixedModule::parse("Z/2")), 1).str() == "Z/2");
  for (int p = 1; p <= 3; ++p) {
    CHECK(group_cohomology(GModule::trivial(Z3, MixedModule::parse("Q^2")), p).is_zero());
    CHECK(group_cohomology(GModule::trivial(V4, MixedModule::parse("Q^1")), p).is_zero());
  }
  // Z/2 swapping two Q coordinates: the invariants are the diagonal.
  MixedSpace Q2{0, 2, {}};
  GModule swap = GModule::free(Z2, Q2, {MixedMap::identity(Q2), MixedMap(Q2, Q2, {{{1, Rational(1)}}, {{0, Rational(1)}}})});
  CHECK(swap.validate().empty());
  CHECK(group_cohomology(swap, 0).str() == "Q^1");
  CHECK(group_cohomology(swap, 1).is_zero());
  // Sign action on Z: H^1 = Z/2, H^2 = 0.
  MixedSpace Z1{1, 0, {}};
  GModule sign = GModule::free(Z2, Z1, {MixedMap::identity(Z1), MixedMap(Z1, Z1, {{{0, Rational(-1)}}})});
  CHECK(group_cohomology(sign, 0).is_zero());
  CHECK(group_cohomology(sign, 1).str() == "Z/2");
  CHECK(group_cohomology(sign, 2).is_zero());
}

TEST_CASE("bar complexes square to zero") {
  auto M = GModule::trivial(FiniteGroup::dihedral(3), MixedModule::parse("Z^1 + Q^1 + (Q/Z)^1 + Z/2"));
  CHECK(M.validate().empty());
  CHECK(M.module().str() == "Z^1 + Q^1 + (Q/Z)^1 + Z/2");
  CHECK_NOTHROW(bar_complex(M, 2).validate());
}

TEST_CASE("Borel cohomology and the quotient oracle") {
  CHECK(equivariant_integral_cohomology(on_point(FiniteGroup::cyclic(2)), 2).str() == "Z/2");
  CHECK(equivariant_integral_cohomology(on_point(FiniteGroup::cyclic(2)), 3).is_zero());
  CHECK(equivariant_integral_cohomology(on_point(FiniteGroup::cyclic(2)), 4).str() == "Z/2");
  CHECK(equivariant_cohomology(on_point(FiniteGroup::cyclic(3)), 1, Coefficients::T).str() == "Z/3");
  CHECK(equivariant_cohomology(on_point(FiniteGroup::cyclic(3)), 0, Coefficients::T).str() == "(Q/Z)^1");
  for (int m = 0; m <= 3; ++m) {
    CHECK(equivariant_integral_cohomology(plain(fixtures::octahedron()), m) ==
          simplicial_cohomology(fixtures::octahedron(), Coefficients::Z, m));
    auto sq = fixtures::rotation(2, 4);
    CHECK(acts_freely(sq));
    CHECK(equivariant_integral_cohomology(sq, m) == quotient_cohomology(sq, m));
    auto oct = fixtures::antipodal_octahedron();
    CHECK(equivariant_integral_cohomology(oct, m) == quotient_cohomology(oct, m));
  }
  CHECK(quotient_cohomology(fixtures::antipodal_octahedron(), 2).str() == "Z/2");  // RP^2
  CHECK_FALSE(acts_freely(on_point(FiniteGroup::cyclic(2))));
  CHECK_THROWS_AS(invariant_cochain_complex(on_point(FiniteGroup::cyclic(2))), PreconditionError);
}

TEST_CASE("equivariant Deligne cohomology examples") {
  for (int n = 2; n <= 4; ++n)
    CHECK(equivariant_deligne(on_point(FiniteGroup::cyclic(n)), 1, 1).group.str() == "Z/" + std::to_string(n));
  CHECK(equivariant_deligne(plain(fixtures::circle(3)), 1, 1).group.str() == "(Q/Z)^1");
  CHECK(equivariant_deligne(plain(fixtures::octahedron()), 2, 2).group.str() == "(Q/Z)^1");
  auto r = equivariant_deligne(on_point(FiniteGroup::cyclic(3)), 1, 1);
  REQUIRE(r.representatives.size() == 1);
  for (const auto& z : r.representatives) CHECK(r.assembly->apply_D(r.assembly->unflatten(2, z)).is_zero());
  CHECK(r.conventions.find("H^{m+1}") != std::string::npos);
  EngineOptions tight;
  tight.max_dimension = 10;
  CHECK_THROWS_AS(equivariant_deligne(on_point(FiniteGroup::cyclic(3)), 1, 2, tight), ResourceError);
}

TEST_CASE("ordinary Deligne cohomology examples") {
  CHECK(ordinary_deligne(fixtures::point(), 0, 0).group.str() == "(Q/Z)^1");
  CHECK(ordinary_deligne(fixtures::octahedron(), 2, 3).group.is_zero());
  CHECK(ordinary_deligne(fixtures::circle(3), 1, 1).group.str() == "(Q/Z)^1");
  CHECK(ordinary_deligne(fixtures::octahedron(), 1, 1).group.str() == "Z^1 + Q^7");
  // Above the weight the model sees H^{p+1}(M; Z), here H^2 of a circle.
  CHECK(ordinary_deligne(fixtures::circle(3), 0, 1).group.is_zero());
  CHECK(ordinary_deligne(fixtures::circle(3), 0, 0).group ==
        MixedModule::parse("Z^1 + Q^2 + (Q/Z)^1"));  // winding, functions, constants
}

TEST_CASE("invariant forms") {
  auto sq = fixtures::rotation(2, 4);
  auto f = invariant_forms(sq, 1);
  CHECK(f.basis.size() == 2);
  CHECK(f.closed.size() == 2);
  auto rot = fixtures::rotation(4, 4);
  CHECK(invariant_forms(rot, 1).basis.size() == 1);
  CHECK(invariant_forms(plain(fixtures::octahedron()), 1).basis.size() == 12);
  CHECK(invariant_forms(plain(fixtures::octahedron()), 1).closed.size() == 5);
  auto oct = fixtures::antipodal_octahedron();
  CHECK(invariant_forms(oct, 2).basis.size() == 4);
  for (const auto& b : f.basis) CHECK(is_invariant(sq, 1, b));
  // Integral closed invariant 1-cochains on the square: total period in Z.
  // Edges are stored as 01, 03, 12, 23; the fundamental cycle is 01 + 12 + 23 - 03.
  std::vector<Rational> quarter{Rational(1, 4), Rational(-1, 4), Rational(1, 4), Rational(1, 4)};
  CHECK(f.integral.contains(sparse_from_dense(quarter)));
  std::vector<Rational> eighth{Rational(1, 8), Rational(-1, 8), Rational(1, 8), Rational(1, 8)};
  CHECK_FALSE(f.integral.contains(sparse_from_dense(eighth)));
}

TEST_CASE("curvature of the generator over the octahedron pairs to one") {
  auto r = equivariant_deligne(plain(fixtures::octahedron()), 1, 1);
  CHECK(r.group.str() == "Z^1 + Q^7");
  auto F = curvature(r, 0);
  const auto& X = fixtures::octahedron();
  CHECK(is_closed(X, 2, F));
  auto cycles = integral_cycles(X, 2);
  REQUIRE(cycles.size() == 1);
  CHECK(abs(pair_with_chain(F, cycles[0])) == 1);
  auto img = equivariant_deRham_map(*r.assembly, r.triple(0));
  CHECK(img.closed);
  CHECK(img.invariant);
  CHECK(img.total_cocycle);
}

TEST_CASE("coefficient modules carry the pullback action") {
  auto sq = fixtures::rotation(2, 4);
  for (int q = 0; q <= 2; ++q) {
    auto M = deligne_coefficient_module(sq, 1, q);
    CHECK(M.validate().empty());
    CHECK(M.module() == ordinary_deligne(sq.space, 1, q).group);
  }
}
