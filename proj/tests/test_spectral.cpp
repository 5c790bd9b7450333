#include <doctest.h>

#include "edc/fixtures.hpp"
#include "edc/spectral.hpp"

using namespace edc;

namespace {

// Z --(×2)--> Z --> 0, with the second coordinate put in filtration level `jump`.
FilteredComplex doubling(int jump) {
  FilteredComplex F;
  MixedSpace Z1{1, 0, {}}, O{0, 0, {}};
  F.complex.first_degree = 0;
  F.complex.terms = {Z1, Z1, O};
  F.complex.maps = {MixedMap(Z1, Z1, {{{0, Rational(2)}}}), MixedMap::zero(Z1, O)};
  F.level = {{0, {0}}, {1, {jump}}, {2, {}}};
  return F;
}

void check_against_group_cohomology(const SimplicialAction& a, int N, const SpectralSequence& S) {
  for (const auto& [bd, E] : S.page(2).E) {
    const auto [p, q] = bd;
    if (q < 0) {
      CHECK(E.is_zero());
      continue;
    }
    INFO("E2 at (" << p << "," << q << ")");
    CHECK(E == group_cohomology(deligne_coefficient_module(a, N, q), p));
  }
}

}  // namespace

TEST_CASE("pages of a two-step filtration") {
  auto S = filtered_spectral_sequence(doubling(1), 3, 0, 1);
  CHECK(S.consistent);
  CHECK(S.page(1).E.at({0, 0}).str() == "Z^1");
  CHECK(S.page(1).E.at({1, 0}).str() == "Z^1");
  REQUIRE(S.page(1).d.size() == 1);
  CHECK(S.page(1).d[0].images[0][0] == 2);
  CHECK(S.page(2).E.at({0, 0}).is_zero());
  CHECK(S.page(2).E.at({1, 0}).str() == "Z/2");
  CHECK(S.E_infinity.at({1, 0}).str() == "Z/2");
  CHECK(S.total.at(1).str() == "Z/2");
}

TEST_CASE("a differential that first acts on the second page") {
  auto S = filtered_spectral_sequence(doubling(2), 4, 0, 1);
  CHECK(S.consistent);
  for (const auto& d : S.page(1).d) CHECK(d.is_zero());
  CHECK(S.page(2).E.at({0, 0}).str() == "Z^1");
  CHECK(S.page(2).E.at({2, -1}).str() == "Z^1");
  CHECK(S.page(3).E.at({0, 0}).is_zero());
  CHECK(S.page(3).E.at({2, -1}).str() == "Z/2");
  CHECK(S.E_infinity.at({1, 0}).is_zero());
}

TEST_CASE("group-level spectral sequence over a point") {
  for (auto G : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)}) {
    auto a = SimplicialAction::trivial_action(G, fixtures::point());
    for (int N : {0, 1}) {
      auto S = spectral_sequence(a, N, 3, 0, 2);
      CAPTURE(N);
      CHECK(S.consistent);
      for (const auto& note : S.notes) MESSAGE(note);
      check_against_group_cohomology(a, N, S);
      for (int n = 0; n <= 2; ++n) CHECK(S.total.at(n) == equivariant_deligne(a, N, n).group);
    }
  }
}

TEST_CASE("group-level spectral sequence for Z/2 on the square") {
  auto a = fixtures::rotation(2, 4);
  auto S = spectral_sequence(a, 1, 3, 0, 2);
  CHECK(S.consistent);
  for (const auto& note : S.notes) MESSAGE(note);
  check_against_group_cohomology(a, 1, S);
  for (const auto& page : S.pages) CHECK(page.d_squared_zero);
  for (int n = 0; n <= 2; ++n) CHECK(S.total.at(n) == equivariant_deligne(a, 1, n).group);
}

TEST_CASE("trivial group: the sequence sits in the first column") {
  for (const auto& X : {fixtures::circle(3), fixtures::octahedron()}) {
    const auto a = SimplicialAction::trivial_action(FiniteGroup::cyclic(1), X);
    auto S = spectral_sequence(a, 1, 3, 0, 2);
    CHECK(S.consistent);
    for (const auto& [bd, E] : S.page(2).E)
      if (bd.first > 0) CHECK(E.is_zero());
    for (int n = 0; n <= 2; ++n) {
      CAPTURE(n);
      REQUIRE(S.E_infinity.count({0, n}));
      CHECK(S.E_infinity.at({0, n}) == S.total.at(n));
      CHECK(S.total.at(n) == ordinary_deligne(X, 1, n).group);
    }
  }
}
