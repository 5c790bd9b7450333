#include <doctest.h>

#include "edc/assembly.hpp"
#include "edc/fixtures.hpp"
#include "support.hpp"

using namespace edc;

namespace {

ModelSpec make(SimplicialAction a, int N, int lo, int hi, CoverKind kind = CoverKind::Copywise) {
  ModelSpec s;
  s.action = std::move(a);
  s.N = N;
  s.m_lo = lo;
  s.m_hi = hi;
  s.cover = kind;
  return s;
}

std::vector<std::pair<std::string, SimplicialAction>> fixture_actions() {
  return {{"Z/2 on square", fixtures::rotation(2, 4)},
          {"Z/3 on point", SimplicialAction::trivial_action(FiniteGroup::cyclic(3), fixtures::point())},
          {"Klein four on point", SimplicialAction::trivial_action(FiniteGroup::klein4(), fixtures::point())},
          {"antipodal octahedron", fixtures::antipodal_octahedron()},
          {"trivial on triangle", SimplicialAction::trivial_action(FiniteGroup::trivial(), fixtures::circle(3))}};
}

}  // namespace

TEST_CASE("point with Z/2: exported dimensions follow the bar slots") {
  Assembly A(make(SimplicialAction::trivial_action(FiniteGroup::cyclic(2), fixtures::point()), 1, 0, 3));
  auto C = A.to_mixed_complex();
  CHECK(C.first_degree == 0);
  CHECK(C.last_degree() == 5);
  for (int t = 0; t <= 5; ++t) {
    CHECK(C.term(t).nZ == (1 << t));
    CHECK(C.term(t).nQ == (t == 0 ? 0 : 1 << (t - 1)));
  }
  for (int k = 2; k <= 2; ++k) CHECK(A.slot_dim(SlotKey{0, 0, k, 0}) == 0);
}

TEST_CASE("trivial group on the triangle: per-patch slot dimensions") {
  Assembly A(make(SimplicialAction::trivial_action(FiniteGroup::trivial(), fixtures::circle(3)), 1, 0, 1));
  for (int v = 0; v < 3; ++v) {
    CHECK(A.slot_dim(SlotKey{0, 0, 2, v}) == 2);  // the two edges at a vertex
    CHECK(A.slot_dim(SlotKey{0, 0, 1, v}) == 3);  // every vertex lies in a vertex star of a triangle
  }
  CHECK(A.level(0).count(1) == 3);
  CHECK(A.partial(Partial::Group, 0).is_zero());
  // From level 0 the two faces agree; from level 1 the alternating sum is the identity.
  TripleCochain c = A.zero(1);
  A.block(c, SlotKey{0, 0, 1, 0})[1] = Rational(1, 3);
  CHECK(A.apply_partial(Partial::Group, c).is_zero());
  TripleCochain u = A.zero(1);
  A.block(u, SlotKey{1, 0, 0, 2})[0] = 5;
  TripleCochain gu = A.apply_partial(Partial::Group, u);
  REQUIRE(gu.blocks.size() == 1);
  CHECK(gu.blocks.begin()->first == SlotKey{2, 0, 0, 2});
  CHECK(gu.blocks.begin()->second[0] == 5);
}

TEST_CASE("D of the unit constant is its inclusion into the forms slot") {
  Assembly A(make(SimplicialAction::trivial_action(FiniteGroup::trivial(), fixtures::circle(3)), 1, 0, 1));
  TripleCochain c = A.zero(0);
  for (int s = 0; s < A.level(0).count(0); ++s) A.block(c, SlotKey{0, 0, 0, s})[0] = 1;
  TripleCochain d = A.apply_D(c);
  REQUIRE(d.blocks.size() == 3);
  for (const auto& [key, vals] : d.blocks) {
    CHECK(key.k == 1);
    CHECK(key.j == 0);
    for (const auto& v : vals) CHECK(v == 1);
  }
  CHECK(A.apply_D(A.zero(1)).is_zero());
}

TEST_CASE("D squares to zero on random cochains") {
  std::mt19937 rng(7);
  for (auto kind : {CoverKind::Copywise, CoverKind::Inductive})
    for (const auto& [name, a] : fixture_actions()) {
      if (kind == CoverKind::Inductive && a.space.num_vertices() > 4) continue;
      CAPTURE(name);
      Assembly A(make(a, 2, 0, 2, kind));
      for (int t = A.total_lo(); t + 2 <= A.total_hi(); ++t)
        for (int n = 0; n < 100; ++n) {
          TripleCochain c = A.unflatten(t, test::random_element(rng, A.space(t), 0.3));
          CHECK(A.apply_D(A.apply_D(c)).is_zero());
        }
    }
}

TEST_CASE("partial differentials square to zero and commute unsigned") {
  for (const auto& [name, a] : fixture_actions()) {
    CAPTURE(name);
    Assembly A(make(a, 2, 0, 1));
    for (int t = A.total_lo(); t + 2 <= A.total_hi(); ++t) {
      const Partial all[] = {Partial::Group, Partial::Cech, Partial::Slot};
      for (Partial p : all) CHECK(A.partial(p, t + 1).compose_after(A.partial(p, t)).is_zero());
      for (Partial p : all)
        for (Partial q : all) {
          if (p >= q) continue;
          auto pq = A.partial(p, t + 1).compose_after(A.partial(q, t));
          auto qp = A.partial(q, t + 1).compose_after(A.partial(p, t));
          CHECK(pq.rows() == qp.rows());
        }
    }
  }
}

TEST_CASE("a corrupted sign convention breaks D squared") {
  auto spec = make(fixtures::rotation(2, 4), 1, 0, 1);
  spec.corrupt_sign = true;
  Assembly A(std::move(spec));
  CHECK_FALSE(A.differential(1).compose_after(A.differential(0)).is_zero());
}

TEST_CASE("window and truncation errors") {
  auto spec = make(fixtures::rotation(2, 4), 1, 0, 2);
  spec.truncation = 3;
  CHECK_THROWS_AS(Assembly{spec}, PreconditionError);
  CHECK_THROWS_AS(Assembly(make(fixtures::rotation(2, 4), 1, 2, 1)), PreconditionError);
  Assembly A(make(fixtures::rotation(2, 4), 1, 0, 1));
  CHECK(A.to_mixed_complex(1, 0).empty());
  CHECK_THROWS_AS(A.apply_D(A.zero(3)), PreconditionError);
}

TEST_CASE("cohomology is stable under truncation and cover choice") {
  for (const auto& [name, a] : fixture_actions()) {
    if (a.space.num_vertices() > 4) continue;
    CAPTURE(name);
    auto base = make(a, 1, 0, 2);
    Assembly A(base);
    auto more = base;
    more.truncation = base.levels() + 1;
    Assembly B(more);
    Assembly I(make(a, 1, 0, 2, CoverKind::Inductive));
    auto CA = A.to_mixed_complex(), CB = B.to_mixed_complex(), CI = I.to_mixed_complex();
    for (int m = 0; m <= 2; ++m) {
      auto h = cohomology_at(CA, m + 1).module;
      CHECK(h == cohomology_at(CB, m + 1).module);
      CHECK(h == cohomology_at(CI, m + 1).module);
    }
  }
}

TEST_CASE("coordinates round trip and describe names the slot") {
  Assembly A(make(fixtures::rotation(2, 4), 1, 0, 1));
  for (int t = A.total_lo(); t <= A.total_hi(); ++t)
    for (int x = 0; x < A.space(t).dim(); ++x) {
      auto [key, local] = A.locate(t, x);
      CHECK(A.coordinate(key, local) == x);
      CHECK((x < A.space(t).nZ) == (key.k == 0));
    }
  CHECK(A.describe(SlotKey{1, 0, 1, 0}).find("copy [0]") != std::string::npos);
}
