#include <doctest.h>

#include "edc/exact.hpp"
#include "edc/fixtures.hpp"

using namespace edc;

namespace {

void require_ok(const ExactSequenceReport& R) {
  for (const auto& f : R.failures) MESSAGE(f);
  CHECK(R.ok());
  for (const auto& T : R.terms) CHECK(T.matches());
  for (const auto& C : R.checks) {
    CHECK(C.composite_zero);
    CHECK(C.exact);
  }
}

const SequenceTerm& term(const ExactSequenceReport& R, const std::string& name, int m) {
  for (const auto& T : R.terms)
    if (T.name == name && T.degree == m) return T;
  throw std::runtime_error("missing term");
}

}  // namespace

TEST_CASE("integral sequence over the circle with trivial group") {
  auto a = SimplicialAction::trivial_action(FiniteGroup::trivial(), fixtures::circle(3));
  auto R = verify_exact_sequence(a, 1, SequenceKind::Integral, 0, 2);
  require_ok(R);
  // 0 -> A^1/A^1_0 -> H^1 -> H^2(S^1, Z) = 0
  CHECK(term(R, "total", 1).computed.str() == "(Q/Z)^1");
  CHECK(term(R, "quotient", 1).computed.is_zero());
  CHECK(term(R, "sub", 1).computed.str() == "Q^3");
}

TEST_CASE("both sequences for Z/2 rotating the square") {
  auto a = fixtures::rotation(2, 4);
  for (auto kind : {SequenceKind::Integral, SequenceKind::Forms}) {
    CAPTURE(to_string(kind));
    auto R = verify_exact_sequence(a, 1, kind, 0, 3);
    require_ok(R);
    for (int m = 2; m <= 3; ++m)  // above N the total term is the integral one shifted up
      CHECK(term(R, "total", m).computed == equivariant_integral_cohomology(a, m + 1));
  }
}

TEST_CASE("sequences over a point and over the octahedron") {
  require_ok(verify_exact_sequence(SimplicialAction::trivial_action(FiniteGroup::cyclic(3), fixtures::point()), 2,
                                   SequenceKind::Integral, 0, 3));
  require_ok(verify_exact_sequence(SimplicialAction::trivial_action(FiniteGroup::klein4(), fixtures::point()), 1,
                                   SequenceKind::Forms, 0, 2));
  auto oct = SimplicialAction::trivial_action(FiniteGroup::trivial(), fixtures::octahedron());
  auto R = verify_exact_sequence(oct, 1, SequenceKind::Forms, 0, 1);
  require_ok(R);
  // 0 -> H^1(Q/Z) = 0 -> H^1 -> closed 2-cochains -> H^2(Q/Z)
  CHECK(term(R, "quotient", 1).computed.str() == "Q^8");
  CHECK(term(R, "total", 1).computed.str() == "Z^1 + Q^7");
}

TEST_CASE("invalid requests are rejected") {
  CHECK_THROWS_AS(verify_exact_sequence(fixtures::rotation(2, 4), 0, SequenceKind::Forms, 0, 1), PreconditionError);
  CHECK_THROWS_AS(parse_sequence_kind("bogus"), PreconditionError);
}

TEST_CASE("rational functions alone are acyclic in positive degrees") {
  for (auto a : {fixtures::rotation(2, 4), SimplicialAction::trivial_action(FiniteGroup::klein4(), fixtures::point())}) {
    ModelSpec spec;
    spec.action = a;
    spec.N = 1;
    spec.m_lo = 0;
    spec.m_hi = 3;
    Assembly A(spec);
    const MixedComplex C = slot_complex(A, 1, 1);
    int orbits = 0;
    for (int v = 0; v < a.space.count(0); ++v) {
      bool smallest = true;
      for (int g = 0; g < a.group.order(); ++g) smallest = smallest && a.act_simplex_index(g, 0, v) >= v;
      orbits += smallest;
    }
    CHECK(cohomology_at(C, 1).module.str() == "Q^" + std::to_string(orbits));
    for (int t = 2; t <= 4; ++t) CHECK(cohomology_at(C, t).module.is_zero());
  }
}
