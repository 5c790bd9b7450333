#include <doctest.h>

#include <random>

#include "edc/fixtures.hpp"
#include "edc/simplicial.hpp"
#include "support.hpp"

using namespace edc;

namespace {

SimplicialComplex hollow_triangle() { return SimplicialComplex::from_facets({{0, 1}, {1, 2}, {0, 2}}); }

std::vector<Simplex> star_simplices(const SimplicialComplex& X, const StarSubcomplex& st) {
  std::vector<Simplex> out;
  for (int q = 0; q < static_cast<int>(st.simplices.size()); ++q)
    for (int i : st.simplices[q]) out.push_back(X.simplex(q, i));
  return out;
}

}  // namespace

TEST_CASE("build_complex: hollow triangle, octahedron, point") {
  auto T = hollow_triangle();
  CHECK(T.count(0) == 3);
  CHECK(T.count(1) == 3);
  CHECK(T.dim() == 1);
  auto O = fixtures::octahedron();
  CHECK(O.count(0) == 6);
  CHECK(O.count(1) == 12);
  CHECK(O.count(2) == 8);
  CHECK(O.euler_characteristic() == 2);
  auto P = fixtures::point();
  CHECK(P.count(0) == 1);
  CHECK(P.dim() == 0);
  CHECK_THROWS_AS(SimplicialComplex::from_facets({{0, 1}, {}}), InputError);
}

TEST_CASE("closed stars of the hollow triangle") {
  auto T = hollow_triangle();
  // a = 0, b = 1, c = 2
  CHECK(star_simplices(T, closed_star(T, {0})) ==
        std::vector<Simplex>{{0}, {1}, {2}, {0, 1}, {0, 2}});
  CHECK(star_simplices(T, closed_star(T, {0, 1})) == std::vector<Simplex>{{0}, {1}, {0, 1}});
  auto tri = SimplicialComplex::from_facets({{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  CHECK(closed_star(tri, {0, 2}).empty());
  CHECK_THROWS_AS(closed_star(T, {7}), InputError);
}

TEST_CASE("coboundary of a vertex indicator on the triangle") {
  auto T = hollow_triangle();
  SimplicialCochain f = SimplicialCochain::zero(T, 0, Ring::Z);
  f.values = {1, 0, 0};
  SimplicialCochain df = coboundary(T, f);
  CHECK(df.values[T.index_of({0, 1})] == -1);
  // The edge ca is stored as ac, so its value on ca is +1.
  CHECK(df.values[T.index_of({0, 2})] == -1);
  CHECK(df.values[T.index_of({1, 2})] == 0);
  SimplicialCochain one = SimplicialCochain::zero(T, 0, Ring::Q);
  one.values = {5, 5, 5};
  for (const auto& v : coboundary(T, one).values) CHECK(v == 0);
}

TEST_CASE("coboundary squares to zero on random cochains") {
  std::mt19937 rng(3);
  for (const auto& X : {fixtures::octahedron(), fixtures::boundary_simplex(4), fixtures::circle(5)}) {
    for (int q = 0; q + 2 <= X.dim(); ++q)
      for (int trial = 0; trial < 10; ++trial) {
        SimplicialCochain c = SimplicialCochain::zero(X, q, Ring::Q);
        for (auto& v : c.values) v = test::random_fraction(rng, 5, 4);
        for (const auto& v : coboundary(X, coboundary(X, c)).values) CHECK(v == 0);
      }
  }
}

TEST_CASE("simplicial cohomology: triangle, octahedron, point") {
  auto T = hollow_triangle();
  CHECK(simplicial_cohomology(T, Coefficients::Z, 1).str() == "Z^1");
  CHECK(simplicial_cohomology(T, Coefficients::Z, 0).str() == "Z^1");
  auto O = fixtures::octahedron();
  CHECK(simplicial_cohomology(O, Coefficients::Z, 2).str() == "Z^1");
  CHECK(simplicial_cohomology(O, Coefficients::Z, 1).str() == "0");
  auto P = fixtures::point();
  CHECK(simplicial_cohomology(P, Coefficients::Z, 0).str() == "Z^1");
  CHECK(simplicial_cohomology(P, Coefficients::Z, 1).str() == "0");
  // T-coefficients: H^0 = T, H^1(S^1; T) = T.
  CHECK(simplicial_cohomology(T, Coefficients::T, 0).str() == "(Q/Z)^1");
  CHECK(simplicial_cohomology(T, Coefficients::T, 1).str() == "(Q/Z)^1");
  CHECK(simplicial_cohomology(O, Coefficients::T, 1).str() == "0");
  CHECK(simplicial_cohomology(O, Coefficients::T, 2).str() == "(Q/Z)^1");
  auto S3 = fixtures::boundary_simplex(4);
  CHECK(simplicial_cohomology(S3, Coefficients::Z, 3).str() == "Z^1");
}

TEST_CASE("integral closed cochains on the triangle") {
  auto T = hollow_triangle();
  using R = Rational;
  // Values 1/3 on the cyclically oriented edges ab, bc, ca. Stored edges are ab, ac, bc.
  CHECK(is_integral_closed(T, 1, {R(1, 3), R(-1, 3), R(1, 3)}));
  CHECK_FALSE(is_integral_closed(T, 1, {R(1, 3), R(1, 3), R(1, 3)}));
  CHECK_FALSE(is_integral_closed(T, 1, {R(1, 2), R(0), R(0)}));
  CHECK(is_integral_closed(T, 1, {R(0), R(0), R(0)}));
  auto O = fixtures::octahedron();
  std::vector<Rational> c(O.count(1), R(1, 2));
  CHECK_THROWS_AS(is_integral_closed(O, 1, c), PreconditionError);
}

TEST_CASE("closed stars are acyclic") {
  for (const auto& X : {fixtures::octahedron(), fixtures::circle(4), fixtures::boundary_simplex(4),
                        fixtures::point()}) {
    for (int q = 0; q <= X.dim(); ++q)
      for (int i = 0; i < X.count(q); ++i) {
        StarSubcomplex st = closed_star(X, X.simplex(q, i));
        REQUIRE_FALSE(st.empty());
        for (Ring ring : {Ring::Z, Ring::Q}) {
          MixedComplex C = augmented_star_complex(X, st, ring);
          for (int n = C.first_degree; n <= C.last_degree(); ++n) CHECK(cohomology_at(C, n).module.is_zero());
        }
      }
  }
}
