#include <doctest.h>

#include "edc/fixtures.hpp"
#include "edc/geometry.hpp"
#include "edc/lattice.hpp"

#include <random>
#include <set>

using namespace edc;

namespace {

SimplicialAction on_point(const FiniteGroup& G) { return SimplicialAction::trivial_action(G, fixtures::point()); }

// Bundle on a point whose equivariance data is the character g^j -> k j / n.
TripleCochain character(const GeometryModel& M, int n, int k) {
  TripleCochain c = M.zero();
  const LevelCover& L1 = M.assembly().level(1);
  for (int s = 0; s < L1.count(0); ++s) {
    const long g = L1.by_degree[0][s].copy;
    M.assembly().block(c, SlotKey{1, 0, 1, s})[0] = ratio(k * g % n, n);
  }
  return with_integer_witnesses(M, c);
}

bool all_zero(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// Level-0 part of D y for a random level-0 cochain y one degree down.
TripleCochain level_zero_coboundary(const GeometryModel& M, std::mt19937& rng) {
  const Assembly& A = M.assembly();
  const int t = M.model_degree() - 1;
  const MixedSpace& V = A.space(t);
  SparseVec y;
  for (int i = 0; i < V.dim(); ++i) {
    if (A.locate(t, i).first.i != 0 || rng() % 3 != 0) continue;
    const int r = static_cast<int>(rng() % 7) - 3;
    if (r != 0) y.emplace_back(i, V.is_integral(i) ? Rational(r) : ratio(r, 4));
  }
  return level_zero(A.apply_D(A.unflatten(t, y)));
}

// Pairing of a 3-cochain with the fundamental cycle of the boundary of the 4-simplex.
Rational fundamental_pairing(const SimplicialComplex& X, const std::vector<Rational>& F) {
  Rational out = 0;
  for (int v = 0; v < 5; ++v) {
    Simplex face;
    for (int u = 0; u < 5; ++u)
      if (u != v) face.push_back(u);
    out += (v % 2 ? -1 : 1) * F[X.index_of(face)];
  }
  return out;
}

// Class coordinates drawn per summand kind: integers on Z and torsion summands, thirds elsewhere.
std::vector<Rational> random_coordinates(const GeometryModel& M, std::mt19937& rng) {
  std::vector<Rational> out;
  for (const auto& s : M.classes().data->quotient.summands()) {
    const long r = static_cast<long>(rng() % 9) - 4;
    const bool integral = s.kind == SummandKind::Z || s.kind == SummandKind::Torsion;
    out.push_back(integral ? Rational(r) : ratio(r, 3));
  }
  return out;
}

}  // namespace

TEST_CASE("characters of Z/n are equivariant bundles on a point") {
  for (int n : {2, 3, 4}) {
    GeometryModel M(on_point(FiniteGroup::cyclic(n)), GeometryKind::Bundle);
    CHECK(M.classes().group.str() == "Z/" + std::to_string(n));
    CHECK(validate(M, M.zero()).ok());
    CHECK(all_zero(class_of(M, M.zero())));
    const auto one = class_of(M, character(M, n, 1));
    CHECK(!all_zero(one));
    for (int k = 0; k < n; ++k) {
      const auto c = character(M, n, k);
      CHECK(validate(M, c).ok());
      const auto cls = class_of(M, c);
      CHECK(cls[0] == Rational(mod(Integer(k) * one[0].get_num(), n)));
    }
  }
}

TEST_CASE("violations are named by the failing condition") {
  GeometryModel M(on_point(FiniteGroup::cyclic(3)), GeometryKind::Bundle);
  TripleCochain c = character(M, 3, 1);
  M.assembly().block(c, SlotKey{1, 0, 1, 1})[0] += Rational(1, 5);
  auto V = validate(M, c);
  REQUIRE(!V.ok());
  CHECK(V.summary() == "lift coherence");
  CHECK_THROWS_AS(class_of(M, c), PreconditionError);

  auto circle = SimplicialAction::trivial_action(FiniteGroup::trivial(), fixtures::circle(3));
  GeometryModel C(circle, GeometryKind::Bundle);
  TripleCochain h = C.representative({Rational(1, 3)});
  CHECK(validate(C, h).ok());
  C.assembly().block(h, SlotKey{0, 0, 2, 0})[0] += 1;
  CHECK(validate(C, h).summary() == "connection compatibility");

  GeometryModel R(fixtures::rotation(2, 4), GeometryKind::Bundle);
  TripleCochain r = R.zero();
  R.assembly().block(r, SlotKey{1, 0, 1, 0})[0] = Rational(1, 2);
  CHECK(validate(R, r).summary() == "equivariance");

  TripleCochain bad = M.zero();
  bad.blocks[SlotKey{0, 0, 2, 0}] = {Rational(1)};
  CHECK_THROWS_AS(validate(M, bad), PreconditionError);
}

TEST_CASE("isomorphism witnesses and certificates") {
  GeometryModel M(on_point(FiniteGroup::cyclic(3)), GeometryKind::Bundle);
  const auto c1 = character(M, 3, 1), c2 = character(M, 3, 2);
  auto self = isomorphic(M, c1, c1);
  CHECK(self.isomorphic);
  auto diff = isomorphic(M, c1, c2);
  CHECK(!diff.isomorphic);
  CHECK(diff.generator >= 0);
  CHECK(diff.difference != 0);

  // c + D(y) for a degree-1 cochain y with rational and integer entries.
  TripleCochain y = M.assembly().zero(1);
  for (int x = 0; x < M.assembly().space(1).dim(); ++x) {
    auto [key, local] = M.assembly().locate(1, x);
    M.assembly().block(y, key)[local] = key.k == 0 ? Rational(x % 3 - 1) : ratio(x + 1, 7);
  }
  TripleCochain moved = c1;
  moved += M.assembly().apply_D(y);
  auto w = isomorphic(M, moved, c1);
  REQUIRE(w.isomorphic);
  TripleCochain check = M.assembly().apply_D(w.witness);
  check -= moved;
  check += c1;
  CHECK(check.is_zero());
}

TEST_CASE("round trip of class coordinates") {
  for (auto a : {on_point(FiniteGroup::cyclic(4)), fixtures::rotation(2, 4)}) {
    GeometryModel M(a, GeometryKind::Bundle);
    const std::size_t n = M.classes().representatives.size();
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rational> e(n, Rational(0));
      e[i] = M.classes().data->quotient.summands()[i].kind == SummandKind::QZ ? Rational(1, 2) : Rational(1);
      auto c = M.representative(e);
      CHECK(validate(M, c).ok());
      CHECK(class_of(M, c) == M.classes().decode(M.assembly().flatten(c)));
    }
  }
}

TEST_CASE("lifting torsor over a point") {
  for (int n : {2, 3}) {
    auto a = on_point(FiniteGroup::cyclic(n));
    GeometryModel M(a, GeometryKind::Bundle);
    auto T = lifting_torsor(M);
    CHECK(T.group == group_cohomology(deligne_coefficient_module(a, 1, 0), 1));
    CHECK(T.group.str() == "Z/" + std::to_string(n));
    auto moved = T.act(M.zero(), {Rational(1)});
    CHECK(validate(M, moved).ok());
    CHECK(level_zero(moved).is_zero());
    CHECK(!all_zero(class_of(M, moved)));
  }
}

TEST_CASE("discrete torsion twists of the trivial gerbe") {
  auto V4 = FiniteGroup::klein4();
  auto a = on_point(V4);
  GeometryModel M(a, GeometryKind::Gerbe);
  const auto dt = discrete_torsion_klein4();
  CHECK(is_cocycle_mod_integers(V4, dt));
  CHECK(group_cohomology(GModule::trivial(V4, MixedModule::parse("(Q/Z)^1")), 2).str() == "Z/2");

  auto twisted = twist_gerbe(M, M.zero(), dt);
  CHECK(validate(M, twisted).ok());
  auto cert = isomorphic(M, twisted, M.zero());
  CHECK(!cert.isomorphic);
  CHECK(cert.difference != 0);

  // γ + δβ reaches the same class as γ; δβ alone changes nothing.
  GroupCochain beta{1, {0, Rational(1, 3), Rational(1, 2), Rational(5, 8)}};
  auto db = group_coboundary(V4, beta);
  auto by_coboundary = twist_gerbe(M, M.zero(), db);
  CHECK(isomorphic(M, by_coboundary, M.zero()).isomorphic);
  GroupCochain shifted = dt;
  for (std::size_t i = 0; i < shifted.values.size(); ++i) shifted.values[i] += db.values[i];
  CHECK(isomorphic(M, twist_gerbe(M, M.zero(), shifted), twisted).isomorphic);

  GroupCochain broken = dt;
  broken.values[1] += Rational(1, 3);
  CHECK_THROWS_AS(twist_gerbe(M, M.zero(), broken), PreconditionError);

  // Over Z/2 every twist is trivial.
  auto Z2 = FiniteGroup::cyclic(2);
  GeometryModel P(on_point(Z2), GeometryKind::Gerbe);
  for (int k = 0; k < 4; ++k) {
    GroupCochain g{2, {0, 0, 0, ratio(k, 2)}};
    if (!is_cocycle_mod_integers(Z2, g)) continue;
    CHECK(isomorphic(P, twist_gerbe(P, P.zero(), g), P.zero()).isomorphic);
  }
}

TEST_CASE("bounded enumeration partitions into the computed classes") {
  for (int n : {2, 3, 4}) {
    CAPTURE(n);
    GeometryModel M(on_point(FiniteGroup::cyclic(n)), GeometryKind::Bundle);
    bool complete = false;
    SearchDomain dom;
    auto all = enumerate_cocycles(M, dom, &complete);
    CHECK(complete);
    REQUIRE(!all.empty());
    std::vector<std::size_t> rep;  // brute-force class representatives
    std::vector<std::vector<Rational>> decodes;
    SearchDomain gauge;
    gauge.rational_bound = 2;
    for (const auto& c : all) {
      CHECK(validate(M, c).ok());
      const auto d = class_of(M, c);
      bool placed = false;
      for (std::size_t r = 0; r < rep.size() && !placed; ++r) {
        if (bounded_isomorphism(M, c, all[rep[r]], gauge)) {
          placed = true;
          CHECK(d == decodes[r]);
        }
      }
      if (!placed) {
        for (const auto& e : decodes) CHECK(d != e);
        rep.push_back(&c - all.data());
        decodes.push_back(d);
      }
    }
    CHECK(rep.size() == static_cast<std::size_t>(n));
    MESSAGE("n=" << n << ": " << all.size() << " bounded cocycles");
  }
}

TEST_CASE("bundle obstructions agree with the lattice gauge search") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> eighth(0, 7);
  struct Case {
    SimplicialAction a;
    int trials;
    bool brute_force;  // the bounded search is only affordable on the smallest model
  };
  for (const auto& [a, trials, brute_force] :
       {Case{fixtures::rotation(2, 4), 12, true}, Case{fixtures::rotation(4, 4), 6, false},
        Case{fixtures::swap_copies(fixtures::circle(3)), 8, false},
        Case{SimplicialAction::from_generators(FiniteGroup::cyclic(2), fixtures::circle(4), {{1, {0, 3, 2, 1}}}), 12,
             true}}) {
    GeometryModel M(a, GeometryKind::Bundle);
    int extends = 0, blocked = 0;
    for (int trial = 0; trial < trials; ++trial) {
      LatticeConnection U{std::vector<Rational>(a.space.count(1))};
      for (auto& x : U.link) x = ratio(eighth(rng), 8);
      if (trial % 2 == 0) {
        // Make the field invariant under the generator up to gauge: copy it along the orbit.
        for (int e = 0; e < a.space.count(1); ++e) {
          int sign = 1;
          const int ge = a.act_simplex_index(1, 1, e, &sign);
          if (ge > e) U.link[ge] = frac(sign * U.link[e]);
        }
      }
      const auto lattice = lattice_equivariance(a, U, 1);
      if (lattice) CHECK(check_lattice_equivariance(a, U, *lattice));
      const TripleCochain c0 = lattice_level_zero(M, U);
      const auto O = obstructions(M, c0);
      CAPTURE(trial);
      std::string links;
      for (const auto& x : U.link) links += to_string(x) + " ";
      CAPTURE(links);
      CHECK(O.extends() == lattice.has_value());
      if (O.extends()) {
        ++extends;
        CHECK(validate(M, *O.extension).ok());
        TripleCochain diff = level_zero(*O.extension);
        diff -= c0;
        CHECK(diff.is_zero());
        if (brute_force) {
          SearchDomain domain;
          domain.denominator_bound = 8 * a.group.order();
          domain.rational_bound = 2;
          CHECK(bounded_extension(M, c0, domain).has_value());
        }
      } else {
        ++blocked;
        REQUIRE(!O.stages.empty());
        CHECK(!O.stages.back().vanishes);
      }
    }
    MESSAGE(extends << " extend, " << blocked << " blocked");
  }
}

TEST_CASE("gerbe obstructions on two swapped spheres follow the periods") {
  const SimplicialAction a = fixtures::swap_copies(fixtures::boundary_simplex(3));
  GeometryModel M(a, GeometryKind::Gerbe);
  CHECK(M.classes().group.str() == "(Q/Z)^1");
  const int face = 0;
  const int image = a.act_simplex_index(1, 2, face);
  for (int p1 = 0; p1 < 6; ++p1)
    for (int p2 = 0; p2 < 6; ++p2) {
      std::vector<Rational> B(a.space.count(2), Rational(0));
      B[face] = ratio(p1, 4);
      B[image] = ratio(p2, 4);
      const TripleCochain c0 = form_level_zero(M, B);
      const auto O = obstructions(M, c0);
      CAPTURE(p1);
      CAPTURE(p2);
      CHECK(O.extends() == ((p1 - p2) % 4 == 0));
      if (O.extends()) {
        CHECK(validate(M, *O.extension).ok());
        TripleCochain diff = level_zero(*O.extension);
        diff -= c0;
        CHECK(diff.is_zero());
      } else {
        REQUIRE(O.stages.size() == 1);
        CHECK(O.stages[0].page == 1);
        CHECK(!O.stages[0].vanishes);
      }
    }
}

TEST_CASE("restrictions of equivariant cocycles are unobstructed") {
  std::mt19937 rng(3);
  const std::vector<SimplicialAction> actions{fixtures::swap_copies(fixtures::boundary_simplex(3)),
                                              on_point(FiniteGroup::klein4()), fixtures::rotation(3, 3)};
  for (const auto& a : actions)
    for (auto kind : {GeometryKind::Bundle, GeometryKind::Gerbe}) {
      GeometryModel M(a, kind);
      for (int trial = 0; trial < 3; ++trial) {
        TripleCochain c0 = level_zero(M.representative(random_coordinates(M, rng)));
        c0 += level_zero_coboundary(M, rng);
        const auto O = obstructions(M, c0);
        CAPTURE(to_string(kind));
        CHECK(O.extends());
        for (const auto& st : O.stages) CHECK(st.vanishes);
      }
    }
}

TEST_CASE("trivial group leaves nothing to obstruct") {
  std::mt19937 rng(5);
  for (const auto& X : {fixtures::circle(4), fixtures::octahedron()})
    for (auto kind : {GeometryKind::Bundle, GeometryKind::Gerbe}) {
      GeometryModel M(SimplicialAction::trivial_action(FiniteGroup::cyclic(1), X), kind);
      for (int trial = 0; trial < 3; ++trial) {
        const auto O = obstructions(M, level_zero_coboundary(M, rng));
        CHECK(O.extends());
        CHECK(O.stages.empty());
      }
    }
}

TEST_CASE("three-curvature of the period-one gerbe on the 3-sphere") {
  const SimplicialComplex X = fixtures::boundary_simplex(4);
  const SimplicialAction a = SimplicialAction::trivial_action(FiniteGroup::cyclic(1), X);
  GeometryModel M(a, GeometryKind::Gerbe);
  const MixedModule& H = M.classes().group;
  REQUIRE(H.str() == "Z^1 + Q^4");
  CHECK(all_zero(geometry_curvature(M, M.zero())));
  for (std::size_t i = 0; i < M.classes().representatives.size(); ++i) {
    std::vector<Rational> e(M.classes().representatives.size(), Rational(0));
    e[i] = 1;
    const auto F = geometry_curvature(M, M.representative(e));
    CHECK(is_closed(X, 3, F));
    CHECK(is_invariant(a, 3, F));
    CHECK(has_integral_periods(a, 3, F));
    const Rational pairing = fundamental_pairing(X, F);
    if (i == 0) {
      // The integral generator; its negative is the class of period 1.
      CHECK(abs(pairing) == 1);
      e[i] = pairing;
      CHECK(fundamental_pairing(X, geometry_curvature(M, M.representative(e))) == 1);
      CHECK(!flat_test(M, M.representative(e)).flat);
    } else {
      CHECK(pairing == 0);
    }
  }
}

TEST_CASE("curvature of fixture classes is closed, invariant and integral") {
  const std::vector<SimplicialAction> actions{fixtures::rotation(2, 4), fixtures::antipodal_octahedron(),
                                              fixtures::swap_copies(fixtures::boundary_simplex(3))};
  std::mt19937 rng(9);
  for (const auto& a : actions)
    for (auto kind : {GeometryKind::Bundle, GeometryKind::Gerbe}) {
      GeometryModel M(a, kind);
      const int q = M.degree() + 1;
      for (int trial = 0; trial < 4; ++trial) {
        const TripleCochain c = M.representative(random_coordinates(M, rng));
        REQUIRE(validate(M, c).ok());
        const auto F = geometry_curvature(M, c);
        CAPTURE(to_string(kind));
        CHECK(is_closed(a.space, q, F));
        CHECK(is_invariant(a, q, F));
        CHECK(has_integral_periods(a, q, F));
        if (a.space.dim() < q) CHECK(all_zero(F));
      }
    }
}

TEST_CASE("flatness test") {
  SUBCASE("holonomy bundle on the circle") {
    GeometryModel M(SimplicialAction::trivial_action(FiniteGroup::cyclic(1), fixtures::circle(3)),
                    GeometryKind::Bundle);
    const auto f = flat_test(M, M.representative({ratio(1, 3)}));
    CHECK(f.flat);
    CHECK(f.zero_curvature);
    CHECK(f.in_flat_model.ok());
  }
  SUBCASE("gerbes on swapped spheres have nothing to curve into") {
    const SimplicialAction a = fixtures::swap_copies(fixtures::boundary_simplex(3));
    GeometryModel M(a, GeometryKind::Gerbe);
    std::vector<Rational> B(a.space.count(2), Rational(0));
    B[0] = B[a.act_simplex_index(1, 2, 0)] = ratio(3, 8);
    const auto O = obstructions(M, form_level_zero(M, B));
    REQUIRE(O.extends());
    const auto f = flat_test(M, *O.extension);
    CHECK(f.flat);
    CHECK(f.zero_curvature);
  }
  SUBCASE("curved classes on the 3-sphere are not flat") {
    GeometryModel M(SimplicialAction::trivial_action(FiniteGroup::cyclic(1), fixtures::boundary_simplex(4)),
                    GeometryKind::Gerbe);
    for (std::size_t i = 0; i < M.classes().representatives.size(); ++i) {
      std::vector<Rational> e(M.classes().representatives.size(), Rational(0));
      e[i] = 1;
      const auto f = flat_test(M, M.representative(e));
      CHECK(!f.flat);
      CHECK(!f.zero_curvature);
      CHECK(!f.in_flat_model.ok());
      CHECK(f.in_flat_model.summary().find("flatness") != std::string::npos);
    }
  }
  SUBCASE("characters on a point") {
    GeometryModel M(on_point(FiniteGroup::cyclic(3)), GeometryKind::Bundle);
    CHECK(flat_test(M, character(M, 3, 2)).flat);
  }
}

TEST_CASE("twists of fixed level-0 data sweep out one coset") {
  const FiniteGroup V4 = FiniteGroup::klein4();
  const int n = V4.order();
  // Every normalized 2-cochain with values in (1/2)Z/Z that is a cocycle mod Z.
  std::vector<GroupCochain> cocycles;
  std::vector<std::pair<int, int>> free;
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (g != V4.identity() && h != V4.identity()) free.push_back({g, h});
  for (long bits = 0; bits < (1L << free.size()); ++bits) {
    GroupCochain gamma{2, std::vector<Rational>(n * n, Rational(0))};
    for (std::size_t i = 0; i < free.size(); ++i)
      if (bits >> i & 1) gamma.values[free[i].first * n + free[i].second] = ratio(1, 2);
    if (is_cocycle_mod_integers(V4, gamma)) cocycles.push_back(gamma);
  }
  CHECK(cocycles.size() == 16);
  const MixedModule H2 = group_cohomology(GModule::trivial(V4, MixedModule::parse("(Q/Z)^1")), 2);
  REQUIRE(H2.str() == "Z/2");

  std::mt19937 rng(13);
  for (const auto& a : {on_point(V4), SimplicialAction::trivial_action(V4, fixtures::circle(3))}) {
    GeometryModel M(a, GeometryKind::Gerbe);
    const TripleCochain base = M.representative(random_coordinates(M, rng));
    const auto base_class = class_of(M, base);
    std::set<std::vector<Rational>> reached;
    int stays = 0;
    for (const auto& gamma : cocycles) {
      const TripleCochain c = twist_gerbe(M, base, gamma);
      CHECK(validate(M, c).ok());
      TripleCochain diff = level_zero(c);
      diff -= level_zero(base);
      CHECK(diff.is_zero());
      const auto cls = class_of(M, c);
      reached.insert(cls);
      if (cls == base_class) ++stays;
    }
    CHECK(reached.count(base_class) == 1);
    CHECK(reached.size() == 2);
    // Each class is hit by the same number of cocycles, one coboundary coset each.
    CHECK(stays * 2 == static_cast<int>(cocycles.size()));
  }
}
