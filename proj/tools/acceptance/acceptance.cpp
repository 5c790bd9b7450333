#include "acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <set>

#include "edc/borel.hpp"
#include "edc/engine.hpp"
#include "edc/fixtures.hpp"
#include "edc/geometry.hpp"
#include "edc/gmodule.hpp"
#include "edc/lattice.hpp"
#include "edc/nerve.hpp"
#include "edc/spectral.hpp"

namespace edc::acceptance {

namespace {

struct Fixture {
  std::string name;
  SimplicialAction action;
};

SimplicialAction on_point(const FiniteGroup& G) { return SimplicialAction::trivial_action(G, fixtures::point()); }
SimplicialAction plain(const SimplicialComplex& X) { return SimplicialAction::trivial_action(FiniteGroup::trivial(), X); }

SimplicialAction reflected_square() {
  return SimplicialAction::from_generators(FiniteGroup::cyclic(2), fixtures::circle(4), {{1, {0, 3, 2, 1}}});
}

SimplicialAction reflected_tetrahedron() {
  return SimplicialAction::from_generators(FiniteGroup::cyclic(2), fixtures::boundary_simplex(3), {{1, {1, 0, 2, 3}}});
}

std::vector<Fixture> core_fixtures() {
  return {{"Z/2 on square S^1", fixtures::rotation(2, 4)},
          {"Z/3 on pt", on_point(FiniteGroup::cyclic(3))},
          {"Klein four on pt", on_point(FiniteGroup::klein4())}};
}

std::vector<Fixture> all_fixtures() {
  auto out = core_fixtures();
  out.push_back({"antipodal octahedron", fixtures::antipodal_octahedron()});
  out.push_back({"Z/2 swapping two circles", fixtures::swap_copies(fixtures::circle(3))});
  out.push_back({"trivial group on the triangle", plain(fixtures::circle(3))});
  return out;
}

std::vector<std::pair<std::string, SimplicialComplex>> manifolds() {
  return {{"point", fixtures::point()}, {"circle:3", fixtures::circle(3)}, {"sphere:octahedron", fixtures::octahedron()}};
}

// Collects named failures of one criterion.
class Record {
 public:
  explicit Record(Outcome& o) : o_(o) {}
  void expect(bool ok, const std::string& what) {
    if (!ok) o_.failures.push_back(what);
  }

 private:
  Outcome& o_;
};

std::string deg(const char* name, int v) { return std::string(name) + "=" + std::to_string(v); }

SparseVec random_element(std::mt19937& rng, const MixedSpace& s, double density) {
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<int> small(-3, 3), num(-5, 5), den(1, 6);
  SparseVec v;
  for (int i = 0; i < s.dim(); ++i) {
    if (!keep(rng)) continue;
    const Rational x = s.is_integral(i) ? Rational(small(rng)) : ratio(num(rng), den(rng));
    if (x != 0) v.emplace_back(i, x);
  }
  return v;
}

bool all_zero(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// Truncated complexes are checked below their last term only.
bool acyclic(const MixedComplex& C) {
  const int top = C.zero_above ? C.last_degree() : C.last_degree() - 1;
  for (int n = C.first_degree; n <= top; ++n)
    if (!cohomology_at(C, n).module.is_zero()) return false;
  return true;
}

// Relations among face and degeneracy maps up to level 4, then D^2 = 0 on random cochains.
void structural(Record& r, Depth, const Hooks& hooks) {
  std::mt19937 rng(2024);
  for (const auto& [name, a] : core_fixtures()) {
    const ActionReport rep = validate_action(a, 4, 1000);
    for (const auto& f : rep.failures) r.expect(false, name + ": " + f);
    ModelSpec spec;
    spec.action = a;
    spec.N = 2;
    spec.m_lo = 0;
    spec.m_hi = 2;
    spec.corrupt_sign = hooks.corrupt_sign;
    const Assembly A(std::move(spec));
    for (int t = A.total_lo(); t + 2 <= A.total_hi(); ++t) {
      int bad = 0;
      for (int n = 0; n < 100; ++n) {
        const TripleCochain c = A.unflatten(t, random_element(rng, A.space(t), 0.3));
        if (!A.apply_D(A.apply_D(c)).is_zero()) ++bad;
      }
      r.expect(bad == 0, name + ": D^2 != 0 on " + std::to_string(bad) + " of 100 cochains in model degree " +
                             std::to_string(t));
    }
  }
}

// Closed stars are acyclic and every per-simplex Čech column is exact.
void soundness(Record& r, Depth depth, const Hooks&) {
  const int top_level = depth == Depth::Full ? 2 : 1;
  for (const auto& [name, a] : all_fixtures()) {
    const SimplicialComplex& X = a.space;
    for (int q = 0; q <= X.dim(); ++q)
      for (const auto& S : X.simplices(q))
        r.expect(acyclic(augmented_star_complex(X, closed_star(X, S), Ring::Z)),
                 name + ": closed star of a " + std::to_string(q) + "-simplex has reduced cohomology");
    NerveCover cover(a, CoverKind::Copywise);
    for (int p = 0; p <= top_level; ++p) {
      const LevelCover L = enumerate_level(cover, p, 3);
      for (long c = 0; c < a.group.tuple_count(p); ++c)
        for (int q = 0; q <= X.dim(); ++q)
          for (int t = 0; t < X.count(q); ++t)
            r.expect(acyclic(cech_column(cover, L, c, q, t)),
                     name + ": Čech column not exact at level " + std::to_string(p));
    }
  }
}

void trivial_group(Record& r, Depth, const Hooks&) {
  for (const auto& [name, X] : manifolds())
    for (int N = 0; N <= 2; ++N)
      for (int m = 0; m <= 3; ++m) {
        const MixedModule eq = equivariant_deligne(plain(X), N, m).group;
        const MixedModule ord = ordinary_deligne(X, N, m).group;
        r.expect(eq == ord, name + " " + deg("N", N) + " " + deg("m", m) + ": equivariant " + eq.str() +
                                " vs ordinary " + ord.str());
      }
}

void manifold_values(Record& r, Depth, const Hooks&) {
  for (const auto& [name, X] : manifolds())
    for (int N = 0; N <= 2; ++N)
      for (int p = 0; p <= 3; ++p) {
        if (p == N) continue;
        const MixedModule H = ordinary_deligne(X, N, p).group;
        const MixedModule want = p < N ? simplicial_cohomology(X, Coefficients::T, p)
                                       : simplicial_cohomology(X, Coefficients::Z, p + 1);
        r.expect(H == want, name + " " + deg("N", N) + " " + deg("p", p) + ": " + H.str() + " vs " + want.str());
      }
}

void classification(Record& r, Depth, const Hooks&) {
  for (int n : {2, 3, 4}) {
    const std::string name = "Z/" + std::to_string(n) + " on pt";
    const auto a = on_point(FiniteGroup::cyclic(n));
    const MixedModule H = equivariant_deligne(a, 1, 1).group;
    r.expect(H.str() == "Z/" + std::to_string(n), name + ": H^1 = " + H.str());
    GeometryModel M(a, GeometryKind::Bundle);
    bool complete = false;
    const auto all = enumerate_cocycles(M, SearchDomain{}, &complete);
    r.expect(complete, name + ": enumeration hit the node limit");
    SearchDomain gauge;
    gauge.rational_bound = 2;
    std::vector<std::size_t> rep;
    std::vector<std::vector<Rational>> decodes;
    for (std::size_t i = 0; i < all.size(); ++i) {
      const auto d = class_of(M, all[i]);
      bool placed = false;
      for (std::size_t k = 0; k < rep.size() && !placed; ++k)
        if (bounded_isomorphism(M, all[i], all[rep[k]], gauge)) {
          placed = true;
          r.expect(d == decodes[k], name + ": isomorphic cocycles decode differently");
        }
      if (!placed) {
        for (const auto& e : decodes) r.expect(d != e, name + ": non-isomorphic cocycles share a decode");
        rep.push_back(i);
        decodes.push_back(d);
      }
    }
    r.expect(static_cast<int>(rep.size()) == n,
             name + ": " + std::to_string(all.size()) + " cocycles fall into " + std::to_string(rep.size()) + " classes");
  }
}

void spectral(Record& r, Depth depth, const Hooks&) {
  std::vector<std::pair<Fixture, int>> cases{{{"Z/2 on pt", on_point(FiniteGroup::cyclic(2))}, 0},
                                             {{"Z/2 on pt", on_point(FiniteGroup::cyclic(2))}, 1},
                                             {{"Z/3 on pt", on_point(FiniteGroup::cyclic(3))}, 1},
                                             {{"Z/2 on square S^1", fixtures::rotation(2, 4)}, 1}};
  const int n_hi = depth == Depth::Full ? 3 : 2;
  for (const auto& [fx, N] : cases) {
    const std::string name = fx.name + " " + deg("N", N);
    const SpectralSequence S = spectral_sequence(fx.action, N, 3, 0, n_hi);
    r.expect(S.consistent, name + ": E_infinity is inconsistent with the total cohomology");
    for (const auto& page : S.pages) r.expect(page.d_squared_zero, name + ": d_r squared is nonzero");
    for (const auto& [bd, E] : S.page(2).E) {
      const auto [p, q] = bd;
      const MixedModule want = q < 0 ? MixedModule{} : group_cohomology(deligne_coefficient_module(fx.action, N, q), p);
      r.expect(E == want, name + ": E2 at (" + std::to_string(p) + "," + std::to_string(q) + ") is " + E.str() +
                              ", group cohomology gives " + want.str());
    }
    for (int n = 0; n <= n_hi; ++n) {
      const MixedModule H = equivariant_deligne(fx.action, N, n).group;
      r.expect(S.total.at(n) == H, name + ": total H^" + std::to_string(n) + " differs from the engine");
    }
  }
}

void free_quotient(Record& r, Depth, const Hooks&) {
  const auto a = fixtures::rotation(2, 4);
  r.expect(acts_freely(a), "Z/2 on square S^1: action is not free");
  for (int m : {2, 3}) {
    const MixedModule H = equivariant_deligne(a, 1, m).group;
    const MixedModule borel = equivariant_integral_cohomology(a, m + 1);
    const MixedModule quotient = quotient_cohomology(a, m + 1);
    r.expect(borel == quotient, "Z/2 on square S^1 " + deg("m", m) + ": Borel " + borel.str() + " vs quotient " +
                                    quotient.str());
    r.expect(H == borel, "Z/2 on square S^1 " + deg("m", m) + ": H^m(F(1)) = " + H.str() + " vs H^{m+1}_G = " +
                             borel.str());
  }
}

void obstruction_soundness(Record& r, Depth depth, const Hooks&) {
  SearchDomain domain;  // denominator bound 8
  domain.rational_bound = 2;
  std::mt19937 rng(31);
  const int trials = depth == Depth::Full ? 8 : 3;
  auto compare = [&](const std::string& name, const GeometryModel& M, const TripleCochain& c0, bool must_complete) {
    const Obstructions O = obstructions(M, c0);
    bool complete = false;
    const auto e = bounded_extension(M, c0, domain, &complete);
    if (O.extends()) {
      r.expect(e.has_value(), name + ": obstructions vanish but the search finds no extension");
      r.expect(validate(M, *O.extension).ok(), name + ": reported extension is not a cocycle");
    } else {
      r.expect(!e.has_value(), name + ": search extends past a nonzero obstruction");
      if (must_complete) r.expect(complete, name + ": search incomplete");
    }
  };
  for (const auto& [name, a] : std::vector<Fixture>{{"Z/2 on square S^1", fixtures::rotation(2, 4)},
                                                   {"Z/2 reflecting square S^1", reflected_square()}}) {
    GeometryModel M(a, GeometryKind::Bundle);
    for (int t = 0; t < trials; ++t) {
      LatticeConnection U{std::vector<Rational>(a.space.count(1))};
      for (auto& x : U.link) x = ratio(static_cast<long>(rng() % 4), 4);
      compare(name + " links " + std::to_string(t), M, lattice_level_zero(M, U), true);
    }
  }
  for (int n : {2, 3, 4}) {
    GeometryModel M(on_point(FiniteGroup::cyclic(n)), GeometryKind::Bundle);
    compare("Z/" + std::to_string(n) + " on pt", M, M.zero(), true);
  }
  {
    const auto a = reflected_tetrahedron();
    GeometryModel M(a, GeometryKind::Gerbe);
    for (int p : {0, 2}) {
      std::vector<Rational> B(a.space.count(2), Rational(0));
      B[0] = ratio(p, 4);
      compare("Z/2 reflecting the tetrahedron boundary, period " + to_string(ratio(p, 4)), M,
              form_level_zero(M, B), false);
    }
  }
}

void twists(Record& r, Depth, const Hooks&) {
  const FiniteGroup V4 = FiniteGroup::klein4();
  const MixedModule H2 = group_cohomology(GModule::trivial(V4, MixedModule::parse("(Q/Z)^1")), 2);
  r.expect(H2.str() == "Z/2", "Klein four: H^2_group(G, Q/Z) = " + H2.str());
  GeometryModel M(on_point(V4), GeometryKind::Gerbe);
  const GroupCochain dt = discrete_torsion_klein4();
  r.expect(is_cocycle_mod_integers(V4, dt), "discrete torsion is not a cocycle");
  const TripleCochain twisted = twist_gerbe(M, M.zero(), dt);
  r.expect(validate(M, twisted).ok(), "discrete torsion twist is not a cocycle");
  const Isomorphism cert = isomorphic(M, twisted, M.zero());
  r.expect(!cert.isomorphic && cert.difference != 0, "discrete torsion twist keeps the class");
  std::mt19937 rng(17);
  for (int t = 0; t < 5; ++t) {
    GroupCochain beta{1, std::vector<Rational>(V4.order())};
    for (int g = 1; g < V4.order(); ++g) beta.values[g] = ratio(static_cast<long>(rng() % 8), 8);
    const GroupCochain db = group_coboundary(V4, beta);
    const TripleCochain moved = twist_gerbe(M, M.zero(), db);
    const Isomorphism iso = isomorphic(M, moved, M.zero());
    bool witnessed = iso.isomorphic;
    if (witnessed) {
      TripleCochain diff = M.assembly().apply_D(iso.witness);
      diff -= moved;
      witnessed = diff.is_zero();
    }
    r.expect(witnessed, "coboundary twist " + std::to_string(t) + " changes the class or lacks a witness");
    GroupCochain shifted = dt;
    for (std::size_t i = 0; i < shifted.values.size(); ++i) shifted.values[i] += db.values[i];
    r.expect(isomorphic(M, twist_gerbe(M, M.zero(), shifted), twisted).isomorphic,
             "discrete torsion plus coboundary " + std::to_string(t) + " leaves the twisted class");
  }
}

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

void curvature(Record& r, Depth depth, const Hooks&) {
  std::vector<Fixture> fx{{"Z/2 on pt", on_point(FiniteGroup::cyclic(2))},
                          {"Z/3 on pt", on_point(FiniteGroup::cyclic(3))},
                          {"Klein four on pt", on_point(FiniteGroup::klein4())},
                          {"Z/2 on square S^1", fixtures::rotation(2, 4)},
                          {"Z/2 swapping two spheres", fixtures::swap_copies(fixtures::boundary_simplex(3))}};
  if (depth == Depth::Full) {
    fx.push_back({"antipodal octahedron", fixtures::antipodal_octahedron()});
    fx.push_back({"trivial group on the octahedron", plain(fixtures::octahedron())});
  }
  for (const auto& [name, a] : fx)
    for (auto kind : {GeometryKind::Bundle, GeometryKind::Gerbe}) {
      const std::string where = name + " " + to_string(kind);
      GeometryModel M(a, kind);
      const auto& summands = M.classes().data->quotient.summands();
      const int q = M.degree() + 1;
      for (std::size_t i = 0; i < summands.size(); ++i) {
        std::vector<Rational> e(summands.size(), Rational(0));
        e[i] = summands[i].kind == SummandKind::QZ ? ratio(1, 2) : Rational(1);
        const auto F = geometry_curvature(M, M.representative(e));
        r.expect(is_closed(a.space, q, F), where + ": curvature not closed");
        r.expect(is_invariant(a, q, F), where + ": curvature not invariant");
        r.expect(has_integral_periods(a, q, F), where + ": curvature periods not integral");
      }
      GeometryModel flat(a, kind, q + 1);
      for (std::size_t i = 0; i < flat.classes().representatives.size(); ++i)
        r.expect(all_zero(geometry_curvature(flat, flat.classes().triple(i))),
                 where + ": flat class " + std::to_string(i) + " has curvature");
    }
  const SimplicialComplex S3 = fixtures::boundary_simplex(4);
  GeometryModel M(plain(S3), GeometryKind::Gerbe);
  const auto& summands = M.classes().data->quotient.summands();
  bool found = false;
  for (std::size_t i = 0; i < summands.size() && !found; ++i) {
    if (summands[i].kind != SummandKind::Z) continue;
    std::vector<Rational> e(summands.size(), Rational(0));
    e[i] = 1;
    const Rational pairing = fundamental_pairing(S3, geometry_curvature(M, M.representative(e)));
    if (pairing == 0) continue;
    // The class of period 1 is the generator or its negative.
    e[i] = pairing > 0 ? 1 : -1;
    found = fundamental_pairing(S3, geometry_curvature(M, M.representative(e))) == 1 && abs(pairing) == 1;
  }
  r.expect(found, "boundary of the 4-simplex: no gerbe class pairs to 1 with the fundamental cycle");
}

struct Criterion {
  int id;
  const char* title;
  double budget;
  void (*body)(Record&, Depth, const Hooks&);
};

const Criterion kCriteria[] = {
    {1, "face/degeneracy relations and D^2 = 0", 30, structural},
    {2, "acyclic stars and exact Čech columns", 30, soundness},
    {3, "trivial group agrees with ordinary Deligne cohomology", 60, trivial_group},
    {4, "values on manifolds below and above the weight", 60, manifold_values},
    {5, "bundle classes on a point and bounded enumeration", 120, classification},
    {6, "E2 is group cohomology; E_infinity matches the total", 120, spectral},
    {7, "free action: comparison with integral Borel cohomology", 60, free_quotient},
    {8, "obstructions vanish iff a bounded extension exists", 180, obstruction_soundness},
    {9, "discrete torsion twists on the Klein four group", 60, twists},
    {10, "curvature is closed, invariant and integral", 60, curvature},
};

}  // namespace

std::vector<Outcome> run(Depth depth, const Hooks& hooks, const std::function<void(const Outcome&)>& progress) {
  std::vector<Outcome> out;
  for (const auto& c : kCriteria) {
    Outcome o;
    o.id = c.id;
    o.title = c.title;
    o.budget = c.budget;
    Record r(o);
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(r, depth, hooks);
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (progress) progress(o);
    out.push_back(std::move(o));
  }
  return out;
}

std::string line(const Outcome& o) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "criterion %2d %s  %s  (%.1f s, budget %.0f s)", o.id, o.pass() ? "PASS" : "FAIL",
                o.title.c_str(), o.seconds, o.budget);
  std::string s = buf;
  if (o.seconds > o.budget) s += "\n    over the time budget";
  for (const auto& f : o.failures) s += "\n    " + f;
  return s;
}

}  // namespace edc::acceptance
