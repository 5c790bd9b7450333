#include "edc/lattice.hpp"

namespace edc {

namespace {

void require_graph(const SimplicialAction& a, const LatticeConnection& U) {
  if (a.space.dim() > 1) throw PreconditionError("lattice fields need a complex of dimension at most 1");
  if (static_cast<int>(U.link.size()) != a.space.count(1)) throw PreconditionError("one link variable per edge expected");
}

Rational pulled_link(const SimplicialAction& a, const LatticeConnection& U, int g, int e) {
  int sign = 1;
  const int ge = a.act_simplex_index(g, 1, e, &sign);
  return sign * U.link[ge];
}

}  // namespace

bool check_lattice_equivariance(const SimplicialAction& a, const LatticeConnection& U, const LatticeEquivariance& E) {
  require_graph(a, U);
  const SimplicialComplex& X = a.space;
  const FiniteGroup& G = a.group;
  if (static_cast<int>(E.phi.size()) != G.order()) return false;
  for (int g = 0; g < G.order(); ++g) {
    for (int e = 0; e < X.count(1); ++e) {
      const Simplex& s = X.simplex(1, e);
      if (!is_integer(pulled_link(a, U, g, e) - U.link[e] - (E.phi[g][s[1]] - E.phi[g][s[0]]))) return false;
    }
    for (int h = 0; h < G.order(); ++h)
      for (int v = 0; v < X.count(0); ++v)
        if (!is_integer(E.phi[G.mul(g, h)][v] - E.phi[g][a.act(h, v)] - E.phi[h][v])) return false;
  }
  return true;
}

std::optional<LatticeEquivariance> lattice_equivariance(const SimplicialAction& a, const LatticeConnection& U,
                                                        int generator, int D) {
  require_graph(a, U);
  const SimplicialComplex& X = a.space;
  const FiniteGroup& G = a.group;
  const int nV = X.count(0);
  for (const Rational& x : U.link)
    if (!is_integer(x * D)) throw PreconditionError("link values must lie in (1/D)Z");
  std::vector<int> power{G.identity()};
  while (static_cast<int>(power.size()) < G.order() && G.mul(generator, power.back()) != G.identity())
    power.push_back(G.mul(generator, power.back()));
  if (static_cast<int>(power.size()) != G.order()) throw PreconditionError("lattice search needs a cyclic group and its generator");

  // dφ_gen = gen*U - U pins φ_gen down to one constant per connected component.
  std::vector<std::vector<std::pair<int, int>>> adjacent(nV);  // (neighbour, edge)
  for (int e = 0; e < X.count(1); ++e) {
    const Simplex& s = X.simplex(1, e);
    adjacent[s[0]].push_back({s[1], e});
    adjacent[s[1]].push_back({s[0], e});
  }
  std::vector<int> component(nV, -1);
  std::vector<Rational> base(nV, Rational(0));
  int components = 0;
  for (int root = 0; root < nV; ++root) {
    if (component[root] >= 0) continue;
    std::vector<int> queue{root};
    component[root] = components;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const int u = queue[q];
      for (const auto& [w, e] : adjacent[u]) {
        const Rational jump = pulled_link(a, U, generator, e) - U.link[e];
        const Rational step = X.simplex(1, e)[0] == u ? jump : -jump;
        if (component[w] < 0) {
          component[w] = components;
          base[w] = frac(base[u] + step);
          queue.push_back(w);
        } else if (!is_integer(base[w] - base[u] - step)) {
          return std::nullopt;
        }
      }
    }
    ++components;
  }

  // The cocycle condition is linear in the constants, with coefficients summing over
  // generator orbits, so a solution over T has one with denominator D·|G|.
  const long grid = static_cast<long>(D) * G.order();
  std::vector<long> digits(components, 0);
  LatticeEquivariance E;
  E.phi.assign(G.order(), std::vector<Rational>(nV, Rational(0)));
  while (true) {
    for (int v = 0; v < nV; ++v) E.phi[generator][v] = frac(base[v] + ratio(digits[component[v]], grid));
    // φ_{gen·g^k}(v) = φ_gen(g^k v) + φ_{g^k}(v)
    for (std::size_t k = 2; k < power.size(); ++k)
      for (int v = 0; v < nV; ++v)
        E.phi[power[k]][v] = frac(E.phi[generator][a.act(power[k - 1], v)] + E.phi[power[k - 1]][v]);
    if (check_lattice_equivariance(a, U, E)) return E;
    int c = 0;
    while (c < components && ++digits[c] == grid) digits[c++] = 0;
    if (c == components) return std::nullopt;
  }
}

Rational lattice_holonomy(const SimplicialComplex& X, const LatticeConnection& U, const std::vector<int>& cycle) {
  Rational h = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const int u = cycle[i], v = cycle[(i + 1) % cycle.size()];
    const int e = X.index_of(u < v ? Simplex{u, v} : Simplex{v, u});
    if (e < 0) throw PreconditionError("holonomy path leaves the edges");
    h += u < v ? U.link[e] : -U.link[e];
  }
  return frac(h);
}

TripleCochain lattice_level_zero(const GeometryModel& M, const LatticeConnection& U) {
  if (M.kind() != GeometryKind::Bundle) throw PreconditionError("lattice fields describe bundles");
  require_graph(M.action(), U);
  return form_level_zero(M, U.link);
}

}  // namespace edc
