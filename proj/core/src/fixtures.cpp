#include "edc/fixtures.hpp"

namespace edc::fixtures {

SimplicialComplex point() { return SimplicialComplex::from_facets({{0}}); }

SimplicialComplex circle(int k) {
  if (k < 3) throw InputError("circle:k needs k >= 3");
  std::vector<std::vector<int>> f;
  for (int i = 0; i < k; ++i) f.push_back({i, (i + 1) % k});
  return SimplicialComplex::from_facets(f);
}

SimplicialComplex octahedron() {
  // Antipodal pairs (0,1), (2,3), (4,5); a facet picks one vertex from each pair.
  std::vector<std::vector<int>> f;
  for (int a = 0; a < 2; ++a)
    for (int b = 2; b < 4; ++b)
      for (int c = 4; c < 6; ++c) f.push_back({a, b, c});
  return SimplicialComplex::from_facets(f);
}

SimplicialComplex boundary_simplex(int n) {
  if (n < 1) throw InputError("boundary of a simplex needs n >= 1");
  std::vector<std::vector<int>> f;
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<int> facet;
    for (int v = 0; v <= n; ++v)
      if (v != skip) facet.push_back(v);
    f.push_back(facet);
  }
  return SimplicialComplex::from_facets(f);
}

SimplicialComplex disjoint_union(const SimplicialComplex& a, const SimplicialComplex& b) {
  std::vector<std::vector<int>> f;
  const int shift = a.num_vertices();
  for (const auto& s : a.facets()) f.push_back(s);
  for (auto s : b.facets()) {
    for (int& v : s) v += shift;
    f.push_back(s);
  }
  return SimplicialComplex::from_facets(f, shift + b.num_vertices());
}

namespace {

int parse_param(const std::string& name, const std::string& prefix) {
  try {
    std::size_t used = 0;
    int v = std::stoi(name.substr(prefix.size()), &used);
    if (used != name.size() - prefix.size()) throw std::invalid_argument(name);
    return v;
  } catch (const std::logic_error&) {
    throw InputError("malformed preset '" + name + "'");
  }
}

}  // namespace

FiniteGroup group_preset(const std::string& name) {
  if (name == "trivial") return FiniteGroup::trivial();
  if (name == "klein4") return FiniteGroup::klein4();
  if (name.rfind("cyclic:", 0) == 0) return FiniteGroup::cyclic(parse_param(name, "cyclic:"));
  if (name.rfind("dihedral:", 0) == 0) return FiniteGroup::dihedral(parse_param(name, "dihedral:"));
  throw InputError("unknown group preset '" + name + "'");
}

SimplicialComplex complex_preset(const std::string& name) {
  if (name == "point") return point();
  if (name == "sphere:octahedron") return octahedron();
  if (name == "sphere:boundary4simplex") return boundary_simplex(4);
  if (name.rfind("circle:", 0) == 0) return circle(parse_param(name, "circle:"));
  throw InputError("unknown complex preset '" + name + "'");
}

SimplicialAction rotation(int n, int k) {
  if (n < 1 || k % n != 0) throw InputError("rotation: the group order must divide the number of vertices");
  std::vector<int> p(k);
  for (int v = 0; v < k; ++v) p[v] = (v + k / n) % k;
  return SimplicialAction::from_generators(FiniteGroup::cyclic(n), circle(k), {{n > 1 ? 1 : 0, p}});
}

SimplicialAction swap_copies(const SimplicialComplex& X) {
  SimplicialComplex Y = disjoint_union(X, X);
  const int n = X.num_vertices();
  std::vector<int> p(2 * n);
  for (int v = 0; v < n; ++v) {
    p[v] = v + n;
    p[v + n] = v;
  }
  return SimplicialAction::from_generators(FiniteGroup::cyclic(2), Y, {{1, p}});
}

SimplicialAction antipodal_octahedron() {
  return SimplicialAction::from_generators(FiniteGroup::cyclic(2), octahedron(), {{1, {1, 0, 3, 2, 5, 4}}});
}

}  // namespace edc::fixtures
