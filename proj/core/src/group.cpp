#include "edc/group.hpp"

#include <deque>

namespace edc {

std::vector<std::string> group_table_failures(const std::vector<std::vector<int>>& t) {
  const int n = static_cast<int>(t.size());
  if (n == 0) return {"empty group"};
  for (const auto& row : t) {
    if (static_cast<int>(row.size()) != n) return {"table shape"};
    for (int x : row)
      if (x < 0 || x >= n) return {"closure"};
  }
  std::vector<std::string> out;
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) ok = t[a][b] == b && t[b][a] == b;
    if (ok) e = a;
  }
  if (e < 0) out.push_back("identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) {
          out.push_back("associativity");
          a = b = c = n;
        }
  if (e >= 0)
    for (int a = 0; a < n; ++a) {
      bool has = false;
      for (int b = 0; b < n && !has; ++b) has = t[a][b] == e && t[b][a] == e;
      if (!has) {
        out.push_back("inverses");
        break;
      }
    }
  return out;
}

FiniteGroup FiniteGroup::from_table(std::vector<std::string> names, std::vector<std::vector<int>> table) {
  auto failures = group_table_failures(table);
  if (!failures.empty()) throw InputError("group table: " + failures.front());
  if (names.size() != table.size()) throw InputError("group table: name count does not match the order");
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) throw InputError("group table: duplicate element name '" + names[i] + "'");
  FiniteGroup g;
  g.names_ = std::move(names);
  g.table_ = std::move(table);
  const int n = g.order();
  for (int a = 0; a < n; ++a) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) ok = g.table_[a][b] == b;
    if (ok) {
      g.identity_ = a;
      break;
    }
  }
  g.inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.table_[a][b] == g.identity_) g.inverse_[a] = b;
  return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw InputError("cyclic group order must be positive");
  std::vector<std::string> names;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    names.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return from_table(names, t);
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup(); }

FiniteGroup FiniteGroup::klein4() {
  // Elements as bit pairs: e = 00, a = 10, b = 01, ab = 11; product is xor.
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) t[x][y] = x ^ y;
  return from_table({"e", "a", "b", "ab"}, t);
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 1) throw InputError("dihedral group parameter must be positive");
  // Index k: r^k; index n + k: r^k s. Relations s r = r^{-1} s.
  auto mul = [n](int x, int y) {
    int a = x % n, fa = x / n, b = y % n, fb = y / n;
    int rot = fa ? (a - b + n) % n : (a + b) % n;
    return (fa ^ fb) * n + rot;
  };
  std::vector<std::string> names;
  for (int k = 0; k < n; ++k) names.push_back("r" + std::to_string(k));
  for (int k = 0; k < n; ++k) names.push_back("r" + std::to_string(k) + "s");
  std::vector<std::vector<int>> t(2 * n, std::vector<int>(2 * n));
  for (int x = 0; x < 2 * n; ++x)
    for (int y = 0; y < 2 * n; ++y) t[x][y] = mul(x, y);
  return from_table(names, t);
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  const int m = a.order(), n = b.order();
  std::vector<std::string> names;
  std::vector<std::vector<int>> t(m * n, std::vector<int>(m * n));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < n; ++y) names.push_back("(" + a.name(x) + "," + b.name(y) + ")");
  for (int x = 0; x < m * n; ++x)
    for (int y = 0; y < m * n; ++y) t[x][y] = a.mul(x / n, y / n) * n + b.mul(x % n, y % n);
  return from_table(names, t);
}

int FiniteGroup::index_of(const std::string& name) const {
  for (int a = 0; a < order(); ++a)
    if (names_[a] == name) return a;
  return -1;
}

long FiniteGroup::tuple_count(int p) const {
  long c = 1;
  for (int i = 0; i < p; ++i) c *= order();
  return c;
}

long FiniteGroup::encode(const std::vector<int>& g) const {
  long c = 0;
  for (int x : g) c = c * order() + x;
  return c;
}

std::vector<int> FiniteGroup::decode(int p, long code) const {
  std::vector<int> g(p);
  for (int i = p - 1; i >= 0; --i) {
    g[i] = static_cast<int>(code % order());
    code /= order();
  }
  return g;
}

// ---------------------------------------------------------------- actions

SimplicialAction SimplicialAction::trivial_action(FiniteGroup g, SimplicialComplex x) {
  SimplicialAction a{std::move(g), std::move(x), {}};
  std::vector<int> id(a.space.num_vertices());
  for (int v = 0; v < a.space.num_vertices(); ++v) id[v] = v;
  a.perm.assign(a.group.order(), id);
  return a;
}

SimplicialAction SimplicialAction::from_generators(FiniteGroup g, SimplicialComplex x,
                                                   const std::vector<std::pair<int, std::vector<int>>>& gens) {
  SimplicialAction a{std::move(g), std::move(x), {}};
  const int n = a.group.order(), nv = a.space.num_vertices();
  for (const auto& [s, p] : gens) {
    if (s < 0 || s >= n) throw InputError("action: unknown group element");
    if (static_cast<int>(p.size()) != nv) throw InputError("action: permutation has wrong length");
    std::vector<bool> seen(nv, false);
    for (int v : p) {
      if (v < 0 || v >= nv || seen[v]) throw InputError("action: not a permutation of the vertices");
      seen[v] = true;
    }
  }
  a.perm.assign(n, {});
  std::vector<int> id(nv);
  for (int v = 0; v < nv; ++v) id[v] = v;
  a.perm[a.group.identity()] = id;
  std::deque<int> queue{a.group.identity()};
  while (!queue.empty()) {
    int h = queue.front();
    queue.pop_front();
    for (const auto& [s, p] : gens) {
      int hs = a.group.mul(h, s);
      std::vector<int> img(nv);
      for (int v = 0; v < nv; ++v) img[v] = a.perm[h][p[v]];
      if (a.perm[hs].empty()) {
        a.perm[hs] = img;
        queue.push_back(hs);
      } else if (a.perm[hs] != img) {
        throw InputError("action: generator permutations are not compatible with the group law (element " +
                         a.group.name(hs) + ")");
      }
    }
  }
  for (int h = 0; h < n; ++h)
    if (a.perm[h].empty()) throw InputError("action: generators do not generate the group");
  return a;
}

Simplex SimplicialAction::act(int g, const Simplex& s, int* sign) const {
  Simplex img;
  img.reserve(s.size());
  for (int v : s) img.push_back(perm[g][v]);
  int sg = sort_with_sign(img);
  if (sign) *sign = sg;
  return img;
}

int SimplicialAction::act_simplex_index(int g, int q, int idx, int* sign) const {
  return space.index_of(act(g, space.simplex(q, idx), sign));
}

}  // namespace edc
