#include "edc/nerve.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace edc {

NervePoint face_map(const SimplicialAction& a, const NervePoint& pt, int i) {
  const int p = pt.level();
  if (p < 1 || i < 0 || i > p) throw StructuralError("face map index out of range");
  NervePoint out;
  out.x = pt.x;
  if (i == 0) {
    out.g.assign(pt.g.begin() + 1, pt.g.end());
  } else if (i < p) {
    out.g = pt.g;
    out.g[i - 1] = a.group.mul(pt.g[i - 1], pt.g[i]);
    out.g.erase(out.g.begin() + i);
  } else {
    out.g.assign(pt.g.begin(), pt.g.end() - 1);
    out.x = a.act(pt.g[p - 1], pt.x);
  }
  return out;
}

NervePoint degeneracy_map(const SimplicialAction& a, const NervePoint& pt, int i) {
  const int p = pt.level();
  if (i < 0 || i > p) throw StructuralError("degeneracy map index out of range");
  NervePoint out = pt;
  out.g.insert(out.g.begin() + i, a.group.identity());
  return out;
}

// ---------------------------------------------------------------- validation

namespace {

std::string simplex_name(const SimplicialComplex& X, const Simplex& s) {
  std::string n = "{";
  for (std::size_t i = 0; i < s.size(); ++i) n += (i ? "," : "") + X.labels()[s[i]];
  return n + "}";
}

void add_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

}  // namespace

ActionReport validate_action(const SimplicialAction& a, int max_level, unsigned samples) {
  ActionReport rep;
  const FiniteGroup& G = a.group;
  const SimplicialComplex& X = a.space;
  for (const auto& f : group_table_failures(G.table())) rep.failures.push_back(f);
  if (!rep.failures.empty()) return rep;
  const int n = G.order(), nv = X.num_vertices();
  if (static_cast<int>(a.perm.size()) != n) {
    rep.failures.push_back("one permutation per group element required");
    return rep;
  }
  for (int g = 0; g < n; ++g) {
    std::vector<bool> seen(nv, false);
    bool ok = static_cast<int>(a.perm[g].size()) == nv;
    for (int v = 0; ok && v < nv; ++v) {
      int w = a.perm[g][v];
      ok = w >= 0 && w < nv && !seen[w];
      if (ok) seen[w] = true;
    }
    if (!ok) {
      rep.failures.push_back("not a permutation (element " + G.name(g) + ")");
      return rep;
    }
  }
  for (int v = 0; v < nv; ++v)
    if (a.perm[G.identity()][v] != v) add_unique(rep.failures, "identity does not act trivially");
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int v = 0; v < nv; ++v)
        if (a.perm[G.mul(g, h)][v] != a.perm[g][a.perm[h][v]]) add_unique(rep.failures, "not a homomorphism");
  for (int g = 0; g < n; ++g)
    for (int q = 0; q <= X.dim(); ++q)
      for (const auto& s : X.simplices(q)) {
        Simplex img = a.act(g, s);
        if (!X.contains(img)) {
          add_unique(rep.failures, "not simplicial");
          continue;
        }
        if (img == s) {
          bool pointwise = true;
          for (int v : s) pointwise = pointwise && a.perm[g][v] == v;
          if (!pointwise)
            rep.warnings.push_back("element " + G.name(g) + " fixes " + simplex_name(X, s) +
                                   " without fixing it pointwise; consider a barycentric subdivision");
        }
      }
  if (!rep.failures.empty()) return rep;

  // Simplicial identities on all points when few, otherwise on a fixed pseudo-random sample.
  std::mt19937 rng(12345);
  std::vector<Simplex> all;
  for (int q = 0; q <= X.dim(); ++q)
    for (const auto& s : X.simplices(q)) all.push_back(s);
  for (int p = 0; p <= max_level; ++p) {
    long copies = G.tuple_count(p);
    long total = copies * static_cast<long>(all.size());
    auto check_point = [&](const NervePoint& pt) {
      for (int i = 0; i <= p; ++i) {
        for (int j = 0; j <= p; ++j) {
          NervePoint sj = degeneracy_map(a, pt, j);
          NervePoint lhs = face_map(a, sj, i);
          NervePoint rhs;
          if (i < j)
            rhs = degeneracy_map(a, face_map(a, pt, i), j - 1);
          else if (i == j || i == j + 1)
            rhs = pt;
          else
            rhs = degeneracy_map(a, face_map(a, pt, i - 1), j);
          if (!(lhs == rhs)) add_unique(rep.failures, "face-degeneracy relation");
          if (i <= j) {
            NervePoint l2 = degeneracy_map(a, degeneracy_map(a, pt, j), i);
            NervePoint r2 = degeneracy_map(a, degeneracy_map(a, pt, i), j + 1);
            if (!(l2 == r2)) add_unique(rep.failures, "degeneracy-degeneracy relation");
          }
        }
        if (p >= 2)
          for (int j = i + 1; j <= p; ++j)
            if (!(face_map(a, face_map(a, pt, j), i) == face_map(a, face_map(a, pt, i), j - 1)))
              add_unique(rep.failures, "face-face relation");
      }
    };
    if (total <= static_cast<long>(samples) * 4) {
      for (long c = 0; c < copies; ++c)
        for (const auto& s : all) check_point({G.decode(p, c), s});
    } else {
      std::uniform_int_distribution<long> pc(0, copies - 1);
      std::uniform_int_distribution<std::size_t> ps(0, all.size() - 1);
      for (unsigned k = 0; k < samples; ++k) check_point({G.decode(p, pc(rng)), all[ps(rng)]});
    }
  }
  return rep;
}

// ---------------------------------------------------------------- covers

NerveCover::NerveCover(const SimplicialAction& a, CoverKind kind) : action_(&a), kind_(kind) {}

long NerveCover::index_count(int p) const {
  const long nv = action_->space.num_vertices();
  if (kind_ == CoverKind::Copywise) return nv;
  long c = 1;
  for (int i = 0; i <= p; ++i) c *= nv;
  return c;
}

namespace {

std::vector<int> digits(long code, int len, int base) {
  std::vector<int> d(len);
  for (int i = len - 1; i >= 0; --i) {
    d[i] = static_cast<int>(code % base);
    code /= base;
  }
  return d;
}

long undigits(const std::vector<int>& d, int base) {
  long c = 0;
  for (int x : d) c = c * base + x;
  return c;
}

void normalize(Simplex& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

}  // namespace

Simplex NerveCover::index_core(int p, long copy, long index) const {
  if (kind_ == CoverKind::Copywise) return {static_cast<int>(index)};
  const FiniteGroup& G = action_->group;
  std::vector<int> g = G.decode(p, copy);
  std::vector<int> alpha = digits(index, p + 1, action_->space.num_vertices());
  // alpha_k translated by (g_{k+1} ... g_p)^{-1}
  Simplex S;
  int h = G.identity();
  for (int k = p; k >= 0; --k) {
    S.push_back(action_->act(G.inv(h), alpha[k]));
    if (k >= 1) h = G.mul(g[k - 1], h);
  }
  normalize(S);
  return S;
}

long NerveCover::index_face(int p, long copy, long index, int l) const {
  if (kind_ == CoverKind::Copywise) {
    if (l < p) return index;
    std::vector<int> g = action_->group.decode(p, copy);
    return action_->act(g[p - 1], static_cast<int>(index));
  }
  const int nv = action_->space.num_vertices();
  std::vector<int> alpha = digits(index, p + 1, nv);
  alpha.erase(alpha.begin() + l);
  return undigits(alpha, nv);
}

std::string NerveCover::index_name(int p, long index) const {
  const auto& labels = action_->space.labels();
  if (kind_ == CoverKind::Copywise) return labels.at(index);
  std::string s = "(";
  std::vector<int> alpha = digits(index, p + 1, action_->space.num_vertices());
  for (std::size_t i = 0; i < alpha.size(); ++i) s += (i ? "," : "") + labels[alpha[i]];
  return s + ")";
}

Simplex NerveCover::inductive_core_recursive(int p, const std::vector<int>& alpha, const std::vector<int>& g) const {
  if (p == 0) return {alpha[0]};
  const FiniteGroup& G = action_->group;
  Simplex S;
  for (int l = 0; l <= p; ++l) {
    std::vector<int> a2 = alpha;
    a2.erase(a2.begin() + l);
    std::vector<int> g2;
    if (l == 0) {
      g2.assign(g.begin() + 1, g.end());
    } else if (l < p) {
      g2 = g;
      g2[l - 1] = G.mul(g[l - 1], g[l]);
      g2.erase(g2.begin() + l);
    } else {
      g2.assign(g.begin(), g.end() - 1);
    }
    Simplex sub = inductive_core_recursive(p - 1, a2, g2);
    // The last face moves x by g_p, so its preimage translates the core by g_p^{-1}.
    if (l == p)
      for (int& v : sub) v = action_->act(G.inv(g[p - 1]), v);
    S.insert(S.end(), sub.begin(), sub.end());
  }
  normalize(S);
  return S;
}

std::shared_ptr<const StarSubcomplex> NerveCover::star(const Simplex& core) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = stars_.find(core);
  if (it != stars_.end()) return it->second;
  std::shared_ptr<const StarSubcomplex> st;
  if (action_->space.contains(core)) st = std::make_shared<StarSubcomplex>(closed_star(action_->space, core));
  stars_.emplace(core, st);
  return st;
}

Patch NerveCover::resolve_patch(int p, const std::vector<long>& indices, long copy) const {
  auto key = std::make_tuple(p, indices, copy);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = patches_.find(key);
    if (it != patches_.end()) return it->second;
  }
  Patch patch;
  patch.level = p;
  patch.copy = copy;
  patch.indices = indices;
  std::vector<int> g = action_->group.decode(p, copy);
  for (long idx : indices) {
    Simplex c;
    if (kind_ == CoverKind::Copywise)
      c = {static_cast<int>(idx)};
    else
      c = inductive_core_recursive(p, digits(idx, p + 1, action_->space.num_vertices()), g);
    patch.core.insert(patch.core.end(), c.begin(), c.end());
  }
  normalize(patch.core);
  patch.star = star(patch.core);
  std::lock_guard<std::mutex> lock(mutex_);
  patches_.emplace(key, patch);
  return patch;
}

// ---------------------------------------------------------------- level enumeration

int LevelCover::find(int j, long copy, const std::vector<long>& indices) const {
  if (j < 0 || j >= static_cast<int>(lookup.size())) return -1;
  auto it = lookup[j].find({copy, indices});
  return it == lookup[j].end() ? -1 : it->second;
}

LevelCover enumerate_level(const NerveCover& cover, int p, int max_cech_degree) {
  LevelCover L;
  L.level = p;
  const int depth = max_cech_degree + 1;
  L.by_degree.resize(std::max(depth, 0));
  L.lookup.resize(std::max(depth, 0));
  if (depth <= 0) return L;
  const SimplicialComplex& X = cover.action().space;
  const long copies = cover.action().group.tuple_count(p);
  for (long copy = 0; copy < copies; ++copy) {
    std::vector<long> cand;
    std::vector<Simplex> cores;
    for (long idx = 0; idx < cover.index_count(p); ++idx) {
      Simplex c = cover.index_core(p, copy, idx);
      if (!X.contains(c)) continue;
      cand.push_back(idx);
      cores.push_back(std::move(c));
    }
    std::vector<long> tuple;
    std::function<void(std::size_t, const Simplex&)> dfs = [&](std::size_t start, const Simplex& core) {
      for (std::size_t k = start; k < cand.size(); ++k) {
        Simplex u;
        std::set_union(core.begin(), core.end(), cores[k].begin(), cores[k].end(), std::back_inserter(u));
        if (!X.contains(u)) continue;
        tuple.push_back(cand[k]);
        const int j = static_cast<int>(tuple.size()) - 1;
        L.lookup[j][{copy, tuple}] = static_cast<int>(L.by_degree[j].size());
        L.by_degree[j].push_back({copy, tuple, u, cover.star(u)});
        if (static_cast<int>(tuple.size()) < depth) dfs(k + 1, u);
        tuple.pop_back();
      }
    };
    dfs(0, {});
  }
  return L;
}

MixedComplex cech_column(const NerveCover&, const LevelCover& level, long copy, int q, int tau) {
  MixedComplex C;
  C.first_degree = -1;
  std::vector<std::vector<int>> members(level.by_degree.size());
  std::vector<std::map<int, int>> pos(level.by_degree.size());
  for (std::size_t j = 0; j < level.by_degree.size(); ++j)
    for (int s = 0; s < static_cast<int>(level.by_degree[j].size()); ++s) {
      const CechSimplex& cs = level.by_degree[j][s];
      if (cs.copy != copy || !cs.star->contains(q, tau)) continue;
      pos[j][s] = static_cast<int>(members[j].size());
      members[j].push_back(s);
    }
  C.terms.push_back(MixedSpace{1, 0, {}});
  for (std::size_t j = 0; j < members.size(); ++j) C.terms.push_back(MixedSpace{static_cast<int>(members[j].size()), 0, {}});
  C.zero_above = false;  // truncated at the enumerated Čech degree
  for (std::size_t t = 0; t + 1 < C.terms.size(); ++t) {
    std::vector<SparseVec> rows(C.terms[t + 1].dim());
    if (t == 0) {
      for (auto& r : rows) r = {{0, Rational(1)}};
    } else {
      const int j = static_cast<int>(t);  // target Čech degree
      for (int m = 0; m < static_cast<int>(members[j].size()); ++m) {
        const CechSimplex& cs = level.by_degree[j][members[j][m]];
        std::vector<std::pair<int, Rational>> e;
        for (int r = 0; r <= j; ++r) {
          std::vector<long> face = cs.indices;
          face.erase(face.begin() + r);
          int f = level.find(j - 1, copy, face);
          e.emplace_back(pos[j - 1].at(f), Rational(r % 2 ? -1 : 1));
        }
        rows[m] = sparse_from_entries(std::move(e));
      }
    }
    C.maps.emplace_back(C.terms[t], C.terms[t + 1], std::move(rows));
  }
  C.validate();
  return C;
}

}  // namespace edc
