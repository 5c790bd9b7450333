#include "edc/simplicial.hpp"

#include <algorithm>
#include <set>

namespace edc {

int sort_with_sign(Simplex& s) {
  int sign = 1;
  for (std::size_t i = 1; i < s.size(); ++i)
    for (std::size_t j = i; j > 0 && s[j - 1] >= s[j]; --j) {
      if (s[j - 1] == s[j]) return 0;
      std::swap(s[j - 1], s[j]);
      sign = -sign;
    }
  return sign;
}

SimplicialComplex SimplicialComplex::from_facets(const std::vector<std::vector<int>>& facets, int nvertices,
                                                 std::vector<std::string> labels) {
  SimplicialComplex X;
  std::set<int> verts;
  for (const auto& f : facets) {
    if (f.empty()) throw InputError("empty facet");
    for (int v : f) {
      if (v < 0) throw InputError("negative vertex id");
      verts.insert(v);
    }
  }
  int n = nvertices >= 0 ? nvertices : (verts.empty() ? 0 : *verts.rbegin() + 1);
  if (!verts.empty() && *verts.rbegin() >= n) throw InputError("facet uses a vertex outside the vertex set");
  std::set<Simplex> all;
  for (int v = 0; v < n; ++v) all.insert({v});
  for (auto f : facets) {
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw InputError("facet repeats a vertex");
    const int k = static_cast<int>(f.size());
    if (k > 20) throw InputError("facet dimension too large");
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      Simplex s;
      for (int i = 0; i < k; ++i)
        if (mask & (1u << i)) s.push_back(f[i]);
      all.insert(std::move(s));
    }
  }
  for (const auto& s : all) {
    std::size_t q = s.size() - 1;
    if (X.simplices_.size() <= q) {
      X.simplices_.resize(q + 1);
      X.index_.resize(q + 1);
    }
    X.index_[q][s] = static_cast<int>(X.simplices_[q].size());
    X.simplices_[q].push_back(s);
  }
  // std::set orders by lexicographic vertex lists, so each dimension is already sorted.
  if (labels.empty()) {
    for (int v = 0; v < n; ++v) labels.push_back(std::to_string(v));
  } else if (static_cast<int>(labels.size()) != n) {
    throw InputError("vertex label count does not match the vertex set");
  }
  X.labels_ = std::move(labels);
  return X;
}

SimplicialComplex SimplicialComplex::from_labelled_facets(const std::vector<std::vector<std::string>>& facets) {
  std::vector<std::string> names;
  std::map<std::string, int> id;
  std::vector<std::vector<int>> f;
  for (const auto& facet : facets) {
    std::vector<int> ids;
    for (const auto& name : facet) {
      auto [it, fresh] = id.emplace(name, static_cast<int>(names.size()));
      if (fresh) names.push_back(name);
      ids.push_back(it->second);
    }
    f.push_back(std::move(ids));
  }
  return from_facets(f, static_cast<int>(names.size()), names);
}

int SimplicialComplex::index_of(const Simplex& s) const {
  if (s.empty()) return -1;
  std::size_t q = s.size() - 1;
  if (q >= index_.size()) return -1;
  auto it = index_[q].find(s);
  return it == index_[q].end() ? -1 : it->second;
}

std::vector<Simplex> SimplicialComplex::facets() const {
  std::vector<Simplex> out;
  for (int q = 0; q <= dim(); ++q)
    for (const auto& s : simplices_[q]) {
      bool maximal = true;
      if (q < dim())
        for (const auto& t : simplices_[q + 1])
          if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
            maximal = false;
            break;
          }
      if (maximal) out.push_back(s);
    }
  return out;
}

int SimplicialComplex::euler_characteristic() const {
  int chi = 0;
  for (int q = 0; q <= dim(); ++q) chi += (q % 2 ? -1 : 1) * count(q);
  return chi;
}

std::vector<SparseVec> SimplicialComplex::coboundary_rows(int q) const {
  std::vector<SparseVec> rows(count(q + 1));
  for (int t = 0; t < count(q + 1); ++t) {
    const Simplex& tau = simplices_[q + 1][t];
    std::vector<std::pair<int, Rational>> e;
    for (std::size_t r = 0; r < tau.size(); ++r) {
      Simplex face = tau;
      face.erase(face.begin() + r);
      e.emplace_back(index_of(face), Rational(r % 2 ? -1 : 1));
    }
    rows[t] = sparse_from_entries(std::move(e));
  }
  return rows;
}

// ---------------------------------------------------------------- stars

int StarSubcomplex::local_index(int q, int global) const {
  if (q < 0 || q >= static_cast<int>(simplices.size())) return -1;
  const auto& v = simplices[q];
  auto it = std::lower_bound(v.begin(), v.end(), global);
  return it != v.end() && *it == global ? static_cast<int>(it - v.begin()) : -1;
}

StarSubcomplex closed_star(const SimplicialComplex& X, const Simplex& S_in) {
  StarSubcomplex st;
  st.core = S_in;
  std::sort(st.core.begin(), st.core.end());
  st.core.erase(std::unique(st.core.begin(), st.core.end()), st.core.end());
  for (int v : st.core)
    if (v < 0 || v >= X.num_vertices()) throw InputError("closed star: unknown vertex " + std::to_string(v));
  if (st.core.empty() || !X.contains(st.core)) return st;
  for (int q = 0; q <= X.dim(); ++q) {
    std::vector<int> ids;
    for (int i = 0; i < X.count(q); ++i) {
      const Simplex& tau = X.simplex(q, i);
      Simplex u;
      std::set_union(tau.begin(), tau.end(), st.core.begin(), st.core.end(), std::back_inserter(u));
      if (X.contains(u)) ids.push_back(i);
    }
    if (ids.empty()) break;
    st.simplices.push_back(std::move(ids));
  }
  return st;
}

std::vector<SparseVec> star_coboundary_rows(const SimplicialComplex& X, const StarSubcomplex& st, int q) {
  std::vector<SparseVec> rows(st.count(q + 1));
  for (int l = 0; l < st.count(q + 1); ++l) {
    const Simplex& tau = X.simplex(q + 1, st.simplices[q + 1][l]);
    std::vector<std::pair<int, Rational>> e;
    for (std::size_t r = 0; r < tau.size(); ++r) {
      Simplex face = tau;
      face.erase(face.begin() + r);
      e.emplace_back(st.local_index(q, X.index_of(face)), Rational(r % 2 ? -1 : 1));
    }
    rows[l] = sparse_from_entries(std::move(e));
  }
  return rows;
}

// ---------------------------------------------------------------- cochains

SimplicialCochain SimplicialCochain::zero(const SimplicialComplex& X, int q, Ring ring,
                                          std::shared_ptr<const StarSubcomplex> support) {
  SimplicialCochain c;
  c.degree = q;
  c.ring = ring;
  c.support = std::move(support);
  c.values.assign(c.support ? c.support->count(q) : X.count(q), Rational(0));
  return c;
}

Rational SimplicialCochain::value_on(int global) const {
  if (!support) return values.at(global);
  int l = support->local_index(degree, global);
  return l < 0 ? Rational(0) : values[l];
}

SimplicialCochain coboundary(const SimplicialComplex& X, const SimplicialCochain& c) {
  SimplicialCochain out = SimplicialCochain::zero(X, c.degree + 1, c.ring, c.support);
  std::vector<SparseVec> rows =
      c.support ? star_coboundary_rows(X, *c.support, c.degree) : X.coboundary_rows(c.degree);
  for (std::size_t t = 0; t < rows.size(); ++t)
    for (const auto& [i, s] : rows[t]) out.values[t] += s * c.values[i];
  return out;
}

// ---------------------------------------------------------------- cohomology

MixedComplex simplicial_cochain_complex(const SimplicialComplex& X, Coefficients coeff) {
  MixedComplex C;
  C.first_degree = 0;
  const int top = X.dim();
  if (coeff != Coefficients::T) {
    for (int q = 0; q <= top; ++q) {
      MixedSpace s;
      (coeff == Coefficients::Z ? s.nZ : s.nQ) = X.count(q);
      C.terms.push_back(s);
    }
    for (int q = 0; q < top; ++q) C.maps.emplace_back(C.terms[q], C.terms[q + 1], X.coboundary_rows(q));
    C.validate();
    return C;
  }
  // Total degree t: Z-cochains of degree t, then Q-cochains of degree t-1.
  for (int t = 0; t <= top + 1; ++t) C.terms.push_back(MixedSpace{X.count(t), X.count(t - 1), {}});
  for (int t = 0; t <= top; ++t) {
    const MixedSpace& src = C.terms[t];
    const MixedSpace& dst = C.terms[t + 1];
    std::vector<SparseVec> rows(dst.dim());
    std::vector<SparseVec> dz = X.coboundary_rows(t);
    for (int r = 0; r < X.count(t + 1); ++r) rows[r] = dz[r];
    const Rational sign = t % 2 ? -1 : 1;
    std::vector<SparseVec> dq = t >= 1 ? X.coboundary_rows(t - 1) : std::vector<SparseVec>{};
    for (int r = 0; r < X.count(t); ++r) {
      SparseVec row{{r, sign}};
      if (t >= 1)
        for (const auto& [c, x] : dq[r]) row.emplace_back(src.nZ + c, x);
      rows[dst.nZ + r] = sparse_from_entries(std::vector<std::pair<int, Rational>>(row.begin(), row.end()));
    }
    C.maps.emplace_back(src, dst, std::move(rows));
  }
  C.validate();
  return C;
}

MixedModule simplicial_cohomology(const SimplicialComplex& X, Coefficients coeff, int n) {
  if (n < 0) return {};
  MixedComplex C = simplicial_cochain_complex(X, coeff);
  int deg = coeff == Coefficients::T ? n + 1 : n;
  if (!C.has_degree(deg)) return {};
  return cohomology_at(C, deg).module;
}

std::vector<SparseInt> integral_cycles(const SimplicialComplex& X, int q) {
  std::vector<SparseInt> out;
  if (q == 0) {
    for (int i = 0; i < X.count(0); ++i) out.push_back({{i, Integer(1)}});
    return out;
  }
  std::vector<std::vector<std::pair<int, Integer>>> rows(X.count(q - 1));
  std::vector<SparseVec> cob = X.coboundary_rows(q - 1);
  for (int t = 0; t < X.count(q); ++t)
    for (const auto& [c, x] : cob[t]) rows[c].emplace_back(t, x.get_num());
  std::vector<SparseInt> r(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) r[i] = std::move(rows[i]);
  return integer_kernel(r, X.count(q));
}

Rational pair_with_chain(const std::vector<Rational>& cochain, const SparseInt& chain) {
  Rational s = 0;
  for (const auto& [i, n] : chain) s += cochain.at(i) * n;
  return s;
}

bool is_integral_closed(const SimplicialComplex& X, int q, const std::vector<Rational>& c) {
  if (static_cast<int>(c.size()) != X.count(q)) throw StructuralError("cochain size does not match the complex");
  if (q < X.dim()) {
    for (const auto& row : X.coboundary_rows(q)) {
      Rational s = 0;
      for (const auto& [i, x] : row) s += x * c[i];
      if (s != 0) throw PreconditionError("is_integral_closed: cochain is not closed");
    }
  }
  for (const auto& z : integral_cycles(X, q))
    if (!is_integer(pair_with_chain(c, z))) return false;
  return true;
}

MixedComplex augmented_star_complex(const SimplicialComplex& X, const StarSubcomplex& st, Ring ring) {
  MixedComplex C;
  C.first_degree = -1;
  auto space = [&](int n) {
    MixedSpace s;
    (ring == Ring::Z ? s.nZ : s.nQ) = n;
    return s;
  };
  C.terms.push_back(space(1));
  for (int q = 0; q < static_cast<int>(st.simplices.size()); ++q) C.terms.push_back(space(st.count(q)));
  if (C.terms.size() > 1) {
    std::vector<SparseVec> rows(st.count(0), SparseVec{{0, Rational(1)}});
    C.maps.emplace_back(C.terms[0], C.terms[1], std::move(rows));
  }
  for (int q = 0; q + 1 < static_cast<int>(st.simplices.size()); ++q)
    C.maps.emplace_back(C.terms[q + 1], C.terms[q + 2], star_coboundary_rows(X, st, q));
  C.validate();
  return C;
}

}  // namespace edc
