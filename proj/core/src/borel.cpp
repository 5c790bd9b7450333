#include "edc/borel.hpp"

#include <set>

#include "edc/nerve.hpp"

namespace edc {

MixedComplex torsion_cone(const MixedComplex& Z) {
  for (const auto& s : Z.terms)
    if (s.nQ != 0) throw PreconditionError("torsion cone needs an integral complex");
  MixedComplex C;
  C.first_degree = Z.first_degree;
  C.zero_below = Z.zero_below;
  C.zero_above = Z.zero_above;
  const int n = static_cast<int>(Z.terms.size());
  auto zdim = [&](int idx) { return idx >= 0 && idx < n ? Z.terms[idx].nZ : 0; };
  const int count = Z.zero_above ? n + 1 : n;
  for (int idx = 0; idx < count; ++idx) C.terms.push_back(MixedSpace{zdim(idx), zdim(idx - 1), {}});
  for (int idx = 0; idx + 1 < count; ++idx) {
    const int t = Z.first_degree + idx;
    const MixedSpace& src = C.terms[idx];
    const MixedSpace& dst = C.terms[idx + 1];
    std::vector<SparseVec> rows(dst.dim());
    if (idx + 1 < n) {
      const auto& dz = Z.maps[idx].rows();
      for (int r = 0; r < dst.nZ; ++r) rows[r] = dz[r];
    }
    const Rational sign = t % 2 ? -1 : 1;
    for (int r = 0; r < dst.nQ; ++r) {
      std::vector<std::pair<int, Rational>> e{{r, sign}};
      if (idx >= 1)
        for (const auto& [c, x] : Z.maps[idx - 1].rows()[r]) e.emplace_back(src.nZ + c, x);
      rows[dst.nZ + r] = sparse_from_entries(std::move(e));
    }
    C.maps.emplace_back(src, dst, std::move(rows));
  }
  return C;
}

MixedComplex rationalize(const MixedComplex& Z) {
  MixedComplex C = Z;
  for (auto& s : C.terms) s = MixedSpace{0, s.dim(), {}};
  for (std::size_t i = 0; i < Z.maps.size(); ++i) C.maps[i] = MixedMap(C.terms[i], C.terms[i + 1], Z.maps[i].rows());
  return C;
}

BorelComplex::BorelComplex(const SimplicialAction& a, int t_max) : action_(&a), t_max_(t_max) {
  const FiniteGroup& G = a.group;
  const SimplicialComplex& X = a.space;
  complex_.first_degree = 0;
  complex_.zero_below = true;
  complex_.zero_above = false;
  for (int t = 0; t <= t_max; ++t) {
    std::vector<int> off{0};
    for (int i = 0; i <= t; ++i) off.push_back(off.back() + static_cast<int>(G.tuple_count(i)) * X.count(t - i));
    offset_.push_back(off);
    complex_.terms.push_back(MixedSpace{off.back(), 0, {}});
  }
  for (int t = 0; t < t_max; ++t) {
    std::vector<SparseVec> rows(complex_.terms[t + 1].dim());
    std::vector<std::pair<int, Rational>> e;
    for (int i = 0; i <= t + 1; ++i) {
      const int q = t + 1 - i;
      if (X.count(q) == 0) continue;
      std::vector<SparseVec> cob = q >= 1 ? X.coboundary_rows(q - 1) : std::vector<SparseVec>{};
      for (long copy = 0; copy < G.tuple_count(i); ++copy) {
        const std::vector<int> g = G.decode(i, copy);
        for (int s = 0; s < X.count(q); ++s) {
          e.clear();
          if (q >= 1 && i <= t) {
            const Rational sign = i % 2 ? -1 : 1;
            for (const auto& [c, x] : cob[s]) e.emplace_back(coordinate(i, copy, q - 1, c), sign * x);
          }
          if (i >= 1) {
            for (int l = 0; l <= i; ++l) {
              const long fcopy = G.encode(face_map(a, NervePoint{g, {}}, l).g);
              int sgn = 1, img = s;
              if (l == i) img = a.act_simplex_index(g[i - 1], q, s, &sgn);
              e.emplace_back(coordinate(i - 1, fcopy, q, img), Rational((l % 2 ? -1 : 1) * sgn));
            }
          }
          rows[coordinate(i, copy, q, s)] = sparse_from_entries(e);
        }
      }
    }
    complex_.maps.emplace_back(complex_.terms[t], complex_.terms[t + 1], std::move(rows));
  }
}

int BorelComplex::coordinate(int i, long copy, int q, int simplex) const {
  const int t = i + q;
  return offset_.at(t).at(i) + static_cast<int>(copy) * action_->space.count(q) + simplex;
}

MixedComplex BorelComplex::with(Coefficients coeff) const {
  switch (coeff) {
    case Coefficients::Z: return complex_;
    case Coefficients::Q: return rationalize(complex_);
    case Coefficients::T: return torsion_cone(complex_);
  }
  return complex_;
}

MixedModule equivariant_cohomology(const SimplicialAction& a, int m, Coefficients coeff) {
  if (m < 0) return {};
  const int deg = coeff == Coefficients::T ? m + 1 : m;
  BorelComplex B(a, deg + 1);
  return cohomology_at(B.with(coeff), deg).module;
}

bool acts_freely(const SimplicialAction& a) {
  for (int g = 0; g < a.group.order(); ++g) {
    if (g == a.group.identity()) continue;
    for (int q = 0; q <= a.space.dim(); ++q)
      for (int s = 0; s < a.space.count(q); ++s)
        if (a.act_simplex_index(g, q, s) == s) return false;
  }
  return true;
}

MixedComplex invariant_cochain_complex(const SimplicialAction& a) {
  if (!acts_freely(a)) throw PreconditionError("invariant cochain oracle needs a free action on simplices");
  const SimplicialComplex& X = a.space;
  const FiniteGroup& G = a.group;
  // Orbit representatives (smallest index) and, per simplex, its orbit and sign relative to it.
  std::vector<std::vector<int>> orbit(X.dim() + 1), rep(X.dim() + 1), sign(X.dim() + 1);
  for (int q = 0; q <= X.dim(); ++q) {
    orbit[q].assign(X.count(q), -1);
    sign[q].assign(X.count(q), 0);
    for (int s = 0; s < X.count(q); ++s) {
      if (orbit[q][s] >= 0) continue;
      const int o = static_cast<int>(rep[q].size());
      rep[q].push_back(s);
      for (int g = 0; g < G.order(); ++g) {
        int sg = 1;
        const int img = a.act_simplex_index(g, q, s, &sg);
        orbit[q][img] = o;
        sign[q][img] = sg;
      }
    }
  }
  MixedComplex C;
  C.first_degree = 0;
  for (int q = 0; q <= X.dim(); ++q) C.terms.push_back(MixedSpace{static_cast<int>(rep[q].size()), 0, {}});
  for (int q = 0; q < X.dim(); ++q) {
    // d(orbit sum of O) evaluated on the representative of O'.
    std::vector<SparseVec> cob = X.coboundary_rows(q);
    std::vector<SparseVec> rows(rep[q + 1].size());
    for (std::size_t o2 = 0; o2 < rep[q + 1].size(); ++o2) {
      std::vector<std::pair<int, Rational>> e;
      for (const auto& [c, x] : cob[rep[q + 1][o2]]) e.emplace_back(orbit[q][c], x * sign[q][c]);
      rows[o2] = sparse_from_entries(std::move(e));
    }
    C.maps.emplace_back(C.terms[q], C.terms[q + 1], std::move(rows));
  }
  C.validate();
  return C;
}

MixedModule quotient_cohomology(const SimplicialAction& a, int m) {
  MixedComplex C = invariant_cochain_complex(a);
  if (!C.has_degree(m)) return {};
  return cohomology_at(C, m).module;
}

}  // namespace edc
