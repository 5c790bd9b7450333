#include "edc/gmodule.hpp"

namespace edc {

namespace {

std::vector<SparseVec> rows_from_columns(const std::vector<SparseVec>& cols, int nrows) {
  std::vector<std::vector<std::pair<int, Rational>>> e(nrows);
  for (int c = 0; c < static_cast<int>(cols.size()); ++c)
    for (const auto& [r, x] : cols[c]) e.at(r).emplace_back(c, x);
  std::vector<SparseVec> rows(nrows);
  for (int r = 0; r < nrows; ++r) rows[r] = sparse_from_entries(std::move(e[r]));
  return rows;
}

bool same(const MixedMap& a, const MixedMap& b) { return a.rows() == b.rows(); }

}  // namespace

GModule GModule::trivial(const FiniteGroup& G, const MixedModule& A) {
  // top: Z^a, Z^t (torsion generators), Q^b, Q^c; rel: Z^c (unit lattice of Q^c), Z^t (orders).
  const int a = A.rankZ, b = A.rankQ, c = A.rankQZ, t = static_cast<int>(A.torsion.size());
  GModule M;
  M.group = G;
  M.top = MixedSpace{a + t, b + c, {}};
  M.rel = MixedSpace{c + t, 0, {}};
  std::vector<SparseVec> cols(c + t);
  for (int i = 0; i < c; ++i) cols[i] = {{a + t + b + i, Rational(1)}};
  for (int i = 0; i < t; ++i) cols[c + i] = {{a + i, Rational(A.torsion[i])}};
  M.inclusion = MixedMap(M.rel, M.top, rows_from_columns(cols, M.top.dim()));
  for (int g = 0; g < G.order(); ++g) {
    M.act_top.push_back(MixedMap::identity(M.top));
    M.act_rel.push_back(MixedMap::identity(M.rel));
  }
  return M;
}

GModule GModule::free(const FiniteGroup& G, const MixedSpace& space, std::vector<MixedMap> act) {
  GModule M;
  M.group = G;
  M.top = space;
  M.rel = MixedSpace{0, 0, {}};
  M.inclusion = MixedMap::zero(M.rel, M.top);
  M.act_top = std::move(act);
  for (int g = 0; g < G.order(); ++g) M.act_rel.push_back(MixedMap::identity(M.rel));
  return M;
}

GModule GModule::from_cohomology(const FiniteGroup& G, const MixedComplex& C, int n,
                                 const std::vector<MixedMap>& act) {
  const MixedSpace& amb = C.term(n);
  Subgroup Z = C.map_from(n) ? kernel(*C.map_from(n)) : Subgroup::whole(amb);
  Subgroup B = C.map_into(n) ? image(*C.map_into(n)) : Subgroup::zero(amb);
  Quotient QZ(Z, Subgroup::zero(amb)), QB(B, Subgroup::zero(amb));
  auto space_of = [](const MixedModule& m) {
    if (m.rankQZ || !m.torsion.empty()) throw StructuralError("free presentation expected");
    return MixedSpace{m.rankZ, m.rankQ, {}};
  };
  GModule M;
  M.group = G;
  M.top = space_of(QZ.module());
  M.rel = space_of(QB.module());
  auto coords = [](const Quotient& Q, const SparseVec& x) { return sparse_from_dense(Q.decode(x)); };
  std::vector<SparseVec> inc;
  for (const auto& s : QB.summands()) inc.push_back(coords(QZ, s.generator));
  M.inclusion = MixedMap(M.rel, M.top, rows_from_columns(inc, M.top.dim()));
  for (int g = 0; g < G.order(); ++g) {
    std::vector<SparseVec> ct, cr;
    for (const auto& s : QZ.summands()) ct.push_back(coords(QZ, act.at(g).apply(s.generator)));
    for (const auto& s : QB.summands()) cr.push_back(coords(QB, act.at(g).apply(s.generator)));
    M.act_top.emplace_back(M.top, M.top, rows_from_columns(ct, M.top.dim()));
    M.act_rel.emplace_back(M.rel, M.rel, rows_from_columns(cr, M.rel.dim()));
  }
  return M;
}

MixedModule GModule::module() const { return Quotient(Subgroup::whole(top), image(inclusion)).module(); }

std::vector<std::string> GModule::validate() const {
  std::vector<std::string> out;
  const int n = group.order();
  if (static_cast<int>(act_top.size()) != n || static_cast<int>(act_rel.size()) != n)
    return {"one action matrix per group element required"};
  if (!same(act_top[group.identity()], MixedMap::identity(top)) ||
      !same(act_rel[group.identity()], MixedMap::identity(rel)))
    out.push_back("identity does not act trivially");
  for (int g = 0; g < n; ++g) {
    if (!same(act_top[g].compose_after(inclusion), inclusion.compose_after(act_rel[g]))) {
      out.push_back("inclusion is not equivariant");
      break;
    }
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (!same(act_top[group.mul(g, h)], act_top[h].compose_after(act_top[g]))) {
        out.push_back("not a right action");
        return out;
      }
  return out;
}

MixedComplex bar_complex(const GModule& A, int max_degree) {
  const FiniteGroup& G = A.group;
  const int T = A.top.dim(), Tz = A.top.nZ, R = A.rel.dim(), Rz = A.rel.nZ;
  MixedComplex C;
  C.first_degree = -1;  // the rel cochains on G^0
  C.zero_below = true;
  C.zero_above = false;
  auto count = [&](int p) { return p < 0 ? 0L : G.tuple_count(p); };
  // Degree p: Z coordinates [top-Z per copy of G^p][rel-Z per copy of G^{p+1}], then Q likewise.
  auto layout = [&](int p) {
    const long cp = count(p), cq = count(p + 1);
    return MixedSpace{static_cast<int>(cp * Tz + cq * Rz), static_cast<int>(cp * (T - Tz) + cq * (R - Rz)), {}};
  };
  auto top_coord = [&](int p, long copy, int a) {
    const long cp = count(p), cq = count(p + 1);
    if (a < Tz) return static_cast<int>(copy * Tz + a);
    return static_cast<int>(cp * Tz + cq * Rz + copy * (T - Tz) + (a - Tz));
  };
  auto rel_coord = [&](int p, long copy, int b) {
    const long cp = count(p), cq = count(p + 1);
    if (b < Rz) return static_cast<int>(cp * Tz + copy * Rz + b);
    return static_cast<int>(cp * Tz + cq * Rz + cp * (T - Tz) + copy * (R - Rz) + (b - Rz));
  };
  for (int p = -1; p <= max_degree + 1; ++p) C.terms.push_back(layout(p));

  // Row of δ at (level n, copy, coordinate a) for a module with right action act.
  auto bar_row = [&](int n, long copy, int a, const std::vector<MixedMap>& act, auto coord,
                     std::vector<std::pair<int, Rational>>& e, int src_level, const Rational& scale) {
    const std::vector<int> g = G.decode(n, copy);
    for (int l = 0; l <= n; ++l) {
      std::vector<int> f;
      if (l == 0) {
        f.assign(g.begin() + 1, g.end());
      } else if (l < n) {
        f = g;
        f[l - 1] = G.mul(g[l - 1], g[l]);
        f.erase(f.begin() + l);
      } else {
        f.assign(g.begin(), g.end() - 1);
      }
      const long fc = G.encode(f);
      const Rational s = scale * (l % 2 ? -1 : 1);
      if (l < n) {
        e.emplace_back(coord(src_level, fc, a), s);
      } else {
        for (const auto& [b, x] : act[g[n - 1]].rows()[a]) e.emplace_back(coord(src_level, fc, b), s * x);
      }
    }
  };

  for (int p = -1; p <= max_degree; ++p) {
    const MixedSpace& src = C.terms[p + 1];
    const MixedSpace& dst = C.terms[p + 2];
    std::vector<SparseVec> rows(dst.dim());
    std::vector<std::pair<int, Rational>> e;
    // top part of degree p+1: δ of the top cochain plus the inclusion of the rel cochain
    for (long copy = 0; copy < count(p + 1); ++copy)
      for (int a = 0; a < T; ++a) {
        e.clear();
        if (p >= 0) bar_row(p + 1, copy, a, A.act_top, top_coord, e, p, Rational(1));
        for (const auto& [b, x] : A.inclusion.rows()[a]) e.emplace_back(rel_coord(p, copy, b), x);
        rows[top_coord(p + 1, copy, a)] = sparse_from_entries(e);
      }
    // rel part of degree p+1: minus δ of the rel cochain (levels p+1 -> p+2)
    for (long copy = 0; copy < count(p + 2); ++copy)
      for (int b = 0; b < R; ++b) {
        e.clear();
        bar_row(p + 2, copy, b, A.act_rel, rel_coord, e, p, Rational(-1));
        rows[rel_coord(p + 1, copy, b)] = sparse_from_entries(e);
      }
    C.maps.emplace_back(src, dst, std::move(rows));
  }
  return C;
}

MixedModule group_cohomology(const GModule& A, int p) {
  if (p < 0) return {};
  return cohomology_at(bar_complex(A, p), p).module;
}

}  // namespace edc
