#include "edc/engine.hpp"

namespace edc {

const char* const kConventions =
    "H^m(F(N)) is computed as H^{m+1} of the Z(N+1)-model total complex (Z -> A^0 -> ... -> A^N); "
    "T is modelled as Q/Z and R as Q; forms are rational simplicial cochains on closed stars.";

TripleCochain CohomologyResult::triple(std::size_t i) const {
  if (!assembly) throw PreconditionError("representatives of the ordinary model are not triple cochains");
  return assembly->unflatten(model_degree, representatives.at(i));
}

CoboundaryVerdict CohomologyResult::coboundary(const SparseVec& cocycle) const {
  return is_coboundary(*complex, *data, cocycle);
}

namespace {

CohomologyResult finish(int m, int N, std::shared_ptr<const MixedComplex> C, EliminationOrder order) {
  CohomologyResult r;
  r.degree = m;
  r.N = N;
  r.model_degree = m + 1;
  r.conventions = kConventions;
  r.complex = std::move(C);
  auto data = std::make_shared<CohomologyData>(cohomology_at(*r.complex, m + 1, order));
  r.group = data->module;
  r.representatives = data->representatives;
  r.data = std::move(data);
  return r;
}

void check_size(const MixedComplex& C, long limit) {
  for (int t = C.first_degree; t <= C.last_degree(); ++t)
    if (C.term(t).dim() > limit)
      throw ResourceError("model dimension " + std::to_string(C.term(t).dim()) + " at total degree " +
                          std::to_string(t) + " exceeds the limit " + std::to_string(limit));
}

}  // namespace

CohomologyResult deligne_from_assembly(std::shared_ptr<const Assembly> A, int m, const EngineOptions& opts) {
  if (m < 0) throw PreconditionError("negative Deligne degree");
  auto C = std::make_shared<MixedComplex>(A->to_mixed_complex(m, m));
  check_size(*C, opts.max_dimension);
  CohomologyResult r = finish(m, A->spec().N, std::move(C), opts.order);
  r.assembly = std::move(A);
  return r;
}

CohomologyResult equivariant_deligne(const SimplicialAction& a, int N, int m, const EngineOptions& opts) {
  ModelSpec spec;
  spec.action = a;
  spec.N = N;
  spec.m_lo = m;
  spec.m_hi = m;
  spec.cover = opts.cover;
  return deligne_from_assembly(std::make_shared<Assembly>(std::move(spec)), m, opts);
}

// ---------------------------------------------------------------- ordinary model

OrdinaryModel::OrdinaryModel(const SimplicialComplex& X, int N, int t_hi) : X_(X), N_(N), t_hi_(t_hi) {
  if (N < 0) throw PreconditionError("Deligne weight must be nonnegative");
  for (int j = 0; j <= X.dim(); ++j) {
    stars_.emplace_back();
    for (const auto& s : X.simplices(j)) stars_.back().push_back(std::make_shared<StarSubcomplex>(closed_star(X, s)));
  }
  complex_.first_degree = 0;
  complex_.zero_below = true;
  complex_.zero_above = false;
  for (int t = 0; t <= t_hi; ++t) {
    std::map<std::pair<int, int>, std::vector<int>> off;
    int pos = 0;
    int nZ = 0;
    for (int k = 0; k <= N + 1; ++k) {
      const int j = t - k;
      if (j < 0 || j > X.dim()) continue;
      std::vector<int> o{pos};
      for (int s = 0; s < X.count(j); ++s) o.push_back(o.back() + (k == 0 ? 1 : stars_[j][s]->count(k - 1)));
      pos = o.back();
      if (k == 0) nZ = pos;
      off[{j, k}] = std::move(o);
    }
    offsets_.push_back(std::move(off));
    complex_.terms.push_back(MixedSpace{nZ, pos - nZ, {}});
  }
  for (int t = 0; t < t_hi; ++t) {
    std::vector<SparseVec> rows(complex_.terms[t + 1].dim());
    std::vector<std::pair<int, Rational>> e;
    for (const auto& [jk, o] : offsets_[t + 1]) {
      const auto [j, k] = jk;
      for (int s = 0; s < X.count(j); ++s) {
        const StarSubcomplex& st = *stars_[j][s];
        for (int local = 0; local < o[s + 1] - o[s]; ++local) {
          e.clear();
          const int tau = k == 0 ? -1 : st.simplices[k - 1][local];
          if (k >= 1 && offsets_[t].count({j, k - 1})) {
            const int sign = j % 2 ? -1 : 1;
            if (k == 1) {
              e.emplace_back(coordinate(j, s, 0), Rational(sign));
            } else {
              const Simplex& simplex = X.simplex(k - 1, tau);
              for (int r = 0; r < k; ++r) {
                Simplex face = simplex;
                face.erase(face.begin() + r);
                e.emplace_back(coordinate(j, s, k - 1, st.local_index(k - 2, X.index_of(face))),
                               Rational(sign * (r % 2 ? -1 : 1)));
              }
            }
          }
          if (j >= 1 && offsets_[t].count({j - 1, k})) {
            const Simplex& sigma = X.simplex(j, s);
            for (int r = 0; r <= j; ++r) {
              Simplex face = sigma;
              face.erase(face.begin() + r);
              const int f = X.index_of(face);
              const int li = k == 0 ? 0 : stars_[j - 1][f]->local_index(k - 1, tau);
              e.emplace_back(coordinate(j - 1, f, k, li), Rational(r % 2 ? -1 : 1));
            }
          }
          rows[o[s] + local] = sparse_from_entries(e);
        }
      }
    }
    complex_.maps.emplace_back(complex_.terms[t], complex_.terms[t + 1], std::move(rows));
  }
}

int OrdinaryModel::coordinate(int j, int sigma, int k, int local) const {
  return offsets_.at(j + k).at({j, k}).at(sigma) + local;
}

MixedMap OrdinaryModel::pullback(const SimplicialAction& a, int g, int t) const {
  const MixedSpace& sp = complex_.term(t);
  std::vector<SparseVec> rows(sp.dim());
  for (const auto& [jk, o] : offsets_.at(t)) {
    const auto [j, k] = jk;
    for (int s = 0; s < X_.count(j); ++s) {
      int s1 = 1;
      const int gs = a.act_simplex_index(g, j, s, &s1);
      for (int local = 0; local < o[s + 1] - o[s]; ++local) {
        int s2 = 1, li = 0;
        if (k >= 1) {
          const int gt = a.act_simplex_index(g, k - 1, stars_[j][s]->simplices[k - 1][local], &s2);
          li = stars_[j][gs]->local_index(k - 1, gt);
        }
        rows[o[s] + local] = {{coordinate(j, gs, k, li), Rational(s1 * s2)}};
      }
    }
  }
  return MixedMap(sp, sp, std::move(rows));
}

CohomologyResult ordinary_deligne(const SimplicialComplex& X, int N, int m) {
  if (m < 0) throw PreconditionError("negative Deligne degree");
  OrdinaryModel model(X, N, m + 2);
  return finish(m, N, std::make_shared<MixedComplex>(model.complex()), EliminationOrder::RowMajor);
}

GModule deligne_coefficient_module(const SimplicialAction& a, int N, int q) {
  OrdinaryModel model(a.space, N, q + 2);
  std::vector<MixedMap> act;
  for (int g = 0; g < a.group.order(); ++g) act.push_back(model.pullback(a, g, q + 1));
  return GModule::from_cohomology(a.group, model.complex(), q + 1, act);
}

// ---------------------------------------------------------------- invariant forms

namespace {

std::vector<Rational> pull(const SimplicialAction& a, int g, int q, const std::vector<Rational>& c) {
  std::vector<Rational> out(c.size());
  for (int s = 0; s < static_cast<int>(c.size()); ++s) {
    int sign = 1;
    const int img = a.act_simplex_index(g, q, s, &sign);
    out[s] = sign * c[img];
  }
  return out;
}

}  // namespace

std::vector<Rational> average(const SimplicialAction& a, int q, const std::vector<Rational>& c) {
  std::vector<Rational> out(c.size(), Rational(0));
  for (int g = 0; g < a.group.order(); ++g) {
    auto p = pull(a, g, q, c);
    for (std::size_t s = 0; s < c.size(); ++s) out[s] += p[s];
  }
  for (auto& x : out) x /= a.group.order();
  return out;
}

bool is_invariant(const SimplicialAction& a, int q, const std::vector<Rational>& c) {
  for (int g = 0; g < a.group.order(); ++g)
    if (pull(a, g, q, c) != c) return false;
  return true;
}

bool is_closed(const SimplicialComplex& X, int q, const std::vector<Rational>& c) {
  if (q >= X.dim()) return true;
  for (const auto& row : X.coboundary_rows(q)) {
    Rational s = 0;
    for (const auto& [i, x] : row) s += x * c.at(i);
    if (s != 0) return false;
  }
  return true;
}

InvariantForms invariant_forms(const SimplicialAction& a, int q) {
  const SimplicialComplex& X = a.space;
  InvariantForms out;
  const int n = X.count(q);
  out.integral = Subgroup::zero(MixedSpace{0, n, {}});
  if (n == 0) return out;
  Reducer R(false);
  for (int s = 0; s < n; ++s) {
    std::vector<Rational> e(n, Rational(0));
    e[s] = 1;
    auto avg = average(a, q, e);
    if (R.add(sparse_from_dense(avg), s)) out.basis.push_back(avg);
  }
  const int b = static_cast<int>(out.basis.size());
  // Closed combinations of the basis.
  const MixedSpace coeffs{0, b, {}};
  std::vector<SparseVec> drows;
  if (q < X.dim()) {
    for (const auto& row : X.coboundary_rows(q)) {
      std::vector<Rational> r(b, Rational(0));
      for (int i = 0; i < b; ++i)
        for (const auto& [s, x] : row) r[i] += x * out.basis[i][s];
      drows.push_back(sparse_from_dense(r));
    }
  }
  Subgroup ker = kernel(MixedMap(coeffs, MixedSpace{0, static_cast<int>(drows.size()), {}}, drows));
  auto expand = [&](const SparseVec& combo, const std::vector<std::vector<Rational>>& basis) {
    std::vector<Rational> v(n, Rational(0));
    for (const auto& [i, x] : combo)
      for (int s = 0; s < n; ++s) v[s] += x * basis[i][s];
    return v;
  };
  for (const auto& w : ker.space) out.closed.push_back(expand(w, out.basis));
  for (const auto& w : ker.lattice) out.closed.push_back(expand(w, out.basis));
  // Integral periods: preimage of the period lattice under the period map of the closed basis.
  const int c = static_cast<int>(out.closed.size());
  auto cycles = integral_cycles(X, q);
  std::vector<SparseVec> prow;
  for (const auto& z : cycles) {
    std::vector<Rational> r(c);
    for (int i = 0; i < c; ++i) r[i] = pair_with_chain(out.closed[i], z);
    prow.push_back(sparse_from_dense(r));
  }
  const MixedSpace csp{0, c, {}}, psp{0, static_cast<int>(prow.size()), {}};
  Subgroup lattice = Subgroup::zero(psp);
  for (int i = 0; i < psp.nQ; ++i) lattice.lattice.push_back({{i, Rational(1)}});
  Subgroup pre = preimage(MixedMap(csp, psp, prow), lattice, Subgroup::whole(csp));
  for (const auto& w : pre.lattice) out.integral.lattice.push_back(sparse_from_dense(expand(w, out.closed)));
  for (const auto& w : pre.space) out.integral.space.push_back(sparse_from_dense(expand(w, out.closed)));
  return out;
}

// ---------------------------------------------------------------- curvature

std::vector<Rational> curvature(const Assembly& A, const TripleCochain& c) {
  const int N = A.spec().N;
  if (c.degree != N + 1) throw PreconditionError("curvature needs a cocycle of model degree N+1");
  const SimplicialComplex& X = A.action().space;
  const int q = N + 1;
  std::vector<Rational> F(X.count(q), Rational(0));
  std::vector<bool> seen(X.count(q), false);
  const LevelCover& L = A.level(0);
  for (int s = 0; s < L.count(0); ++s) {
    const SlotKey key{0, 0, N + 1, s};
    auto it = c.blocks.find(key);
    const StarSubcomplex& st = *L.by_degree[0][s].star;
    for (int tau : (st.count(q) ? st.simplices[q] : std::vector<int>{})) {
      Rational v = 0;
      if (it != c.blocks.end()) {
        const Simplex& simplex = X.simplex(q, tau);
        for (int r = 0; r <= q; ++r) {
          Simplex face = simplex;
          face.erase(face.begin() + r);
          v += (r % 2 ? -1 : 1) * it->second[st.local_index(q - 1, X.index_of(face))];
        }
      }
      if (seen[tau] && F[tau] != v)
        throw StructuralError("curvature pieces disagree on simplex " + std::to_string(tau));
      F[tau] = v;
      seen[tau] = true;
    }
  }
  return F;
}

std::vector<Rational> curvature(const CohomologyResult& r, std::size_t i) {
  if (r.degree != r.N) throw PreconditionError("curvature is defined in degree m = N");
  return curvature(*r.assembly, r.triple(i));
}

DeRhamImage equivariant_deRham_map(const Assembly& A, const TripleCochain& cocycle) {
  DeRhamImage out;
  const SimplicialAction& a = A.action();
  const int q = A.spec().N + 1;
  out.form = curvature(A, cocycle);
  out.invariant = is_invariant(a, q, out.form);
  out.closed = is_closed(a.space, q, out.form);
  if (a.space.count(q) == 0) {
    out.total_cocycle = true;
    return out;
  }
  BorelComplex B(a, q + 1);
  MixedComplex C = B.with(Coefficients::Q);
  std::vector<std::pair<int, Rational>> e;
  for (int s = 0; s < a.space.count(q); ++s) e.emplace_back(B.coordinate(0, 0, q, s), out.form[s]);
  out.total_cocycle = C.map_from(q)->apply(sparse_from_entries(e)).empty();
  return out;
}

}  // namespace edc
