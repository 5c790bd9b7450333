#include "edc/exact.hpp"

namespace edc {

const char* to_string(SequenceKind k) { return k == SequenceKind::Integral ? "integral" : "forms"; }

SequenceKind parse_sequence_kind(const std::string& s) {
  if (s == "integral") return SequenceKind::Integral;
  if (s == "forms") return SequenceKind::Forms;
  throw PreconditionError("unknown exact sequence '" + s + "' (expected integral or forms)");
}

bool subgroup_contained(const Subgroup& x, const Subgroup& y) {
  for (const auto& v : x.lattice)
    if (!y.contains(v)) return false;
  const Subgroup divisible{y.ambient, {}, y.space};
  for (const auto& v : x.space)
    if (!divisible.contains(v)) return false;
  return true;
}

namespace {

std::vector<int> slots(const Assembly& A, int t) {
  std::vector<int> k(A.space(t).dim());
  for (int x = 0; x < static_cast<int>(k.size()); ++x) k[x] = A.locate(t, x).first.k;
  return k;
}

// Witnesses for the generators of `from` inside `into`; false when one is missing or wrong.
bool witnesses(const Subgroup& from, const Subgroup& into, std::vector<Quotient::Witness>& out) {
  if (from.lattice.empty() && from.space.empty()) return true;
  const Quotient Q(into, into);
  auto check = [&](const SparseVec& v) {
    auto w = Q.membership(v);
    if (!w) return false;
    SparseVec back;
    for (std::size_t i = 0; i < w->lattice.size(); ++i)
      if (w->lattice[i] != 0) axpy(back, Rational(w->lattice[i]), into.lattice[i]);
    for (std::size_t i = 0; i < w->space.size(); ++i)
      if (w->space[i] != 0) axpy(back, w->space[i], into.space[i]);
    if (back != v) return false;
    out.push_back(std::move(*w));
    return true;
  };
  for (const auto& v : from.lattice)
    if (!check(v)) return false;
  for (const auto& v : from.space)
    if (!check(v)) return false;
  return subgroup_contained(from, into);
}

class Sequence {
 public:
  Sequence(const Assembly& A, SequenceKind kind) : A_(A), kind_(kind) {}

  const MixedSpace& space(int t) const { return A_.space(t); }
  const MixedMap& D(int t) const { return A_.differential(t); }

  const Subgroup& sub(int t) {
    auto it = sub_.find(t);
    if (it != sub_.end()) return it->second;
    const int N = A_.spec().N;
    const auto k = slots(A_, t);
    Subgroup S = Subgroup::zero(space(t));
    for (int x = 0; x < static_cast<int>(k.size()); ++x) {
      const bool keep = kind_ == SequenceKind::Integral ? k[x] >= 2 : k[x] <= N;
      if (keep) (x < space(t).nZ ? S.lattice : S.space).push_back({{x, Rational(1)}});
    }
    if (kind_ == SequenceKind::Forms) add_closed_top(t, S);
    return sub_.emplace(t, std::move(S)).first->second;
  }

  const Subgroup& cocycles(int t) { return memo(Z_, t, [&] { return kernel(D(t)); }); }
  const Subgroup& bounds(int t) {
    return memo(B_, t, [&] { return A_.has_degree(t - 1) ? image(D(t - 1)) : Subgroup::zero(space(t)); });
  }
  const Subgroup& sub_cocycles(int t) { return memo(ZS_, t, [&] { return intersection(cocycles(t), sub(t)); }); }
  const Subgroup& sub_bounds(int t) {
    return memo(BS_, t, [&] { return A_.has_degree(t - 1) ? image(D(t - 1), sub(t - 1)) : Subgroup::zero(space(t)); });
  }
  // Cochains whose coboundary lies in the subcomplex: lifts of quotient cocycles.
  const Subgroup& lifts(int t) {
    return memo(L_, t, [&] { return preimage(D(t), sub(t + 1), Subgroup::whole(space(t))); });
  }

 private:
  template <class F>
  const Subgroup& memo(std::map<int, Subgroup>& m, int t, F f) {
    auto it = m.find(t);
    if (it != m.end()) return it->second;
    return m.emplace(t, f()).first->second;
  }

  // Closed N-cochains inside each top-slot block.
  void add_closed_top(int t, Subgroup& S) const {
    const int N = A_.spec().N;
    const SimplicialComplex& X = A_.action().space;
    for (int i = 0; i <= t; ++i) {
      const int j = t - i - (N + 1);
      if (j < 0 || i >= A_.spec().levels()) continue;
      const LevelCover& L = A_.level(i);
      for (int c = 0; c < L.count(j); ++c) {
        const SlotKey key{i, j, N + 1, c};
        if (A_.slot_dim(key) == 0) continue;
        const StarSubcomplex& st = *L.by_degree[j][c].star;
        const MixedSpace src{0, st.count(N), {}}, dst{0, st.count(N + 1), {}};
        const Subgroup closed = kernel(MixedMap(src, dst, star_coboundary_rows(X, st, N)));
        for (const auto& v : closed.space) {
          SparseVec w;
          for (const auto& [x, val] : v) w.push_back({A_.coordinate(key, x), val});
          S.space.push_back(std::move(w));
        }
      }
    }
  }

  const Assembly& A_;
  SequenceKind kind_;
  std::map<int, Subgroup> sub_, Z_, B_, ZS_, BS_, L_;
};

// Rational dimension of the invariant q-cochains in degree q of {A^1 -> ... -> A^N}^G.
int invariant_forms_cohomology(const SimplicialAction& a, int N, int m) {
  if (m < 1 || m > N) return 0;
  const SimplicialComplex& X = a.space;
  auto rank_of_d = [&](int q) {
    if (q < 0 || q >= X.dim()) return 0;
    const auto basis = invariant_forms(a, q).basis;
    const auto rows = X.coboundary_rows(q);
    std::vector<SparseVec> drows(X.count(q + 1));
    for (int r = 0; r < X.count(q + 1); ++r)
      for (int b = 0; b < static_cast<int>(basis.size()); ++b) {
        Rational s = 0;
        for (const auto& [c, x] : rows[r]) s += x * basis[b][c];
        if (s != 0) drows[r].push_back({b, s});
      }
    const MixedSpace src{0, static_cast<int>(basis.size()), {}}, dst{0, X.count(q + 1), {}};
    return src.dim() - static_cast<int>(kernel(MixedMap(src, dst, std::move(drows))).space.size());
  };
  if (m > X.dim()) return 0;
  const int dimA = static_cast<int>(invariant_forms(a, m).basis.size());
  const int top = m == N ? dimA : dimA - rank_of_d(m);  // closed invariant, or all of them in the top degree
  return top - (m >= 2 ? rank_of_d(m - 1) : 0);
}

MixedModule rational(int r) {
  MixedModule M;
  M.rankQ = r;
  return M;
}

}  // namespace

ExactSequenceReport verify_exact_sequence(const SimplicialAction& a, int N, SequenceKind which, int m_lo, int m_hi,
                                          const EngineOptions& opts) {
  if (N < 1) throw PreconditionError("exact sequences need N >= 1");
  if (m_lo < 0 || m_lo > m_hi) throw PreconditionError("exact sequence window must satisfy 0 <= m_lo <= m_hi");
  ExactSequenceReport R;
  R.kind = which;
  R.N = N;
  R.m_lo = m_lo;
  R.m_hi = m_hi;

  ModelSpec spec;
  spec.action = a;
  spec.N = N;
  spec.m_lo = m_lo;
  spec.m_hi = m_hi;
  spec.cover = opts.cover;
  Assembly A(std::move(spec));
  Sequence S(A, which);

  auto add_term = [&](const char* name, int m, MixedModule computed, std::string ident, std::optional<MixedModule> expected) {
    SequenceTerm T{name, m, std::move(computed), std::move(ident), std::move(expected)};
    if (!T.matches())
      R.failures.push_back(std::string(name) + " term in degree " + std::to_string(m) + ": computed " + T.computed.str() +
                           ", " + T.identification + " gives " + T.expected->str());
    R.terms.push_back(std::move(T));
  };
  auto add_check = [&](std::string spot, int m, const Subgroup& im, const Subgroup& ker) {
    ExactnessCheck C{std::move(spot), m};
    C.composite_zero = witnesses(im, ker, C.image_in_kernel);
    C.exact = witnesses(ker, im, C.kernel_in_image);
    if (!C.composite_zero) R.failures.push_back(C.spot + " in degree " + std::to_string(m) + ": composite is not zero");
    if (!C.exact) R.failures.push_back(C.spot + " in degree " + std::to_string(m) + ": kernel exceeds image");
    R.checks.push_back(std::move(C));
  };

  for (int m = m_lo; m <= m_hi; ++m) {
    const int t = m + 1;
    const Subgroup& ZK = S.cocycles(t);
    const Subgroup& BK = S.bounds(t);
    const Subgroup& ZS = S.sub_cocycles(t);
    const Subgroup& BS = S.sub_bounds(t);
    const Subgroup& St = S.sub(t);

    const MixedModule Hsub = Quotient(ZS, BS).module();
    const MixedModule Htot = Quotient(ZK, BK).module();
    const MixedModule Hquo = Quotient(S.lifts(t), sum(St, BK)).module();

    if (which == SequenceKind::Integral) {
      add_term("sub", m, Hsub, "invariant forms complex", rational(invariant_forms_cohomology(a, N, m)));
      add_term("total", m, Htot, "", std::nullopt);
      if (m >= 1)
        add_term("quotient", m, Hquo, "Borel integral cohomology in degree " + std::to_string(t),
                 equivariant_integral_cohomology(a, t));
      else
        add_term("quotient", m, Hquo, "", std::nullopt);
    } else {
      add_term("sub", m, Hsub, "Borel cohomology with Q/Z coefficients", equivariant_cohomology(a, m, Coefficients::T));
      add_term("total", m, Htot, "", std::nullopt);
      if (m < N) add_term("quotient", m, Hquo, "zero below N", MixedModule{});
      else if (m == N)
        add_term("quotient", m, Hquo, "closed invariant top forms",
                 rational(static_cast<int>(invariant_forms(a, N + 1).closed.size())));
      else
        add_term("quotient", m, Hquo, "invariant rational cohomology in degree " + std::to_string(t),
                 equivariant_cohomology(a, t, Coefficients::Q));
    }

    // sub -> total -> quotient -> sub(next)
    add_check("total", m, sum(ZS, BK), intersection(ZK, sum(St, BK)));
    add_check("quotient", m, sum(ZK, St), preimage(S.D(t), S.sub_bounds(t + 1), Subgroup::whole(S.space(t))));
    if (A.has_degree(t - 1)) add_check("sub", m, sum(image(S.D(t - 1), S.lifts(t - 1)), BS), intersection(ZS, BK));
  }
  return R;
}

MixedComplex slot_complex(const Assembly& A, int kmin, int kmax) {
  MixedComplex C;
  C.first_degree = A.total_lo();
  C.zero_below = A.total_lo() == 0;
  C.zero_above = false;
  std::vector<std::vector<int>> keep, pos;
  for (int t = A.total_lo(); t <= A.total_hi(); ++t) {
    const auto k = slots(A, t);
    std::vector<int> kept, where(k.size(), -1);
    int nZ = 0;
    for (int x = 0; x < static_cast<int>(k.size()); ++x)
      if (k[x] >= kmin && k[x] <= kmax) {
        where[x] = static_cast<int>(kept.size());
        kept.push_back(x);
        if (x < A.space(t).nZ) ++nZ;
      }
    C.terms.push_back(MixedSpace{nZ, static_cast<int>(kept.size()) - nZ, {}});
    keep.push_back(std::move(kept));
    pos.push_back(std::move(where));
  }
  for (int t = A.total_lo(); t < A.total_hi(); ++t) {
    const int s = t - A.total_lo();
    const MixedMap& D = A.differential(t);
    std::vector<SparseVec> rows;
    for (int r : keep[s + 1]) {
      SparseVec row;
      for (const auto& [c, x] : D.rows()[r])
        if (pos[s][c] >= 0) row.push_back({pos[s][c], x});
      rows.push_back(std::move(row));
    }
    C.maps.emplace_back(C.terms[s], C.terms[s + 1], std::move(rows));
  }
  return C;
}

}  // namespace edc
