#include "edc/geometry.hpp"

namespace edc {

const char* to_string(GeometryKind k) { return k == GeometryKind::Bundle ? "bundle" : "gerbe"; }

GeometryModel::GeometryModel(const SimplicialAction& a, GeometryKind kind, int N, const EngineOptions& opts)
    : kind_(kind), m_(kind == GeometryKind::Bundle ? 1 : 2) {
  ModelSpec spec;
  spec.action = a;
  spec.N = N < 0 ? m_ : N;
  if (spec.N < m_) throw PreconditionError("geometric cocycles need N >= the Deligne degree");
  spec.m_lo = m_;
  spec.m_hi = m_ + 1;
  spec.cover = opts.cover;
  A_ = std::make_shared<Assembly>(std::move(spec));
  classes_ = deligne_from_assembly(A_, m_, opts);
  filtered_ = std::make_unique<FilteredComplex>(group_level_filtration(*A_));
  pages_ = std::make_unique<FilteredPages>(*filtered_);
}

std::string GeometryModel::component(const SlotKey& key) const {
  static const std::map<std::tuple<int, int, int>, const char*> bundle{
      {{0, 2, 0}, "z"}, {{0, 1, 1}, "a"}, {{0, 0, 2}, "theta"}, {{1, 1, 0}, "w"}, {{1, 0, 1}, "b"}, {{2, 0, 0}, "u"}};
  static const std::map<std::tuple<int, int, int>, const char*> gerbe{
      {{0, 3, 0}, "z"}, {{0, 2, 1}, "f"}, {{0, 1, 2}, "theta1"}, {{0, 0, 3}, "theta2"}, {{1, 2, 0}, "w"},
      {{1, 1, 1}, "g"}, {{1, 0, 2}, "omega"}, {{2, 1, 0}, "v"},   {{2, 0, 1}, "h"},      {{3, 0, 0}, "u"}};
  const auto& names = kind_ == GeometryKind::Bundle ? bundle : gerbe;
  auto it = names.find({key.i, key.j, key.k});
  if (it != names.end()) return it->second;
  return "(" + std::to_string(key.i) + "," + std::to_string(key.j) + "," + std::to_string(key.k) + ")";
}

std::string GeometryModel::condition(const SlotKey& key) const {
  if (key.i == 0) {
    if (key.k <= 1) return "cech cocycle";
    if (key.k > m_ + 1) return "flatness";
    if (kind_ == GeometryKind::Bundle) return "connection compatibility";
    return key.k == 2 ? "connective structure compatibility" : "curving compatibility";
  }
  if (key.i == 1) return "equivariance";
  if (key.i == 2 && kind_ == GeometryKind::Gerbe) return "isomorphism coherence";
  return "lift coherence";
}

TripleCochain GeometryModel::representative(const std::vector<Rational>& coefficients) const {
  if (coefficients.size() != classes_.representatives.size())
    throw PreconditionError("class coordinates: expected " + std::to_string(classes_.representatives.size()) +
                            " entries");
  SparseVec x;
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    if (coefficients[i] != 0) axpy(x, coefficients[i], classes_.representatives[i]);
  return A_->unflatten(model_degree(), x);
}

std::string Validation::summary() const { return ok() ? "ok" : violations.front().condition; }

namespace {

void check_shape(const GeometryModel& M, const TripleCochain& c) {
  if (c.degree != M.model_degree())
    throw PreconditionError("cocycle has model degree " + std::to_string(c.degree) + ", expected " +
                            std::to_string(M.model_degree()));
  for (const auto& [key, v] : c.blocks) {
    const int dim = M.assembly().slot_dim(key);
    if (dim == 0 || static_cast<int>(v.size()) != dim)
      throw PreconditionError("malformed block " + M.component(key) + " at " + M.assembly().describe(key));
  }
}

SparseVec flat(const GeometryModel& M, const TripleCochain& c) { return M.assembly().flatten(c); }

}  // namespace

Validation validate(const GeometryModel& M, const TripleCochain& c) {
  check_shape(M, c);
  Validation V;
  const TripleCochain Dc = M.assembly().apply_D(c);
  for (const auto& [key, v] : Dc.blocks) {
    bool zero = true;
    for (const auto& x : v) zero = zero && x == 0;
    if (!zero) V.violations.push_back({M.condition(key), key, M.assembly().describe(key)});
  }
  return V;
}

std::vector<Rational> class_of(const GeometryModel& M, const TripleCochain& c) {
  const Validation V = validate(M, c);
  if (!V.ok()) throw PreconditionError("not a cocycle: " + V.summary() + " fails at " + V.violations.front().where);
  return M.classes().decode(flat(M, c));
}

Isomorphism isomorphic(const GeometryModel& M, const TripleCochain& c1, const TripleCochain& c2) {
  TripleCochain diff = c1;
  diff -= c2;
  check_shape(M, diff);
  const CoboundaryVerdict v = M.classes().coboundary(flat(M, diff));
  Isomorphism out;
  out.isomorphic = v.is_coboundary;
  if (v.is_coboundary) out.witness = M.assembly().unflatten(M.model_degree() - 1, v.witness);
  else {
    out.generator = v.generator;
    out.difference = v.coefficient;
  }
  return out;
}

std::vector<Rational> geometry_curvature(const GeometryModel& M, const TripleCochain& c) {
  if (M.N() != M.degree()) return std::vector<Rational>(M.action().space.count(M.degree() + 1), Rational(0));
  return curvature(M.assembly(), c);
}

bool has_integral_periods(const SimplicialAction& a, int q, const std::vector<Rational>& form) {
  const SimplicialComplex& X = a.space;
  if (q > X.dim() || X.count(q) == 0) return true;
  // Integral q-cycles: kernel of the boundary, the transpose of the coboundary into degree q.
  const MixedSpace chains{X.count(q), 0, {}};
  std::vector<SparseVec> boundary(q > 0 ? X.count(q - 1) : 0);
  if (q > 0) {
    const auto rows = X.coboundary_rows(q - 1);
    for (int r = 0; r < X.count(q); ++r)
      for (const auto& [c, x] : rows[r]) boundary[c].push_back({r, x});
  }
  const Subgroup cycles = kernel(MixedMap(chains, MixedSpace{static_cast<int>(boundary.size()), 0, {}}, boundary));
  for (const auto& z : cycles.lattice) {
    Rational p = 0;
    for (const auto& [s, n] : z) p += n * form[s];
    if (!is_integer(p)) return false;
  }
  return true;
}

FlatTest flat_test(const GeometryModel& M, const TripleCochain& c) {
  FlatTest out;
  const auto F = geometry_curvature(M, c);
  out.zero_curvature = std::all_of(F.begin(), F.end(), [](const Rational& x) { return x == 0; });
  ModelSpec spec = M.assembly().spec();
  GeometryModel flat_model(M.action(), M.kind(), M.N() + 1, EngineOptions{spec.cover});
  TripleCochain moved = flat_model.zero();
  for (const auto& [key, v] : c.blocks) {
    if (flat_model.assembly().slot_dim(key) != static_cast<int>(v.size()))
      throw StructuralError("flat model does not share the block layout at " + M.assembly().describe(key));
    moved.blocks[key] = v;
  }
  out.in_flat_model = validate(flat_model, moved);
  out.flat = out.in_flat_model.ok();
  return out;
}

TripleCochain level_zero(const TripleCochain& c) {
  TripleCochain out{c.degree, {}};
  for (const auto& [key, v] : c.blocks)
    if (key.i == 0) out.blocks.emplace(key, v);
  return out;
}

TripleCochain form_level_zero(const GeometryModel& M, const std::vector<Rational>& form) {
  const int q = M.degree();
  if (static_cast<int>(form.size()) != M.action().space.count(q))
    throw PreconditionError("form: expected one value per " + std::to_string(q) + "-simplex");
  const Assembly& A = M.assembly();
  TripleCochain c = M.zero();
  const LevelCover& L = A.level(0);
  for (int s = 0; s < L.count(0); ++s) {
    const StarSubcomplex& st = *L.by_degree[0][s].star;
    auto& b = A.block(c, SlotKey{0, 0, q + 1, s});
    for (int l = 0; l < st.count(q); ++l) b[l] = form[st.simplices[q][l]];
  }
  return c;
}

Obstructions obstructions(const GeometryModel& M, const TripleCochain& level0) {
  check_shape(M, level0);
  for (const auto& [key, v] : level0.blocks)
    if (key.i != 0) throw PreconditionError("level-0 data expected; found component " + M.component(key));
  const Assembly& A = M.assembly();
  const int t = M.model_degree();
  SparseVec x = flat(M, level0);
  {
    const TripleCochain Dx = A.unflatten(t + 1, A.differential(t).apply(x));
    for (const auto& [key, v] : Dx.blocks)
      if (key.i == 0 && std::any_of(v.begin(), v.end(), [](const Rational& r) { return r != 0; }))
        throw PreconditionError("level-0 data is not an ordinary cocycle: " + M.condition(key) + " fails");
  }
  FilteredPages& P = M.pages();
  Obstructions out;
  const int last = P.top_level(t + 1);
  for (int r = 1; r <= last; ++r) {
    const SparseVec dx = A.differential(t).apply(x);
    if (dx.empty()) break;
    const Quotient E = P.entry(t + 1, r, r);
    ObstructionStage st;
    st.page = r;
    st.target = {r, M.degree() + 1 - r};
    st.group = E.module();
    st.value = E.decode(dx);
    st.vanishes = std::all_of(st.value.begin(), st.value.end(), [](const Rational& v) { return v == 0; });
    out.stages.push_back(st);
    if (!st.vanishes) return out;
    // dx = z + D y with z in Z_{r-1}^{r+1} and y in Z_{r-1}^1; continue with x - y.
    const Subgroup& hi = P.Z(t + 1, r + 1, r - 1);
    const Subgroup& low = P.Z(t, 1, r - 1);
    Subgroup H{hi.ambient, hi.lattice, hi.space};
    const MixedMap& D = A.differential(t);
    for (const auto& g : low.lattice) H.lattice.push_back(D.apply(g));
    for (const auto& g : low.space) H.space.push_back(D.apply(g));
    const auto w = Quotient(H, H).membership(dx);
    if (!w) throw StructuralError("vanishing obstruction without a cobounding witness on page " + std::to_string(r));
    SparseVec y;
    for (std::size_t i = hi.lattice.size(); i < w->lattice.size(); ++i)
      if (w->lattice[i] != 0) axpy(y, Rational(w->lattice[i]), low.lattice[i - hi.lattice.size()]);
    for (std::size_t i = hi.space.size(); i < w->space.size(); ++i)
      if (w->space[i] != 0) axpy(y, w->space[i], low.space[i - hi.space.size()]);
    axpy(x, Rational(-1), y);
  }
  if (A.differential(t).apply(x).empty()) out.extension = A.unflatten(t, x);
  return out;
}

TripleCochain LiftingTorsor::act(const TripleCochain& c, const std::vector<Rational>& coefficients) const {
  if (coefficients.size() != generators.size()) throw PreconditionError("torsor coordinates have the wrong length");
  TripleCochain out = c;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (coefficients[i] == 0) continue;
    for (const auto& [key, v] : generators[i].blocks) {
      auto& dst = out.blocks[key];
      dst.resize(v.size(), Rational(0));
      for (std::size_t e = 0; e < v.size(); ++e) dst[e] += coefficients[i] * v[e];
    }
  }
  return out;
}

LiftingTorsor lifting_torsor(const GeometryModel& M) {
  const Assembly& A = M.assembly();
  const int t = M.model_degree();
  FilteredPages& P = M.pages();
  const Subgroup& Z = P.Z(t, 1, P.stable_page(t));
  const Quotient Q(Z, intersection(Z, image(A.differential(t - 1))));
  LiftingTorsor out;
  out.group = Q.module();
  for (const auto& s : Q.summands()) {
    out.kinds.push_back(s.kind);
    out.generators.push_back(A.unflatten(t, s.generator));
  }
  return out;
}

GroupCochain group_coboundary(const FiniteGroup& G, const GroupCochain& f) {
  const int p = f.degree;
  if (static_cast<long>(f.values.size()) != G.tuple_count(p)) throw PreconditionError("group cochain has the wrong size");
  GroupCochain out{p + 1, std::vector<Rational>(G.tuple_count(p + 1), Rational(0))};
  for (long code = 0; code < G.tuple_count(p + 1); ++code) {
    const auto g = G.decode(p + 1, code);
    Rational s = f.values[G.encode(std::vector<int>(g.begin() + 1, g.end()))];
    for (int i = 0; i < p; ++i) {
      std::vector<int> h;
      for (int k = 0; k < p + 1; ++k) {
        if (k == i) h.push_back(G.mul(g[i], g[i + 1]));
        else if (k != i + 1) h.push_back(g[k]);
      }
      s += (i % 2 ? 1 : -1) * f.values[G.encode(h)];
    }
    s += (p % 2 ? 1 : -1) * f.values[G.encode(std::vector<int>(g.begin(), g.end() - 1))];
    out.values[code] = s;
  }
  return out;
}

bool is_cocycle_mod_integers(const FiniteGroup& G, const GroupCochain& f) {
  const auto d = group_coboundary(G, f);
  return std::all_of(d.values.begin(), d.values.end(), [](const Rational& x) { return is_integer(x); });
}

GroupCochain discrete_torsion_klein4() {
  const FiniteGroup G = FiniteGroup::klein4();
  GroupCochain g{2, std::vector<Rational>(G.tuple_count(2), Rational(0))};
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) g.values[G.encode({x, y})] = ratio((x & 1) * ((y >> 1) & 1), 2);
  return g;
}

TripleCochain with_integer_witnesses(const GeometryModel& M, TripleCochain c) {
  const Assembly& A = M.assembly();
  const TripleCochain R = A.apply_D(c);
  for (const auto& [key, v] : R.blocks) {
    if (key.k != 1 || key.i + key.j != M.model_degree()) continue;
    const SlotKey z{key.i, key.j, 0, key.cech};
    if (A.slot_dim(z) == 0 || v.empty()) continue;
    if (std::any_of(v.begin(), v.end(), [&](const Rational& x) { return x != v[0]; }) || !is_integer(v[0])) continue;
    TripleCochain unit = M.zero();
    A.block(unit, z)[0] = 1;
    const Rational sign = A.apply_D(unit).blocks.at(key).at(0);
    A.block(c, z)[0] -= v[0] / sign;
  }
  return c;
}

TripleCochain twist_gerbe(const GeometryModel& M, const TripleCochain& c, const GroupCochain& gamma) {
  if (M.kind() != GeometryKind::Gerbe) throw PreconditionError("twists apply to gerbes");
  const FiniteGroup& G = M.action().group;
  if (gamma.degree != 2 || static_cast<long>(gamma.values.size()) != G.tuple_count(2))
    throw PreconditionError("twist needs a function on G x G");
  if (!is_cocycle_mod_integers(G, gamma)) throw PreconditionError("twist is not a group 2-cocycle modulo Z");
  const Assembly& A = M.assembly();
  TripleCochain T = M.zero();
  const LevelCover& L2 = A.level(2);
  for (int s = 0; s < L2.count(0); ++s) {
    auto& b = A.block(T, SlotKey{2, 0, 1, s});
    std::fill(b.begin(), b.end(), gamma.values[L2.by_degree[0][s].copy]);
  }
  T = with_integer_witnesses(M, T);
  TripleCochain out = c;
  out += T;
  const Validation V = validate(M, out);
  if (!V.ok()) throw StructuralError("twisted cochain fails " + V.summary() + " at " + V.violations.front().where);
  return out;
}

std::vector<TripleCochain> enumerate_cocycles(const GeometryModel& M, const SearchDomain& domain, bool* complete) {
  const Assembly& A = M.assembly();
  const int t = M.model_degree();
  std::vector<int> all(A.space(t).dim());
  for (int i = 0; i < static_cast<int>(all.size()); ++i) all[i] = i;
  BoundedSearch S(A.differential(t), all, domain);
  std::vector<TripleCochain> out;
  S.run({}, {}, [&](const SparseVec& x) {
    out.push_back(A.unflatten(t, x));
    return true;
  });
  if (complete) *complete = S.complete();
  return out;
}

std::optional<TripleCochain> bounded_isomorphism(const GeometryModel& M, const TripleCochain& c1,
                                                 const TripleCochain& c2, const SearchDomain& domain) {
  const Assembly& A = M.assembly();
  const int t = M.model_degree() - 1;
  std::vector<int> all(A.space(t).dim());
  for (int i = 0; i < static_cast<int>(all.size()); ++i) all[i] = i;
  TripleCochain diff = c1;
  diff -= c2;
  BoundedSearch S(A.differential(t), all, domain);
  auto y = S.first({}, A.flatten(diff));
  if (!y) return std::nullopt;
  return A.unflatten(t, *y);
}

std::optional<TripleCochain> bounded_extension(const GeometryModel& M, const TripleCochain& level0,
                                               const SearchDomain& domain, bool* complete) {
  const Assembly& A = M.assembly();
  const int t = M.model_degree();
  std::vector<int> upper;
  for (int x = 0; x < A.space(t).dim(); ++x)
    if (A.locate(t, x).first.i >= 1) upper.push_back(x);
  BoundedSearch S(A.differential(t), upper, domain);
  auto x = S.first(A.flatten(level0), {});
  if (complete) *complete = S.complete();
  if (!x) return std::nullopt;
  return A.unflatten(t, *x);
}

}  // namespace edc
