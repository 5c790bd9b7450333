#include "edc/assembly.hpp"

#include <algorithm>

namespace edc {

bool TripleCochain::is_zero() const {
  for (const auto& [key, vals] : blocks)
    for (const auto& v : vals)
      if (v != 0) return false;
  return true;
}

namespace {

void combine(TripleCochain& a, const TripleCochain& b, int sign) {
  if (a.degree != b.degree && !b.blocks.empty() && !a.blocks.empty())
    throw PreconditionError("adding triple cochains of different degrees");
  if (a.blocks.empty()) a.degree = b.degree;
  for (const auto& [key, vals] : b.blocks) {
    auto& dst = a.blocks[key];
    if (dst.empty()) dst.assign(vals.size(), Rational(0));
    if (dst.size() != vals.size()) throw PreconditionError("block size mismatch");
    for (std::size_t n = 0; n < vals.size(); ++n) dst[n] += sign * vals[n];
  }
}

int parity(int n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace

TripleCochain& TripleCochain::operator+=(const TripleCochain& o) {
  combine(*this, o, 1);
  return *this;
}

TripleCochain& TripleCochain::operator-=(const TripleCochain& o) {
  combine(*this, o, -1);
  return *this;
}

TripleCochain TripleCochain::operator-() const {
  TripleCochain r = *this;
  for (auto& [key, vals] : r.blocks)
    for (auto& v : vals) v = -v;
  return r;
}

Assembly::Assembly(ModelSpec spec) : spec_(std::move(spec)) {
  if (spec_.N < 0) throw PreconditionError("Deligne weight must be nonnegative");
  if (spec_.m_lo > spec_.m_hi) throw PreconditionError("empty degree window");
  if (spec_.levels() < spec_.m_hi + 2)
    throw PreconditionError("degree window exceeds the group-level truncation: need at least " +
                            std::to_string(spec_.m_hi + 2) + " levels");
  action_ = std::make_unique<SimplicialAction>(spec_.action);
  cover_ = std::make_unique<NerveCover>(*action_, spec_.cover);
  t_lo_ = std::max(spec_.m_lo, 0);
  t_hi_ = spec_.m_hi + 2;
  const int top_level = std::min(spec_.levels(), t_hi_);
  for (int i = 0; i <= top_level; ++i) levels_.push_back(enumerate_level(*cover_, i, t_hi_ - i));

  for (int t = t_lo_; t <= t_hi_; ++t) {
    Layout L;
    std::vector<std::tuple<int, int, int>> order;
    for (int i = 0; i <= std::min(t, top_level); ++i)
      if (t - i >= 0) order.emplace_back(i, t - i, 0);
    for (int i = 0; i <= std::min(t, top_level); ++i)
      for (int k = 1; k <= spec_.N + 1; ++k)
        if (t - i - k >= 0) order.emplace_back(i, t - i - k, k);
    int pos = 0, nZ = 0;
    for (auto [i, j, k] : order) {
      const LevelCover& lc = levels_[i];
      Block b{i, j, k, pos, {0}};
      for (int s = 0; s < lc.count(j); ++s) {
        int dim = k == 0 ? 1 : lc.by_degree[j][s].star->count(k - 1);
        b.offsets.push_back(b.offsets.back() + dim);
      }
      const int size = b.offsets.back();
      if (size == 0) continue;
      pos += size;
      if (k == 0) nZ += size;
      L.index[{i, j, k}] = static_cast<int>(L.blocks.size());
      L.blocks.push_back(std::move(b));
    }
    L.space = MixedSpace{nZ, pos - nZ, {}};
    layouts_.push_back(std::move(L));
  }
}

const Assembly::Layout& Assembly::layout(int t) const {
  if (!has_degree(t))
    throw PreconditionError("total degree " + std::to_string(t) + " outside the assembled window [" +
                            std::to_string(t_lo_) + "," + std::to_string(t_hi_) + "]");
  return layouts_[t - t_lo_];
}

const Assembly::Block* Assembly::find_block(int i, int j, int k) const {
  const int t = i + j + k;
  if (!has_degree(t) || i < 0 || j < 0 || k < 0) return nullptr;
  const Layout& L = layouts_[t - t_lo_];
  auto it = L.index.find({i, j, k});
  return it == L.index.end() ? nullptr : &L.blocks[it->second];
}

int Assembly::slot_dim(const SlotKey& key) const {
  const Block* b = find_block(key.i, key.j, key.k);
  if (!b || key.cech < 0 || key.cech + 1 >= static_cast<int>(b->offsets.size())) return 0;
  return b->offsets[key.cech + 1] - b->offsets[key.cech];
}

const CechSimplex& Assembly::cech_simplex(const SlotKey& key) const {
  return levels_.at(key.i).by_degree.at(key.j).at(key.cech);
}

int Assembly::coordinate(const SlotKey& key, int local) const {
  const Block* b = find_block(key.i, key.j, key.k);
  if (!b || local < 0 || local >= slot_dim(key)) throw PreconditionError("no such slot: " + describe(key));
  return b->start + b->offsets[key.cech] + local;
}

std::pair<SlotKey, int> Assembly::locate(int t, int coordinate) const {
  const Layout& L = layout(t);
  for (const Block& b : L.blocks) {
    if (coordinate < b.start || coordinate >= b.start + b.offsets.back()) continue;
    const int rel = coordinate - b.start;
    auto it = std::upper_bound(b.offsets.begin(), b.offsets.end(), rel);
    const int s = static_cast<int>(it - b.offsets.begin()) - 1;
    return {SlotKey{b.i, b.j, b.k, s}, rel - b.offsets[s]};
  }
  throw PreconditionError("coordinate out of range");
}

std::string Assembly::describe(const SlotKey& key) const {
  std::string s = "(level " + std::to_string(key.i) + ", cech " + std::to_string(key.j) + ", slot " +
                  std::to_string(key.k);
  if (key.i < static_cast<int>(levels_.size()) && key.j < static_cast<int>(levels_[key.i].by_degree.size()) &&
      key.cech >= 0 && key.cech < levels_[key.i].count(key.j)) {
    const CechSimplex& cs = cech_simplex(key);
    s += ", copy [";
    auto g = action_->group.decode(key.i, cs.copy);
    for (std::size_t n = 0; n < g.size(); ++n) s += (n ? "," : "") + action_->group.name(g[n]);
    s += "], patch ";
    for (std::size_t n = 0; n < cs.indices.size(); ++n) s += (n ? "/" : "") + cover_->index_name(key.i, cs.indices[n]);
  }
  return s + ")";
}

std::string Assembly::describe(int t, int coordinate) const {
  auto [key, local] = locate(t, coordinate);
  std::string s = describe(key);
  if (key.k >= 1) {
    const CechSimplex& cs = cech_simplex(key);
    const Simplex& tau = action_->space.simplex(key.k - 1, cs.star->simplices[key.k - 1][local]);
    s += " on {";
    for (std::size_t n = 0; n < tau.size(); ++n) s += (n ? "," : "") + action_->space.labels()[tau[n]];
    s += "}";
  }
  return s;
}

std::vector<Rational>& Assembly::block(TripleCochain& c, const SlotKey& key) const {
  const int dim = slot_dim(key);
  if (dim == 0) throw PreconditionError("no such slot: " + describe(key));
  if (key.i + key.j + key.k != c.degree) throw PreconditionError("slot degree differs from the cochain degree");
  auto& v = c.blocks[key];
  if (v.empty()) v.assign(dim, Rational(0));
  return v;
}

SparseVec Assembly::flatten(const TripleCochain& c) const {
  std::vector<std::pair<int, Rational>> e;
  for (const auto& [key, vals] : c.blocks) {
    if (key.i + key.j + key.k != c.degree) throw PreconditionError("slot degree differs from the cochain degree");
    if (static_cast<int>(vals.size()) != slot_dim(key)) throw PreconditionError("bad block size at " + describe(key));
    for (std::size_t n = 0; n < vals.size(); ++n) {
      if (vals[n] == 0) continue;
      if (key.k == 0 && !is_integer(vals[n])) throw PreconditionError("non-integral value in integer slot " + describe(key));
      e.emplace_back(coordinate(key, static_cast<int>(n)), vals[n]);
    }
  }
  return sparse_from_entries(std::move(e));
}

TripleCochain Assembly::unflatten(int t, const SparseVec& v) const {
  TripleCochain c{t, {}};
  for (const auto& [coord, val] : v) {
    if (val == 0) continue;
    auto [key, local] = locate(t, coord);
    block(c, key)[local] = val;
  }
  return c;
}

// Row of every target coordinate in degree t+1, pulled back from degree t.
std::vector<SparseVec> Assembly::rows(int t, bool group, bool cech, bool slot, bool signed_) const {
  const Layout& target = layout(t + 1);
  layout(t);
  const FiniteGroup& G = action_->group;
  const SimplicialComplex& X = action_->space;
  std::vector<SparseVec> out(target.space.dim());
  std::vector<std::pair<int, Rational>> e;

  for (const Block& b : target.blocks) {
    const LevelCover& lc = levels_[b.i];
    for (int s = 0; s < lc.count(b.j); ++s) {
      const CechSimplex& cs = lc.by_degree[b.j][s];
      const int dim = b.offsets[s + 1] - b.offsets[s];
      const std::vector<int> g = G.decode(b.i, cs.copy);
      for (int local = 0; local < dim; ++local) {
        e.clear();
        const int tau = b.k == 0 ? -1 : cs.star->simplices[b.k - 1][local];

        if (slot && b.k >= 1) {
          const Block* src = find_block(b.i, b.j, b.k - 1);
          const int sign = signed_ ? (spec_.corrupt_sign ? parity(b.i) : parity(b.i + b.j)) : 1;
          if (src) {
            const int base = src->start + src->offsets[s];
            if (b.k == 1) {
              e.emplace_back(base, Rational(sign));
            } else {
              const Simplex& simplex = X.simplex(b.k - 1, tau);
              for (int r = 0; r <= b.k - 1; ++r) {
                Simplex face = simplex;
                face.erase(face.begin() + r);
                const int li = cs.star->local_index(b.k - 2, X.index_of(face));
                e.emplace_back(base + li, Rational(sign * parity(r)));
              }
            }
          }
        }

        if (cech && b.j >= 1) {
          const Block* src = find_block(b.i, b.j - 1, b.k);
          const int sign = signed_ ? parity(b.i) : 1;
          if (src) {
            for (int r = 0; r <= b.j; ++r) {
              std::vector<long> face = cs.indices;
              face.erase(face.begin() + r);
              const int f = lc.find(b.j - 1, cs.copy, face);
              if (f < 0) throw StructuralError("Čech face missing at " + describe(SlotKey{b.i, b.j, b.k, s}));
              int li = 0;
              if (b.k >= 1) li = lc.by_degree[b.j - 1][f].star->local_index(b.k - 1, tau);
              if (li < 0) throw StructuralError("restriction leaves the star at " + describe(SlotKey{b.i, b.j, b.k, s}));
              e.emplace_back(src->start + src->offsets[f] + li, Rational(sign * parity(r)));
            }
          }
        }

        if (group && b.i >= 1) {
          const Block* src = find_block(b.i - 1, b.j, b.k);
          if (src) {
            const LevelCover& lsrc = levels_[b.i - 1];
            for (int l = 0; l <= b.i; ++l) {
              const NervePoint fp = face_map(*action_, NervePoint{g, {}}, l);
              const long fcopy = G.encode(fp.g);
              std::vector<long> idx;
              for (long a : cs.indices) idx.push_back(cover_->index_face(b.i, cs.copy, a, l));
              // Alternating convention: sort the pulled-back multi-index, drop repeats.
              int csign = 1;
              for (std::size_t x = 0; x < idx.size(); ++x)
                for (std::size_t y = x + 1; y < idx.size(); ++y) {
                  if (idx[x] == idx[y]) csign = 0;
                  if (idx[x] > idx[y]) csign = -csign;
                }
              if (csign == 0) continue;
              std::sort(idx.begin(), idx.end());
              const int f = lsrc.find(b.j, fcopy, idx);
              if (f < 0) throw StructuralError("face patch missing at " + describe(SlotKey{b.i, b.j, b.k, s}));
              int li = 0, osign = 1;
              if (b.k >= 1) {
                int image = tau;
                if (l == b.i) image = action_->act_simplex_index(g[b.i - 1], b.k - 1, tau, &osign);
                li = lsrc.by_degree[b.j][f].star->local_index(b.k - 1, image);
                if (li < 0) throw StructuralError("face map leaves the star at " + describe(SlotKey{b.i, b.j, b.k, s}));
              }
              e.emplace_back(src->start + src->offsets[f] + li, Rational(parity(l) * csign * osign));
            }
          }
        }

        out[b.start + b.offsets[s] + local] = sparse_from_entries(e);
      }
    }
  }
  return out;
}

const MixedMap& Assembly::differential(int t) const {
  auto it = differentials_.find(t);
  if (it != differentials_.end()) return it->second;
  MixedMap D(space(t), space(t + 1), rows(t, true, true, true, true));
  return differentials_.emplace(t, std::move(D)).first->second;
}

MixedMap Assembly::partial(Partial which, int t) const {
  return MixedMap(space(t), space(t + 1),
                  rows(t, which == Partial::Group, which == Partial::Cech, which == Partial::Slot, false));
}

TripleCochain Assembly::apply_D(const TripleCochain& c) const {
  if (!has_degree(c.degree + 1)) throw PreconditionError("D leaves the assembled window at total degree " +
                                                         std::to_string(c.degree + 1));
  return unflatten(c.degree + 1, differential(c.degree).apply(flatten(c)));
}

TripleCochain Assembly::apply_partial(Partial which, const TripleCochain& c) const {
  if (!has_degree(c.degree + 1)) throw PreconditionError("partial differential leaves the assembled window");
  return unflatten(c.degree + 1, partial(which, c.degree).apply(flatten(c)));
}

MixedComplex Assembly::to_mixed_complex(int m_lo, int m_hi) const {
  MixedComplex C;
  if (m_lo > m_hi) return C;
  const int lo = std::max(m_lo, 0), hi = m_hi + 2;
  if (lo < t_lo_ || hi > t_hi_) throw PreconditionError("export window outside the assembled window");
  C.first_degree = lo;
  C.zero_below = lo == 0;
  C.zero_above = false;
  for (int t = lo; t <= hi; ++t) C.terms.push_back(space(t));
  for (int t = lo; t < hi; ++t) C.maps.push_back(differential(t));
  return C;
}

MixedComplex to_mixed_complex(const ModelSpec& spec) { return Assembly(spec).to_mixed_complex(); }

}  // namespace edc
