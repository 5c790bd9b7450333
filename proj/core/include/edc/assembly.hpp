#pragma once

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "edc/nerve.hpp"

namespace edc {

// Deligne weight N, the window of F̄(N)-degrees [m_lo, m_hi] and the group-level truncation.
// Cohomology of F̄(N) in degree m is read off the Z(N+1)-model in total degree m+1, so the
// assembled total degrees run from max(m_lo, 0) to m_hi + 2.
struct ModelSpec {
  SimplicialAction action;
  int N = 1;
  int m_lo = 0;
  int m_hi = 0;
  int truncation = -1;  // group levels kept; -1 means m_hi + 2
  CoverKind cover = CoverKind::Copywise;
  // Debugging aid for selftest: drops the Čech parity from the sign of d̃, which breaks D² = 0.
  bool corrupt_sign = false;

  int levels() const { return truncation < 0 ? m_hi + 2 : truncation; }
};

// One coefficient block: group level i, Čech degree j, slot k, and the position of the
// Čech simplex in the level cover. Slot 0 holds one integer; slot k >= 1 holds rational
// (k-1)-cochains on the patch star.
struct SlotKey {
  int i = 0, j = 0, k = 0;
  int cech = 0;
  auto operator<=>(const SlotKey&) const = default;
};

struct TripleCochain {
  int degree = 0;  // total degree i + j + k in the Z(N+1)-model
  std::map<SlotKey, std::vector<Rational>> blocks;

  bool is_zero() const;
  TripleCochain& operator+=(const TripleCochain& o);
  TripleCochain& operator-=(const TripleCochain& o);
  TripleCochain operator-() const;
};

enum class Partial { Group, Cech, Slot };  // ∂, δ, d̃

class Assembly {
 public:
  explicit Assembly(ModelSpec spec);
  Assembly(const Assembly&) = delete;
  Assembly& operator=(const Assembly&) = delete;
  Assembly(Assembly&&) = default;

  const ModelSpec& spec() const { return spec_; }
  const SimplicialAction& action() const { return *action_; }
  const NerveCover& cover() const { return *cover_; }
  const LevelCover& level(int i) const { return levels_.at(i); }
  int total_lo() const { return t_lo_; }
  int total_hi() const { return t_hi_; }
  bool has_degree(int t) const { return t >= t_lo_ && t <= t_hi_; }

  const MixedSpace& space(int t) const { return layout(t).space; }
  // Coefficient count of one block; 0 when the slot does not exist.
  int slot_dim(const SlotKey& key) const;
  const CechSimplex& cech_simplex(const SlotKey& key) const;
  // Coordinate of entry `local` of a block in the degree-(i+j+k) space.
  int coordinate(const SlotKey& key, int local = 0) const;
  std::pair<SlotKey, int> locate(int t, int coordinate) const;
  std::string describe(const SlotKey& key) const;
  std::string describe(int t, int coordinate) const;

  TripleCochain zero(int t) const { return TripleCochain{t, {}}; }
  // Entry access that creates a zero block of the right size.
  std::vector<Rational>& block(TripleCochain& c, const SlotKey& key) const;
  SparseVec flatten(const TripleCochain& c) const;
  TripleCochain unflatten(int t, const SparseVec& v) const;

  // Matrix of D from degree t to t+1, cached.
  const MixedMap& differential(int t) const;
  // One partial differential without its sign.
  MixedMap partial(Partial which, int t) const;
  TripleCochain apply_D(const TripleCochain& c) const;
  TripleCochain apply_partial(Partial which, const TripleCochain& c) const;

  // Total degrees t in [m_lo, m_hi + 2] ∩ assembled range; empty when m_lo > m_hi.
  MixedComplex to_mixed_complex() const { return to_mixed_complex(spec_.m_lo, spec_.m_hi); }
  MixedComplex to_mixed_complex(int m_lo, int m_hi) const;

 private:
  struct Block {
    int i = 0, j = 0, k = 0;
    int start = 0;
    std::vector<int> offsets;  // per Čech simplex, plus the end
  };
  struct Layout {
    MixedSpace space;
    std::vector<Block> blocks;
    std::map<std::tuple<int, int, int>, int> index;
  };
  const Layout& layout(int t) const;
  const Block* find_block(int i, int j, int k) const;
  std::vector<SparseVec> rows(int t, bool group, bool cech, bool slot, bool signed_) const;

  ModelSpec spec_;
  std::unique_ptr<SimplicialAction> action_;
  std::unique_ptr<NerveCover> cover_;
  std::vector<LevelCover> levels_;
  std::vector<Layout> layouts_;  // by t - t_lo
  int t_lo_ = 0, t_hi_ = 0;
  mutable std::map<int, MixedMap> differentials_;
};

// Standalone export of the window of a spec.
MixedComplex to_mixed_complex(const ModelSpec& spec);

}  // namespace edc
