#include "edc/spectral.hpp"

#include <algorithm>

namespace edc {

bool SpectralPage::Differential::is_zero() const {
  for (const auto& v : images)
    for (const auto& x : v)
      if (x != 0) return false;
  return true;
}

namespace {

// Coefficients of one decoded element, reduced in the torsion-like summands so that zero
// means zero in the module.
bool decoded_zero(const std::vector<Rational>& c) {
  for (const auto& x : c)
    if (x != 0) return false;
  return true;
}

}  // namespace

int FilteredPages::top_level(int t) const {
  auto it = F_.level.find(t);
  if (it == F_.level.end() || it->second.empty()) return 0;
  return *std::max_element(it->second.begin(), it->second.end());
}

Subgroup FilteredPages::filt(int t, int p) const {
  const MixedSpace& s = F_.complex.term(t);
  Subgroup S = Subgroup::zero(s);
  const auto& lv = F_.level.at(t);
  for (int x = 0; x < s.dim(); ++x) {
    if (lv[x] < p) continue;
    (x < s.nZ ? S.lattice : S.space).push_back({{x, Rational(1)}});
  }
  return S;
}

const Subgroup& FilteredPages::Z(int t, int p, int r) {
  auto key = std::make_tuple(t, p, std::max(0, std::min(r, stable_page(t))));
  auto it = Z_.find(key);
  if (it != Z_.end()) return it->second;
  const MixedMap* d = F_.complex.map_from(t);
  Subgroup out = (!d || r <= 0) ? filt(t, p) : preimage(*d, filt(t + 1, p + r), filt(t, p));
  return Z_.emplace(key, std::move(out)).first->second;
}

Subgroup FilteredPages::denominator(int t, int p, int r) {
  Subgroup den = Z(t, p + 1, r - 1);
  if (const MixedMap* d = F_.complex.map_into(t)) den = sum(den, image(*d, Z(t - 1, p - r + 1, r - 1)));
  return den;
}

bool filtration_consistent(const MixedModule& total, const std::vector<MixedModule>& pieces, std::string* why) {
  int rank = 0;
  bool finite = true;
  Integer order = 1;
  for (const auto& m : pieces) {
    rank += m.rankZ + m.rankQ;
    finite = finite && m.rankZ == 0 && m.rankQ == 0 && m.rankQZ == 0;
    order *= m.torsion_order();
  }
  if (rank != total.rankZ + total.rankQ) {
    if (why) *why = "rational ranks differ";
    return false;
  }
  const bool total_finite = total.rankZ == 0 && total.rankQ == 0 && total.rankQZ == 0;
  if (finite != total_finite && rank == 0) {
    if (why) *why = "finiteness differs";
    return false;
  }
  if (finite && total_finite && order != total.torsion_order()) {
    if (why) *why = "orders differ";
    return false;
  }
  return true;
}

SpectralSequence filtered_spectral_sequence(const FilteredComplex& F, int max_page, int n_lo, int n_hi) {
  SpectralSequence S;
  S.n_lo = n_lo;
  S.n_hi = n_hi;
  FilteredPages P(F);
  const MixedComplex& C = F.complex;
  auto in_range = [&](int t) {
    return C.has_degree(t) && C.map_from(t) && (C.map_into(t) || (C.zero_below && t == C.first_degree));
  };

  for (int r = 1; r <= max_page; ++r) {
    SpectralPage page;
    page.r = r;
    std::map<Bidegree, Quotient> quot;
    for (int n = n_lo; n <= n_hi; ++n) {
      const int t = n + F.shift;
      if (!in_range(t)) continue;
      for (int p = 0; p <= P.top_level(t); ++p) {
        Quotient Q = P.entry(t, p, r);
        page.E[{p, n - p}] = Q.module();
        quot.emplace(Bidegree{p, n - p}, std::move(Q));
      }
    }
    // d_r: (p, q) -> (p + r, q - r + 1), computed where both ends are on this page.
    for (const auto& [bd, Q] : quot) {
      const Bidegree to{bd.first + r, bd.second - r + 1};
      auto jt = quot.find(to);
      if (jt == quot.end() || Q.summands().empty()) continue;
      const int t = bd.first + bd.second + F.shift;
      SpectralPage::Differential dr{bd, to, {}};
      for (const auto& s : Q.summands()) dr.images.push_back(jt->second.decode(C.map_from(t)->apply(s.generator)));
      // d_r ∘ d_r through the chain-level lift of each image.
      const Bidegree to2{to.first + r, to.second - r + 1};
      auto kt = quot.find(to2);
      if (kt != quot.end()) {
        for (const auto& img : dr.images) {
          SparseVec lift;
          for (std::size_t i = 0; i < img.size(); ++i)
            if (img[i] != 0) axpy(lift, img[i], jt->second.summands()[i].generator);
          if (!decoded_zero(kt->second.decode(C.map_from(t + 1)->apply(lift)))) page.d_squared_zero = false;
        }
      }
      page.d.push_back(std::move(dr));
    }
    if (!page.d_squared_zero) {
      S.consistent = false;
      S.notes.push_back("d_" + std::to_string(r) + " does not square to zero");
    }
    S.pages.push_back(std::move(page));
  }

  for (int n = n_lo; n <= n_hi; ++n) {
    const int t = n + F.shift;
    if (!in_range(t)) continue;
    const int big = P.stable_page(t);
    const MixedSpace& amb = C.term(t);
    Subgroup cycles = kernel(*C.map_from(t));
    Subgroup bounds = C.map_into(t) ? image(*C.map_into(t)) : Subgroup::zero(amb);
    S.total[n] = Quotient(cycles, bounds).module();
    std::vector<MixedModule> pieces;
    for (int p = 0; p <= P.top_level(t); ++p) {
      S.E_infinity[{p, n - p}] = P.entry(t, p, big).module();
      // F^p H / F^{p+1} H from the filtered cycles.
      Subgroup hi = sum(intersection(cycles, P.filt(t, p)), bounds);
      Subgroup lo = sum(intersection(cycles, P.filt(t, p + 1)), bounds);
      pieces.push_back(Quotient(hi, lo).module());
      if (!(pieces.back() == S.E_infinity[{p, n - p}])) {
        S.consistent = false;
        S.notes.push_back("E_infinity differs from the filtration quotient at (" + std::to_string(p) + "," +
                          std::to_string(n - p) + ")");
      }
    }
    std::string why;
    if (!filtration_consistent(S.total[n], pieces, &why)) {
      S.consistent = false;
      S.notes.push_back("degree " + std::to_string(n) + ": " + why);
    }
    S.graded[n] = std::move(pieces);
  }
  return S;
}

FilteredComplex group_level_filtration(const Assembly& A) {
  FilteredComplex F;
  F.complex = A.to_mixed_complex();
  F.shift = 1;
  for (int t = F.complex.first_degree; t <= F.complex.last_degree(); ++t) {
    std::vector<int> lv(F.complex.term(t).dim());
    for (int x = 0; x < static_cast<int>(lv.size()); ++x) lv[x] = A.locate(t, x).first.i;
    F.level[t] = std::move(lv);
  }
  return F;
}

SpectralSequence spectral_sequence(const SimplicialAction& a, int N, int max_page, int n_lo, int n_hi,
                                   const EngineOptions& opts) {
  ModelSpec spec;
  spec.action = a;
  spec.N = N;
  spec.m_lo = n_lo;
  spec.m_hi = n_hi;
  spec.cover = opts.cover;
  Assembly A(std::move(spec));
  return filtered_spectral_sequence(group_level_filtration(A), max_page, n_lo, n_hi);
}

}  // namespace edc
