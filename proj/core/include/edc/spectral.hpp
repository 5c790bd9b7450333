#pragma once

#include <map>

#include "edc/engine.hpp"

namespace edc {

// A complex with a decreasing filtration given by one level per coordinate:
// F^p C^t is spanned by the coordinates of level >= p.
struct FilteredComplex {
  MixedComplex complex;
  std::map<int, std::vector<int>> level;  // per total degree
  int shift = 0;                           // reported degree n = t - shift
};

using Bidegree = std::pair<int, int>;  // (p, q), p + q = n

// The cycle and boundary subgroups behind the pages, memoized per (t, p, r), t the complex degree.
class FilteredPages {
 public:
  explicit FilteredPages(const FilteredComplex& F) : F_(F) {}
  const FilteredComplex& filtered() const { return F_; }

  int top_level(int t) const;
  Subgroup filt(int t, int p) const;  // F^p C^t
  // Z_r^p: elements of F^p whose coboundary lies in F^{p+r}; r <= 0 gives F^p.
  const Subgroup& Z(int t, int p, int r);
  // Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1}
  Subgroup denominator(int t, int p, int r);
  Quotient entry(int t, int p, int r) { return Quotient(Z(t, p, r), denominator(t, p, r)); }
  // Past this page nothing changes in degree t.
  int stable_page(int t) const { return top_level(t) + top_level(t + 1) + 2; }

 private:
  const FilteredComplex& F_;
  std::map<std::tuple<int, int, int>, Subgroup> Z_;
};

struct SpectralPage {
  int r = 1;
  std::map<Bidegree, MixedModule> E;
  // d_r on the generators of a nonzero source entry, as coefficients in the target entry.
  struct Differential {
    Bidegree from, to;
    std::vector<std::vector<Rational>> images;
    bool is_zero() const;
  };
  std::vector<Differential> d;
  bool d_squared_zero = true;
};

struct SpectralSequence {
  int n_lo = 0, n_hi = 0;
  std::vector<SpectralPage> pages;  // r = 1, 2, ..., max_page
  std::map<Bidegree, MixedModule> E_infinity;
  std::map<int, MixedModule> total;
  std::map<int, std::vector<MixedModule>> graded;  // F^p H^n / F^{p+1} H^n, p = 0, 1, ...
  bool consistent = true;
  std::vector<std::string> notes;

  const SpectralPage& page(int r) const { return pages.at(r - 1); }
};

SpectralSequence filtered_spectral_sequence(const FilteredComplex& F, int max_page, int n_lo, int n_hi);

// Filtration of the equivariant Deligne model by group level; n is the Deligne degree.
FilteredComplex group_level_filtration(const Assembly& A);
SpectralSequence spectral_sequence(const SimplicialAction& a, int N, int max_page, int n_lo, int n_hi,
                                   const EngineOptions& opts = {});

// Additive invariants that must agree between a module and the graded pieces of any finite
// filtration of it: rational rank, and the order when every piece is finite.
bool filtration_consistent(const MixedModule& total, const std::vector<MixedModule>& pieces, std::string* why = nullptr);

}  // namespace edc
