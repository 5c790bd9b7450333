#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "edc/numeric.hpp"

namespace edc {

// Sorted (index, value) pairs with no stored zeros.
template <class T>
using Sparse = std::vector<std::pair<int, T>>;
using SparseVec = Sparse<Rational>;
using SparseInt = Sparse<Integer>;

template <class T>
T sparse_get(const Sparse<T>& v, int i) {
  auto it = std::lower_bound(v.begin(), v.end(), i,
                             [](const std::pair<int, T>& e, int k) { return e.first < k; });
  if (it != v.end() && it->first == i) return it->second;
  return T(0);
}

// y += a * x
template <class T>
void axpy(Sparse<T>& y, const T& a, const Sparse<T>& x) {
  if (a == 0 || x.empty()) return;
  Sparse<T> out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(std::move(y[i++]));
    } else if (i == y.size() || x[j].first < y[i].first) {
      out.emplace_back(x[j].first, a * x[j].second);
      ++j;
    } else {
      T s = y[i].second + a * x[j].second;
      if (s != 0) out.emplace_back(y[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

template <class T>
void scale(Sparse<T>& v, const T& a) {
  if (a == 0) {
    v.clear();
    return;
  }
  for (auto& e : v) e.second *= a;
}

template <class T>
Sparse<T> sparse_from_dense(const std::vector<T>& d) {
  Sparse<T> v;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) v.emplace_back(static_cast<int>(i), d[i]);
  return v;
}

template <class T>
std::vector<T> dense_from_sparse(const Sparse<T>& v, int n) {
  std::vector<T> d(n, T(0));
  for (const auto& [i, x] : v) d.at(i) = x;
  return d;
}

// Builds a sorted sparse vector from unsorted entries, summing duplicates.
template <class T>
Sparse<T> sparse_from_entries(std::vector<std::pair<int, T>> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  Sparse<T> v;
  for (auto& e : entries) {
    if (!v.empty() && v.back().first == e.first) {
      v.back().second += e.second;
      if (v.back().second == 0) v.pop_back();
    } else if (e.second != 0) {
      v.push_back(std::move(e));
    }
  }
  return v;
}

// Common denominator of the entries.
Integer common_denominator(const SparseVec& v);
SparseInt to_integer(const SparseVec& v);  // requires integral entries
SparseVec to_rational(const SparseInt& v);

enum class EliminationOrder { RowMajor, ColumnMajor };

// Incremental reduced row echelon form over Q with optional tracking of each
// basis row as a combination of the labelled input vectors.
class Reducer {
 public:
  explicit Reducer(bool track = true) : track_(track) {}

  // Returns true when v enlarges the span.
  bool add(const SparseVec& v, int label);

  struct Reduction {
    SparseVec residual;
    SparseVec combo;  // v = residual + sum combo[label] * input[label]
  };
  Reduction reduce(const SparseVec& v) const;
  bool contains(const SparseVec& v) const { return reduce(v).residual.empty(); }

  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<int>& pivots() const { return pivot_; }
  const SparseVec& row(int r) const { return rows_[r]; }
  const SparseVec& row_combo(int r) const { return combos_[r]; }

 private:
  bool track_;
  std::vector<SparseVec> rows_;
  std::vector<SparseVec> combos_;
  std::vector<int> pivot_;
  std::map<int, int> pivot_row_;
};

// Integer column echelon form by unimodular column operations.
// Each pivot column has zero entries above its pivot row and a positive pivot.
struct ColumnEchelon {
  int nrows = 0;
  std::vector<SparseInt> cols;       // reduced columns
  std::vector<SparseInt> transform;  // cols[j] = sum transform[j][k] * input[k]
  std::vector<int> pivot_cols;       // ordered by increasing pivot row
  std::vector<int> pivot_rows;
  std::vector<int> zero_cols;        // their transforms span the relation lattice

  int rank() const { return static_cast<int>(pivot_cols.size()); }
  // Coordinates of v in the pivot columns, or false when v is outside the lattice.
  bool coordinates(SparseInt v, std::vector<Integer>& out) const;
  // Same over Q; false when v is outside the rational span.
  bool rational_coordinates(SparseVec v, std::vector<Rational>& out) const;
};

ColumnEchelon column_echelon(const std::vector<SparseInt>& cols, int nrows, bool track = true,
                             EliminationOrder order = EliminationOrder::RowMajor);

// Basis of the integer kernel of an integer matrix given by rows over ncols columns.
std::vector<SparseInt> integer_kernel(const std::vector<SparseInt>& rows, int ncols,
                                      EliminationOrder order = EliminationOrder::RowMajor);

// Kernel of a rational matrix where some columns are restricted to integer values:
// lattice generators plus a basis of the rational subspace (zero on integer columns).
struct MixedKernel {
  std::vector<SparseVec> lattice;
  std::vector<SparseVec> space;
};
MixedKernel mixed_column_kernel(const std::vector<SparseVec>& rows, int ncols,
                                const std::vector<bool>& integer_col,
                                EliminationOrder order = EliminationOrder::RowMajor);

// Row elimination using pivots only in allowed columns, fully reduced in those columns.
// Rows without a pivot end up supported on disallowed columns only.
struct PartialElimination {
  std::vector<SparseVec> rows;
  std::vector<SparseVec> combos;  // rows[r] = sum combos[r][k] * input_row[k]
  std::vector<int> pivot_col;     // -1 for rows without pivot
};
PartialElimination eliminate_on(std::vector<SparseVec> rows, const std::vector<bool>& allowed,
                                bool track, EliminationOrder order = EliminationOrder::RowMajor);

}  // namespace edc
