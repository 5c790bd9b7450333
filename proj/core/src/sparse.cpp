#include "edc/sparse.hpp"

#include <numeric>

namespace edc {

Integer common_denominator(const SparseVec& v) {
  Integer d = 1;
  for (const auto& e : v) d = lcm(d, e.second.get_den());
  return d;
}

SparseInt to_integer(const SparseVec& v) {
  SparseInt out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) {
    if (!is_integer(x)) throw StructuralError("non-integral entry where an integer was expected");
    out.emplace_back(i, x.get_num());
  }
  return out;
}

SparseVec to_rational(const SparseInt& v) {
  SparseVec out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) out.emplace_back(i, Rational(x));
  return out;
}

// ---------------------------------------------------------------- Reducer

Reducer::Reduction Reducer::reduce(const SparseVec& v) const {
  Reduction r;
  r.residual = v;
  std::vector<std::pair<int, Rational>> hits;
  for (const auto& [col, val] : v) {
    auto it = pivot_row_.find(col);
    if (it != pivot_row_.end()) hits.emplace_back(it->second, val);
  }
  for (const auto& [row, c] : hits) {
    axpy(r.residual, Rational(-c), rows_[row]);
    if (track_) axpy(r.combo, c, combos_[row]);
  }
  return r;
}

bool Reducer::add(const SparseVec& v, int label) {
  Reduction red = reduce(v);
  if (red.residual.empty()) return false;
  SparseVec combo;
  if (track_) {
    combo = {{label, Rational(1)}};
    axpy(combo, Rational(-1), red.combo);
  }
  int pc = red.residual.front().first;
  Rational inv = 1 / red.residual.front().second;
  scale(red.residual, inv);
  if (track_) scale(combo, inv);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Rational c = sparse_get(rows_[r], pc);
    if (c != 0) {
      axpy(rows_[r], Rational(-c), red.residual);
      if (track_) axpy(combos_[r], Rational(-c), combo);
    }
  }
  pivot_row_[pc] = static_cast<int>(rows_.size());
  pivot_.push_back(pc);
  rows_.push_back(std::move(red.residual));
  combos_.push_back(std::move(combo));
  return true;
}

// ---------------------------------------------------------------- column echelon

bool ColumnEchelon::coordinates(SparseInt v, std::vector<Integer>& out) const {
  out.assign(pivot_cols.size(), Integer(0));
  for (std::size_t k = 0; k < pivot_cols.size() && !v.empty(); ++k) {
    const SparseInt& col = cols[pivot_cols[k]];
    Integer a = sparse_get(v, pivot_rows[k]);
    if (a == 0) continue;
    const Integer& lead = sparse_get(col, pivot_rows[k]);
    if (!mpz_divisible_p(a.get_mpz_t(), lead.get_mpz_t())) return false;
    Integer c = a / lead;
    out[k] = c;
    axpy(v, Integer(-c), col);
  }
  return v.empty();
}

bool ColumnEchelon::rational_coordinates(SparseVec v, std::vector<Rational>& out) const {
  out.assign(pivot_cols.size(), Rational(0));
  for (std::size_t k = 0; k < pivot_cols.size() && !v.empty(); ++k) {
    Rational a = sparse_get(v, pivot_rows[k]);
    if (a == 0) continue;
    SparseVec col = to_rational(cols[pivot_cols[k]]);
    Rational c = a / sparse_get(col, pivot_rows[k]);
    out[k] = c;
    axpy(v, Rational(-c), col);
  }
  return v.empty();
}

namespace {

SparseInt remap_rows(const SparseInt& v, int nrows) {
  SparseInt out;
  out.reserve(v.size());
  for (auto it = v.rbegin(); it != v.rend(); ++it) out.emplace_back(nrows - 1 - it->first, it->second);
  return out;
}

}  // namespace

ColumnEchelon column_echelon(const std::vector<SparseInt>& input, int nrows, bool track,
                             EliminationOrder order) {
  const bool reversed = order == EliminationOrder::ColumnMajor;
  const int n = static_cast<int>(input.size());
  ColumnEchelon ce;
  ce.nrows = nrows;
  ce.cols.resize(n);
  if (track) ce.transform.resize(n);
  std::vector<std::vector<int>> bucket(nrows);
  for (int j = 0; j < n; ++j) {
    ce.cols[j] = reversed ? remap_rows(input[j], nrows) : input[j];
    if (track) ce.transform[j] = {{j, Integer(1)}};
    if (ce.cols[j].empty())
      ce.zero_cols.push_back(j);
    else
      bucket.at(ce.cols[j].front().first).push_back(j);
  }

  auto better = [&](int a, int b) {
    int c = cmp(abs(ce.cols[a].front().second), abs(ce.cols[b].front().second));
    if (c != 0) return c < 0;
    return reversed ? a > b : a < b;
  };

  for (int r = 0; r < nrows; ++r) {
    std::vector<int> list = std::move(bucket[r]);
    while (list.size() > 1) {
      int p = list[0];
      for (int q : list)
        if (better(q, p)) p = q;
      std::vector<int> next{p};
      const Integer lead = ce.cols[p].front().second;
      for (int q : list) {
        if (q == p) continue;
        Integer k;
        mpz_tdiv_q(k.get_mpz_t(), ce.cols[q].front().second.get_mpz_t(), lead.get_mpz_t());
        Integer neg = -k;
        axpy(ce.cols[q], neg, ce.cols[p]);
        if (track) axpy(ce.transform[q], neg, ce.transform[p]);
        if (ce.cols[q].empty())
          ce.zero_cols.push_back(q);
        else if (ce.cols[q].front().first == r)
          next.push_back(q);
        else
          bucket[ce.cols[q].front().first].push_back(q);
      }
      list = std::move(next);
    }
    if (list.empty()) continue;
    int p = list[0];
    if (ce.cols[p].front().second < 0) {
      scale(ce.cols[p], Integer(-1));
      if (track) scale(ce.transform[p], Integer(-1));
    }
    ce.pivot_cols.push_back(p);
    ce.pivot_rows.push_back(r);
  }

  if (reversed) {
    // Pivot order stays the processing order; row labels go back to the caller's.
    for (auto& c : ce.cols) c = remap_rows(c, nrows);
    for (auto& r : ce.pivot_rows) r = nrows - 1 - r;
  }
  std::sort(ce.zero_cols.begin(), ce.zero_cols.end());
  return ce;
}

std::vector<SparseInt> integer_kernel(const std::vector<SparseInt>& rows, int ncols,
                                      EliminationOrder order) {
  std::vector<std::vector<std::pair<int, Integer>>> entries(ncols);
  for (int r = 0; r < static_cast<int>(rows.size()); ++r)
    for (const auto& [c, x] : rows[r]) entries.at(c).emplace_back(r, x);
  std::vector<SparseInt> cols(ncols);
  for (int c = 0; c < ncols; ++c) cols[c] = std::move(entries[c]);
  ColumnEchelon ce = column_echelon(cols, static_cast<int>(rows.size()), true, order);
  std::vector<SparseInt> ker;
  for (int j : ce.zero_cols) ker.push_back(ce.transform[j]);
  return ker;
}

// ---------------------------------------------------------------- partial elimination

PartialElimination eliminate_on(std::vector<SparseVec> rows, const std::vector<bool>& allowed,
                                bool track, EliminationOrder order) {
  PartialElimination pe;
  const int R = static_cast<int>(rows.size());
  pe.rows = std::move(rows);
  pe.pivot_col.assign(R, -1);
  if (track) {
    pe.combos.resize(R);
    for (int r = 0; r < R; ++r) pe.combos[r] = {{r, Rational(1)}};
  }
  std::vector<int> colorder;
  for (int c = 0; c < static_cast<int>(allowed.size()); ++c)
    if (allowed[c]) colorder.push_back(c);
  if (order == EliminationOrder::ColumnMajor) std::reverse(colorder.begin(), colorder.end());

  // Column occupancy, refreshed lazily: candidate rows are re-checked on use.
  std::vector<std::vector<int>> occ(allowed.size());
  for (int r = 0; r < R; ++r)
    for (const auto& e : pe.rows[r])
      if (allowed[e.first]) occ[e.first].push_back(r);

  for (int c : colorder) {
    int best = -1;
    for (int r : occ[c]) {
      if (pe.pivot_col[r] != -1) continue;
      if (sparse_get(pe.rows[r], c) == 0) continue;
      if (best == -1 || pe.rows[r].size() < pe.rows[best].size() ||
          (pe.rows[r].size() == pe.rows[best].size() &&
           (order == EliminationOrder::RowMajor ? r < best : r > best)))
        best = r;
    }
    if (best == -1) continue;
    Rational inv = 1 / sparse_get(pe.rows[best], c);
    scale(pe.rows[best], inv);
    if (track) scale(pe.combos[best], inv);
    pe.pivot_col[best] = c;
    std::vector<int> touched = occ[c];
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (int r : touched) {
      if (r == best) continue;
      Rational f = sparse_get(pe.rows[r], c);
      if (f == 0) continue;
      axpy(pe.rows[r], Rational(-f), pe.rows[best]);
      if (track) axpy(pe.combos[r], Rational(-f), pe.combos[best]);
      for (const auto& e : pe.rows[best])
        if (allowed[e.first] && e.first != c) occ[e.first].push_back(r);
    }
    occ[c] = {best};
  }
  return pe;
}

MixedKernel mixed_column_kernel(const std::vector<SparseVec>& rows, int ncols,
                                const std::vector<bool>& integer_col, EliminationOrder order) {
  std::vector<bool> allowed(ncols);
  for (int c = 0; c < ncols; ++c) allowed[c] = !integer_col[c];
  PartialElimination pe = eliminate_on(rows, allowed, false, order);

  std::vector<int> int_index(ncols, -1), int_cols;
  for (int c = 0; c < ncols; ++c)
    if (integer_col[c]) {
      int_index[c] = static_cast<int>(int_cols.size());
      int_cols.push_back(c);
    }

  std::vector<SparseInt> constraints;
  std::vector<int> pivot_rows;
  std::vector<bool> is_pivot(ncols, false);
  for (int r = 0; r < static_cast<int>(pe.rows.size()); ++r) {
    if (pe.pivot_col[r] >= 0) {
      pivot_rows.push_back(r);
      is_pivot[pe.pivot_col[r]] = true;
      continue;
    }
    if (pe.rows[r].empty()) continue;
    Integer d = common_denominator(pe.rows[r]);
    SparseInt row;
    for (const auto& [c, x] : pe.rows[r]) row.emplace_back(int_index[c], Rational(x * d).get_num());
    constraints.push_back(std::move(row));
  }

  MixedKernel out;
  for (const SparseInt& n : integer_kernel(constraints, static_cast<int>(int_cols.size()), order)) {
    std::vector<std::pair<int, Rational>> entries;
    std::vector<Rational> dense_n(int_cols.size(), Rational(0));
    for (const auto& [k, x] : n) {
      entries.emplace_back(int_cols[k], Rational(x));
      dense_n[k] = x;
    }
    for (int r : pivot_rows) {
      Rational t = 0;
      for (const auto& [c, x] : pe.rows[r])
        if (integer_col[c]) t -= x * dense_n[int_index[c]];
      if (t != 0) entries.emplace_back(pe.pivot_col[r], t);
    }
    out.lattice.push_back(sparse_from_entries(std::move(entries)));
  }

  std::vector<std::vector<std::pair<int, Rational>>> free_entries(ncols);
  for (int r : pivot_rows)
    for (const auto& [c, x] : pe.rows[r])
      if (!integer_col[c] && c != pe.pivot_col[r]) free_entries[c].emplace_back(pe.pivot_col[r], -x);
  for (int c = 0; c < ncols; ++c) {
    if (integer_col[c] || is_pivot[c]) continue;
    auto entries = std::move(free_entries[c]);
    entries.emplace_back(c, Rational(1));
    out.space.push_back(sparse_from_entries(std::move(entries)));
  }
  return out;
}

}  // namespace edc
