#include "edc/int_matrix.hpp"

#include <algorithm>
#include <utility>

namespace edc {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
  rows_ = static_cast<int>(init.size());
  cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
  a_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& row : init) {
    if (static_cast<int>(row.size()) != cols_) throw StructuralError("ragged matrix literal");
    for (long x : row) a_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& b) const {
  if (cols_ != b.rows_) throw StructuralError("matrix dimension mismatch");
  IntMatrix c(rows_, b.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Integer& x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

void IntMatrix::swap_rows(int i, int k) {
  if (i == k) return;
  for (int j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
}

void IntMatrix::swap_cols(int j, int k) {
  if (j == k) return;
  for (int i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
}

void IntMatrix::add_row(int dst, const Integer& f, int src) {
  if (f == 0) return;
  for (int j = 0; j < cols_; ++j)
    if ((*this)(src, j) != 0) (*this)(dst, j) += f * (*this)(src, j);
}

void IntMatrix::add_col(int dst, const Integer& f, int src) {
  if (f == 0) return;
  for (int i = 0; i < rows_; ++i)
    if ((*this)(i, src) != 0) (*this)(i, dst) += f * (*this)(i, src);
}

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  for (int i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

namespace {

// Matrix plus transforms. A "line" is a row (rows == true) or a column; every operation
// keeps U * input * V == A and Uinv == U^{-1}.
struct SnfState {
  IntMatrix& A;
  IntMatrix& U;
  IntMatrix& Uinv;
  IntMatrix& V;
  bool rows = true;

  int lines() const { return rows ? A.rows() : A.cols(); }
  int length() const { return rows ? A.cols() : A.rows(); }
  Integer& at(int line, int pos) { return rows ? A(line, pos) : A(pos, line); }

  void add(int dst, const Integer& f, int src) {
    if (f == 0) return;
    if (rows) {
      A.add_row(dst, f, src);
      U.add_row(dst, f, src);
      Uinv.add_col(src, -f, dst);
    } else {
      A.add_col(dst, f, src);
      V.add_col(dst, f, src);
    }
  }
  void swap(int i, int k) {
    if (rows) {
      A.swap_rows(i, k);
      U.swap_rows(i, k);
      Uinv.swap_cols(i, k);
    } else {
      A.swap_cols(i, k);
      V.swap_cols(i, k);
    }
  }
  void negate(int i) {
    if (rows) {
      for (int j = 0; j < A.cols(); ++j) A(i, j) = -A(i, j);
      for (int j = 0; j < U.cols(); ++j) U(i, j) = -U(i, j);
      for (int j = 0; j < Uinv.rows(); ++j) Uinv(j, i) = -Uinv(j, i);
    } else {
      for (int j = 0; j < A.rows(); ++j) A(j, i) = -A(j, i);
      for (int j = 0; j < V.rows(); ++j) V(j, i) = -V(j, i);
    }
  }
  // (line i, line k) <- (a Li + b Lk, c Li + d Lk), with ad - bc = 1.
  void combine(int i, int k, const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
    auto mix = [&](Integer& x, Integer& y) {
      const Integer nx = a * x + b * y;
      y = c * x + d * y;
      x = nx;
    };
    if (rows) {
      for (int j = 0; j < A.cols(); ++j) mix(A(i, j), A(k, j));
      for (int j = 0; j < U.cols(); ++j) mix(U(i, j), U(k, j));
      // Uinv <- Uinv * [[d, -b], [-c, a]] on columns i, k.
      for (int j = 0; j < Uinv.rows(); ++j) {
        Integer& x = Uinv(j, i);
        Integer& y = Uinv(j, k);
        const Integer nx = d * x - c * y;
        y = a * y - b * x;
        x = nx;
      }
    } else {
      for (int j = 0; j < A.rows(); ++j) mix(A(j, i), A(j, k));
      for (int j = 0; j < V.rows(); ++j) mix(V(j, i), V(j, k));
    }
  }
  // Clears at(k, pos) against at(i, pos) with one unimodular step; at(i, pos) becomes the gcd.
  void gcd_step(int i, int k, int pos) {
    const Integer x = at(i, pos), y = at(k, pos);
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    combine(i, k, s, t, Integer(-y / g), Integer(x / g));
  }
};

// Echelon form of the trailing block (lines and positions from `from`) along the current side,
// with positive pivots and every entry above a pivot reduced into [0, pivot). Lines are inserted
// one at a time into a reduced echelon form, which keeps intermediate entries small. Returns
// the index one past the last pivot.
int hermite(SnfState& st, int from) {
  std::vector<int> pos_of;                      // pivot position of line from + b
  std::vector<int> pivot_at(st.length(), -1);  // inverse of pos_of
  auto reduce = [&]() {
    std::vector<int> order(pos_of.size());
    for (std::size_t b = 0; b < order.size(); ++b) order[b] = static_cast<int>(b);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return pos_of[x] < pos_of[y]; });
    for (int b : order) {
      const int p = pos_of[b];
      if (st.at(from + b, p) < 0) st.negate(from + b);
      for (int a : order) {
        if (pos_of[a] >= p) break;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), st.at(from + a, p).get_mpz_t(), st.at(from + b, p).get_mpz_t());
        st.add(from + a, -q, from + b);
      }
    }
  };
  for (int k = from; k < st.lines(); ++k) {
    bool touched = false;
    for (int pos = from; pos < st.length(); ++pos) {
      if (st.at(k, pos) == 0) continue;
      touched = true;
      if (pivot_at[pos] >= 0) {
        st.gcd_step(from + pivot_at[pos], k, pos);
        continue;
      }
      const int r = static_cast<int>(pos_of.size());
      st.swap(k, from + r);
      pivot_at[pos] = r;
      pos_of.push_back(pos);
      break;
    }
    if (touched) reduce();
  }
  // Order the pivot lines by position.
  const int r = static_cast<int>(pos_of.size());
  for (int a = 0; a < r; ++a) {
    int best = a;
    for (int b = a + 1; b < r; ++b)
      if (pos_of[b] < pos_of[best]) best = b;
    if (best != a) {
      st.swap(from + a, from + best);
      std::swap(pos_of[a], pos_of[best]);
    }
  }
  return from + r;
}

bool is_diagonal(const IntMatrix& A, int from) {
  for (int i = from; i < A.rows(); ++i)
    for (int j = from; j < A.cols(); ++j)
      if (i != j && A(i, j) != 0) return false;
  return true;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input, EliminationOrder order) {
  const int m = input.rows(), n = input.cols();
  SmithForm f;
  f.S = input;
  f.U = IntMatrix::identity(m);
  f.Uinv = IntMatrix::identity(m);
  f.V = IntMatrix::identity(n);
  SnfState st{f.S, f.U, f.Uinv, f.V};
  IntMatrix& A = f.S;

  const bool rowmajor = order == EliminationOrder::RowMajor;

  // Unit pivots first, chosen to limit fill-in; dividing by ±1 causes no growth.
  int t = 0;
  for (; t < std::min(m, n); ++t) {
    std::vector<int> row_count(m, 0), col_count(n, 0);
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (sgn(A(i, j)) != 0) {
          ++row_count[i];
          ++col_count[j];
        }
    int bi = -1, bj = -1;
    long best = 0;
    auto consider = [&](int i, int j) {
      if (mpz_cmpabs_ui(A(i, j).get_mpz_t(), 1) != 0) return;
      const long cost = static_cast<long>(row_count[i] - 1) * (col_count[j] - 1);
      if (bi < 0 || cost < best) {
        bi = i;
        bj = j;
        best = cost;
      }
    };
    // The scan order breaks ties.
    if (rowmajor) {
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j) consider(i, j);
    } else {
      for (int j = t; j < n; ++j)
        for (int i = t; i < m; ++i) consider(i, j);
    }
    if (bi < 0) break;
    st.rows = true;
    st.swap(t, bi);
    st.rows = false;
    st.swap(t, bj);
    const Integer p = A(t, t);
    st.rows = true;
    for (int i = t + 1; i < m; ++i)
      if (A(i, t) != 0) st.add(i, Integer(-A(i, t) * p), t);
    st.rows = false;
    for (int j = t + 1; j < n; ++j)
      if (A(t, j) != 0) st.add(j, Integer(-A(t, j) * p), t);
  }

  // Alternate row and column Hermite forms on what is left. Each round either finishes or
  // strictly lowers the leading pivot, and the reductions keep entries bounded by the pivots.
  st.rows = rowmajor;
  int rank = hermite(st, t);
  while (!is_diagonal(A, t)) {
    st.rows = !st.rows;
    rank = hermite(st, t);
  }
  // A row echelon diagonal matrix has its pivots at (t, t); a column one also does.
  f.rank = rank;

  // Divisibility chain: diag(a, b) -> diag(gcd, lcm) by one row and one column step.
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j) {
      const Integer a = A(i, i), b = A(j, j);
      if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      st.rows = true;
      st.combine(i, j, s, t, Integer(-b / g), Integer(a / g));
      st.rows = false;
      st.combine(i, j, Integer(1), Integer(1), Integer(-t * b / g), Integer(s * a / g));
    }
  st.rows = true;
  for (int i = 0; i < rank; ++i)
    if (A(i, i) < 0) st.negate(i);
  return f;
}

Integer determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw StructuralError("determinant of a non-square matrix");
  const int n = input.rows();
  IntMatrix a = input;
  Integer prev = 1;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      a.swap_rows(p, k);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace edc
