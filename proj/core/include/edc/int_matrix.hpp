#pragma once

#include <vector>

#include "edc/numeric.hpp"
#include "edc/sparse.hpp"

namespace edc {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init);

  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Integer& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Integer& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& b) const;
  bool operator==(const IntMatrix& b) const = default;
  bool is_zero() const;

  void swap_rows(int i, int k);
  void swap_cols(int j, int k);
  void add_row(int dst, const Integer& f, int src);  // row dst += f * row src
  void add_col(int dst, const Integer& f, int src);  // col dst += f * col src

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Integer> a_;
};

struct SmithForm {
  IntMatrix U, S, V;  // U * A * V = S
  IntMatrix Uinv;     // inverse of U
  int rank = 0;
  std::vector<Integer> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& A, EliminationOrder order = EliminationOrder::RowMajor);

// Determinant by fraction-free elimination.
Integer determinant(const IntMatrix& A);

}  // namespace edc
