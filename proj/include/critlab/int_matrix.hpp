#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "critlab/arith.hpp"

namespace critlab {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(std::span<const Integer> entries);
  static IntMatrix diagonal(std::initializer_list<long> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Integer> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Integer> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<Integer> column(std::size_t c) const;
  std::span<const Integer> entries() const noexcept { return data_; }

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  IntMatrix transposed() const;
  /// Copy with row `r` and column `c` deleted.
  IntMatrix minor_matrix(std::size_t r, std::size_t c) const;
  /// Copy restricted to the given row and column indices, in that order.
  IntMatrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
  /// Column concatenation [*this | other]; row counts must agree.
  IntMatrix hconcat(const IntMatrix& other) const;

  bool is_zero() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Integer& s, const IntMatrix& a);

  std::vector<Integer> apply(std::span<const Integer> x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Text format: "rows cols" followed by rows*cols decimal integers.
IntMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const IntMatrix& m);

}  // namespace critlab
