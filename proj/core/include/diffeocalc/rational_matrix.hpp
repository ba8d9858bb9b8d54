#ifndef DIFFEOCALC_RATIONAL_MATRIX_HPP
#define DIFFEOCALC_RATIONAL_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "diffeocalc/rational.hpp"

namespace diffeocalc {

/// Dense matrix over Q with exact Gaussian elimination. Sized for the
/// desk-scale problems of this project (hundreds of rows), not for
/// large-scale numerics.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void append_row(const std::vector<Rational>& row);
  std::vector<Rational> row(std::size_t r) const;

  RationalMatrix transposed() const;
  RationalMatrix operator*(const RationalMatrix& other) const;
  std::vector<Rational> apply(const std::vector<Rational>& x) const;

  /// Appends the columns of `other` on the right (row counts must match).
  RationalMatrix augmented(const RationalMatrix& other) const;

  bool is_zero() const;

  std::size_t rank() const;

  /// Reduced row echelon form (in place); returns the pivot columns.
  std::vector<std::size_t> reduce();

  /// Basis of the right nullspace, one vector per column of the result.
  std::vector<std::vector<Rational>> nullspace_basis() const;

  /// True when b lies in the column span, i.e. A x = b is solvable.
  bool solvable(const std::vector<Rational>& b) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace diffeocalc

#endif
