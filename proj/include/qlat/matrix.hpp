#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "qlat/rational.hpp"

namespace qlat {

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const std::vector<Rational>& entries);
  /// Square matrix from a row-major list; throws unless the length is a perfect square.
  static Matrix from_row_major(const std::vector<Rational>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix scaled(const Rational& c) const;
  bool operator==(const Matrix& other) const = default;

  Rational determinant() const;
  /// Throws std::domain_error when singular.
  Matrix inverse() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Block direct sum.
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Congruence transform P^T G P.
Matrix congruent(const Matrix& gram, const Matrix& basis);

/// Minimal p-adic valuation over the nonzero entries (the scale exponent).
int min_ord(const Matrix& m, long p);

/// A p-adic block splitting: basis^T * gram * basis is block diagonal with
/// blocks of size 1, or 2 when p = 2 and no diagonal entry reaches the scale.
struct BlockSplitting {
  Matrix basis;  ///< columns are the new basis vectors, unimodular over Z_p
  Matrix form;   ///< block diagonal Gram matrix
  std::vector<std::size_t> block_sizes;

  /// Scale exponent of each block.
  std::vector<int> block_scales(long p) const;
};

/// Splits a nonsingular Gram matrix over Z_p by pivoting on entries of minimal
/// valuation. Throws std::domain_error for singular input.
BlockSplitting block_split(const Matrix& gram, long p);

/// Diagonalization over Q (no integrality), used for space invariants.
std::vector<Rational> diagonalize_over_q(const Matrix& gram);

}  // namespace qlat
