#include "qlat/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qlat {

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(const std::vector<Rational>& entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Matrix Matrix::from_row_major(const std::vector<Rational>& entries) {
  auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(entries.size()))));
  if (n == 0 || n * n != entries.size())
    throw std::invalid_argument("row-major list length is not a perfect square");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n * n; ++i) m(i / n, i % n) = entries[i];
  return m;
}

bool Matrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  Matrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

Matrix Matrix::scaled(const Rational& c) const {
  Matrix r = *this;
  for (auto& x : r.data_) x *= c;
  return r;
}

Rational Matrix::determinant() const {
  if (!is_square()) throw std::invalid_argument("determinant of non-square matrix");
  Matrix a = *this;
  Rational det = 1;
  const std::size_t n = rows_;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      Rational f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

Matrix Matrix::inverse() const {
  if (!is_square()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = rows_;
  Matrix a = *this;
  Matrix inv = identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) throw std::domain_error("singular matrix");
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    Rational d = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= d;
      inv(c, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      Rational f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

Matrix congruent(const Matrix& gram, const Matrix& basis) {
  return basis.transpose() * gram * basis;
}

int min_ord(const Matrix& m, long p) {
  int best = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) best = std::min(best, ord_p(m(i, j), p));
  if (best == std::numeric_limits<int>::max()) throw std::domain_error("zero matrix has no scale");
  return best;
}

namespace {

// Replaces basis vector j by e_j + c * e_i, updating the form and the basis.
void add_multiple(Matrix& a, Matrix& basis, std::size_t j, std::size_t i, const Rational& c) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) a(k, j) += c * a(k, i);
  for (std::size_t k = 0; k < n; ++k) a(j, k) += c * a(i, k);
  for (std::size_t k = 0; k < basis.rows(); ++k) basis(k, j) += c * basis(k, i);
}

void swap_vectors(Matrix& a, Matrix& basis, std::size_t i, std::size_t j) {
  if (i == j) return;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
  for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
  for (std::size_t k = 0; k < basis.rows(); ++k) std::swap(basis(k, i), basis(k, j));
}

int entry_ord(const Rational& x, long p) {
  return x == 0 ? std::numeric_limits<int>::max() : ord_p(x, p);
}

}  // namespace

std::vector<int> BlockSplitting::block_scales(long p) const {
  std::vector<int> scales;
  std::size_t pos = 0;
  for (auto size : block_sizes) {
    int s = std::numeric_limits<int>::max();
    for (std::size_t i = pos; i < pos + size; ++i)
      for (std::size_t j = pos; j < pos + size; ++j) s = std::min(s, entry_ord(form(i, j), p));
    scales.push_back(s);
    pos += size;
  }
  return scales;
}

BlockSplitting block_split(const Matrix& gram, long p) {
  if (!gram.is_symmetric()) throw std::invalid_argument("Gram matrix must be symmetric");
  if (gram.determinant() == 0) throw std::domain_error("singular Gram matrix");
  const std::size_t n = gram.rows();
  Matrix a = gram;
  Matrix basis = Matrix::identity(n);
  std::vector<std::size_t> sizes;
  std::size_t pos = 0;
  while (pos < n) {
    int best = std::numeric_limits<int>::max();
    std::size_t bi = pos, bj = pos;
    for (std::size_t i = pos; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        int v = entry_ord(a(i, j), p);
        // ties prefer diagonal entries
        if (v < best || (v == best && i == j && bi != bj)) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (bi != bj && p != 2) {
      // Q(e_i + e_j) has the valuation of the off-diagonal entry when p is odd.
      add_multiple(a, basis, bi, bj, 1);
      bj = bi;
    }
    if (bi == bj) {
      swap_vectors(a, basis, pos, bi);
      for (std::size_t k = pos + 1; k < n; ++k) {
        if (a(k, pos) == 0) continue;
        Rational c = -a(k, pos) / a(pos, pos);
        add_multiple(a, basis, k, pos, c);
      }
      sizes.push_back(1);
      pos += 1;
      continue;
    }
    swap_vectors(a, basis, pos, bi);
    swap_vectors(a, basis, pos + 1, bj == pos ? bi : bj);
    Rational b00 = a(pos, pos), b01 = a(pos, pos + 1), b11 = a(pos + 1, pos + 1);
    Rational det = b00 * b11 - b01 * b01;
    for (std::size_t k = pos + 2; k < n; ++k) {
      Rational u = a(pos, k), w = a(pos + 1, k);
      if (u == 0 && w == 0) continue;
      // coefficients solving B c = (u, w)
      Rational c0 = (b11 * u - b01 * w) / det;
      Rational c1 = (b00 * w - b01 * u) / det;
      add_multiple(a, basis, k, pos, -c0);
      add_multiple(a, basis, k, pos + 1, -c1);
    }
    sizes.push_back(2);
    pos += 2;
  }
  return BlockSplitting{std::move(basis), std::move(a), std::move(sizes)};
}

std::vector<Rational> diagonalize_over_q(const Matrix& gram) {
  if (!gram.is_symmetric()) throw std::invalid_argument("Gram matrix must be symmetric");
  const std::size_t n = gram.rows();
  Matrix a = gram;
  Matrix basis = Matrix::identity(n);
  std::vector<Rational> diag;
  for (std::size_t pos = 0; pos < n; ++pos) {
    std::size_t piv = pos;
    while (piv < n && a(piv, piv) == 0) ++piv;
    if (piv == n) {
      bool fixed = false;
      for (std::size_t i = pos; i < n && !fixed; ++i)
        for (std::size_t j = i + 1; j < n && !fixed; ++j)
          if (a(i, j) != 0) {
            add_multiple(a, basis, i, j, 1);
            piv = i;
            fixed = true;
          }
      if (!fixed) throw std::domain_error("singular Gram matrix");
    }
    swap_vectors(a, basis, pos, piv);
    for (std::size_t k = pos + 1; k < n; ++k) {
      if (a(k, pos) == 0) continue;
      add_multiple(a, basis, k, pos, -a(k, pos) / a(pos, pos));
    }
    diag.push_back(a(pos, pos));
  }
  return diag;
}

}  // namespace qlat
