#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "textile/errors.hpp"

namespace textile {

/// Dense row-major matrix. Used with std::int64_t for the combinatorial
/// matrices (A, B, A_kappa, ...) and with an arbitrary-precision integer for
/// the normal-form computations.
template <class T>
class Matrix {
public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw InputError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  /// The n x n matrix with every entry 1.
  static Matrix all_ones(std::size_t n) { return Matrix(n, n, T{1}); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_,
                     data_.begin() + b * cols_);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    Matrix<decltype(f(std::declval<const T&>()))> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    require_same_shape(x, y);
    Matrix out = x;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += y.data_[k];
    return out;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    require_same_shape(x, y);
    Matrix out = x;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= y.data_[k];
    return out;
  }
  friend Matrix operator-(const Matrix& x) {
    Matrix out = x;
    for (auto& v : out.data_) v = -v;
    return out;
  }
  friend Matrix operator*(const T& s, const Matrix& x) {
    Matrix out = x;
    for (auto& v : out.data_) v *= s;
    return out;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw InputError("matrix product: inner dimensions differ");
    Matrix out(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const T& xik = x(i, k);
        if (xik == T{0}) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += xik * y(k, j);
      }
    return out;
  }

private:
  static void require_same_shape(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw InputError("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Nonnegative integer matrices describing graphs and textile systems.
using CountMatrix = Matrix<std::int64_t>;

/// Kronecker product: block (i,j) of the result is c(i,j) * d.
template <class T>
Matrix<T> kronecker(const Matrix<T>& c, const Matrix<T>& d) {
  Matrix<T> out(c.rows() * d.rows(), c.cols() * d.cols());
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) {
      const T& cij = c(i, j);
      if (cij == T{0}) continue;
      for (std::size_t k = 0; k < d.rows(); ++k)
        for (std::size_t l = 0; l < d.cols(); ++l)
          out(i * d.rows() + k, j * d.cols() + l) = cij * d(k, l);
    }
  return out;
}

/// [[a, b], [c, d]] assembled from four equally shaped blocks.
template <class T>
Matrix<T> block2x2(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& c,
                   const Matrix<T>& d) {
  const std::size_t r = a.rows(), k = a.cols();
  for (const auto* m : {&b, &c, &d})
    if (m->rows() != r || m->cols() != k) throw InputError("block shapes differ");
  Matrix<T> out(2 * r, 2 * k);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      out(i, j) = a(i, j);
      out(i, j + k) = b(i, j);
      out(i + r, j) = c(i, j);
      out(i + r, j + k) = d(i, j);
    }
  return out;
}

/// Rejects non-square matrices and negative entries.
inline void require_square_nonnegative(const CountMatrix& m, const std::string& what) {
  if (!m.square()) throw InputError(what + ": matrix is not square");
  if (m.rows() == 0) throw InputError(what + ": matrix is empty");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) < 0)
        throw InputError(what + ": negative entry at (" + std::to_string(i + 1) + "," +
                         std::to_string(j + 1) + ")");
}

} // namespace textile
