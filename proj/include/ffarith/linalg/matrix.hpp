#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffarith/error.hpp"

namespace ffarith {

/// Dense row-major matrix over a field-like value type R.
///
/// R must provide +, -, *, unary -, inverse(), is_zero() and a free
/// pivot_weight(const R&) (smaller is preferred as a pivot). There is no
/// default element, so zero and one are passed in where they are needed.
template <class R>
class Matrix {
 public:
  Matrix(int rows, int cols, const R& fill)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}
  Matrix(int rows, int cols, std::vector<R> entries) : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
      fail(ErrorKind::kDimensionMismatch, "matrix entry count does not match its shape");
    }
  }

  static Matrix identity(int n, const R& zero, const R& one) {
    Matrix m(n, n, zero);
    for (int i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }
  static Matrix scalar(int n, const R& zero, const R& value) { return identity(n, zero, value); }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  R& operator()(int i, int j) { return data_[index(i, j)]; }
  const R& operator()(int i, int j) const { return data_[index(i, j)]; }
  const std::vector<R>& entries() const noexcept { return data_; }

  bool is_zero() const {
    for (const auto& x : data_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  /// True when off-diagonal entries vanish and the diagonal entries are equal.
  bool is_scalar() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) {
        if (i != j && !(*this)(i, j).is_zero()) return false;
      }
      if (i > 0 && !((*this)(i, i) - (*this)(0, 0)).is_zero()) return false;
    }
    return true;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const R&>()))> {
    using S = decltype(f(std::declval<const R&>()));
    std::vector<S> out;
    out.reserve(data_.size());
    for (const auto& x : data_) out.push_back(f(x));
    return Matrix<S>(rows_, cols_, std::move(out));
  }

  Matrix transposed() const {
    std::vector<R> out;
    out.reserve(data_.size());
    for (int j = 0; j < cols_; ++j) {
      for (int i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    }
    return Matrix(cols_, rows_, std::move(out));
  }

  Matrix block(int r0, int c0, int nr, int nc) const {
    std::vector<R> out;
    out.reserve(static_cast<std::size_t>(nr) * static_cast<std::size_t>(nc));
    for (int i = 0; i < nr; ++i) {
      for (int j = 0; j < nc; ++j) out.push_back((*this)(r0 + i, c0 + j));
    }
    return Matrix(nr, nc, std::move(out));
  }

  Matrix select_columns(const std::vector<int>& cols) const {
    std::vector<R> out;
    out.reserve(static_cast<std::size_t>(rows_) * cols.size());
    for (int i = 0; i < rows_; ++i) {
      for (int j : cols) out.push_back((*this)(i, j));
    }
    return Matrix(rows_, static_cast<int>(cols.size()), std::move(out));
  }

  Matrix operator-() const {
    return map([](const R& x) { return -x; });
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    std::vector<R> out;
    out.reserve(a.data_.size());
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.push_back(a.data_[i] + b.data_[i]);
    return Matrix(a.rows_, a.cols_, std::move(out));
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    std::vector<R> out;
    out.reserve(a.data_.size());
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.push_back(a.data_[i] - b.data_[i]);
    return Matrix(a.rows_, a.cols_, std::move(out));
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      fail(ErrorKind::kDimensionMismatch, "cannot multiply " + a.shape() + " by " + b.shape());
    }
    std::vector<R> out;
    out.reserve(static_cast<std::size_t>(a.rows_) * static_cast<std::size_t>(b.cols_));
    for (int i = 0; i < a.rows_; ++i) {
      for (int j = 0; j < b.cols_; ++j) {
        R acc = a(i, 0) * b(0, j);
        for (int k = 1; k < a.cols_; ++k) acc = acc + a(i, k) * b(k, j);
        out.push_back(std::move(acc));
      }
    }
    return Matrix(a.rows_, b.cols_, std::move(out));
  }

  friend Matrix operator*(const R& c, const Matrix& a) {
    return a.map([&c](const R& x) { return c * x; });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  void check_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) fail(ErrorKind::kDimensionMismatch, shape() + " vs " + b.shape());
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j);
  }

  int rows_;
  int cols_;
  std::vector<R> data_;
};

/// Reduced row echelon form with pivots scaled to one.
template <class R>
struct Reduction {
  Matrix<R> reduced;
  std::vector<int> pivot_columns;
  /// Product of the pivots with the sign of the row permutation: the
  /// determinant when the input is square of full rank.
  R pivot_product;
};

/// Gauss-Jordan elimination on the first `limit_cols` columns (all by default).
template <class R>
Reduction<R> reduce(Matrix<R> a, const R& one, int limit_cols = -1) {
  const int nr = a.rows();
  const int nc = limit_cols < 0 ? a.cols() : limit_cols;
  Reduction<R> out{a, {}, one};
  int row = 0;
  for (int col = 0; col < nc && row < nr; ++col) {
    int best = -1;
    for (int i = row; i < nr; ++i) {
      if (a(i, col).is_zero()) continue;
      if (best < 0 || pivot_weight(a(i, col)) < pivot_weight(a(best, col))) best = i;
    }
    if (best < 0) continue;
    if (best != row) {
      for (int j = 0; j < a.cols(); ++j) std::swap(a(best, j), a(row, j));
      out.pivot_product = -out.pivot_product;
    }
    const R pivot = a(row, col);
    out.pivot_product = out.pivot_product * pivot;
    const R inv = pivot.inverse();
    for (int j = 0; j < a.cols(); ++j) a(row, j) = (j == col) ? one : inv * a(row, j);
    for (int i = 0; i < nr; ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const R factor = a(i, col);
      for (int j = 0; j < a.cols(); ++j) {
        if (j == col) {
          a(i, j) = a(i, j) - factor;
        } else if (!a(row, j).is_zero()) {
          a(i, j) = a(i, j) - factor * a(row, j);
        }
      }
    }
    out.pivot_columns.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

template <class R>
int rank(const Matrix<R>& a, const R& one) {
  return static_cast<int>(reduce(a, one).pivot_columns.size());
}

template <class R>
R determinant(const Matrix<R>& a, const R& zero, const R& one) {
  if (!a.is_square()) fail(ErrorKind::kDimensionMismatch, "determinant of a non-square matrix");
  auto red = reduce(a, one);
  if (static_cast<int>(red.pivot_columns.size()) < a.rows()) return zero;
  return red.pivot_product;
}

/// X with A X = B for square invertible A; nullopt when A is singular.
template <class R>
std::optional<Matrix<R>> solve(const Matrix<R>& a, const Matrix<R>& b, const R& one) {
  if (!a.is_square() || a.rows() != b.rows()) fail(ErrorKind::kDimensionMismatch, "solve " + a.shape() + " with " + b.shape());
  const int n = a.rows();
  std::vector<R> aug;
  aug.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n + b.cols()));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.push_back(a(i, j));
    for (int j = 0; j < b.cols(); ++j) aug.push_back(b(i, j));
  }
  auto red = reduce(Matrix<R>(n, n + b.cols(), std::move(aug)), one, n);
  if (static_cast<int>(red.pivot_columns.size()) < n) return std::nullopt;
  return red.reduced.block(0, n, n, b.cols());
}

template <class R>
std::optional<Matrix<R>> inverse(const Matrix<R>& a, const R& zero, const R& one) {
  return solve(a, Matrix<R>::identity(a.rows(), zero, one), one);
}

/// Basis of the right kernel {v : A v = 0}, one vector per free column.
template <class R>
std::vector<std::vector<R>> kernel(const Matrix<R>& a, const R& zero, const R& one) {
  auto red = reduce(a, one);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (int c : red.pivot_columns) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<R>> basis;
  for (int f = 0; f < a.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<R> v(static_cast<std::size_t>(a.cols()), zero);
    v[static_cast<std::size_t>(f)] = one;
    for (std::size_t r = 0; r < red.pivot_columns.size(); ++r) {
      v[static_cast<std::size_t>(red.pivot_columns[r])] = -red.reduced(static_cast<int>(r), f);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class R>
Matrix<R> matrix_power(const Matrix<R>& a, unsigned n, const R& zero, const R& one) {
  Matrix<R> result = Matrix<R>::identity(a.rows(), zero, one);
  Matrix<R> base = a;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace ffarith
