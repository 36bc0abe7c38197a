#pragma once

// Dense matrices over an exact field and the elimination routines built on
// them. Elimination always pivots on the first nonzero entry, so the reduced
// form of a given input is reproducible bit for bit.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cubecalc/error.hpp"
#include "cubecalc/field.hpp"

namespace cubecalc {

template <Field F>
using Vec = std::vector<F>;

template <Field F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<F> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    detail::require(data_.size() == rows_ * cols_, "matrix entry count does not match shape");
  }

  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F::from_int(1);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<F>>& rows, std::size_t cols_if_empty = 0) {
    std::size_t c = rows.empty() ? cols_if_empty : rows[0].size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      detail::require(rows[i].size() == c, "ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix from_ints(std::size_t rows, std::size_t cols, const std::vector<long>& entries) {
    detail::require(entries.size() == rows * cols, "matrix entry count does not match shape");
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < entries.size(); ++i) m.data_[i] = F::from_int(entries[i]);
    return m;
  }
  static Matrix column(const Vec<F>& v) { return Matrix(v.size(), 1, v); }
  static Matrix random(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    Matrix m(rows, cols);
    for (auto& x : m.data_) x = F::random(rng);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<F>& data() const { return data_; }

  F* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
  const F* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const F& x) { return x.is_zero(); });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    detail::require(cols_ == o.rows_, "matrix product shape mismatch: " + shape() + " * " + o.shape());
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      F* out = r.row_ptr(i);
      const F* a = row_ptr(i);
      for (std::size_t k = 0; k < cols_; ++k) {
        if (a[k].is_zero()) continue;
        const F* b = o.row_ptr(k);
        for (std::size_t j = 0; j < o.cols_; ++j) out[j] += a[k] * b[j];
      }
    }
    return r;
  }

  Vec<F> operator*(const Vec<F>& v) const {
    detail::require(cols_ == v.size(), "matrix-vector shape mismatch");
    Vec<F> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      const F* a = row_ptr(i);
      for (std::size_t k = 0; k < cols_; ++k)
        if (!a[k].is_zero()) r[i] += a[k] * v[k];
    }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    detail::require(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum shape mismatch");
    Matrix r(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    detail::require(rows_ == o.rows_ && cols_ == o.cols_, "matrix difference shape mismatch");
    Matrix r(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }
  Matrix operator-() const {
    Matrix r(*this);
    for (auto& x : r.data_) x = -x;
    return r;
  }
  Matrix scaled(const F& s) const {
    Matrix r(*this);
    for (auto& x : r.data_) x *= s;
    return r;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    detail::require(r0 + nr <= rows_ && c0 + nc <= cols_, "block out of range");
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    detail::require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "set_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix select_columns(const std::vector<std::size_t>& idx) const {
    Matrix r(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
    return r;
  }
  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix r(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
    return r;
  }
  Vec<F> column_vector(std::size_t j) const {
    Vec<F> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  // [A | B]
  static Matrix hcat(const Matrix& a, const Matrix& b) {
    detail::require(a.rows_ == b.rows_, "hcat row mismatch");
    Matrix r(a.rows_, a.cols_ + b.cols_);
    r.set_block(0, 0, a);
    r.set_block(0, a.cols_, b);
    return r;
  }
  static Matrix vcat(const Matrix& a, const Matrix& b) {
    detail::require(a.cols_ == b.cols_, "vcat column mismatch");
    Matrix r(a.rows_ + b.rows_, a.cols_);
    r.set_block(0, 0, a);
    r.set_block(a.rows_, 0, b);
    return r;
  }
  static Matrix direct_sum(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows_ + b.rows_, a.cols_ + b.cols_);
    r.set_block(0, 0, a);
    r.set_block(a.rows_, a.cols_, b);
    return r;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

template <Field F>
struct Echelon {
  Matrix<F> reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Gauss-Jordan to reduced row echelon form.
template <Field F>
Echelon<F> rref(Matrix<F> m) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    m.swap_rows(p, r);
    F inv = m(r, c).inverse();
    F* pr = m.row_ptr(r);
    for (std::size_t j = c; j < cols; ++j) pr[j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      F* pi = m.row_ptr(i);
      if (pi[c].is_zero()) continue;
      F factor = pi[c];
      for (std::size_t j = c; j < cols; ++j)
        if (!pr[j].is_zero()) pi[j] -= factor * pr[j];
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

// Forward elimination only; returns pivot columns.
template <Field F>
std::vector<std::size_t> pivot_columns(Matrix<F> m) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    m.swap_rows(p, r);
    F inv = m(r, c).inverse();
    const F* pr = m.row_ptr(r);
    for (std::size_t i = r + 1; i < rows; ++i) {
      F* pi = m.row_ptr(i);
      if (pi[c].is_zero()) continue;
      F factor = pi[c] * inv;
      for (std::size_t j = c; j < cols; ++j)
        if (!pr[j].is_zero()) pi[j] -= factor * pr[j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <Field F>
std::size_t rank(const Matrix<F>& m) {
  if (m.empty()) return 0;
  // eliminate along the shorter side
  if (m.cols() > m.rows()) return pivot_columns(m.transpose()).size();
  return pivot_columns(m).size();
}

template <Field F>
std::vector<Vec<F>> kernel_basis(const Matrix<F>& m) {
  auto [r, pivots] = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::vector<Vec<F>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec<F> v(m.cols());
    v[f] = F::from_int(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Kernel basis as the columns of a matrix.
template <Field F>
Matrix<F> null_space(const Matrix<F>& m) {
  auto basis = kernel_basis(m);
  Matrix<F> k(m.cols(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i) k(i, j) = basis[j][i];
  return k;
}

template <Field F>
std::optional<Vec<F>> solve(const Matrix<F>& m, const Vec<F>& b) {
  if (b.size() != m.rows())
    throw UsageError("solve: right-hand side has length " + std::to_string(b.size()) +
                     ", expected " + std::to_string(m.rows()));
  auto [r, pivots] = rref(Matrix<F>::hcat(m, Matrix<F>::column(b)));
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vec<F> x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = r(i, m.cols());
  return x;
}

// Some X with m * X = b, if one exists.
template <Field F>
std::optional<Matrix<F>> solve_matrix(const Matrix<F>& m, const Matrix<F>& b) {
  if (b.rows() != m.rows())
    throw UsageError("solve_matrix: right-hand side has " + std::to_string(b.rows()) +
                     " rows, expected " + std::to_string(m.rows()));
  auto [r, pivots] = rref(Matrix<F>::hcat(m, b));
  Matrix<F> x(m.cols(), b.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] >= m.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(pivots[i], j) = r(i, m.cols() + j);
  }
  return x;
}

template <Field F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto [r, pivots] = rref(Matrix<F>::hcat(m, Matrix<F>::identity(m.rows())));
  if (pivots.size() < m.rows() || (m.rows() > 0 && pivots[m.rows() - 1] >= m.cols())) return std::nullopt;
  return r.block(0, m.cols(), m.rows(), m.rows());
}

template <Field F>
bool is_invertible(const Matrix<F>& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

// Indices of a maximal independent set of columns (first-fit).
template <Field F>
std::vector<std::size_t> independent_columns(const Matrix<F>& m) {
  return pivot_columns(m);
}

template <Field F>
Matrix<F> column_space(const Matrix<F>& m) {
  return m.select_columns(independent_columns(m));
}

// Standard basis vectors e_i completing the (independent) columns of m to a basis.
template <Field F>
std::vector<std::size_t> complement_columns(const Matrix<F>& m) {
  auto pivots = pivot_columns(Matrix<F>::hcat(m, Matrix<F>::identity(m.rows())));
  std::vector<std::size_t> out;
  for (auto c : pivots)
    if (c >= m.cols()) out.push_back(c - m.cols());
  return out;
}

template <Field F>
Matrix<F> unit_columns(std::size_t n, const std::vector<std::size_t>& idx) {
  Matrix<F> m(n, idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) m(idx[j], j) = F::from_int(1);
  return m;
}

}  // namespace cubecalc
