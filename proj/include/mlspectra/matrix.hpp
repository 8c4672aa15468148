#pragma once

#include "mlspectra/scalar.hpp"

#include <cassert>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlspectra {

// Small dense row-major matrix. Used for products of symmetric matrices
// (XY is not symmetric) and for exact elimination.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, T(0)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int l = 0; l < a.cols_; ++l) {
        const T& ail = a(i, l);
        if (is_exact_zero(ail)) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += ail * b(l, j);
      }
    return c;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

// Symmetric n x n matrix; only the upper triangle is stored.
template <class T>
class SymMat {
 public:
  SymMat() = default;
  explicit SymMat(int n) : n_(n), data_(std::size_t(n) * (n + 1) / 2, T(0)) {
    if (n < 1) throw std::invalid_argument("SymMat: n must be >= 1");
  }

  static SymMat identity(int n) {
    SymMat m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, T(1));
    return m;
  }

  // E_ii for i == j, otherwise E_ij + E_ji.
  static SymMat unit(int n, int i, int j) {
    SymMat m(n);
    m.set(i, j, T(1));
    return m;
  }

  static SymMat diagonal(std::span<const T> d) {
    SymMat m(static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m.set(int(i), int(i), d[i]);
    return m;
  }

  // Rejects non-symmetric input (exact comparison).
  static SymMat from_dense(const Matrix<T>& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("SymMat: matrix not square");
    SymMat m(a.rows());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = i; j < a.cols(); ++j) {
        if (!(a(i, j) == a(j, i))) throw std::invalid_argument("SymMat: matrix not symmetric");
        m.set(i, j, a(i, j));
      }
    return m;
  }

  static SymMat from_packed(int n, std::vector<T> packed) {
    SymMat m(n);
    if (packed.size() != m.data_.size()) throw std::invalid_argument("SymMat: packed size mismatch");
    m.data_ = std::move(packed);
    return m;
  }

  int n() const { return n_; }
  static std::size_t packed_size(int n) { return std::size_t(n) * (n + 1) / 2; }
  static std::size_t index(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    return std::size_t(i) * n - std::size_t(i) * (i - 1) / 2 + (j - i);
  }

  const T& operator()(int i, int j) const { return data_[index(n_, i, j)]; }
  void set(int i, int j, T v) { data_[index(n_, i, j)] = std::move(v); }
  T& at(int i, int j) { return data_[index(n_, i, j)]; }

  std::span<const T> packed() const { return data_; }

  Matrix<T> dense() const {
    Matrix<T> a(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) a(i, j) = (*this)(i, j);
    return a;
  }

  template <class U>
  SymMat<U> cast() const {
    std::vector<U> out;
    out.reserve(data_.size());
    for (const auto& v : data_) out.push_back(scalar_cast<U>(v));
    return SymMat<U>::from_packed(n_, std::move(out));
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!is_exact_zero(v)) return false;
    return true;
  }

  SymMat& operator+=(const SymMat& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  SymMat& operator-=(const SymMat& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  SymMat& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  friend SymMat operator+(SymMat a, const SymMat& b) { return a += b; }
  friend SymMat operator-(SymMat a, const SymMat& b) { return a -= b; }
  friend SymMat operator*(SymMat a, const T& s) { return a *= s; }
  friend SymMat operator*(const T& s, SymMat a) { return a *= s; }
  friend SymMat operator-(SymMat a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }
  friend bool operator==(const SymMat&, const SymMat&) = default;

 private:
  void check_same(const SymMat& o) const {
    if (o.n_ != n_) throw std::invalid_argument("SymMat: dimension mismatch");
  }

  int n_ = 0;
  std::vector<T> data_;
};

using SymMatQ = SymMat<Rational>;
using SymMatR = SymMat<double>;
using SymMatC = SymMat<Complex>;

template <class T>
Matrix<T> operator*(const SymMat<T>& a, const SymMat<T>& b) {
  return a.dense() * b.dense();
}

// Parses n*n row-major entries into a symmetric matrix.
SymMatQ symmat_from_strings(int n, std::span<const std::string> entries);

}  // namespace mlspectra
