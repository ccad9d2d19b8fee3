#pragma once

// Small dense matrices (up to 8x8), stack-allocated, value semantics.
// Everything a switching-system analysis at dimension <= 8 needs and
// nothing more; no heap traffic in enumeration inner loops.

#include <array>
#include <cmath>
#include <initializer_list>
#include <span>
#include <vector>

#include "lss/errors.hpp"

namespace lss {

inline constexpr int kMaxDim = 8;

class Vec {
 public:
  Vec() = default;
  explicit Vec(int n, double fill = 0.0) : n_(n) {
    if (n < 0 || n > kMaxDim) throw invalid_input("Vec: dimension out of range");
    a_.fill(0.0);
    for (int i = 0; i < n; ++i) a_[i] = fill;
  }
  Vec(std::initializer_list<double> xs) : n_(static_cast<int>(xs.size())) {
    if (n_ > kMaxDim) throw invalid_input("Vec: dimension out of range");
    a_.fill(0.0);
    int i = 0;
    for (double x : xs) a_[i++] = x;
  }
  static Vec unit(int n, int j) {
    Vec v(n);
    v[j] = 1.0;
    return v;
  }

  int size() const { return n_; }
  double& operator[](int i) { return a_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return a_[static_cast<std::size_t>(i)]; }

  double norm2() const {
    double s = 0;
    for (int i = 0; i < n_; ++i) s += a_[i] * a_[i];
    return std::sqrt(s);
  }
  bool finite() const {
    for (int i = 0; i < n_; ++i)
      if (!std::isfinite(a_[i])) return false;
    return true;
  }

  friend Vec operator+(const Vec& x, const Vec& y) {
    Vec r(x.n_);
    for (int i = 0; i < x.n_; ++i) r[i] = x[i] + y[i];
    return r;
  }
  friend Vec operator-(const Vec& x, const Vec& y) {
    Vec r(x.n_);
    for (int i = 0; i < x.n_; ++i) r[i] = x[i] - y[i];
    return r;
  }
  friend Vec operator*(double c, const Vec& x) {
    Vec r(x.n_);
    for (int i = 0; i < x.n_; ++i) r[i] = c * x[i];
    return r;
  }
  friend bool operator==(const Vec& x, const Vec& y) {
    if (x.n_ != y.n_) return false;
    for (int i = 0; i < x.n_; ++i)
      if (x[i] != y[i]) return false;
    return true;
  }

 private:
  std::array<double, kMaxDim> a_{};
  int n_ = 0;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols) {
    if (rows < 0 || cols < 0 || rows > kMaxDim || cols > kMaxDim)
      throw invalid_input("Matrix: dimension out of range (max 8)");
    a_.fill(0.0);
  }

  // Row-major nested-list construction: Matrix{{1,2},{0,-1}}.
  Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    r_ = static_cast<int>(rows.size());
    c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
    if (r_ > kMaxDim || c_ > kMaxDim) throw invalid_input("Matrix: dimension out of range (max 8)");
    a_.fill(0.0);
    int i = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != c_) throw invalid_input("Matrix: ragged rows");
      int j = 0;
      for (double x : row) (*this)(i, j++) = x;
      ++i;
    }
  }

  static Matrix identity(int d) {
    Matrix m(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
  }
  static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }
  static Matrix diag(std::initializer_list<double> d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    int i = 0;
    for (double x : d) m(i, i) = x, ++i;
    return m;
  }
  static Matrix from_row_major(int rows, int cols, std::span<const double> entries) {
    if (static_cast<int>(entries.size()) != rows * cols)
      throw invalid_input("Matrix: entry count does not match dimensions");
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = entries[static_cast<std::size_t>(i * cols + j)];
    return m;
  }
  static Matrix rotation2(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return Matrix{{c, -s}, {s, c}};
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  bool square() const { return r_ == c_ && r_ > 0; }

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * c_ + j)]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * c_ + j)]; }

  bool finite() const {
    for (int i = 0; i < r_ * c_; ++i)
      if (!std::isfinite(a_[static_cast<std::size_t>(i)])) return false;
    return true;
  }

  Matrix transposed() const {
    Matrix t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(int i0, int j0, int rows, int cols) const {
    Matrix b(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
  }
  void set_block(int i0, int j0, const Matrix& b) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

  double max_abs() const {
    double m = 0;
    for (int i = 0; i < r_ * c_; ++i) m = std::max(m, std::fabs(a_[static_cast<std::size_t>(i)]));
    return m;
  }
  double frobenius() const {
    double s = 0;
    for (int i = 0; i < r_ * c_; ++i) s += a_[static_cast<std::size_t>(i)] * a_[static_cast<std::size_t>(i)];
    return std::sqrt(s);
  }
  double trace() const {
    double s = 0;
    for (int i = 0; i < r_; ++i) s += (*this)(i, i);
    return s;
  }

  std::vector<double> row_major() const {
    return std::vector<double>(a_.begin(), a_.begin() + r_ * c_);
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    if (x.r_ != y.r_ || x.c_ != y.c_) return false;
    for (int i = 0; i < x.r_ * x.c_; ++i)
      if (x.a_[static_cast<std::size_t>(i)] != y.a_[static_cast<std::size_t>(i)]) return false;
    return true;
  }

 private:
  std::array<double, static_cast<std::size_t>(kMaxDim * kMaxDim)> a_{};
  int r_ = 0, c_ = 0;
};

inline Matrix operator*(const Matrix& x, const Matrix& y) {
  Matrix r(x.rows(), y.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int k = 0; k < x.cols(); ++k) {
      const double v = x(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < y.cols(); ++j) r(i, j) += v * y(k, j);
    }
  return r;
}

inline Vec operator*(const Matrix& m, const Vec& v) {
  Vec r(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    double s = 0;
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

inline Matrix operator+(const Matrix& x, const Matrix& y) {
  Matrix r(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) r(i, j) = x(i, j) + y(i, j);
  return r;
}

inline Matrix operator-(const Matrix& x, const Matrix& y) {
  Matrix r(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) r(i, j) = x(i, j) - y(i, j);
  return r;
}

inline Matrix operator*(double c, const Matrix& x) {
  Matrix r(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) r(i, j) = c * x(i, j);
  return r;
}

inline Matrix matrix_power(Matrix base, long long e) {
  Matrix acc = Matrix::identity(base.rows());
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

}  // namespace lss
