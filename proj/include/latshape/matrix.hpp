#pragma once

#include "latshape/numeric.hpp"

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <vector>

namespace latshape {

template <class T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    r_ = init.size();
    c_ = r_ ? init.begin()->size() : 0;
    a_.reserve(r_ * c_);
    for (auto &row : init) {
      if (row.size() != c_) throw MathError("ragged matrix literal");
      for (auto &x : row) a_.push_back(x);
    }
  }
  static Matrix from_rows(const std::vector<std::vector<T>> &rows, std::size_t cols = 0) {
    Matrix m(rows.size(), rows.empty() ? cols : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.c_) throw MathError("ragged matrix");
      for (std::size_t j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool empty() const { return r_ == 0 || c_ == 0; }

  T &operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
  }
  void set_row(std::size_t i, const std::vector<T> &v) {
    for (std::size_t j = 0; j < c_; ++j) (*this)(i, j) = v[j];
  }
  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < c_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }
  void swap_cols(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < r_; ++j) std::swap((*this)(j, i), (*this)(j, k));
  }
  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  Matrix select_rows(std::size_t r0, std::size_t nr) const { return block(r0, 0, nr, c_); }
  void append_row(const std::vector<T> &v) {
    if (r_ == 0 && c_ == 0) c_ = v.size();
    if (v.size() != c_) throw MathError("row length mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++r_;
  }
  static Matrix vstack(const Matrix &a, const Matrix &b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols()) throw MathError("vstack column mismatch");
    Matrix m = a;
    for (std::size_t i = 0; i < b.rows(); ++i) m.append_row(b.row(i));
    return m;
  }

  bool operator==(const Matrix &o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Matrix &o) const { return !(*this == o); }
  bool operator<(const Matrix &o) const {
    if (r_ != o.r_) return r_ < o.r_;
    if (c_ != o.c_) return c_ < o.c_;
    return a_ < o.a_;
  }

  Matrix operator*(const Matrix &o) const {
    if (c_ != o.r_) throw MathError("matrix product shape mismatch");
    Matrix m(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k) {
        const T &x = (*this)(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < o.c_; ++j) m(i, j) += x * o(k, j);
      }
    return m;
  }
  Matrix operator+(const Matrix &o) const {
    Matrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
    return m;
  }
  Matrix operator-(const Matrix &o) const {
    Matrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
    return m;
  }
  Matrix scaled(const T &s) const {
    Matrix m = *this;
    for (auto &x : m.a_) x *= s;
    return m;
  }
  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const T &x) { return x == 0; });
  }
  bool is_symmetric() const {
    if (r_ != c_) return false;
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }
  const std::vector<T> &data() const { return a_; }

private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

inline RatMatrix to_rational(const IntMatrix &m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

inline bool is_integral(const RatMatrix &m) {
  for (const auto &x : m.data())
    if (!is_integer(x)) return false;
  return true;
}

inline IntMatrix to_integer(const RatMatrix &m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j))) throw MathError("matrix is not integral");
      r(i, j) = numerator(m(i, j));
    }
  return r;
}

// least common multiple of all denominators
inline Integer common_denominator(const RatMatrix &m) {
  Integer d = 1;
  for (const auto &x : m.data()) d = lcm(d, denominator(x));
  return d;
}

// Bareiss fraction-free determinant
inline Integer det(const IntMatrix &m) {
  if (m.rows() != m.cols()) throw MathError("determinant of non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline Rational det(const RatMatrix &m) {
  Integer d = common_denominator(m);
  IntMatrix im = to_integer(m.scaled(Rational(d)));
  return Rational(det(im)) / Rational(pow(d, static_cast<unsigned>(m.rows())));
}

// Gauss-Jordan inverse over Q
inline RatMatrix inverse(const RatMatrix &m) {
  if (m.rows() != m.cols()) throw MathError("inverse of non-square matrix");
  std::size_t n = m.rows();
  RatMatrix a = m, inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw MathError("singular matrix");
    a.swap_rows(c, p);
    inv.swap_rows(c, p);
    Rational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

inline RatMatrix inverse(const IntMatrix &m) { return inverse(to_rational(m)); }

inline std::size_t rank(const RatMatrix &m) {
  RatMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

inline std::size_t rank(const IntMatrix &m) { return rank(to_rational(m)); }

inline Integer content(const IntMatrix &m) {
  Integer g = 0;
  for (const auto &x : m.data()) g = gcd(g, x);
  return g;
}

inline Integer content(const IntVector &v) {
  Integer g = 0;
  for (const auto &x : v) g = gcd(g, x);
  return g;
}

template <class T> std::ostream &operator<<(std::ostream &os, const Matrix<T> &m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << to_string(m(i, j));
    os << "]";
  }
  return os << "]";
}

} // namespace latshape
