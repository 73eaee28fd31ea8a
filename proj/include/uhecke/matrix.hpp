#pragma once

// Small dense matrices over exact rings.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "uhecke/ordgroup.hpp"

namespace uhecke {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T()) : r_(rows), c_(cols), a_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& one, const T& zero = T()) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.c_ != y.r_) throw std::invalid_argument("matrix dimension mismatch");
    Matrix z(x.r_, y.c_, zero_like(x));
    for (std::size_t i = 0; i < x.r_; ++i)
      for (std::size_t k = 0; k < x.c_; ++k) {
        const T& a = x(i, k);
        if (is_zero_value(a)) continue;
        for (std::size_t j = 0; j < y.c_; ++j)
          if (!is_zero_value(y(k, j))) z(i, j) += a * y(k, j);
      }
    return z;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) {
    if (x.r_ != y.r_ || x.c_ != y.c_) throw std::invalid_argument("matrix dimension mismatch");
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
    return x;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    if (x.r_ != y.r_ || x.c_ != y.c_) throw std::invalid_argument("matrix dimension mismatch");
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
    return x;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) { return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_; }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> out(r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  T trace() const {
    T t = zero_like(*this);
    for (std::size_t i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
  }

 private:
  static bool is_zero_value(const T& v) {
    if constexpr (requires { v.is_zero(); })
      return v.is_zero();
    else
      return v == 0;
  }
  static T zero_like(const Matrix& m) {
    if constexpr (requires(const T& v) { v.rank(); T(v.rank()); }) {
      for (const auto& v : m.a_)
        if (v.rank() != 0) return T(v.rank());
    }
    return T();
  }

  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;
using PolyMatrix = Matrix<Poly>;

/// Division-free determinant (Berkowitz) over any commutative ring.
template <class T>
T berkowitz_determinant(const Matrix<T>& a, const T& one) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return one;
  const T zero = one - one;
  // Characteristic polynomial coefficients of the leading r x r block.
  std::vector<T> c{one, zero - a(0, 0)};
  for (std::size_t r = 1; r < n; ++r) {
    // Toeplitz column: 1, -a_rr, -R S, -R A S, ..., -R A^{r-1} S.
    std::vector<T> col(r + 2, zero);
    col[0] = one;
    col[1] = zero - a(r, r);
    std::vector<T> s(r);
    for (std::size_t i = 0; i < r; ++i) s[i] = a(i, r);
    for (std::size_t k = 2; k < r + 2; ++k) {
      T dot = zero;
      for (std::size_t i = 0; i < r; ++i) dot += a(r, i) * s[i];
      col[k] = zero - dot;
      std::vector<T> ns(r, zero);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) ns[i] += a(i, j) * s[j];
      s = std::move(ns);
    }
    std::vector<T> nc(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < c.size(); ++j) nc[i] += col[i - j] * c[j];
    c = std::move(nc);
  }
  T det = c[n];
  if (n % 2 == 1) det = zero - det;
  return det;
}

/// Exact rank and determinant over Q by Gaussian elimination.
Rational rational_determinant(RationalMatrix a);
/// Inverse over Q; nullopt if singular.
std::optional<RationalMatrix> rational_inverse(const RationalMatrix& a);

}  // namespace uhecke
