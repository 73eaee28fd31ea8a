#include "uhecke/matrix.hpp"

namespace uhecke {

Rational rational_determinant(RationalMatrix a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col) == 0) continue;
      Rational f = a(i, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

std::optional<RationalMatrix> rational_inverse(const RationalMatrix& in) {
  const std::size_t n = in.rows();
  if (n != in.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  RationalMatrix a = in;
  RationalMatrix inv = RationalMatrix::identity(n, Rational(1), Rational(0));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    Rational p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        if (a(col, j) != 0) a(i, j) -= f * a(col, j);
        if (inv(col, j) != 0) inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace uhecke
