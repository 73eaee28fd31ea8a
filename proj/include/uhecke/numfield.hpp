#pragma once

// Exact arithmetic in cyclotomic rings and real cyclotomic fields.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "uhecke/ordgroup.hpp"

namespace uhecke {

/// Dense integer polynomial, coefficients from degree 0 upwards.
using IntPoly = std::vector<Integer>;

/// The n-th cyclotomic polynomial Phi_n.
IntPoly cyclotomic_polynomial(unsigned n);

/// Minimal polynomial over Q of 2cos(2 pi / n).
IntPoly real_cyclotomic_minpoly(unsigned n);

/// Elements of Z[zeta_n] reduced modulo Phi_n; used for exact root
/// coordinates in the reflection representation.
class CyclotomicRing {
 public:
  explicit CyclotomicRing(unsigned n);
  unsigned order() const { return n_; }
  std::size_t degree() const { return phi_.size() - 1; }

  using Elem = std::vector<std::int64_t>;

  Elem zero() const { return Elem(degree(), 0); }
  Elem one() const;
  /// zeta^k + zeta^{-k}.
  Elem two_cos(long k) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;

 private:
  void reduce(std::vector<std::int64_t>& a) const;
  unsigned n_;
  std::vector<std::int64_t> phi_;
};

class NFElement;

/// The field Q(theta) with theta = 2cos(2 pi / conductor).
class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  static std::shared_ptr<const NumberField> real_cyclotomic(unsigned conductor);
  static std::shared_ptr<const NumberField> rationals() { return real_cyclotomic(1); }

  unsigned conductor() const { return conductor_; }
  std::size_t degree() const { return minpoly_.size() - 1; }
  /// Monic minimal polynomial of the primitive element.
  const std::vector<Rational>& minpoly() const { return minpoly_; }

  NFElement zero() const;
  NFElement one() const;
  NFElement from_rational(const Rational& q) const;
  /// The primitive element 2cos(2 pi / conductor).
  NFElement generator() const;
  /// 2cos(2 pi k / conductor), computed by the Chebyshev recursion.
  NFElement two_cos(long k) const;
  NFElement from_coefficients(std::vector<Rational> coeffs) const;

  /// Numerical value of the primitive element.
  double generator_value() const;

  explicit NumberField(unsigned conductor);

 private:
  unsigned conductor_;
  std::vector<Rational> minpoly_;
};

class NFElement {
 public:
  NFElement() = default;
  NFElement(std::shared_ptr<const NumberField> f, std::vector<Rational> c);

  const std::shared_ptr<const NumberField>& field() const { return field_; }
  /// Coefficients over the power basis 1, theta, ..., theta^{d-1}.
  const std::vector<Rational>& coefficients() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rational rational_value() const;
  double to_double() const;
  NFElement inverse() const;

  NFElement& operator+=(const NFElement& o);
  NFElement& operator-=(const NFElement& o);
  NFElement& operator*=(const NFElement& o);
  friend NFElement operator+(NFElement a, const NFElement& b) { return a += b; }
  friend NFElement operator-(NFElement a, const NFElement& b) { return a -= b; }
  friend NFElement operator*(NFElement a, const NFElement& b) { return a *= b; }
  friend NFElement operator-(NFElement a);
  NFElement operator/(const NFElement& o) const { return *this * o.inverse(); }
  friend bool operator==(const NFElement& a, const NFElement& b);
  friend bool operator!=(const NFElement& a, const NFElement& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void check_same(const NFElement& o) const;
  std::shared_ptr<const NumberField> field_;
  std::vector<Rational> c_;
};

}  // namespace uhecke
