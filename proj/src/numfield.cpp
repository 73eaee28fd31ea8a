#include "uhecke/numfield.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace uhecke {

namespace {

IntPoly trim(IntPoly p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  return p;
}

// Exact division by a monic divisor.
IntPoly poly_divexact(IntPoly a, const IntPoly& monic) {
  const std::size_t db = monic.size() - 1;
  if (a.size() - 1 < db) throw std::logic_error("cyclotomic division failed");
  IntPoly q(a.size() - db, Integer(0));
  for (std::size_t i = a.size(); i-- > db;) {
    Integer c = a[i];
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * monic[j];
  }
  for (const auto& r : a)
    if (r != 0) throw std::logic_error("cyclotomic division left a remainder");
  return trim(q);
}

std::vector<Rational> rtrim(std::vector<Rational> p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

// Remainder of a modulo the monic polynomial m.
std::vector<Rational> rmod(std::vector<Rational> a, const std::vector<Rational>& m) {
  const std::size_t dm = m.size() - 1;
  a = rtrim(std::move(a));
  while (a.size() > dm) {
    Rational c = a.back() / m.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t j = 0; j <= dm; ++j) a[shift + j] -= c * m[j];
    a = rtrim(std::move(a));
  }
  return a;
}

std::pair<std::vector<Rational>, std::vector<Rational>> rdivmod(std::vector<Rational> a,
                                                                const std::vector<Rational>& b) {
  a = rtrim(std::move(a));
  const std::size_t db = b.size() - 1;
  std::vector<Rational> q;
  if (a.size() > db) q.assign(a.size() - db, Rational(0));
  while (!a.empty() && a.size() > db) {
    Rational c = a.back() / b.back();
    const std::size_t shift = a.size() - 1 - db;
    q[shift] = c;
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= c * b[j];
    a = rtrim(std::move(a));
  }
  return {rtrim(std::move(q)), a};
}

std::vector<Rational> rmul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return rtrim(std::move(r));
}

std::vector<Rational> rsub(std::vector<Rational> a, const std::vector<Rational>& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return rtrim(std::move(a));
}

}  // namespace

IntPoly cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw std::invalid_argument("cyclotomic polynomial of order 0");
  static std::mutex mu;
  static std::map<unsigned, IntPoly> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  IntPoly p(n + 1, Integer(0));
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) p = poly_divexact(p, cyclotomic_polynomial(d));
  std::lock_guard lock(mu);
  cache.emplace(n, p);
  return p;
}

IntPoly real_cyclotomic_minpoly(unsigned n) {
  if (n == 0) throw std::invalid_argument("conductor must be positive");
  if (n == 1) return {Integer(-2), Integer(1)};
  if (n == 2) return {Integer(2), Integer(1)};
  // Phi_n(z) = z^d * Psi(z + 1/z) with d = deg(Phi_n)/2; expand in the
  // Dickson polynomials D_k(x) = z^k + z^{-k}.
  IntPoly phi = cyclotomic_polynomial(n);
  const std::size_t d = (phi.size() - 1) / 2;
  std::vector<IntPoly> dk{{Integer(2)}, {Integer(0), Integer(1)}};
  for (std::size_t k = 2; k <= d; ++k) {
    IntPoly next(k + 1, Integer(0));
    for (std::size_t i = 0; i < dk[k - 1].size(); ++i) next[i + 1] += dk[k - 1][i];
    for (std::size_t i = 0; i < dk[k - 2].size(); ++i) next[i] -= dk[k - 2][i];
    dk.push_back(trim(next));
  }
  IntPoly psi(d + 1, Integer(0));
  psi[0] += phi[d];
  for (std::size_t k = 1; k <= d; ++k)
    for (std::size_t i = 0; i < dk[k].size(); ++i) psi[i] += phi[d + k] * dk[k][i];
  return trim(psi);
}

CyclotomicRing::CyclotomicRing(unsigned n) : n_(n) {
  for (const auto& c : cyclotomic_polynomial(n)) phi_.push_back(static_cast<std::int64_t>(c));
}

void CyclotomicRing::reduce(std::vector<std::int64_t>& a) const {
  const std::size_t d = degree();
  for (std::size_t i = a.size(); i-- > d;) {
    std::int64_t c = a[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= d; ++j) {
      std::int64_t prod;
      if (__builtin_mul_overflow(c, phi_[j], &prod) || __builtin_sub_overflow(a[i - d + j], prod, &a[i - d + j]))
        throw std::overflow_error("group too large / possibly infinite (root coordinate overflow)");
    }
  }
  a.resize(d);
}

CyclotomicRing::Elem CyclotomicRing::one() const {
  Elem e(degree(), 0);
  if (degree() == 0) return e;
  e[0] = 1;
  return e;
}

CyclotomicRing::Elem CyclotomicRing::two_cos(long k) const {
  const long n = n_;
  long a = ((k % n) + n) % n;
  long b = (n - a) % n;
  std::vector<std::int64_t> e(n_, 0);
  e[a] += 1;
  e[b] += 1;
  reduce(e);
  return e;
}

CyclotomicRing::Elem CyclotomicRing::add(const Elem& a, const Elem& b) const {
  Elem r(degree());
  for (std::size_t i = 0; i < r.size(); ++i)
    if (__builtin_add_overflow(a[i], b[i], &r[i]))
      throw std::overflow_error("group too large / possibly infinite (root coordinate overflow)");
  return r;
}

CyclotomicRing::Elem CyclotomicRing::neg(const Elem& a) const {
  Elem r(a);
  for (auto& c : r) c = -c;
  return r;
}

CyclotomicRing::Elem CyclotomicRing::mul(const Elem& a, const Elem& b) const {
  const std::size_t d = degree();
  if (d == 0) return {};
  std::vector<std::int64_t> r(2 * d - 1, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      std::int64_t prod;
      if (__builtin_mul_overflow(a[i], b[j], &prod) || __builtin_add_overflow(r[i + j], prod, &r[i + j]))
        throw std::overflow_error("group too large / possibly infinite (root coordinate overflow)");
    }
  }
  reduce(r);
  return r;
}

NumberField::NumberField(unsigned conductor) : conductor_(conductor) {
  for (const auto& c : real_cyclotomic_minpoly(conductor)) minpoly_.emplace_back(c);
}

std::shared_ptr<const NumberField> NumberField::real_cyclotomic(unsigned conductor) {
  static std::mutex mu;
  static std::map<unsigned, std::shared_ptr<const NumberField>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[conductor];
  if (!slot) slot = std::make_shared<const NumberField>(conductor);
  return slot;
}

NFElement NumberField::zero() const {
  return NFElement(shared_from_this(), std::vector<Rational>(degree(), Rational(0)));
}

NFElement NumberField::one() const { return from_rational(1); }

NFElement NumberField::from_rational(const Rational& q) const {
  std::vector<Rational> c(degree(), Rational(0));
  c[0] = q;
  return NFElement(shared_from_this(), std::move(c));
}

NFElement NumberField::generator() const {
  std::vector<Rational> c(degree(), Rational(0));
  if (degree() == 1)
    c[0] = -minpoly_[0];
  else
    c[1] = 1;
  return NFElement(shared_from_this(), std::move(c));
}

NFElement NumberField::two_cos(long k) const {
  const long n = conductor_;
  k = ((k % n) + n) % n;
  NFElement prev = from_rational(2);
  if (k == 0) return prev;
  NFElement theta = generator();
  NFElement cur = theta;
  for (long i = 1; i < k; ++i) {
    NFElement next = theta * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

NFElement NumberField::from_coefficients(std::vector<Rational> coeffs) const {
  coeffs = rmod(std::move(coeffs), minpoly_);
  coeffs.resize(degree(), Rational(0));
  return NFElement(shared_from_this(), std::move(coeffs));
}

double NumberField::generator_value() const { return 2.0 * std::cos(2.0 * std::numbers::pi / conductor_); }

NFElement::NFElement(std::shared_ptr<const NumberField> f, std::vector<Rational> c)
    : field_(std::move(f)), c_(std::move(c)) {}

void NFElement::check_same(const NFElement& o) const {
  if (field_ != o.field_) throw std::invalid_argument("number field elements from different fields");
}

bool NFElement::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

bool NFElement::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rational NFElement::rational_value() const {
  if (!is_rational()) throw std::domain_error("number field element is not rational");
  return c_.empty() ? Rational(0) : c_[0];
}

double NFElement::to_double() const {
  double x = field_->generator_value();
  double s = 0, p = 1;
  for (const auto& q : c_) {
    s += static_cast<double>(q) * p;
    p *= x;
  }
  return s;
}

NFElement& NFElement::operator+=(const NFElement& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

NFElement& NFElement::operator-=(const NFElement& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

NFElement& NFElement::operator*=(const NFElement& o) {
  check_same(o);
  auto r = rmod(rmul(c_, o.c_), field_->minpoly());
  r.resize(field_->degree(), Rational(0));
  c_ = std::move(r);
  return *this;
}

NFElement operator-(NFElement a) {
  for (auto& q : a.c_) q = -q;
  return a;
}

bool operator==(const NFElement& a, const NFElement& b) {
  a.check_same(b);
  return a.c_ == b.c_;
}

NFElement NFElement::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in number field");
  // Extended Euclid: find s with s * a = 1 mod minpoly.
  std::vector<Rational> r0 = field_->minpoly(), r1 = rtrim(c_);
  std::vector<Rational> s0, s1{Rational(1)};
  while (r1.size() > 1) {
    auto [q, r] = rdivmod(r0, r1);
    auto s = rsub(s0, rmul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r1.empty()) throw std::domain_error("zero divisor in number field (reducible minimal polynomial)");
  Rational inv = 1 / r1[0];
  for (auto& q : s1) q *= inv;
  return field_->from_coefficients(std::move(s1));
}

std::string NFElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[i];
    if (i == 1) os << "*t";
    if (i > 1) os << "*t^" << i;
  }
  return first ? "0" : os.str();
}

}  // namespace uhecke
