#include "uhecke/ordgroup.hpp"

#include <numeric>
#include <sstream>

namespace uhecke {

Exponent Exponent::from(std::span<const std::int64_t> coords) {
  if (coords.size() > kMaxRank) throw std::invalid_argument("exponent rank exceeds " + std::to_string(kMaxRank));
  Exponent e;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] > INT32_MAX || coords[i] < INT32_MIN) throw std::out_of_range("exponent coordinate out of range");
    e.v[i] = static_cast<std::int32_t>(coords[i]);
  }
  return e;
}

Exponent Exponent::shifted_block(std::size_t rank, std::size_t offset) const {
  if (rank + offset > kMaxRank) throw std::invalid_argument("embedded exponent exceeds maximal rank");
  Exponent e;
  for (std::size_t i = 0; i < rank; ++i) e.v[offset + i] = v[i];
  return e;
}

namespace {

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

}  // namespace

OrderedGroup::OrderedGroup(std::size_t rank, std::vector<std::vector<Rational>> order_weights)
    : rank_(rank), weights_(std::move(order_weights)) {
  if (rank_ == 0 || rank_ > kMaxRank)
    throw std::invalid_argument("rank of Gamma must lie in [1," + std::to_string(kMaxRank) + "]");
  if (weights_.size() != rank_) throw std::invalid_argument("order needs exactly rank weight vectors");
  for (const auto& row : weights_)
    if (row.size() != rank_) throw std::invalid_argument("order weight vector has wrong length");
  if (determinant(weights_) == 0) throw std::invalid_argument("order weight matrix is singular");

  scaled_.reserve(rank_);
  for (const auto& row : weights_) {
    Integer l = 1;
    for (const auto& q : row) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(q));
    std::vector<std::int64_t> ints;
    for (const auto& q : row) {
      Integer n = boost::multiprecision::numerator(q) * (l / boost::multiprecision::denominator(q));
      if (n > INT64_MAX / 4 || n < INT64_MIN / 4) throw std::invalid_argument("order weights too large");
      ints.push_back(static_cast<std::int64_t>(n));
    }
    scaled_.push_back(std::move(ints));
  }
}

OrderedGroup OrderedGroup::integers() { return OrderedGroup(1, {{Rational(1)}}); }

OrderedGroup OrderedGroup::lex(std::size_t rank) {
  std::vector<std::vector<Rational>> w(rank, std::vector<Rational>(rank, Rational(0)));
  for (std::size_t i = 0; i < rank; ++i) w[i][i] = 1;
  return OrderedGroup(rank, std::move(w));
}

int OrderedGroup::sign(const Exponent& g) const {
  for (const auto& row : scaled_) {
    __int128 d = 0;
    for (std::size_t i = 0; i < rank_; ++i) d += static_cast<__int128>(row[i]) * g.v[i];
    if (d != 0) return d > 0 ? 1 : -1;
  }
  return 0;
}

std::strong_ordering OrderedGroup::compare(const Exponent& g, const Exponent& h) const {
  for (const auto& row : scaled_) {
    __int128 d = 0;
    for (std::size_t i = 0; i < rank_; ++i)
      d += static_cast<__int128>(row[i]) * (static_cast<std::int64_t>(g.v[i]) - h.v[i]);
    if (d != 0) return d < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

OrderedGroup OrderedGroup::doubled() const {
  const std::size_t k = rank_;
  std::vector<std::vector<Rational>> w(2 * k, std::vector<Rational>(2 * k, Rational(0)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      w[i][j] = weights_[i][j];
      w[k + i][k + j] = weights_[i][j];
    }
  return OrderedGroup(2 * k, std::move(w));
}

std::strong_ordering monomial_compare(std::span<const std::int64_t> g, std::span<const std::int64_t> h,
                                      const OrderedGroup& group) {
  if (g.size() != group.rank() || h.size() != group.rank())
    throw std::invalid_argument("exponent vector length does not match the rank of Gamma");
  return group.compare(Exponent::from(g), Exponent::from(h));
}

std::string to_string(const Exponent& e, std::size_t rank) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < rank; ++i) os << (i ? "," : "") << e.v[i];
  os << ')';
  return os.str();
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Integer a = c < 0 ? Integer(-c) : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (e.is_zero()) {
      os << a;
      continue;
    }
    if (a != 1) os << a << '*';
    os << "e^" << to_string(e, std::max<std::size_t>(p.rank(), 1));
  }
  return os.str();
}

}  // namespace uhecke
