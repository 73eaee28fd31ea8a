#pragma once

// Exact arithmetic in the group ring Z[Gamma] for Gamma = Z^k with a monomial
// (translation-invariant total) order given by a full-rank weight matrix.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace uhecke {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Largest supported rank of Gamma. The doubled group used by the P15
/// verifier needs twice the instance rank.
inline constexpr std::size_t kMaxRank = 8;

/// An element of Z^k stored with fixed capacity; unused coordinates are 0.
struct Exponent {
  std::array<std::int32_t, kMaxRank> v{};

  static Exponent unit(std::size_t i) {
    Exponent e;
    e.v.at(i) = 1;
    return e;
  }
  static Exponent from(std::span<const std::int64_t> coords);

  std::int32_t operator[](std::size_t i) const { return v[i]; }
  std::int32_t& operator[](std::size_t i) { return v[i]; }

  bool is_zero() const {
    return std::all_of(v.begin(), v.end(), [](std::int32_t c) { return c == 0; });
  }

  Exponent& operator+=(const Exponent& o) {
    for (std::size_t i = 0; i < kMaxRank; ++i) v[i] += o.v[i];
    return *this;
  }
  Exponent& operator-=(const Exponent& o) {
    for (std::size_t i = 0; i < kMaxRank; ++i) v[i] -= o.v[i];
    return *this;
  }
  friend Exponent operator+(Exponent a, const Exponent& b) { return a += b; }
  friend Exponent operator-(Exponent a, const Exponent& b) { return a -= b; }
  friend Exponent operator-(Exponent a) {
    for (auto& c : a.v) c = -c;
    return a;
  }
  friend Exponent operator*(std::int64_t k, Exponent a) {
    for (auto& c : a.v) c = static_cast<std::int32_t>(k * c);
    return a;
  }

  /// Raw lexicographic comparison of coordinates; independent of any monomial
  /// order and used only for canonical storage.
  friend auto operator<=>(const Exponent&, const Exponent&) = default;
  friend bool operator==(const Exponent&, const Exponent&) = default;

  /// Moves the first `rank` coordinates to positions [offset, offset+rank).
  Exponent shifted_block(std::size_t rank, std::size_t offset) const;

  std::vector<std::int64_t> to_vector(std::size_t rank) const {
    return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(rank)};
  }
};

struct ExponentHash {
  std::size_t operator()(const Exponent& e) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto c : e.v) {
      h ^= static_cast<std::uint32_t>(c);
      h *= 1099511628211ull;
    }
    return h;
  }
};

/// Gamma = Z^k with the order g < h iff the sequence (w_i . g) is
/// lexicographically smaller than (w_i . h), w_i the rows of the weight matrix.
class OrderedGroup {
 public:
  OrderedGroup(std::size_t rank, std::vector<std::vector<Rational>> order_weights);

  /// Gamma = Z with its natural order.
  static OrderedGroup integers();
  /// Z^k with the plain lexicographic order (first coordinate dominant).
  static OrderedGroup lex(std::size_t rank);

  std::size_t rank() const { return rank_; }
  const std::vector<std::vector<Rational>>& order_weights() const { return weights_; }

  std::strong_ordering compare(const Exponent& g, const Exponent& h) const;
  /// Sign of g relative to 0: -1, 0 or +1.
  int sign(const Exponent& g) const;
  bool positive(const Exponent& g) const { return sign(g) > 0; }
  bool less(const Exponent& g, const Exponent& h) const { return compare(g, h) < 0; }

  const Exponent& min(const Exponent& g, const Exponent& h) const { return less(h, g) ? h : g; }
  const Exponent& max(const Exponent& g, const Exponent& h) const { return less(g, h) ? h : g; }

  /// Gamma (+) Gamma' with the block-diagonal order; the copy occupies
  /// coordinates [k, 2k).
  OrderedGroup doubled() const;

  friend bool operator==(const OrderedGroup& a, const OrderedGroup& b) {
    return a.rank_ == b.rank_ && a.weights_ == b.weights_;
  }

 private:
  std::size_t rank_;
  std::vector<std::vector<Rational>> weights_;
  std::vector<std::vector<std::int64_t>> scaled_;
};

/// Checked comparison on raw coordinate vectors.
std::strong_ordering monomial_compare(std::span<const std::int64_t> g,
                                      std::span<const std::int64_t> h,
                                      const OrderedGroup& group);

/// Sparse Laurent polynomial sum c_g eps^g with exact coefficients.
/// Terms are kept sorted by raw coordinates and never hold a zero coefficient.
/// A default-constructed polynomial is an unbound zero that combines with a
/// polynomial of any rank.
template <class C>
class Laurent {
 public:
  using Coeff = C;
  using Term = std::pair<Exponent, C>;

  Laurent() = default;
  explicit Laurent(std::size_t rank) : rank_(static_cast<std::uint8_t>(rank)) {}

  static Laurent monomial(std::size_t rank, const Exponent& e, C c = C(1)) {
    Laurent p(rank);
    if (c != 0) p.terms_.emplace_back(e, std::move(c));
    return p;
  }
  static Laurent constant(std::size_t rank, C c) { return monomial(rank, Exponent{}, std::move(c)); }

  /// Builds from unsorted terms, combining duplicates.
  static Laurent from_terms(std::size_t rank, std::vector<Term> terms) {
    Laurent p(rank);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t rank() const { return rank_; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  C coefficient(const Exponent& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponent& x) { return t.first < x; });
    if (it != terms_.end() && it->first == e) return it->second;
    return C(0);
  }
  C constant_term() const { return coefficient(Exponent{}); }

  Laurent& operator+=(const Laurent& o) { return merge(o, false); }
  Laurent& operator-=(const Laurent& o) { return merge(o, true); }

  Laurent& operator*=(const C& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
  }

  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator-(Laurent a) {
    for (auto& t : a.terms_) t.second = -t.second;
    return a;
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r(bind_rank(a, b));
    if (a.is_zero() || b.is_zero()) return r;
    if (a.terms_.size() == 1 || b.terms_.size() == 1) {
      const Laurent& mono = a.terms_.size() == 1 ? a : b;
      const Laurent& other = a.terms_.size() == 1 ? b : a;
      const auto& [e, c] = mono.terms_.front();
      r.terms_.reserve(other.terms_.size());
      for (const auto& t : other.terms_) r.terms_.emplace_back(t.first + e, t.second * c);
      return r;  // translation keeps the raw order and c != 0 in a domain
    }
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.terms_.emplace_back(ea + eb, ca * cb);
    r.normalize();
    return r;
  }
  friend Laurent operator*(Laurent a, const C& c) { return a *= c; }
  friend Laurent operator*(const C& c, Laurent a) { return a *= c; }

  /// Adds c * eps^shift * q in place.
  Laurent& add_scaled(const Laurent& q, const C& c, const Exponent& shift = Exponent{}) {
    if (q.is_zero() || c == 0) return *this;
    Laurent tmp(q.rank_);
    tmp.terms_.reserve(q.terms_.size());
    for (const auto& t : q.terms_) tmp.terms_.emplace_back(t.first + shift, t.second * c);
    return *this += tmp;
  }

  /// Multiplication by eps^g.
  Laurent shifted(const Exponent& g) const {
    Laurent r = *this;
    for (auto& t : r.terms_) t.first += g;
    return r;
  }

  /// The ring involution eps^g -> eps^{-g}.
  Laurent bar() const {
    Laurent r(rank_);
    r.terms_.reserve(terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) r.terms_.emplace_back(-it->first, it->second);
    return r;  // negation reverses the raw lexicographic order
  }

  /// The specialization eps^g -> 1.
  C at_one() const {
    C s(0);
    for (const auto& t : terms_) s += t.second;
    return s;
  }

  /// Re-embeds coordinates [0,rank) into a group of rank `new_rank` at `offset`.
  Laurent embedded(std::size_t new_rank, std::size_t offset) const {
    Laurent r(new_rank);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.emplace_back(t.first.shifted_block(rank_, offset), t.second);
    r.normalize();
    return r;
  }

  template <class D, class F>
  Laurent<D> map_coefficients(F&& f) const {
    std::vector<typename Laurent<D>::Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.emplace_back(t.first, f(t.second));
    return Laurent<D>::from_terms(rank_, std::move(out));
  }

  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }

 private:
  static std::size_t bind_rank(const Laurent& a, const Laurent& b) {
    if (a.rank_ == 0) return b.rank_;
    if (b.rank_ == 0 || a.rank_ == b.rank_) return a.rank_;
    throw std::invalid_argument("Laurent polynomials over different groups (rank " +
                                std::to_string(a.rank_) + " vs " + std::to_string(b.rank_) + ")");
  }

  Laurent& merge(const Laurent& o, bool subtract) {
    rank_ = static_cast<std::uint8_t>(bind_rank(*this, o));
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) {
      terms_ = o.terms_;
      if (subtract)
        for (auto& t : terms_) t.second = -t.second;
      return *this;
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
        out.push_back(std::move(*a++));
      } else if (a == terms_.end() || b->first < a->first) {
        out.emplace_back(b->first, subtract ? C(-b->second) : b->second);
        ++b;
      } else {
        C c = std::move(a->second);
        if (subtract)
          c -= b->second;
        else
          c += b->second;
        if (c != 0) out.emplace_back(a->first, std::move(c));
        ++a;
        ++b;
      }
    }
    terms_ = std::move(out);
    return *this;
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms_.size();) {
      Exponent e = terms_[i].first;
      C c = std::move(terms_[i].second);
      std::size_t j = i + 1;
      for (; j < terms_.size() && terms_[j].first == e; ++j) c += terms_[j].second;
      if (c != 0) terms_[out++] = Term(e, std::move(c));
      i = j;
    }
    terms_.resize(out);
  }

  std::vector<Term> terms_;
  std::uint8_t rank_ = 0;
};

using Poly = Laurent<Integer>;
using RationalPoly = Laurent<Rational>;

enum class PolyOp { Add, Sub, Mul };

/// Ring operation on two polynomials of the same group.
template <class C>
Laurent<C> poly_arith(const Laurent<C>& p, const Laurent<C>& q, PolyOp op) {
  switch (op) {
    case PolyOp::Add: return p + q;
    case PolyOp::Sub: return p - q;
    case PolyOp::Mul: return p * q;
  }
  throw std::invalid_argument("unknown polynomial operation");
}

template <class C>
Laurent<C> bar_poly(const Laurent<C>& p) {
  return p.bar();
}

/// Smallest exponent in the support under the monomial order; nullopt for 0.
template <class C>
std::optional<Exponent> min_exponent(const Laurent<C>& p, const OrderedGroup& group) {
  if (p.is_zero()) return std::nullopt;
  const Exponent* best = &p.terms().front().first;
  for (const auto& t : p.terms())
    if (group.less(t.first, *best)) best = &t.first;
  return *best;
}

template <class C>
std::optional<Exponent> max_exponent(const Laurent<C>& p, const OrderedGroup& group) {
  if (p.is_zero()) return std::nullopt;
  const Exponent* best = &p.terms().front().first;
  for (const auto& t : p.terms())
    if (group.less(*best, t.first)) best = &t.first;
  return *best;
}

template <class C>
struct SignSplit {
  Laurent<C> negative;
  C constant{0};
  Laurent<C> positive;
};

/// p = negative + constant + positive with supports in Gamma_{<0}, {0}, Gamma_{>0}.
template <class C>
SignSplit<C> split_by_sign(const Laurent<C>& p, const OrderedGroup& group) {
  std::vector<typename Laurent<C>::Term> neg, pos;
  SignSplit<C> out;
  for (const auto& t : p.terms()) {
    int s = group.sign(t.first);
    if (s < 0)
      neg.push_back(t);
    else if (s > 0)
      pos.push_back(t);
    else
      out.constant = t.second;
  }
  out.negative = Laurent<C>::from_terms(p.rank(), std::move(neg));
  out.positive = Laurent<C>::from_terms(p.rank(), std::move(pos));
  return out;
}

/// Coefficient of eps^g in p.
template <class C>
C coefficient_at(const Laurent<C>& p, const Exponent& g) {
  return p.coefficient(g);
}

/// True iff every exponent in the support is < 0 (resp. > 0).
template <class C>
bool supported_in_negative(const Laurent<C>& p, const OrderedGroup& group) {
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [&](const auto& t) { return group.sign(t.first) < 0; });
}
template <class C>
bool supported_in_positive(const Laurent<C>& p, const OrderedGroup& group) {
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [&](const auto& t) { return group.sign(t.first) > 0; });
}

/// Human-readable form, e.g. "2*e^(1,0) - e^(-1,0)".
std::string to_string(const Poly& p);
std::string to_string(const Exponent& e, std::size_t rank);

}  // namespace uhecke
