#include <doctest.h>

#include <set>

#include "support.hpp"

using namespace uhecke;
using namespace uhecke::testing;

namespace {

/// Coefficients of prod_i (1 + q + ... + q^{d_i - 1}).
std::vector<long> poincare(const std::vector<int>& degrees) {
  std::vector<long> c{1};
  for (int d : degrees) {
    std::vector<long> next(c.size() + d - 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (int j = 0; j < d; ++j) next[i + j] += c[i];
    c = next;
  }
  return c;
}

std::vector<long> length_profile(const CoxeterGroup& W) {
  std::vector<long> c(W.max_length() + 1, 0);
  for (std::size_t w = 0; w < W.size(); ++w) ++c[W.length(static_cast<int>(w))];
  return c;
}

/// Elements expressible as subwords of the reduced word of w.
std::set<int> subword_products(const CoxeterGroup& W, int w) {
  const Word& word = W.word(w);
  std::set<int> out;
  for (std::uint32_t mask = 0; mask < (1u << word.size()); ++mask) {
    int x = W.identity();
    for (std::size_t i = 0; i < word.size(); ++i)
      if ((mask >> i) & 1u) x = W.right_mul(x, word[i]);
    out.insert(x);
  }
  return out;
}

}  // namespace

TEST_CASE("group orders and Poincare polynomials") {
  struct Case {
    CoxeterSystem sys;
    std::size_t order;
    std::vector<int> degrees;
  };
  std::vector<Case> cases{{CoxeterSystem::type_A(1), 2, {2}},
                          {CoxeterSystem::type_A(3), 24, {2, 3, 4}},
                          {CoxeterSystem::type_B(3), 48, {2, 4, 6}},
                          {CoxeterSystem::type_D(4), 192, {2, 4, 4, 6}},
                          {CoxeterSystem::type_H(3), 120, {2, 6, 10}},
                          {CoxeterSystem::dihedral(7), 14, {2, 7}},
                          {CoxeterSystem::type_F4(), 1152, {2, 6, 8, 12}}};
  for (const auto& c : cases) {
    CoxeterGroup W(c.sys);
    CHECK(W.size() == c.order);
    CHECK(length_profile(W) == poincare(c.degrees));
  }
}

TEST_CASE("F4 from its raw Coxeter matrix") {
  CoxeterSystem sys({{1, 3, 2, 2}, {3, 1, 4, 2}, {2, 4, 1, 3}, {2, 2, 3, 1}});
  CHECK(CoxeterGroup(sys).size() == 1152);
  CHECK(sys == CoxeterSystem::type_F4());
}

TEST_CASE("A1 and the dihedral element names") {
  CoxeterGroup A1(CoxeterSystem::type_A(1));
  CHECK(A1.size() == 2);
  CHECK(A1.word(A1.longest()) == Word{0});

  CoxeterGroup W(CoxeterSystem::dihedral(4));
  CHECK(W.size() == 8);
  CHECK(one_k(W, 4) == two_k(W, 4));
  CHECK(one_k(W, 4) == W.longest());
  for (int k = 1; k < 4; ++k) CHECK(one_k(W, k) != two_k(W, k));
  CHECK(W.word(one_k(W, 3)) == Word{0, 1, 0});
}

TEST_CASE("group tables are consistent") {
  CoxeterGroup W(CoxeterSystem::type_B(3));
  const int n = static_cast<int>(W.size());
  for (int w = 0; w < n; ++w) {
    CHECK(W.from_word(W.word(w)) == w);
    CHECK(W.length(W.inverse(w)) == W.length(w));
    CHECK(W.multiply(w, W.inverse(w)) == W.identity());
    for (int s = 0; s < 3; ++s) {
      CHECK(W.is_left_descent(s, w) == (W.length(W.left_mul(s, w)) < W.length(w)));
      CHECK(W.is_right_descent(w, s) == (W.length(W.right_mul(w, s)) < W.length(w)));
    }
  }
}

TEST_CASE("Bruhat order matches the subword property") {
  for (int m : {4, 6}) {
    CoxeterGroup W(CoxeterSystem::dihedral(m));
    const int n = static_cast<int>(W.size());
    for (int w = 0; w < n; ++w) {
      CHECK(W.bruhat_leq(W.identity(), w));
      auto below = subword_products(W, w);
      for (int y = 0; y < n; ++y) {
        CHECK(W.bruhat_leq(y, w) == (below.count(y) == 1));
        if (W.bruhat_leq(y, w) && W.length(y) == W.length(w)) CHECK(y == w);
      }
    }
    CHECK_FALSE(W.bruhat_leq(one_k(W, 2), two_k(W, 2)));
    CHECK_FALSE(W.bruhat_leq(two_k(W, 2), one_k(W, 2)));
  }
  CoxeterGroup A3(CoxeterSystem::type_A(3));
  for (int w = 0; w < 24; ++w) {
    auto below = subword_products(A3, w);
    for (int y = 0; y < 24; ++y) CHECK(A3.bruhat_leq(y, w) == (below.count(y) == 1));
  }
}

TEST_CASE("parabolic subgroups") {
  CoxeterGroup W(CoxeterSystem::dihedral(5));
  CHECK(W.parabolic({}) == std::vector<int>{W.identity()});
  CHECK(W.parabolic({0, 1}).size() == W.size());
  auto p = W.parabolic({0});
  CHECK(p.size() == 2);
  CHECK(std::count(p.begin(), p.end(), W.generator(0)) == 1);
}

TEST_CASE("generator classes and weights") {
  auto b2 = CoxeterSystem::type_B(2);
  CHECK(b2.num_generator_classes() == 2);
  auto i5 = CoxeterSystem::dihedral(5);
  CHECK(i5.num_generator_classes() == 1);
  auto z = OrderedGroup::integers();
  CHECK_THROWS_AS(WeightFunction(i5, z, {2 * Exponent::unit(0), Exponent::unit(0)}), std::invalid_argument);
  CHECK_THROWS_AS(WeightFunction(b2, z, {Exponent::unit(0), Exponent{}}), std::invalid_argument);
  WeightFunction L(b2, z, {2 * Exponent::unit(0), Exponent::unit(0)});
  CHECK(L.of_word({0, 1, 0}) == 5 * Exponent::unit(0));
}

TEST_CASE("invalid systems") {
  CHECK_THROWS_AS(CoxeterSystem::preset("Q", 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(CoxeterSystem({{1, 3}, {2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(CoxeterSystem({{1, 1}, {1, 1}}), std::invalid_argument);
}
