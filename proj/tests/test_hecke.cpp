#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace uhecke;
using namespace uhecke::testing;

namespace {

HVec t_word(const HeckeAlgebra& alg, const Word& w) {
  HVec h = alg.basis_T(0);
  for (int s : w) h = alg.right_mul_T(h, s);
  return h;
}

HVec scaled(const HeckeAlgebra& alg, int w, const Poly& c) {
  HVec h = alg.zero();
  h[w] = c;
  return h;
}

HVec add(HVec a, const HVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

/// bar(T_w) as the product of bar(T_s) = T_s - (v_s - v_s^{-1}) over a reduced word.
HVec bar_by_words(const HeckeAlgebra& alg, int w) {
  HVec h = alg.basis_T(0);
  for (int s : alg.group().word(w)) {
    HVec bs = add(alg.basis_T(alg.group().generator(s)), scaled(alg, 0, -alg.v_minus_inv(s)));
    h = alg.multiply_T(h, bs);
  }
  return h;
}

/// C'_w from bar(T_x) = sum_y r_{y,x} T_y by solving p_y - bar(p_y) = sum_{x>y} bar(p_x) r_{y,x}
/// downwards in length.
HVec cprime_by_bar_solving(const HeckeAlgebra& alg, int w) {
  const auto& W = alg.group();
  const int n = static_cast<int>(W.size());
  std::vector<HVec> r(n);
  HVec p = alg.zero();
  p[w] = alg.one();
  std::vector<int> below;
  for (int y = 0; y < n; ++y)
    if (y != w && W.bruhat_leq(y, w)) below.push_back(y);
  std::sort(below.begin(), below.end(), [&](int a, int b) { return W.length(a) > W.length(b); });
  std::vector<HVec> bars(n);
  for (int x = 0; x < n; ++x)
    if (W.bruhat_leq(x, w)) bars[x] = alg.bar(alg.basis_T(x));
  for (int y : below) {
    Poly q(alg.rank());
    for (int x = 0; x < n; ++x)
      if (!p[x].is_zero() && x != y) q += p[x].bar() * bars[x][y];
    p[y] = split_by_sign(q, alg.gamma()).negative;
  }
  return p;
}

Poly zeta(const HeckeAlgebra& alg) { return alg.v(0) * alg.v_inv(1) + alg.v_inv(0) * alg.v(1); }

}  // namespace

TEST_CASE("T-basis relations") {
  auto inst = dihedral(4, 2, 1);
  const auto& alg = inst->algebra();
  const auto& W = alg.group();
  for (int s = 0; s < 2; ++s) {
    const int gs = W.generator(s);
    HVec sq = alg.multiply_T(alg.basis_T(gs), alg.basis_T(gs));
    CHECK(sq == add(alg.basis_T(0), scaled(alg, gs, alg.v_minus_inv(s))));
  }
  HVec h = add(alg.basis_T(3), scaled(alg, 5, mono(4, -2)));
  CHECK(alg.multiply_T(alg.basis_T(0), h) == h);
  CHECK(alg.multiply_T(alg.basis_T(W.generator(0)), alg.basis_T(W.generator(1))) == alg.basis_T(one_k(W, 2)));
}

TEST_CASE("bar involution on the T basis") {
  auto inst = dihedral(6, 3, 2);
  const auto& alg = inst->algebra();
  const auto& W = alg.group();
  const int s = W.generator(0);
  CHECK(alg.bar(alg.basis_T(s)) == add(alg.basis_T(s), scaled(alg, 0, -alg.v_minus_inv(0))));
  CHECK(alg.bar(alg.basis_T(0)) == alg.basis_T(0));
  for (int w = 0; w < static_cast<int>(W.size()); ++w) {
    CHECK(alg.bar(alg.bar(alg.basis_T(w))) == alg.basis_T(w));
    CHECK(alg.bar(alg.basis_T(w)) == bar_by_words(alg, w));
  }
}

TEST_CASE("A1 closed forms") {
  for (int a : {1, 3}) {
    auto inst = std::make_shared<Instance>(CoxeterSystem::type_A(1), OrderedGroup::integers(),
                                           std::vector<Exponent>{a * Exponent::unit(0)});
    const auto& kl = inst->kl();
    const auto& alg = inst->algebra();
    const int s = 1;
    CHECK(kl.cprime(0) == alg.basis_T(0));
    CHECK(kl.cprime(s) == add(alg.basis_T(s), scaled(alg, 0, mono(-a))));
    CHECK(kl.c_basis(0) == alg.basis_T(0));
    CHECK(kl.c_basis(s) == add(scaled(alg, s, mono(0, -1)), scaled(alg, 0, mono(a))));
    CHECK(kl.dual_basis(0) == add(alg.basis_T(0), scaled(alg, s, mono(a))));
    CHECK(kl.dual_basis(s) == scaled(alg, s, mono(0, -1)));
    CHECK(inst->structure()->at(s, s, s) == mono(a) + mono(-a));
  }
}

TEST_CASE("C' basis agrees with an independent bar-solving construction") {
  for (int m = 4; m <= 8; ++m) {
    std::vector<std::shared_ptr<Instance>> cases{equal_params(CoxeterSystem::dihedral(m))};
    if (m % 2 == 0) cases.push_back(dihedral(m, 3, 2));
    if (m % 2 == 0) cases.push_back(dihedral_lex(m));
    for (const auto& inst : cases) {
      const auto& alg = inst->algebra();
      for (int w = 0; w < static_cast<int>(alg.size()); ++w) CHECK(inst->kl().cprime(w) == cprime_by_bar_solving(alg, w));
    }
  }
  auto b3 = std::make_shared<Instance>(CoxeterSystem::type_B(3), OrderedGroup::integers(),
                                       std::vector<Exponent>{Exponent::unit(0), 2 * Exponent::unit(0), 2 * Exponent::unit(0)});
  for (int w : {5, 20, 47}) CHECK(b3->kl().cprime(w) == cprime_by_bar_solving(b3->algebra(), w));
}

TEST_CASE("C' basis is bar-invariant and unitriangular") {
  std::vector<std::shared_ptr<Instance>> cases{dihedral(10, 3, 1), Instance::universal(CoxeterSystem::type_B(3)),
                                               equal_params(CoxeterSystem::type_A(3)),
                                               Instance::universal(CoxeterSystem::type_B(2))};
  for (const auto& inst : cases) {
    const auto& alg = inst->algebra();
    const auto& W = alg.group();
    for (int w = 0; w < static_cast<int>(W.size()); ++w) {
      const HVec& c = inst->kl().cprime(w);
      CHECK(alg.bar(c) == c);
      CHECK(c[w] == alg.one());
      for (int y = 0; y < static_cast<int>(W.size()); ++y) {
        if (y == w || c[y].is_zero()) continue;
        CHECK(W.bruhat_leq(y, w));
        CHECK(supported_in_negative(c[y], alg.gamma()));
      }
    }
  }
}

TEST_CASE("independent KL polynomial values") {
  auto inst = dihedral(6, 3, 2);
  const auto& W = inst->group();
  CHECK(inst->kl().p(0, one_k(W, 5)) == mono(-13) - mono(-9) + mono(-5));
  auto a3 = equal_params(CoxeterSystem::type_A(3));
  int nonmonomial = 0;
  for (int w = 0; w < 24; ++w)
    for (int y = 0; y < 24; ++y) nonmonomial += a3->kl().p(y, w).size() > 1;
  CHECK(nonmonomial == 6);
}

TEST_CASE("C basis") {
  auto b2 = Instance::universal(CoxeterSystem::type_B(2));
  const auto& W = b2->group();
  for (int w = 0; w < 8; ++w) {
    HVec c = b2->kl().c_basis(w);
    const Integer sign = W.length(w) % 2 ? -1 : 1;
    CHECK(c[w] == Poly::constant(2, sign));
  }
  auto i4 = dihedral(4, 2, 1);
  for (int w = 0; w < 8; ++w) CHECK(i4->algebra().tau(i4->kl().c_basis(w)) == i4->kl().p(0, w).bar());
}

TEST_CASE("structure constants of the C basis") {
  for (int m : {4, 5, 6, 8}) {
    auto inst = m % 2 ? equal_params(CoxeterSystem::dihedral(m)) : dihedral(m, 3, 1);
    const auto& W = inst->group();
    const auto& alg = inst->algebra();
    auto sc = inst->structure();
    const int n = static_cast<int>(W.size());
    for (int s = 0; s < 2; ++s) {
      const int gs = W.generator(s);
      CHECK(sc->at(gs, gs, gs) == alg.v_plus_inv(s));
    }
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) CHECK(sc->at(0, y, z) == (y == z ? alg.one() : Poly(alg.rank())));
    for (int k = 0; k < m && m % 2 == 0; ++k) {
      SparseVec expected{{two_k(W, k + 1), alg.one()}};
      CHECK(sc->row(W.generator(1), one_k(W, k)) == expected);
    }
    if (m % 2 == 0)
      for (int k = 2; k < m; ++k) CHECK(sc->at(one_k(W, 1), two_k(W, k), one_k(W, k - 1)) == zeta(alg));
  }
}

TEST_CASE("m = 4 product family") {
  auto inst = dihedral(4, 2, 1);
  const auto& W = inst->group();
  SparseVec expected{{one_k(W, 2), zeta(inst->algebra())}, {one_k(W, 4), inst->algebra().one()}};
  std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  CHECK(inst->structure()->row(one_k(W, 1), two_k(W, 3)) == expected);
}

TEST_CASE("structure constants agree with T-basis products") {
  auto inst = Instance::universal(CoxeterSystem::type_B(2));
  const auto& kl = inst->kl();
  const auto& alg = inst->algebra();
  auto sc = inst->structure();
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      HVec lhs = alg.multiply_T(kl.c_basis(x), kl.c_basis(y));
      CHECK(lhs == c_to_t(kl, sc->row(x, y)));
      CHECK(t_to_c(kl, lhs) == sc->row(x, y));
    }
}

TEST_CASE("anti-involution symmetry of h") {
  for (auto inst : {dihedral(6, 3, 2), Instance::universal(CoxeterSystem::type_B(3)), equal_params(CoxeterSystem::type_A(3))}) {
    const auto& W = inst->group();
    auto sc = inst->structure();
    const int n = static_cast<int>(W.size());
    std::size_t mismatches = 0;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (const auto& [z, h] : sc->row(x, y)) mismatches += !(sc->at(W.inverse(y), W.inverse(x), W.inverse(z)) == h);
    CHECK(mismatches == 0);
  }
}

TEST_CASE("lazy and materialized structure constants agree") {
  auto inst = dihedral(8, 3, 2);
  StructureConstants lazy(inst->kl_ptr(), 0, 1);
  auto full = inst->structure();
  CHECK(full->materialized());
  CHECK_FALSE(lazy.materialized());
  for (int x = 0; x < 16; ++x)
    for (int y = 0; y < 16; ++y) CHECK(lazy.row(x, y) == full->row(x, y));
}

TEST_CASE("trace form and the dual basis") {
  auto inst = dihedral(4, 2, 1);
  const auto& alg = inst->algebra();
  const auto& kl = inst->kl();
  const auto& W = alg.group();
  CHECK(alg.tau(alg.basis_T(0)) == alg.one());
  const int s = W.generator(0);
  CHECK(alg.tau(alg.multiply_T(alg.basis_T(s), alg.basis_T(s))) == alg.one());
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      Poly t = alg.tau_product(kl.c_basis(x), kl.dual_basis(W.inverse(y)));
      CHECK(t == (x == y ? alg.one() : Poly(1)));
    }
}

TEST_CASE("h from the trace form") {
  auto inst = std::make_shared<Instance>(CoxeterSystem::type_B(2), OrderedGroup::integers(),
                                         std::vector<Exponent>{2 * Exponent::unit(0), Exponent::unit(0)});
  const auto& alg = inst->algebra();
  const auto& kl = inst->kl();
  const auto& W = alg.group();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(0, 7);
  for (int i = 0; i < 40; ++i) {
    const int x = pick(rng), y = pick(rng), z = pick(rng);
    HVec xy = alg.multiply_T(kl.c_basis(x), kl.c_basis(y));
    CHECK(alg.tau_product(xy, kl.dual_basis(W.inverse(z))) == inst->structure()->at(x, y, z));
  }
}

TEST_CASE("mu-rule multiplication matches T-basis products") {
  auto inst = dihedral_lex(6);
  const auto& kl = inst->kl();
  const auto& alg = inst->algebra();
  for (int s = 0; s < 2; ++s)
    for (int w = 0; w < 12; ++w) {
      SparseVec e{{w, alg.one()}};
      CHECK(c_to_t(kl, kl.left_mul_C(s, e)) == alg.multiply_T(kl.c_basis(alg.group().generator(s)), kl.c_basis(w)));
      CHECK(c_to_t(kl, kl.right_mul_C(e, s)) == alg.multiply_T(kl.c_basis(w), kl.c_basis(alg.group().generator(s))));
    }
}

TEST_CASE("restored KL tables are validated") {
  auto inst = dihedral(4, 2, 1);
  const auto& kl = inst->kl();
  std::vector<HVec> cp;
  for (int w = 0; w < 8; ++w) cp.push_back(kl.cprime(w));
  KLTable copy(kl.algebra_ptr(), cp, kl.mu_table());
  for (int w = 0; w < 8; ++w) CHECK(copy.cprime(w) == kl.cprime(w));
  cp.pop_back();
  CHECK_THROWS_AS(KLTable(kl.algebra_ptr(), cp, kl.mu_table()), std::invalid_argument);
}
