#pragma once

#include <memory>
#include <string>
#include <vector>

#include "uhecke/verify.hpp"

namespace uhecke::testing {

inline Poly mono(std::int64_t e, std::int64_t c = 1) { return Poly::monomial(1, e * Exponent::unit(0), Integer(c)); }

inline Poly mono2(std::int64_t e0, std::int64_t e1, std::int64_t c = 1) {
  return Poly::monomial(2, e0 * Exponent::unit(0) + e1 * Exponent::unit(1), Integer(c));
}

inline std::shared_ptr<Instance> equal_params(const CoxeterSystem& sys, InstanceOptions opts = {}) {
  return std::make_shared<Instance>(sys, OrderedGroup::integers(), std::vector<Exponent>(sys.rank(), Exponent::unit(0)), opts);
}

/// I2(m) over Gamma = Z with L(s1) = b, L(s2) = a.
inline std::shared_ptr<Instance> dihedral(int m, int b, int a) {
  return std::make_shared<Instance>(CoxeterSystem::dihedral(m), OrderedGroup::integers(),
                                    std::vector<Exponent>{b * Exponent::unit(0), a * Exponent::unit(0)});
}

/// I2(m) over Z^2 with L(s1) = (1,0) >> L(s2) = (0,1) in the lexicographic order.
inline std::shared_ptr<Instance> dihedral_lex(int m) { return Instance::universal(CoxeterSystem::dihedral(m)); }

inline Word alternating(int first, int k) {
  Word w;
  for (int i = 0; i < k; ++i) w.push_back((first + i) % 2);
  return w;
}

/// Ids of 1_k = s1s2s1... (first = 0) and 2_k = s2s1s2... (first = 1).
inline int one_k(const CoxeterGroup& W, int k) { return W.from_word(alternating(0, k)); }
inline int two_k(const CoxeterGroup& W, int k) { return W.from_word(alternating(1, k)); }

inline HVec sparse_to_dense(const SparseVec& v, std::size_t n, std::size_t rank) {
  HVec out(n, Poly(rank));
  for (const auto& [i, p] : v) out[i] = p;
  return out;
}

}  // namespace uhecke::testing
