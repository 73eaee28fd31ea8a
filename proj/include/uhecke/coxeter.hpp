#pragma once

// Finite Coxeter groups: enumeration through the reflection representation,
// ShortLex normal forms, descents, Bruhat order and parabolic subgroups.

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "uhecke/ordgroup.hpp"

namespace uhecke {

class CoxeterSystem {
 public:
  /// Validates symmetry, unit diagonal and m_st >= 2 off the diagonal.
  CoxeterSystem(std::vector<std::vector<int>> matrix, std::vector<std::string> labels = {});

  static CoxeterSystem type_A(int n);
  static CoxeterSystem type_B(int n);
  static CoxeterSystem type_D(int n);
  static CoxeterSystem dihedral(int m);
  static CoxeterSystem type_H(int n);
  static CoxeterSystem type_F4();
  /// Preset by name ("A", "B", "D", "I2", "H3", "H4", "F4", ...).
  static CoxeterSystem preset(const std::string& type, int rank, int m);

  std::size_t rank() const { return matrix_.size(); }
  int m(std::size_t s, std::size_t t) const { return matrix_[s][t]; }
  const std::vector<std::vector<int>>& matrix() const { return matrix_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  /// Class index of each generator; s,t are conjugate iff joined by a path of odd m.
  const std::vector<int>& generator_classes() const { return classes_; }
  std::size_t num_generator_classes() const;

  /// Coxeter system of the standard parabolic subgroup generated by `subset`
  /// (indices into this system, kept in increasing order).
  CoxeterSystem parabolic(const std::vector<int>& subset) const;

  friend bool operator==(const CoxeterSystem& a, const CoxeterSystem& b) { return a.matrix_ == b.matrix_; }

 private:
  std::vector<std::vector<int>> matrix_;
  std::vector<std::string> labels_;
  std::vector<int> classes_;
  std::string name_;
};

using Word = std::vector<int>;

/// Fully enumerated finite Coxeter group. Element ids are dense and sorted by
/// (length, ShortLex canonical word); id 0 is the identity.
class CoxeterGroup {
 public:
  static constexpr std::size_t kDefaultCap = 20000;

  explicit CoxeterGroup(CoxeterSystem sys, std::size_t cap = kDefaultCap);

  const CoxeterSystem& system() const { return sys_; }
  std::size_t size() const { return length_.size(); }
  std::size_t rank() const { return sys_.rank(); }
  int identity() const { return 0; }
  int longest() const { return static_cast<int>(size()) - 1; }
  int max_length() const { return length_.back(); }

  int length(int w) const { return length_[w]; }
  const Word& word(int w) const { return words_[w]; }
  int left_mul(int s, int w) const { return lmul_[w * rank() + s]; }
  int right_mul(int w, int s) const { return rmul_[w * rank() + s]; }
  int inverse(int w) const { return inv_[w]; }
  bool is_left_descent(int s, int w) const { return (ldes_[w] >> s) & 1u; }
  bool is_right_descent(int w, int s) const { return (rdes_[w] >> s) & 1u; }
  std::uint32_t left_descents(int w) const { return ldes_[w]; }
  std::uint32_t right_descents(int w) const { return rdes_[w]; }
  /// Smallest-index left descent; -1 for the identity.
  int first_left_descent(int w) const;

  int multiply(int x, int y) const;
  /// Evaluates an arbitrary (not necessarily reduced) word.
  int from_word(const Word& w) const;
  bool bruhat_leq(int y, int w) const;
  /// The elements whose canonical words only use generators from `subset`.
  std::vector<int> parabolic(const std::vector<int>& subset) const;

  /// Generator index of s, as an element id.
  int generator(int s) const { return lmul_[s]; }
  std::string format(int w) const;

 private:
  CoxeterSystem sys_;
  std::vector<int> length_;
  std::vector<Word> words_;
  std::vector<int> lmul_, rmul_, inv_;
  std::vector<std::uint32_t> ldes_, rdes_;
  void build_bruhat() const;
  mutable std::once_flag bruhat_once_;
  mutable std::size_t bwords_ = 0;
  mutable std::vector<std::uint64_t> bruhat_;  // row w: bitset of y <= w
};

/// L: W -> Gamma given by its values on generators.
class WeightFunction {
 public:
  /// Validates conjugation invariance and positivity.
  WeightFunction(const CoxeterSystem& sys, const OrderedGroup& gamma, std::vector<Exponent> values);

  /// The universal weight function: Gamma = Z^c with one coordinate per
  /// generator class and the lexicographic order.
  static std::pair<OrderedGroup, WeightFunction> universal(const CoxeterSystem& sys);

  const Exponent& operator[](std::size_t s) const { return values_[s]; }
  const std::vector<Exponent>& values() const { return values_; }
  /// L(w) for a word.
  Exponent of_word(const Word& w) const;

 private:
  std::vector<Exponent> values_;
};

}  // namespace uhecke
