#pragma once

// The a-function, Delta, n_z, the set of distinguished elements, the
// coefficients gamma_{x,y,z}, the ring J and the homomorphism phi: H -> J_A.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uhecke/hecke.hpp"

namespace uhecke {

struct GammaEntry {
  int x, y, z;
  std::int64_t value;
  friend bool operator==(const GammaEntry&, const GammaEntry&) = default;
};

struct JData {
  std::size_t rank = 0;  // rank of Gamma
  std::vector<Exponent> a, delta;
  std::vector<Integer> n;
  std::vector<int> distinguished;  // sorted
  /// Nonzero gamma_{x,y,z}, sorted by (x, y, z).
  std::vector<GammaEntry> gamma;

  std::size_t size() const { return a.size(); }
  bool is_distinguished(int z) const;
  std::int64_t gamma_at(int x, int y, int z) const;
  /// Entries with the given (x, y).
  std::span<const GammaEntry> gamma_row(int x, int y) const;

  friend bool operator==(const JData&, const JData&) = default;
};

/// Delta(z) and n_z from p_{1,z}.
std::pair<Exponent, Integer> delta_n(const KLTable& kl, int z);

/// Builds JData by streaming all structure constants column by column.
JData compute_jdata(const StructureConstants& sc);

/// Sparse element of J (integer coefficients) or J_A (Laurent coefficients).
using JElement = std::vector<std::pair<int, Integer>>;
using JAElement = SparseVec;

struct AssociativityReport {
  bool ok = true;
  bool exhaustive = true;
  std::size_t triples_checked = 0;
  std::optional<std::array<int, 3>> witness;
};

class JRing {
 public:
  JRing(std::shared_ptr<const JData> jd, std::shared_ptr<const CoxeterGroup> group);

  const JData& data() const { return *jd_; }
  std::size_t size() const { return jd_->size(); }

  /// t_x t_y = sum_z gamma_{x,y,z^{-1}} t_z.
  JElement basis_product(int x, int y) const;
  JElement multiply(const JElement& a, const JElement& b) const;
  JAElement multiply(const JAElement& a, const JAElement& b) const;
  /// 1_J = sum_{d in D} n_d t_d.
  JElement identity() const;

  /// Exhaustive when |W| <= exhaustive_limit, otherwise `samples` random triples.
  AssociativityReport check_associativity(std::size_t exhaustive_limit = 120, std::size_t samples = 20000,
                                          std::uint64_t seed = 1) const;
  /// 1_J t_w = t_w = t_w 1_J for every w; returns a failing w.
  std::optional<int> check_identity() const;

 private:
  std::shared_ptr<const JData> jd_;
  std::shared_ptr<const CoxeterGroup> group_;
};

/// phi(C_w) = sum_{z, d in D, a(z)=a(d)} h_{w,d,z} n_d t_z.
JAElement phi(const StructureConstants& sc, const JData& jd, int w);
/// phi(C_w) for every w, reading each column C_d (d in D) once.
std::vector<JAElement> phi_all(const StructureConstants& sc, const JData& jd);
/// phi applied A-linearly to a C-coordinate vector.
JAElement phi(const StructureConstants& sc, const JData& jd, const SparseVec& c);

}  // namespace uhecke
