#pragma once

// The generic Iwahori-Hecke algebra over A = Z[Gamma], its Kazhdan-Lusztig
// bases, mu-coefficients, the dual basis and the structure constants h_{x,y,z}.

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "uhecke/coxeter.hpp"
#include "uhecke/ordgroup.hpp"

namespace uhecke {

/// Dense coordinate vector indexed by element id.
using HVec = std::vector<Poly>;
/// Sparse coordinate vector, sorted by element id, no zero entries.
using SparseVec = std::vector<std::pair<int, Poly>>;

SparseVec to_sparse(const HVec& v);
HVec to_dense(const SparseVec& v, std::size_t n);

enum class Basis { T, Cprime, C, D };
const char* basis_name(Basis b);

struct HeckeElement {
  Basis basis = Basis::T;
  HVec coords;
};

class HeckeAlgebra {
 public:
  HeckeAlgebra(std::shared_ptr<const CoxeterGroup> group, OrderedGroup gamma, WeightFunction weights);

  const CoxeterGroup& group() const { return *group_; }
  const std::shared_ptr<const CoxeterGroup>& group_ptr() const { return group_; }
  const OrderedGroup& gamma() const { return gamma_; }
  const WeightFunction& weights() const { return weights_; }
  std::size_t size() const { return group_->size(); }
  std::size_t rank() const { return gamma_.rank(); }

  /// v_s = eps^{L(s)} and friends.
  const Poly& v(int s) const { return v_[s]; }
  const Poly& v_inv(int s) const { return vinv_[s]; }
  const Poly& v_minus_inv(int s) const { return vdiff_[s]; }
  const Poly& v_plus_inv(int s) const { return vsum_[s]; }

  Poly one() const { return Poly::constant(rank(), 1); }
  HVec zero() const { return HVec(size()); }
  HVec basis_T(int w) const;

  HVec left_mul_T(int s, const HVec& h) const;
  HVec right_mul_T(const HVec& h, int s) const;
  HVec multiply_T(const HVec& a, const HVec& b) const;
  /// The semilinear involution sum a_w T_w -> sum bar(a_w) T_{w^{-1}}^{-1}.
  HVec bar(const HVec& h) const;
  /// tau(h): the T_1 coordinate.
  Poly tau(const HVec& h) const { return h[0]; }
  /// tau(a b) without forming the product: sum_u a_u b_{u^{-1}}.
  Poly tau_product(const HVec& a, const HVec& b) const;

  HeckeElement t_multiply(const HeckeElement& a, const HeckeElement& b) const;
  HeckeElement bar_hecke(const HeckeElement& h) const;

 private:
  std::shared_ptr<const CoxeterGroup> group_;
  OrderedGroup gamma_;
  WeightFunction weights_;
  std::vector<Poly> v_, vinv_, vdiff_, vsum_;
};

/// Kazhdan-Lusztig data of one (W, L, <=) instance. The C' basis and all
/// mu^s_{y,w} are computed at construction, in length order, and then frozen.
class KLTable {
 public:
  explicit KLTable(std::shared_ptr<const HeckeAlgebra> alg);
  /// Restores a table from stored C' columns and mu lists (index w * rank + s).
  KLTable(std::shared_ptr<const HeckeAlgebra> alg, std::vector<HVec> cprime, std::vector<SparseVec> mu);

  const HeckeAlgebra& algebra() const { return *alg_; }
  const std::shared_ptr<const HeckeAlgebra>& algebra_ptr() const { return alg_; }
  const CoxeterGroup& group() const { return alg_->group(); }
  std::size_t size() const { return alg_->size(); }

  /// C'_w in T-coordinates.
  const HVec& cprime(int w) const { return cprime_[w]; }
  HeckeElement kl_cprime(int w) const { return {Basis::T, cprime_[w]}; }
  const Poly& p(int y, int w) const { return cprime_[w][y]; }
  const std::vector<SparseVec>& mu_table() const { return mu_; }

  /// Nonzero mu^s_{y,w} (y != sw) for sw > w, sorted by y; empty if sw < w.
  const SparseVec& mu(int s, int w) const { return mu_[static_cast<std::size_t>(w) * nsg_ + s]; }
  Poly mu_value(int s, int y, int w) const;

  /// C_w in T-coordinates.
  HVec c_basis(int w) const;
  HeckeElement c_basis_element(int w) const { return {Basis::T, c_basis(w)}; }
  /// D_w in T-coordinates; requires the inverse of the C-to-T matrix.
  HVec dual_basis(int w) const;
  HeckeElement dual_basis_element(int w) const { return {Basis::T, dual_basis(w)}; }
  /// (C-to-T matrix)^{-1}: column w holds the C-coordinates of T_w.
  const std::vector<HVec>& c_inverse() const;

  /// C_s . v for a C-coordinate vector v, via the mu-rule.
  SparseVec left_mul_C(int s, const SparseVec& v) const;
  /// v . C_s for a C-coordinate vector v.
  SparseVec right_mul_C(const SparseVec& v, int s) const;

 private:
  void compute();
  std::shared_ptr<const HeckeAlgebra> alg_;
  std::size_t nsg_;
  std::vector<HVec> cprime_;
  std::vector<SparseVec> mu_;
  mutable std::once_flag inv_once_;
  mutable std::vector<HVec> cinv_;
};

/// Converts a C-coordinate vector to T-coordinates.
HVec c_to_t(const KLTable& kl, const SparseVec& c);
/// Converts T-coordinates to C-coordinates (uses the inverse C-to-T matrix).
SparseVec t_to_c(const KLTable& kl, const HVec& t);

/// Structure constants C_x C_y = sum_z h_{x,y,z} C_z.
class StructureConstants {
 public:
  /// Full tables are materialized when |W| <= full_limit; otherwise columns
  /// are computed on demand.
  explicit StructureConstants(std::shared_ptr<const KLTable> kl, std::size_t full_limit = 200, unsigned workers = 0);

  const KLTable& kl() const { return *kl_; }
  std::size_t size() const { return kl_->size(); }
  bool materialized() const { return !full_.empty(); }

  /// The sparse row {z: h_{x,y,z}}.
  SparseVec row(int x, int y) const;
  const Poly& at(int x, int y, int z) const;
  /// Column y: entry x is the row {z: h_{x,y,z}}.
  std::vector<SparseVec> column(int y) const;

  /// Streams all columns (in parallel when workers > 1); the callback runs
  /// under a lock, in no particular order of y.
  void for_each_column(const std::function<void(int, const std::vector<SparseVec>&)>& f) const;

  unsigned workers() const { return workers_; }

 private:
  std::vector<SparseVec> compute_column(int y) const;
  std::shared_ptr<const KLTable> kl_;
  unsigned workers_;
  std::vector<SparseVec> full_;  // index x*n+y
  mutable std::mutex cache_mu_;
  mutable int cached_y_ = -1;
  mutable std::vector<SparseVec> cached_col_;
};

/// Runs f(i) for i in [0, n) on up to `workers` threads.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& f);
unsigned default_workers();

}  // namespace uhecke
