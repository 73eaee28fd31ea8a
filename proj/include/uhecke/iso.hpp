#pragma once

// The homomorphism psi: H -> A[W] and its certificate.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "uhecke/asymptotic.hpp"
#include "uhecke/matrix.hpp"

namespace uhecke {

/// Element of A[W] with rational coefficients, sorted by group element.
using GroupAlgebraElement = std::vector<std::pair<int, RationalPoly>>;

struct PhiMatrix {
  PolyMatrix P;    // column w: phi(C_w) in the basis t_z
  IntMatrix P1;    // theta_1(P)
  Rational det_P1;
};

PhiMatrix phi_matrix(const StructureConstants& sc, const JData& jd);

/// Converts a Hecke element in any basis to T-coordinates.
HVec to_T_coordinates(const KLTable& kl, const HeckeElement& h);

class PsiMap {
 public:
  /// alpha = theta_1(C-to-T) * P_1^{-1}; throws std::domain_error if P_1 is singular.
  PsiMap(std::shared_ptr<const StructureConstants> sc, std::shared_ptr<const JData> jd);
  /// Uses the given matrix in place of alpha (negative controls).
  PsiMap(std::shared_ptr<const StructureConstants> sc, std::shared_ptr<const JData> jd, RationalMatrix alpha);

  const StructureConstants& structure() const { return *sc_; }
  const KLTable& kl() const { return sc_->kl(); }
  const PhiMatrix& phi() const { return phi_; }
  const RationalMatrix& alpha() const { return alpha_; }
  std::size_t size() const { return sc_->size(); }

  /// All values are stored as denominator() * psi(.) with integral coefficients.
  const Integer& denominator() const { return den_; }
  const HVec& scaled_C(int w) const { return psiC_[w]; }
  const HVec& scaled_T(int w) const { return psiT_[w]; }

  GroupAlgebraElement psi_C(int w) const { return unscale(psiC_[w]); }
  GroupAlgebraElement psi_T(int w) const { return unscale(psiT_[w]); }
  GroupAlgebraElement apply(const HeckeElement& h) const;

  /// Product in A[W] of dense coordinate vectors.
  HVec group_multiply(const HVec& a, const HVec& b) const;
  /// denominator()^2 * psi(C_x) psi(C_y), expanded through the constant
  /// elements alpha(t_z) in Z[W].
  HVec scaled_product(int x, int y) const;
  /// denominator() * alpha(j) for j in J_A.
  HVec scaled_alpha(const JAElement& j) const;
  const JAElement& phi_C(int w) const { return phi_cols_[w]; }

 private:
  void build();
  GroupAlgebraElement unscale(const HVec& v) const;
  std::shared_ptr<const StructureConstants> sc_;
  std::shared_ptr<const JData> jd_;
  PhiMatrix phi_;
  RationalMatrix alpha_;
  Integer den_;
  std::vector<HVec> psiC_, psiT_;
  std::vector<JAElement> phi_cols_;
  IntMatrix a_;  // denominator() * alpha
  std::vector<int> mult_;
  mutable std::mutex cache_mu_;
  mutable std::map<std::pair<int, int>, std::vector<Integer>> pair_cache_;
};

struct IsoCertificate {
  Rational det_P1;
  /// psi(C_s) psi(C_w) = sum_z h_{s,w,z} psi(C_z) for all s, w; this alone
  /// implies multiplicativity since the C_s generate H.
  bool generators_ok = true;
  std::optional<std::pair<int, int>> generator_witness;
  bool pairs_ok = true;
  bool pairs_exhaustive = true;
  std::size_t pairs_checked = 0;
  std::optional<std::pair<int, int>> pair_witness;
  bool theta1_identity = true;
  std::optional<std::pair<int, int>> theta1_witness;
  /// det(Q) computed explicitly for small groups; theta_1(det Q) = 1 otherwise.
  bool det_Q_computed = false;
  bool det_Q_nonzero = true;
  bool theta1_det_P_ok = true;
  bool ok() const {
    return det_P1 != 0 && generators_ok && pairs_ok && theta1_identity && det_Q_nonzero && theta1_det_P_ok;
  }
};

IsoCertificate certify_iso(const PsiMap& psi, std::size_t pair_limit = 48, std::size_t samples = 2000,
                           std::uint64_t seed = 1, std::size_t det_limit = 8);

}  // namespace uhecke
