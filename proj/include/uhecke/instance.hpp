#pragma once

// One (W, L, <=) instance with lazily built derived tables.

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "uhecke/asymptotic.hpp"
#include "uhecke/cells.hpp"

namespace uhecke {

struct InstanceOptions {
  /// Structure constants are materialized up to this group order.
  std::size_t full_limit = 200;
  unsigned workers = 0;
  std::size_t group_cap = CoxeterGroup::kDefaultCap;
};

class Instance {
 public:
  using KLFactory = std::function<std::shared_ptr<const KLTable>(std::shared_ptr<const HeckeAlgebra>)>;

  /// make_kl may supply a stored table; by default it is computed.
  Instance(CoxeterSystem sys, OrderedGroup gamma, std::vector<Exponent> weights, InstanceOptions opts = {},
           const KLFactory& make_kl = {});

  /// Gamma = Z^c with one coordinate per generator class, lexicographic order.
  static std::shared_ptr<Instance> universal(CoxeterSystem sys, InstanceOptions opts = {});

  const CoxeterGroup& group() const { return *group_; }
  const std::shared_ptr<const CoxeterGroup>& group_ptr() const { return group_; }
  const HeckeAlgebra& algebra() const { return *alg_; }
  const OrderedGroup& gamma() const { return alg_->gamma(); }
  const WeightFunction& weights() const { return alg_->weights(); }
  const KLTable& kl() const { return *kl_; }
  const std::shared_ptr<const KLTable>& kl_ptr() const { return kl_; }
  const InstanceOptions& options() const { return opts_; }

  std::shared_ptr<const StructureConstants> structure() const;
  std::shared_ptr<const JData> jdata() const;
  /// Installs JData loaded from a cache.
  void set_jdata(JData jd);
  const CellPartition& cells() const;

  std::string describe() const;

 private:
  InstanceOptions opts_;
  std::shared_ptr<const CoxeterGroup> group_;
  std::shared_ptr<const HeckeAlgebra> alg_;
  std::shared_ptr<const KLTable> kl_;
  mutable std::mutex mu_;
  mutable std::shared_ptr<const StructureConstants> sc_;
  mutable std::shared_ptr<const JData> jd_;
  mutable std::unique_ptr<CellPartition> cells_;
};

}  // namespace uhecke
