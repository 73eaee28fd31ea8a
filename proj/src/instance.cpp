#include "uhecke/instance.hpp"

#include <sstream>

namespace uhecke {

Instance::Instance(CoxeterSystem sys, OrderedGroup gamma, std::vector<Exponent> weights, InstanceOptions opts,
                   const KLFactory& make_kl)
    : opts_(opts) {
  WeightFunction L(sys, gamma, std::move(weights));
  group_ = std::make_shared<const CoxeterGroup>(std::move(sys), opts_.group_cap);
  alg_ = std::make_shared<const HeckeAlgebra>(group_, std::move(gamma), std::move(L));
  if (make_kl) kl_ = make_kl(alg_);
  if (!kl_) kl_ = std::make_shared<const KLTable>(alg_);
}

std::shared_ptr<Instance> Instance::universal(CoxeterSystem sys, InstanceOptions opts) {
  auto [gamma, L] = WeightFunction::universal(sys);
  return std::make_shared<Instance>(std::move(sys), std::move(gamma), L.values(), opts);
}

std::shared_ptr<const StructureConstants> Instance::structure() const {
  std::lock_guard lock(mu_);
  if (!sc_) sc_ = std::make_shared<const StructureConstants>(kl_, opts_.full_limit, opts_.workers);
  return sc_;
}

std::shared_ptr<const JData> Instance::jdata() const {
  {
    std::lock_guard lock(mu_);
    if (jd_) return jd_;
  }
  auto sc = structure();
  auto jd = std::make_shared<const JData>(compute_jdata(*sc));
  std::lock_guard lock(mu_);
  if (!jd_) jd_ = std::move(jd);
  return jd_;
}

void Instance::set_jdata(JData jd) {
  if (jd.size() != group_->size()) throw std::invalid_argument("JData does not match the instance");
  std::lock_guard lock(mu_);
  jd_ = std::make_shared<const JData>(std::move(jd));
}

const CellPartition& Instance::cells() const {
  std::lock_guard lock(mu_);
  if (!cells_) cells_ = std::make_unique<CellPartition>(compute_cells(*kl_));
  return *cells_;
}

std::string Instance::describe() const {
  std::ostringstream os;
  const auto& sys = group_->system();
  os << (sys.name().empty() ? "W" : sys.name()) << " |W|=" << group_->size() << " L=(";
  for (std::size_t s = 0; s < sys.rank(); ++s) {
    if (s) os << ",";
    os << to_string(weights()[s], gamma().rank());
  }
  os << ")";
  return os.str();
}

}  // namespace uhecke
