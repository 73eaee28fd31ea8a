#include "uhecke/hecke.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace uhecke {

SparseVec to_sparse(const HVec& v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.emplace_back(static_cast<int>(i), v[i]);
  return out;
}

HVec to_dense(const SparseVec& v, std::size_t n) {
  HVec out(n);
  for (const auto& [i, p] : v) out[i] = p;
  return out;
}

const char* basis_name(Basis b) {
  switch (b) {
    case Basis::T: return "T";
    case Basis::Cprime: return "Cprime";
    case Basis::C: return "C";
    case Basis::D: return "D";
  }
  return "?";
}

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& f) {
  if (workers == 0) workers = default_workers();
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(workers, n); ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(err_mu);
          if (!err) err = std::current_exception();
          next = n;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

HeckeAlgebra::HeckeAlgebra(std::shared_ptr<const CoxeterGroup> group, OrderedGroup gamma, WeightFunction weights)
    : group_(std::move(group)), gamma_(std::move(gamma)), weights_(std::move(weights)) {
  const std::size_t k = gamma_.rank();
  for (std::size_t s = 0; s < group_->rank(); ++s) {
    v_.push_back(Poly::monomial(k, weights_[s]));
    vinv_.push_back(Poly::monomial(k, -weights_[s]));
    vdiff_.push_back(v_[s] - vinv_[s]);
    vsum_.push_back(v_[s] + vinv_[s]);
  }
}

HVec HeckeAlgebra::basis_T(int w) const {
  HVec h(size());
  h[w] = one();
  return h;
}

HVec HeckeAlgebra::left_mul_T(int s, const HVec& h) const {
  const auto& W = *group_;
  HVec out(size());
  for (std::size_t w = 0; w < h.size(); ++w) {
    if (h[w].is_zero()) continue;
    int sw = W.left_mul(s, static_cast<int>(w));
    out[sw] += h[w];
    if (W.is_left_descent(s, static_cast<int>(w))) out[w] += vdiff_[s] * h[w];
  }
  return out;
}

HVec HeckeAlgebra::right_mul_T(const HVec& h, int s) const {
  const auto& W = *group_;
  HVec out(size());
  for (std::size_t w = 0; w < h.size(); ++w) {
    if (h[w].is_zero()) continue;
    int ws = W.right_mul(static_cast<int>(w), s);
    out[ws] += h[w];
    if (W.is_right_descent(static_cast<int>(w), s)) out[w] += vdiff_[s] * h[w];
  }
  return out;
}

HVec HeckeAlgebra::multiply_T(const HVec& a, const HVec& b) const {
  const auto& W = *group_;
  const std::size_t n = size();
  // T_x b = T_s (T_{sx} b) along canonical words; only prefixes of the
  // support of a are needed.
  std::vector<char> need(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    if (a[x].is_zero()) continue;
    for (int y = static_cast<int>(x); y != 0 && !need[y]; y = W.left_mul(W.first_left_descent(y), y)) need[y] = 1;
  }
  need[0] = 1;
  std::vector<HVec> memo(n);
  memo[0] = b;
  HVec out(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (!need[x]) continue;
    if (x > 0) {
      int s = W.first_left_descent(static_cast<int>(x));
      memo[x] = left_mul_T(s, memo[W.left_mul(s, static_cast<int>(x))]);
    }
    if (!a[x].is_zero())
      for (std::size_t z = 0; z < n; ++z)
        if (!memo[x][z].is_zero()) out[z] += a[x] * memo[x][z];
  }
  return out;
}

HVec HeckeAlgebra::bar(const HVec& h) const {
  const auto& W = *group_;
  const std::size_t n = size();
  // S(w) = bar(a_w) + sum over children w' = s w of S(w') bar(T_s); bar(h) = S(1).
  std::vector<HVec> acc(n);
  for (std::size_t w = n; w-- > 0;) {
    HVec& cur = acc[w];
    if (!h[w].is_zero()) {
      if (cur.empty()) cur.resize(n);
      cur[0] += h[w].bar();
    }
    if (w == 0) break;
    if (cur.empty()) continue;
    int s = W.first_left_descent(static_cast<int>(w));
    int parent = W.left_mul(s, static_cast<int>(w));
    HVec term = right_mul_T(cur, s);
    for (std::size_t z = 0; z < n; ++z)
      if (!cur[z].is_zero()) term[z] -= vdiff_[s] * cur[z];
    HVec& par = acc[parent];
    if (par.empty())
      par = std::move(term);
    else
      for (std::size_t z = 0; z < n; ++z) par[z] += term[z];
    HVec().swap(cur);
  }
  if (acc[0].empty()) acc[0].resize(n);
  return acc[0];
}

Poly HeckeAlgebra::tau_product(const HVec& a, const HVec& b) const {
  Poly r(rank());
  for (std::size_t u = 0; u < a.size(); ++u)
    if (!a[u].is_zero()) {
      const Poly& q = b[group_->inverse(static_cast<int>(u))];
      if (!q.is_zero()) r += a[u] * q;
    }
  return r;
}

HeckeElement HeckeAlgebra::t_multiply(const HeckeElement& a, const HeckeElement& b) const {
  if (a.basis != Basis::T || b.basis != Basis::T) throw std::invalid_argument("t_multiply needs T-basis elements");
  return {Basis::T, multiply_T(a.coords, b.coords)};
}

HeckeElement HeckeAlgebra::bar_hecke(const HeckeElement& h) const {
  if (h.basis != Basis::T) throw std::invalid_argument("bar_hecke needs a T-basis element");
  return {Basis::T, bar(h.coords)};
}

KLTable::KLTable(std::shared_ptr<const HeckeAlgebra> alg) : alg_(std::move(alg)), nsg_(alg_->group().rank()) {
  compute();
}

KLTable::KLTable(std::shared_ptr<const HeckeAlgebra> alg, std::vector<HVec> cprime, std::vector<SparseVec> mu)
    : alg_(std::move(alg)), nsg_(alg_->group().rank()), cprime_(std::move(cprime)), mu_(std::move(mu)) {
  const std::size_t n = alg_->size();
  if (cprime_.size() != n || mu_.size() != n * nsg_) throw std::invalid_argument("stored KL table has the wrong size");
  for (const auto& c : cprime_)
    if (c.size() != n) throw std::invalid_argument("stored KL table has the wrong size");
}

void KLTable::compute() {
  const auto& W = alg_->group();
  const auto& gamma = alg_->gamma();
  const std::size_t n = W.size();
  cprime_.assign(n, HVec());
  mu_.assign(n * nsg_, SparseVec());
  cprime_[0] = alg_->basis_T(0);

  for (std::size_t wi = 0; wi < n; ++wi) {
    const int w = static_cast<int>(wi);
    if (cprime_[w].empty()) throw std::logic_error("Kazhdan-Lusztig recursion reached an element out of order");
    for (std::size_t si = 0; si < nsg_; ++si) {
      const int s = static_cast<int>(si);
      if (W.is_left_descent(s, w)) continue;
      const int sw = W.left_mul(s, w);
      // X = C'_s C'_w = (T_s + v_s^{-1}) C'_w, then strip the C'_z, z < sw.
      HVec X = alg_->left_mul_T(s, cprime_[w]);
      for (std::size_t z = 0; z < n; ++z)
        if (!cprime_[w][z].is_zero()) X[z] += alg_->v_inv(s) * cprime_[w][z];
      SparseVec found;
      for (int z = sw - 1; z >= 0; --z) {
        if (X[z].is_zero()) continue;
        auto split = split_by_sign(X[z], gamma);
        if (split.constant == 0 && split.positive.is_zero()) continue;
        Poly m = split.positive + split.positive.bar();
        if (split.constant != 0) m += Poly::constant(gamma.rank(), split.constant);
        const HVec& cz = cprime_[z];
        for (int y = 0; y <= z; ++y)
          if (!cz[y].is_zero()) X[y] -= m * cz[y];
        found.emplace_back(z, std::move(m));
      }
      for (std::size_t z = sw + 1; z < n; ++z)
        if (!X[z].is_zero()) throw std::logic_error("C'_s C'_w has support above sw");
      if (X[sw] != alg_->one()) throw std::logic_error("C'_s C'_w does not have leading coefficient 1");
      std::reverse(found.begin(), found.end());
      mu_[wi * nsg_ + si] = std::move(found);
      if (cprime_[sw].empty()) {
        cprime_[sw] = std::move(X);
      } else if (cprime_[sw] != X) {
        throw std::logic_error("Kazhdan-Lusztig basis element depends on the chosen descent");
      }
    }
  }
}

Poly KLTable::mu_value(int s, int y, int w) const {
  const auto& list = mu(s, w);
  auto it = std::lower_bound(list.begin(), list.end(), y, [](const auto& e, int v) { return e.first < v; });
  if (it != list.end() && it->first == y) return it->second;
  return Poly(alg_->rank());
}

HVec KLTable::c_basis(int w) const {
  const auto& W = alg_->group();
  HVec out(size());
  for (std::size_t y = 0; y < size(); ++y) {
    const Poly& p = cprime_[w][y];
    if (p.is_zero()) continue;
    out[y] = W.length(static_cast<int>(y)) % 2 ? -p.bar() : p.bar();
  }
  return out;
}

const std::vector<HVec>& KLTable::c_inverse() const {
  std::call_once(inv_once_, [this] {
    const auto& W = alg_->group();
    const std::size_t n = size();
    std::vector<HVec> cm(n);
    for (std::size_t w = 0; w < n; ++w) cm[w] = c_basis(static_cast<int>(w));
    // cm[w][y] = Cm(y, w) is upper triangular with diagonal (-1)^{l(w)}.
    std::vector<HVec> inv(n, HVec(n));
    for (std::size_t j = 0; j < n; ++j) {
      HVec& col = inv[j];
      for (std::size_t i = j + 1; i-- > 0;) {
        Poly acc = i == j ? alg_->one() : Poly(alg_->rank());
        for (std::size_t k = i + 1; k <= j; ++k)
          if (!cm[k][i].is_zero() && !col[k].is_zero()) acc -= cm[k][i] * col[k];
        col[i] = W.length(static_cast<int>(i)) % 2 ? -acc : acc;
      }
    }
    cinv_ = std::move(inv);
  });
  return cinv_;
}

HVec KLTable::dual_basis(int w) const {
  const auto& W = alg_->group();
  const auto& inv = c_inverse();
  const int wi = W.inverse(w);
  HVec out(size());
  // coordinate of D_w at T_u is (Cm^{-1})(w^{-1}, u^{-1}).
  for (std::size_t u = 0; u < size(); ++u) out[u] = inv[W.inverse(static_cast<int>(u))][wi];
  return out;
}

SparseVec KLTable::left_mul_C(int s, const SparseVec& v) const {
  const auto& W = alg_->group();
  HVec acc(size());
  std::vector<int> touched;
  auto add = [&](int i, const Poly& p) {
    if (acc[i].is_zero()) touched.push_back(i);
    acc[i] += p;
  };
  for (const auto& [z, c] : v) {
    if (W.is_left_descent(s, z)) {
      add(z, alg_->v_plus_inv(s) * c);
      continue;
    }
    add(W.left_mul(s, z), c);
    for (const auto& [y, m] : mu(s, z)) add(y, m * c);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  SparseVec out;
  for (int i : touched)
    if (!acc[i].is_zero()) out.emplace_back(i, std::move(acc[i]));
  return out;
}

SparseVec KLTable::right_mul_C(const SparseVec& v, int s) const {
  // h_{x,s,y} = h_{s,x^{-1},y^{-1}}
  const auto& W = alg_->group();
  SparseVec inv;
  for (const auto& [x, c] : v) inv.emplace_back(W.inverse(x), c);
  std::sort(inv.begin(), inv.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec r = left_mul_C(s, inv);
  for (auto& e : r) e.first = W.inverse(e.first);
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return r;
}

HVec c_to_t(const KLTable& kl, const SparseVec& c) {
  HVec out(kl.size());
  for (const auto& [w, a] : c) {
    HVec cw = kl.c_basis(w);
    for (std::size_t y = 0; y < out.size(); ++y)
      if (!cw[y].is_zero()) out[y] += a * cw[y];
  }
  return out;
}

SparseVec t_to_c(const KLTable& kl, const HVec& t) {
  const auto& inv = kl.c_inverse();
  HVec out(kl.size());
  for (std::size_t w = 0; w < t.size(); ++w) {
    if (t[w].is_zero()) continue;
    for (std::size_t u = 0; u < out.size(); ++u)
      if (!inv[w][u].is_zero()) out[u] += t[w] * inv[w][u];
  }
  return to_sparse(out);
}

StructureConstants::StructureConstants(std::shared_ptr<const KLTable> kl, std::size_t full_limit, unsigned workers)
    : kl_(std::move(kl)), workers_(workers == 0 ? default_workers() : workers) {
  const std::size_t n = kl_->size();
  if (n > full_limit) return;
  std::vector<std::vector<SparseVec>> cols(n);
  parallel_for(n, workers_, [&](std::size_t y) { cols[y] = compute_column(static_cast<int>(y)); });
  full_.resize(n * n);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x) full_[x * n + y] = std::move(cols[y][x]);
}

std::vector<SparseVec> StructureConstants::compute_column(int y) const {
  const auto& W = kl_->group();
  const std::size_t n = W.size();
  std::vector<SparseVec> R(n);
  R[0] = {{y, kl_->algebra().one()}};
  for (std::size_t xi = 1; xi < n; ++xi) {
    const int x = static_cast<int>(xi);
    const int s = W.first_left_descent(x);
    const int sx = W.left_mul(s, x);
    // C_x = C_s C_{sx} - sum_z mu^s_{z,sx} C_z
    SparseVec r = kl_->left_mul_C(s, R[sx]);
    const auto& corr = kl_->mu(s, sx);
    if (!corr.empty()) {
      HVec acc = to_dense(r, n);
      for (const auto& [z, m] : corr)
        for (const auto& [u, c] : R[z]) acc[u] -= m * c;
      r = to_sparse(acc);
    }
    R[x] = std::move(r);
  }
  return R;
}

std::vector<SparseVec> StructureConstants::column(int y) const {
  const std::size_t n = size();
  if (materialized()) {
    std::vector<SparseVec> col(n);
    for (std::size_t x = 0; x < n; ++x) col[x] = full_[x * n + y];
    return col;
  }
  std::lock_guard lock(cache_mu_);
  if (cached_y_ != y) {
    cached_col_ = compute_column(y);
    cached_y_ = y;
  }
  return cached_col_;
}

SparseVec StructureConstants::row(int x, int y) const {
  if (materialized()) return full_[static_cast<std::size_t>(x) * size() + y];
  std::lock_guard lock(cache_mu_);
  if (cached_y_ != y) {
    cached_col_ = compute_column(y);
    cached_y_ = y;
  }
  return cached_col_[x];
}

const Poly& StructureConstants::at(int x, int y, int z) const {
  static const Poly zero;
  if (!materialized()) throw std::logic_error("structure constant table not materialized; use row()");
  const auto& r = full_[static_cast<std::size_t>(x) * size() + y];
  auto it = std::lower_bound(r.begin(), r.end(), z, [](const auto& e, int v) { return e.first < v; });
  if (it != r.end() && it->first == z) return it->second;
  return zero;
}

void StructureConstants::for_each_column(const std::function<void(int, const std::vector<SparseVec>&)>& f) const {
  const std::size_t n = size();
  if (materialized()) {
    for (std::size_t y = 0; y < n; ++y) f(static_cast<int>(y), column(static_cast<int>(y)));
    return;
  }
  std::mutex mu;
  parallel_for(n, workers_, [&](std::size_t y) {
    auto col = compute_column(static_cast<int>(y));
    std::lock_guard lock(mu);
    f(static_cast<int>(y), col);
  });
}

}  // namespace uhecke
