#include "uhecke/iso.hpp"

#include <random>
#include <stdexcept>

namespace uhecke {

PhiMatrix phi_matrix(const StructureConstants& sc, const JData& jd) {
  const std::size_t n = sc.size();
  const std::size_t rank = sc.kl().algebra().rank();
  PhiMatrix out;
  out.P = PolyMatrix(n, n, Poly(rank));
  auto cols = phi_all(sc, jd);
  for (std::size_t w = 0; w < n; ++w)
    for (auto& [z, c] : cols[w]) out.P(z, w) = std::move(c);
  out.P1 = out.P.map([](const Poly& p) { return p.at_one(); });
  out.det_P1 = rational_determinant(out.P1.map([](const Integer& v) { return Rational(v); }));
  return out;
}

HVec to_T_coordinates(const KLTable& kl, const HeckeElement& h) {
  const std::size_t n = kl.size();
  if (h.coords.size() != n) throw std::invalid_argument("Hecke element has the wrong dimension");
  switch (h.basis) {
    case Basis::T:
      return h.coords;
    case Basis::C:
      return c_to_t(kl, to_sparse(h.coords));
    case Basis::Cprime:
    case Basis::D: {
      HVec out(n);
      for (std::size_t w = 0; w < n; ++w) {
        if (h.coords[w].is_zero()) continue;
        HVec b = h.basis == Basis::Cprime ? kl.cprime(static_cast<int>(w)) : kl.dual_basis(static_cast<int>(w));
        for (std::size_t y = 0; y < n; ++y)
          if (!b[y].is_zero()) out[y] += h.coords[w] * b[y];
      }
      return out;
    }
  }
  throw std::invalid_argument("unknown basis");
}

PsiMap::PsiMap(std::shared_ptr<const StructureConstants> sc, std::shared_ptr<const JData> jd)
    : sc_(std::move(sc)), jd_(std::move(jd)) {
  phi_ = phi_matrix(*sc_, *jd_);
  if (phi_.det_P1 == 0) throw std::domain_error("theta_1(P) is singular");
  const auto& kl = sc_->kl();
  const std::size_t n = size();
  RationalMatrix E1(n, n, Rational(0));
  for (std::size_t w = 0; w < n; ++w) {
    HVec cw = kl.c_basis(static_cast<int>(w));
    for (std::size_t y = 0; y < n; ++y) E1(y, w) = Rational(cw[y].at_one());
  }
  auto inv = rational_inverse(phi_.P1.map([](const Integer& v) { return Rational(v); }));
  alpha_ = E1 * *inv;
  build();
}

PsiMap::PsiMap(std::shared_ptr<const StructureConstants> sc, std::shared_ptr<const JData> jd, RationalMatrix alpha)
    : sc_(std::move(sc)), jd_(std::move(jd)), alpha_(std::move(alpha)) {
  phi_ = phi_matrix(*sc_, *jd_);
  if (alpha_.rows() != size() || alpha_.cols() != size()) throw std::invalid_argument("alpha has the wrong size");
  build();
}

void PsiMap::build() {
  const auto& kl = sc_->kl();
  const auto& W = kl.group();
  const std::size_t n = size();
  const std::size_t rank = kl.algebra().rank();

  den_ = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) den_ = lcm(den_, boost::multiprecision::denominator(alpha_(i, j)));
  a_ = IntMatrix(n, n, Integer(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a_(i, j) = boost::multiprecision::numerator(alpha_(i, j) * Rational(den_));
  const IntMatrix& a = a_;
  phi_cols_.assign(n, {});
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t z = 0; z < n; ++z)
      if (!phi_.P(z, w).is_zero()) phi_cols_[w].emplace_back(static_cast<int>(z), phi_.P(z, w));

  psiC_.assign(n, HVec(n, Poly(rank)));
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t z = 0; z < n; ++z) {
      const Poly& p = phi_.P(z, w);
      if (p.is_zero()) continue;
      for (std::size_t g = 0; g < n; ++g)
        if (a(g, z) != 0) psiC_[w][g] += p * a(g, z);
    }

  const auto& cinv = kl.c_inverse();
  psiT_.assign(n, HVec(n, Poly(rank)));
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t u = 0; u < n; ++u) {
      const Poly& c = cinv[w][u];
      if (c.is_zero()) continue;
      for (std::size_t g = 0; g < n; ++g)
        if (!psiC_[u][g].is_zero()) psiT_[w][g] += c * psiC_[u][g];
    }

  mult_.resize(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) mult_[x * n + y] = W.multiply(static_cast<int>(x), static_cast<int>(y));
}

GroupAlgebraElement PsiMap::unscale(const HVec& v) const {
  GroupAlgebraElement out;
  const Rational inv = Rational(1) / Rational(den_);
  for (std::size_t g = 0; g < v.size(); ++g)
    if (!v[g].is_zero())
      out.emplace_back(static_cast<int>(g), v[g].map_coefficients<Rational>([&](const Integer& c) { return Rational(c) * inv; }));
  return out;
}

GroupAlgebraElement PsiMap::apply(const HeckeElement& h) const {
  HVec t = to_T_coordinates(kl(), h);
  const std::size_t n = size();
  HVec acc(n, Poly(kl().algebra().rank()));
  for (std::size_t w = 0; w < n; ++w) {
    if (t[w].is_zero()) continue;
    for (std::size_t g = 0; g < n; ++g)
      if (!psiT_[w][g].is_zero()) acc[g] += t[w] * psiT_[w][g];
  }
  return unscale(acc);
}

HVec PsiMap::group_multiply(const HVec& a, const HVec& b) const {
  const std::size_t n = size();
  HVec out(n, Poly(kl().algebra().rank()));
  for (std::size_t x = 0; x < n; ++x) {
    if (a[x].is_zero()) continue;
    for (std::size_t y = 0; y < n; ++y)
      if (!b[y].is_zero()) out[mult_[x * n + y]] += a[x] * b[y];
  }
  return out;
}

HVec PsiMap::scaled_alpha(const JAElement& j) const {
  const std::size_t n = size();
  HVec out(n, Poly(kl().algebra().rank()));
  for (const auto& [z, c] : j)
    for (std::size_t g = 0; g < n; ++g)
      if (a_(g, z) != 0) out[g] += c * a_(g, z);
  return out;
}

HVec PsiMap::scaled_product(int x, int y) const {
  const std::size_t n = size();
  auto pair_product = [&](int z, int u) -> const std::vector<Integer>& {
    std::lock_guard lock(cache_mu_);
    auto [it, fresh] = pair_cache_.try_emplace({z, u});
    if (fresh) {
      auto& v = it->second;
      v.assign(n, Integer(0));
      for (std::size_t g = 0; g < n; ++g) {
        if (a_(g, z) == 0) continue;
        for (std::size_t h = 0; h < n; ++h)
          if (a_(h, u) != 0) v[mult_[g * n + h]] += a_(g, z) * a_(h, u);
      }
    }
    return it->second;
  };
  HVec out(n, Poly(kl().algebra().rank()));
  for (const auto& [z, cz] : phi_cols_[x])
    for (const auto& [u, cu] : phi_cols_[y]) {
      Poly c = cz * cu;
      const auto& v = pair_product(z, u);
      for (std::size_t g = 0; g < n; ++g)
        if (v[g] != 0) out[g] += c * v[g];
    }
  return out;
}

namespace {

// D^2 * sum_z h_z psi(C_z), in the scaling of PsiMap::scaled_product.
HVec combine(const PsiMap& psi, const SparseVec& h) {
  std::map<int, Poly> acc;
  for (const auto& [z, c] : h)
    for (const auto& [u, p] : psi.phi_C(z)) {
      auto [it, fresh] = acc.try_emplace(u, c * p);
      if (!fresh) it->second += c * p;
    }
  JAElement j;
  for (auto& [u, p] : acc)
    if (!p.is_zero()) j.emplace_back(u, std::move(p) * psi.denominator());
  return psi.scaled_alpha(j);
}

}  // namespace

IsoCertificate certify_iso(const PsiMap& psi, std::size_t pair_limit, std::size_t samples, std::uint64_t seed,
                           std::size_t det_limit) {
  const auto& kl = psi.kl();
  const auto& W = kl.group();
  const std::size_t n = psi.size();
  const std::size_t rank = kl.algebra().rank();
  IsoCertificate cert;
  cert.det_P1 = psi.phi().det_P1;

  for (std::size_t s = 0; s < W.rank() && cert.generators_ok; ++s) {
    const int gs = W.generator(static_cast<int>(s));
    for (std::size_t w = 0; w < n; ++w) {
      SparseVec h = kl.left_mul_C(static_cast<int>(s), {{static_cast<int>(w), kl.algebra().one()}});
      if (psi.scaled_product(gs, static_cast<int>(w)) != combine(psi, h)) {
        cert.generators_ok = false;
        cert.generator_witness = std::pair{gs, static_cast<int>(w)};
        break;
      }
    }
  }

  auto check_pair = [&](int x, int y) {
    ++cert.pairs_checked;
    if (psi.scaled_product(x, y) != combine(psi, psi.structure().row(x, y))) {
      cert.pairs_ok = false;
      cert.pair_witness = std::pair{x, y};
      return false;
    }
    return true;
  };
  if (n <= pair_limit) {
    for (std::size_t y = 0; y < n && cert.pairs_ok; ++y)
      for (std::size_t x = 0; x < n; ++x)
        if (!check_pair(static_cast<int>(x), static_cast<int>(y))) break;
  } else {
    cert.pairs_exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
    for (std::size_t i = 0; i < samples; ++i)
      if (!check_pair(pick(rng), pick(rng))) break;
  }

  for (std::size_t w = 0; w < n && cert.theta1_identity; ++w)
    for (std::size_t g = 0; g < n; ++g) {
      Integer v = psi.scaled_T(static_cast<int>(w))[g].at_one();
      if (v != (g == w ? psi.denominator() : Integer(0))) {
        cert.theta1_identity = false;
        cert.theta1_witness = std::pair{static_cast<int>(g), static_cast<int>(w)};
        break;
      }
    }

  if (n <= det_limit) {
    cert.det_Q_computed = true;
    const Poly one = kl.algebra().one();
    PolyMatrix Q(n, n, Poly(rank));
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t g = 0; g < n; ++g) Q(g, w) = psi.scaled_T(static_cast<int>(w))[g];
    Poly detQ = berkowitz_determinant(Q, one);
    cert.det_Q_nonzero = !detQ.is_zero() && detQ.at_one() == pow(psi.denominator(), static_cast<unsigned>(n));
    Poly detP = berkowitz_determinant(psi.phi().P, one);
    cert.theta1_det_P_ok = Rational(detP.at_one()) == psi.phi().det_P1;
  } else {
    cert.det_Q_nonzero = cert.theta1_identity;
  }
  return cert;
}

}  // namespace uhecke
