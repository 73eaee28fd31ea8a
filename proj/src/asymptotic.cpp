#include "uhecke/asymptotic.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace uhecke {

namespace {

std::int64_t to_small(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("gamma coefficient exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

template <class C>
void accumulate(std::map<int, C>& acc, int key, const C& c) {
  auto [it, fresh] = acc.try_emplace(key, c);
  if (!fresh) it->second += c;
}

template <class C>
std::vector<std::pair<int, C>> flatten(std::map<int, C>& acc) {
  std::vector<std::pair<int, C>> out;
  for (auto& [k, v] : acc) {
    bool zero;
    if constexpr (requires { v.is_zero(); })
      zero = v.is_zero();
    else
      zero = v == 0;
    if (!zero) out.emplace_back(k, std::move(v));
  }
  return out;
}

}  // namespace

bool JData::is_distinguished(int z) const { return std::binary_search(distinguished.begin(), distinguished.end(), z); }

std::span<const GammaEntry> JData::gamma_row(int x, int y) const {
  auto lo = std::lower_bound(gamma.begin(), gamma.end(), std::pair{x, y},
                             [](const GammaEntry& e, std::pair<int, int> k) { return std::pair{e.x, e.y} < k; });
  auto hi = lo;
  while (hi != gamma.end() && hi->x == x && hi->y == y) ++hi;
  return {lo, hi};
}

std::int64_t JData::gamma_at(int x, int y, int z) const {
  for (const auto& e : gamma_row(x, y))
    if (e.z == z) return e.value;
  return 0;
}

std::pair<Exponent, Integer> delta_n(const KLTable& kl, int z) {
  const Poly& p = kl.p(0, z);
  auto top = max_exponent(p, kl.algebra().gamma());
  if (!top) throw std::logic_error("p_{1,z} vanishes for z = " + kl.group().format(z));
  return {-*top, p.coefficient(*top)};
}

JData compute_jdata(const StructureConstants& sc) {
  const auto& kl = sc.kl();
  const auto& G = kl.algebra().gamma();
  const auto& W = kl.group();
  const std::size_t n = W.size();

  struct Track {
    std::optional<Exponent> low;
    std::vector<GammaEntry> at_low;  // (x, y, z^{-1}) with the coefficient at `low`
  };
  std::vector<Track> track(n);

  sc.for_each_column([&](int y, const std::vector<SparseVec>& col) {
    for (std::size_t x = 0; x < n; ++x)
      for (const auto& [z, h] : col[x]) {
        auto lo = min_exponent(h, G);
        auto& t = track[z];
        if (!t.low || G.less(*lo, *t.low)) {
          t.low = lo;
          t.at_low.clear();
        } else if (*lo != *t.low) {
          continue;
        }
        t.at_low.push_back({static_cast<int>(x), y, W.inverse(z), to_small(h.coefficient(*lo))});
      }
  });

  JData jd;
  jd.rank = G.rank();
  jd.a.resize(n);
  jd.delta.resize(n);
  jd.n.resize(n);
  for (std::size_t z = 0; z < n; ++z) {
    auto& t = track[z];
    if (!t.low) throw std::logic_error("empty structure constant column");
    Exponent a = -*t.low;
    if (G.sign(a) < 0) throw std::logic_error("negative a-value: structure constants are inconsistent");
    jd.a[z] = a;
    auto [d, nz] = delta_n(kl, static_cast<int>(z));
    jd.delta[z] = d;
    jd.n[z] = nz;
    if (a == d) jd.distinguished.push_back(static_cast<int>(z));
    for (auto& e : t.at_low) jd.gamma.push_back(e);
  }
  std::sort(jd.gamma.begin(), jd.gamma.end(),
            [](const GammaEntry& l, const GammaEntry& r) { return std::tie(l.x, l.y, l.z) < std::tie(r.x, r.y, r.z); });
  return jd;
}

JRing::JRing(std::shared_ptr<const JData> jd, std::shared_ptr<const CoxeterGroup> group)
    : jd_(std::move(jd)), group_(std::move(group)) {
  if (jd_->size() != group_->size()) throw std::invalid_argument("JData does not match the group");
}

JElement JRing::basis_product(int x, int y) const {
  std::map<int, Integer> acc;
  for (const auto& e : jd_->gamma_row(x, y)) accumulate(acc, group_->inverse(e.z), Integer(e.value));
  return flatten(acc);
}

JElement JRing::multiply(const JElement& a, const JElement& b) const {
  std::map<int, Integer> acc;
  for (const auto& [x, ca] : a)
    for (const auto& [y, cb] : b)
      for (const auto& e : jd_->gamma_row(x, y)) accumulate(acc, group_->inverse(e.z), Integer(ca * cb * e.value));
  return flatten(acc);
}

JAElement JRing::multiply(const JAElement& a, const JAElement& b) const {
  std::map<int, Poly> acc;
  for (const auto& [x, ca] : a)
    for (const auto& [y, cb] : b) {
      auto row = jd_->gamma_row(x, y);
      if (row.empty()) continue;
      Poly prod = ca * cb;
      for (const auto& e : row) accumulate(acc, group_->inverse(e.z), Poly(prod * Integer(e.value)));
    }
  return flatten(acc);
}

JElement JRing::identity() const {
  JElement one;
  for (int d : jd_->distinguished) one.emplace_back(d, jd_->n[d]);
  return one;
}

AssociativityReport JRing::check_associativity(std::size_t exhaustive_limit, std::size_t samples,
                                               std::uint64_t seed) const {
  const std::size_t n = size();
  std::vector<JElement> prod(n * n);
  auto cached = [&](int x, int y) -> const JElement& { return prod[static_cast<std::size_t>(x) * n + y]; };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) prod[x * n + y] = basis_product(static_cast<int>(x), static_cast<int>(y));

  auto combine = [&](const JElement& coeffs, auto&& pick) {
    std::map<int, Integer> acc;
    for (const auto& [u, c] : coeffs)
      for (const auto& [v, d] : pick(u)) accumulate(acc, v, Integer(c * d));
    return flatten(acc);
  };
  auto check = [&](int x, int y, int z) {
    auto left = combine(cached(x, y), [&](int u) -> const JElement& { return cached(u, z); });
    auto right = combine(cached(y, z), [&](int u) -> const JElement& { return cached(x, u); });
    return left == right;
  };

  AssociativityReport rep;
  if (n <= exhaustive_limit) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
          ++rep.triples_checked;
          if (!check(static_cast<int>(x), static_cast<int>(y), static_cast<int>(z))) {
            rep.ok = false;
            rep.witness = std::array<int, 3>{static_cast<int>(x), static_cast<int>(y), static_cast<int>(z)};
            return rep;
          }
        }
    return rep;
  }
  rep.exhaustive = false;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    int x = pick(rng), y = pick(rng), z = pick(rng);
    ++rep.triples_checked;
    if (!check(x, y, z)) {
      rep.ok = false;
      rep.witness = std::array<int, 3>{x, y, z};
      return rep;
    }
  }
  return rep;
}

std::optional<int> JRing::check_identity() const {
  const JElement one = identity();
  for (std::size_t w = 0; w < size(); ++w) {
    JElement t{{static_cast<int>(w), Integer(1)}};
    if (multiply(one, t) != t || multiply(t, one) != t) return static_cast<int>(w);
  }
  return std::nullopt;
}

JAElement phi(const StructureConstants& sc, const JData& jd, int w) {
  std::map<int, Poly> acc;
  for (int d : jd.distinguished)
    for (const auto& [z, h] : sc.row(w, d))
      if (jd.a[z] == jd.a[d]) accumulate(acc, z, Poly(h * jd.n[d]));
  return flatten(acc);
}

std::vector<JAElement> phi_all(const StructureConstants& sc, const JData& jd) {
  const std::size_t n = sc.size();
  std::vector<std::map<int, Poly>> acc(n);
  for (int d : jd.distinguished) {
    auto col = sc.column(d);
    for (std::size_t w = 0; w < n; ++w)
      for (const auto& [z, h] : col[w])
        if (jd.a[z] == jd.a[d]) accumulate(acc[w], z, Poly(h * jd.n[d]));
  }
  std::vector<JAElement> out(n);
  for (std::size_t w = 0; w < n; ++w) out[w] = flatten(acc[w]);
  return out;
}

JAElement phi(const StructureConstants& sc, const JData& jd, const SparseVec& c) {
  std::map<int, Poly> acc;
  for (const auto& [w, cw] : c)
    for (const auto& [z, v] : phi(sc, jd, w)) accumulate(acc, z, Poly(cw * v));
  return flatten(acc);
}

}  // namespace uhecke
