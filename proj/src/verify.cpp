#include "uhecke/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace uhecke {

namespace {

using Clock = std::chrono::steady_clock;

std::string names(const CoxeterGroup& W, std::initializer_list<int> ids) {
  std::string s;
  for (int w : ids) {
    if (!s.empty()) s += ", ";
    s += W.format(w);
  }
  return s;
}

void fail(PropertyResult& r, std::vector<int> witness, std::string detail) {
  r.status = Status::Fail;
  r.witness = std::move(witness);
  r.detail = std::move(detail);
}

void skip(PropertyResult& r, std::string reason) {
  r.status = Status::Skipped;
  r.detail = std::move(reason);
}

std::string exp_str(const Exponent& e, std::size_t rank) { return to_string(e, rank); }

Word alternating(int first, int k) {
  Word w;
  for (int i = 0; i < k; ++i) w.push_back((first + i) % 2);
  return w;
}

// Checks "z' <= z and a(z') = a(z) imply z' ~ z" for one preorder.
void same_a_implies_equiv(const VerifyInput& in, const CellPreorder& pre, const char* rel, PropertyResult& r) {
  const auto& W = in.group();
  const auto& a = in.jd->a;
  const int n = static_cast<int>(W.size());
  for (int z = 0; z < n; ++z)
    for (int zp = 0; zp < n; ++zp) {
      if (!pre.leq(zp, z) || pre.equiv(zp, z)) continue;
      ++r.checks;
      if (a[zp] == a[z]) {
        fail(r, {zp, z}, names(W, {zp, z}) + ": z' <=_" + rel + " z with equal a-values but not " + rel + "-equivalent");
        return;
      }
    }
}

PropertyResult p12(const VerifyInput& in) {
  PropertyResult r;
  const auto& alg = in.kl->algebra();
  const auto& W = in.group();
  const auto& sys = W.system();
  const std::size_t rank = sys.rank();
  for (std::uint32_t mask = 1; mask + 1 < (1u << rank); ++mask) {
    std::vector<int> I;
    std::vector<Exponent> L;
    for (std::size_t s = 0; s < rank; ++s)
      if ((mask >> s) & 1u) {
        I.push_back(static_cast<int>(s));
        L.push_back(alg.weights()[s]);
      }
    Instance sub(sys.parabolic(I), alg.gamma(), L);
    auto jd = sub.jdata();
    const auto& U = sub.group();
    for (std::size_t u = 0; u < U.size(); ++u) {
      Word word;
      for (int s : U.word(static_cast<int>(u))) word.push_back(I[s]);
      const int w = W.from_word(word);
      ++r.checks;
      if (jd->a[u] != in.jd->a[w]) {
        fail(r, {w},
             W.format(w) + ": a in the parabolic subgroup is " + exp_str(jd->a[u], alg.rank()) + ", in W it is " +
                 exp_str(in.jd->a[w], alg.rank()));
        return r;
      }
    }
  }
  return r;
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Skipped:
      return "skipped";
  }
  return "?";
}

bool ConjectureReport::ok() const {
  for (const auto& r : results)
    if (r.failed()) return false;
  for (const auto& r : auxiliary)
    if (r.failed()) return false;
  return true;
}

const PropertyResult* ConjectureReport::find(const std::string& name) const {
  for (const auto* list : {&results, &auxiliary})
    for (const auto& r : *list)
      if (r.name == name) return &r;
  return nullptr;
}

VerifyInput VerifyInput::of(const Instance& inst) {
  return {inst.kl_ptr(), inst.structure(), inst.jdata(), &inst.cells()};
}

PropertyResult verify_P(const VerifyInput& in, int which) {
  PropertyResult r;
  r.name = "P" + std::to_string(which);
  const auto start = Clock::now();
  const auto& W = in.group();
  const auto& jd = *in.jd;
  const auto& G = in.kl->algebra().gamma();
  const auto& cells = *in.cells;
  const int n = static_cast<int>(W.size());
  const std::size_t k = G.rank();

  switch (which) {
    case 1:
      for (int z = 0; z < n && !r.failed(); ++z) {
        ++r.checks;
        if (G.less(jd.delta[z], jd.a[z]))
          fail(r, {z}, W.format(z) + ": a = " + exp_str(jd.a[z], k) + " > Delta = " + exp_str(jd.delta[z], k));
      }
      break;
    case 2:
      for (const auto& e : jd.gamma) {
        if (!jd.is_distinguished(e.z)) continue;
        ++r.checks;
        if (e.x != W.inverse(e.y)) {
          fail(r, {e.x, e.y, e.z}, "gamma_{x,y,d} != 0 with x != y^-1 for (x,y,d) = (" + names(W, {e.x, e.y, e.z}) + ")");
          break;
        }
      }
      break;
    case 3:
    case 5:
      for (int y = 0; y < n && !r.failed(); ++y) {
        ++r.checks;
        int count = 0;
        for (const auto& e : jd.gamma_row(W.inverse(y), y)) {
          if (!jd.is_distinguished(e.z)) continue;
          ++count;
          if (which == 5 && (Integer(e.value) != jd.n[e.z] || abs(jd.n[e.z]) != 1)) {
            fail(r, {y, e.z},
                 "gamma_{y^-1,y,d} = " + std::to_string(e.value) + " but n_d = " + jd.n[e.z].str() + " for (y,d) = (" +
                     names(W, {y, e.z}) + ")");
            break;
          }
        }
        if (which == 3 && count != 1)
          fail(r, {y}, W.format(y) + ": " + std::to_string(count) + " elements d of D with gamma_{y^-1,y,d} != 0");
      }
      break;
    case 4: {
      const auto& lr = cells.two_sided;
      for (int z = 0; z < n && !r.failed(); ++z)
        for (int zp = 0; zp < n; ++zp) {
          if (!lr.leq(zp, z)) continue;
          ++r.checks;
          if (G.less(jd.a[zp], jd.a[z])) {
            fail(r, {zp, z}, names(W, {zp, z}) + ": z' <=_LR z but a(z') < a(z)");
            break;
          }
        }
      break;
    }
    case 6:
      for (int d : jd.distinguished) {
        ++r.checks;
        if (W.multiply(d, d) != W.identity()) {
          fail(r, {d}, W.format(d) + " is in D but is not an involution");
          break;
        }
      }
      break;
    case 7:
      for (const auto& e : jd.gamma) {
        ++r.checks;
        const auto rotated = jd.gamma_at(e.y, e.z, e.x);
        if (rotated != e.value) {
          fail(r, {e.x, e.y, e.z},
               "gamma_{x,y,z} = " + std::to_string(e.value) + " but gamma_{y,z,x} = " + std::to_string(rotated) +
                   " for (x,y,z) = (" + names(W, {e.x, e.y, e.z}) + ")");
          break;
        }
      }
      break;
    case 8: {
      const auto& L = cells.left;
      for (const auto& e : jd.gamma) {
        ++r.checks;
        if (!L.equiv(e.x, W.inverse(e.y)) || !L.equiv(e.y, W.inverse(e.z)) || !L.equiv(e.z, W.inverse(e.x))) {
          fail(r, {e.x, e.y, e.z}, "gamma_{x,y,z} != 0 but the left cell conditions fail for (x,y,z) = (" +
                                       names(W, {e.x, e.y, e.z}) + ")");
          break;
        }
      }
      break;
    }
    case 9:
      same_a_implies_equiv(in, cells.left, "L", r);
      break;
    case 10:
      same_a_implies_equiv(in, cells.right, "R", r);
      break;
    case 11:
      same_a_implies_equiv(in, cells.two_sided, "LR", r);
      break;
    case 12: {
      auto sub = p12(in);
      r.status = sub.status;
      r.witness = sub.witness;
      r.detail = sub.detail;
      r.checks = sub.checks;
      break;
    }
    case 13:
      for (const auto& c : cells.left.cells()) {
        ++r.checks;
        std::vector<int> ds;
        for (int w : c)
          if (jd.is_distinguished(w)) ds.push_back(w);
        if (ds.size() != 1) {
          fail(r, {c.front()},
               "left cell of " + W.format(c.front()) + " contains " + std::to_string(ds.size()) + " elements of D");
          break;
        }
        for (int x : c)
          if (jd.gamma_at(W.inverse(x), x, ds[0]) == 0) {
            fail(r, {x, ds[0]}, "gamma_{x^-1,x,d} = 0 for (x,d) = (" + names(W, {x, ds[0]}) + ")");
            break;
          }
        if (r.failed()) break;
      }
      break;
    case 14:
      for (int z = 0; z < n; ++z) {
        ++r.checks;
        if (!cells.two_sided.equiv(z, W.inverse(z))) {
          fail(r, {z}, W.format(z) + " is not LR-equivalent to its inverse");
          break;
        }
      }
      break;
    default:
      throw std::invalid_argument("unknown property P" + std::to_string(which));
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

const char* p15_mode_name(P15Mode m) {
  switch (m) {
    case P15Mode::Star:
      return "star";
    case P15Mode::Direct:
      return "direct";
    case P15Mode::Prime:
      return "p15prime";
  }
  return "?";
}

P15Mode parse_p15_mode(const std::string& s) {
  if (s == "star") return P15Mode::Star;
  if (s == "direct") return P15Mode::Direct;
  if (s == "p15prime" || s == "prime") return P15Mode::Prime;
  throw std::invalid_argument("unknown P15 mode '" + s + "' (expected star, direct or p15prime)");
}

namespace {

using PairKey = std::pair<int, int>;

void add_to(std::map<PairKey, Poly>& m, PairKey key, const Poly& p) {
  auto [it, fresh] = m.try_emplace(key, p);
  if (!fresh) it->second += p;
}

bool same_sums(std::map<PairKey, Poly>& lhs, std::map<PairKey, Poly>& rhs, PairKey& where) {
  for (auto& [key, p] : rhs) add_to(lhs, key, -p);
  for (const auto& [key, p] : lhs)
    if (!p.is_zero()) {
      where = key;
      return false;
    }
  return true;
}

PropertyResult p15_star(const VerifyInput& in) {
  PropertyResult r;
  const auto& kl = *in.kl;
  const auto& W = in.group();
  const auto& lr = in.cells->two_sided;
  const std::size_t k = kl.algebra().rank();
  if (2 * k > kMaxRank) {
    skip(r, "the doubled value group needs rank " + std::to_string(2 * k) + " > " + std::to_string(kMaxRank));
    return r;
  }
  const int n = static_cast<int>(W.size());
  const int rank = static_cast<int>(W.rank());
  const Poly one = kl.algebra().one();
  // left[s][y] = C_s.e_y with coefficients in A; right[t][y] = e_y.C_t with coefficients in the copy.
  std::vector<std::vector<SparseVec>> left(rank), right(rank);
  for (int s = 0; s < rank; ++s) {
    left[s].resize(n);
    right[s].resize(n);
    for (int y = 0; y < n; ++y) {
      left[s][y] = kl.left_mul_C(s, {{y, one}});
      for (auto& [u, c] : left[s][y]) c = c.embedded(2 * k, 0);
      right[s][y] = kl.right_mul_C({{y, one}}, s);
      for (auto& [u, c] : right[s][y]) c = c.embedded(2 * k, k);
    }
  }
  for (int s = 0; s < rank; ++s)
    for (int t = 0; t < rank; ++t)
      for (int w = 0; w < n; ++w) {
        ++r.checks;
        std::map<int, Poly> diff;
        auto acc = [&](int u, const Poly& p) {
          auto [it, fresh] = diff.try_emplace(u, p);
          if (!fresh) it->second += p;
        };
        for (const auto& [y, ay] : left[s][w])
          for (const auto& [u, bu] : right[t][y]) acc(u, ay * bu);
        for (const auto& [y, by] : right[t][w])
          for (const auto& [u, au] : left[s][y]) acc(u, -(by * au));
        for (const auto& [u, p] : diff) {
          if (p.is_zero() || (lr.leq(u, w) && !lr.equiv(u, w))) continue;
          fail(r, {W.generator(s), W.generator(t), w, u},
               "(*) fails for s = " + W.format(W.generator(s)) + ", t = " + W.format(W.generator(t)) + ", w = " +
                   W.format(w) + ": the difference involves e_" + W.format(u));
          return r;
        }
      }
  r.detail = "all s, t in S and w in W";
  return r;
}

// Both sides of P15 (direct) or P15' (prime) for one quadruple.
std::pair<Poly, Poly> quadruple(const VerifyInput& in, bool prime, int x, int xp, int y, int w) {
  const auto& sc = *in.sc;
  const auto& jd = *in.jd;
  const auto& W = in.group();
  const std::size_t k = in.kl->algebra().rank();
  const std::size_t rk = prime ? k : 2 * k;
  Poly lhs(rk), rhs(rk);
  if (prime) {
    for (const auto& e : jd.gamma_row(w, xp)) lhs += sc.at(x, W.inverse(e.z), y) * Integer(e.value);
    for (const auto& [u, h] : sc.row(x, w)) {
      auto g = jd.gamma_at(u, xp, W.inverse(y));
      if (g != 0) rhs += h * Integer(g);
    }
  } else {
    for (const auto& [yp, h1] : sc.row(w, xp)) {
      const Poly& h2 = sc.at(x, yp, y);
      if (!h2.is_zero()) lhs += h1.embedded(rk, 0) * h2.embedded(rk, k);
    }
    for (const auto& [yp, h2] : sc.row(x, w)) {
      const Poly& h1 = sc.at(yp, xp, y);
      if (!h1.is_zero()) rhs += h1.embedded(rk, 0) * h2.embedded(rk, k);
    }
  }
  return {lhs, rhs};
}

PropertyResult p15_quadruples(const VerifyInput& in, const P15Options& opts) {
  PropertyResult r;
  const bool prime = opts.mode == P15Mode::Prime;
  const auto& sc = *in.sc;
  const auto& jd = *in.jd;
  const auto& W = in.group();
  const std::size_t k = in.kl->algebra().rank();
  const int n = static_cast<int>(W.size());
  if (!sc.materialized()) {
    skip(r, "structure constants are not materialized for |W| = " + std::to_string(n));
    return r;
  }
  if (!prime && 2 * k > kMaxRank) {
    skip(r, "the tensor square needs rank " + std::to_string(2 * k) + " > " + std::to_string(kMaxRank));
    return r;
  }
  auto report = [&](int x, int xp, int y, int w) {
    fail(r, {x, xp, y, w},
         std::string(prime ? "P15'" : "P15") + " fails for (x, x', y, w) = (" + names(W, {x, xp, y, w}) + ")");
  };

  if (static_cast<std::size_t>(n) <= opts.exhaustive_limit) {
    for (int w = 0; w < n; ++w)
      for (int xp = 0; xp < n; ++xp) {
        std::map<PairKey, Poly> lhs, rhs;
        if (prime) {
          for (const auto& e : jd.gamma_row(w, xp)) {
            const int u = W.inverse(e.z);
            for (int x = 0; x < n; ++x)
              for (const auto& [y, h] : sc.row(x, u))
                if (jd.a[y] == jd.a[w]) add_to(lhs, {x, y}, h * Integer(e.value));
          }
          for (int x = 0; x < n; ++x)
            for (const auto& [u, h] : sc.row(x, w))
              for (const auto& e : jd.gamma_row(u, xp)) {
                const int y = W.inverse(e.z);
                if (jd.a[y] == jd.a[w]) add_to(rhs, {x, y}, h * Integer(e.value));
              }
        } else {
          for (const auto& [yp, h1] : sc.row(w, xp)) {
            const Poly e1 = h1.embedded(2 * k, 0);
            for (int x = 0; x < n; ++x)
              for (const auto& [y, h2] : sc.row(x, yp))
                if (jd.a[y] == jd.a[w]) add_to(lhs, {x, y}, e1 * h2.embedded(2 * k, k));
          }
          for (int x = 0; x < n; ++x)
            for (const auto& [yp, h2] : sc.row(x, w)) {
              const Poly e2 = h2.embedded(2 * k, k);
              for (const auto& [y, h1] : sc.row(yp, xp))
                if (jd.a[y] == jd.a[w]) add_to(rhs, {x, y}, h1.embedded(2 * k, 0) * e2);
            }
        }
        r.checks += static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
        PairKey where;
        if (!same_sums(lhs, rhs, where)) {
          report(where.first, xp, where.second, w);
          return r;
        }
      }
    r.detail = "exhaustive over all quadruples";
    return r;
  }

  std::map<Exponent, std::vector<int>> strata;
  for (int z = 0; z < n; ++z) strata[jd.a[z]].push_back(z);
  std::vector<const std::vector<int>*> layers;
  for (const auto& [a, zs] : strata) layers.push_back(&zs);
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> any(0, n - 1);
  for (std::size_t i = 0; i < opts.samples; ++i) {
    const auto& layer = *layers[i % layers.size()];
    std::uniform_int_distribution<std::size_t> in_layer(0, layer.size() - 1);
    const int w = layer[in_layer(rng)], y = layer[in_layer(rng)];
    const int x = any(rng), xp = any(rng);
    ++r.checks;
    auto [lhs, rhs] = quadruple(in, prime, x, xp, y, w);
    if (lhs != rhs) {
      report(x, xp, y, w);
      return r;
    }
  }
  r.detail = std::to_string(opts.samples) + " quadruples sampled over " + std::to_string(layers.size()) +
             " a-value strata, seed " + std::to_string(opts.seed);
  return r;
}

}  // namespace

PropertyResult verify_P15(const VerifyInput& in, const P15Options& opts) {
  const auto start = Clock::now();
  PropertyResult r = opts.mode == P15Mode::Star ? p15_star(in) : p15_quadruples(in, opts);
  r.name = "P15";
  if (r.status != Status::Skipped) r.detail = std::string(p15_mode_name(opts.mode)) + " mode: " + r.detail;
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

int RepInvariantData::index_of(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
}

RepInvariantData RepInvariantData::dihedral(const HeckeAlgebra& alg) {
  const auto& sys = alg.group().system();
  if (sys.rank() != 2) throw std::invalid_argument("dihedral data needs a rank 2 system");
  const int m = sys.m(0, 1);
  const auto& G = alg.gamma();
  Exponent L1 = alg.weights()[0], L2 = alg.weights()[1];
  RepInvariantData rep;
  rep.characters = CharacterTable::dihedral(m);
  const auto& F = *rep.characters->field;
  const bool swapped = G.less(L1, L2);
  const Exponent big = swapped ? L2 : L1, small = swapped ? L1 : L2;
  const bool unequal = L1 != L2;
  rep.regime = !unequal ? "L(s1) = L(s2)" : swapped ? "L(s2) > L(s1)" : "L(s1) > L(s2)";
  for (std::size_t i = 0; i < rep.characters->num_characters(); ++i) {
    const std::string& label = rep.characters->labels[i];
    Exponent a;
    std::optional<NFElement> f;
    if (label == "1_W") {
      f = F.one();
    } else if (label == "eps") {
      a = m * L1;
      if (m % 2 == 0) a = (m / 2) * (L1 + L2);
      f = F.one();
    } else if (label == "eps1" || label == "eps2") {
      // eps1: s1 acts as +1. The character on which the smaller parameter acts by -1 has a = that parameter.
      const bool minus_on_small = (label == "eps1") != swapped;
      a = minus_on_small ? small : (m / 2) * (big - small) + small;
      f = F.one();
    } else {
      a = big;
      const long j = std::stol(label.substr(label.find('_') + 1));
      if (unequal) f = F.from_rational(Rational(m)) / (F.from_rational(Rational(2)) - F.two_cos(2 * j));
    }
    rep.labels.push_back(label);
    rep.a.push_back(a);
    rep.f.push_back(f);
    rep.degrees.push_back(label.rfind("rho", 0) == 0 ? 2 : 1);
  }
  return rep;
}

namespace {

struct F4Entry {
  const char* label;
  int f[4], b[4], a[4];
};

// Per column (b>2a, b=2a, 2a>b>a, b=a): f_lambda and a_lambda = b-coefficient * b + a-coefficient * a.
constexpr F4Entry kF4[] = {
    {"1_1", {1, 1, 1, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}},
    {"1_2", {1, 2, 1, 8}, {12, 0, 11, 0}, {-9, 15, -7, 4}},
    {"1_3", {1, 2, 1, 8}, {0, 0, -1, 0}, {3, 3, 5, 4}},
    {"1_4", {1, 1, 1, 1}, {12, 0, 12, 0}, {12, 36, 12, 24}},
    {"2_1", {1, 2, 1, 2}, {3, 0, 2, 0}, {-3, 3, -1, 1}},
    {"2_2", {1, 2, 1, 2}, {3, 0, 2, 0}, {9, 15, 11, 13}},
    {"2_3", {1, 1, 1, 2}, {0, 0, 0, 0}, {1, 1, 1, 1}},
    {"2_4", {1, 1, 1, 2}, {12, 0, 12, 0}, {1, 25, 1, 13}},
    {"4_1", {2, 2, 2, 8}, {3, 0, 3, 0}, {1, 7, 1, 4}},
    {"9_1", {1, 2, 1, 1}, {2, 0, 1, 0}, {-1, 3, 1, 2}},
    {"9_2", {1, 1, 1, 8}, {6, 0, 6, 0}, {-2, 10, -2, 4}},
    {"9_3", {1, 1, 1, 8}, {2, 0, 2, 0}, {2, 6, 2, 4}},
    {"9_4", {1, 2, 1, 1}, {6, 0, 5, 0}, {3, 15, 5, 10}},
    {"6_1", {3, 3, 3, 3}, {3, 0, 3, 0}, {1, 7, 1, 4}},
    {"6_2", {3, 3, 3, 12}, {3, 0, 3, 0}, {1, 7, 1, 4}},
    {"12_1", {6, 6, 6, 24}, {3, 0, 3, 0}, {1, 7, 1, 4}},
    {"4_2", {1, 1, 1, 2}, {1, 0, 1, 0}, {0, 2, 0, 1}},
    {"4_3", {1, 1, 1, 4}, {7, 0, 7, 0}, {-3, 11, -3, 4}},
    {"4_4", {1, 1, 1, 4}, {1, 0, 1, 0}, {3, 5, 3, 4}},
    {"4_5", {1, 1, 1, 2}, {7, 0, 7, 0}, {6, 20, 6, 13}},
    {"8_1", {1, 1, 1, 1}, {3, 0, 3, 0}, {0, 6, 0, 3}},
    {"8_2", {1, 1, 1, 1}, {3, 0, 3, 0}, {6, 12, 6, 9}},
    {"8_3", {1, 2, 1, 1}, {1, 0, 0, 0}, {1, 3, 3, 3}},
    {"8_4", {1, 2, 1, 1}, {7, 0, 6, 0}, {1, 15, 3, 9}},
    {"16_1", {2, 2, 2, 4}, {3, 0, 3, 0}, {1, 7, 1, 4}},
};

}  // namespace

RepInvariantData RepInvariantData::f4(const HeckeAlgebra& alg) {
  const auto& sys = alg.group().system();
  if (sys.rank() != 4 || sys.m(1, 2) != 4 || sys.m(0, 1) != 3 || sys.m(2, 3) != 3)
    throw std::invalid_argument("F4 data needs the diagram s1 - s2 => s3 - s4");
  const auto& G = alg.gamma();
  const Exponent a = alg.weights()[0], b = alg.weights()[2];
  int col;
  if (G.less(a + a, b))
    col = 0;
  else if (b == a + a)
    col = 1;
  else if (G.less(a, b))
    col = 2;
  else if (a == b)
    col = 3;
  else
    throw std::invalid_argument("F4 data needs L(s3) >= L(s1)");
  static const char* regimes[] = {"b>2a", "b=2a", "2a>b>a", "b=a"};
  RepInvariantData rep;
  rep.regime = regimes[col];
  auto Q = NumberField::rationals();
  for (const auto& e : kF4) {
    rep.labels.push_back(e.label);
    rep.a.push_back(e.b[col] * b + e.a[col] * a);
    rep.f.push_back(Q->from_rational(Rational(e.f[col])));
    rep.degrees.push_back(std::stoi(std::string(e.label).substr(0, std::string(e.label).find('_'))));
  }
  return rep;
}

std::optional<RepInvariantData> RepInvariantData::builtin(const HeckeAlgebra& alg) {
  const auto& sys = alg.group().system();
  if (sys.rank() == 2) return dihedral(alg);
  if (sys.name() == "F4") {
    try {
      return f4(alg);
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<std::vector<int>> attach_labels(const VerifyInput& in, const RepInvariantData& rep) {
  if (!rep.characters) throw std::invalid_argument("representation data has no character table");
  const auto& chars = *rep.characters;
  chars.validate(in.group());
  std::vector<int> to_rep;
  for (const auto& label : chars.labels) {
    const int i = rep.index_of(label);
    if (i < 0) throw std::invalid_argument("no a-value for character " + label);
    to_rep.push_back(i);
  }
  std::vector<std::vector<int>> out;
  for (const auto& c : in.cells->left.cells()) {
    CellModule module(in.kl, c);
    auto mult = specialize_and_decompose(module, chars);
    std::vector<int> labels;
    for (std::size_t i = 0; i < mult.size(); ++i)
      if (mult[i] != 0) labels.push_back(to_rep[i]);
    out.push_back(std::move(labels));
  }
  return out;
}

PropertyResult verify_E(const VerifyInput& in, int which, const RepInvariantData* rep) {
  PropertyResult r;
  r.name = "E" + std::to_string(which);
  const auto start = Clock::now();
  const auto& W = in.group();
  const auto& G = in.kl->algebra().gamma();
  const auto& cells = *in.cells;
  const int n = static_cast<int>(W.size());
  const std::size_t k = G.rank();

  if (which == 1 || which == 2) {
    if (!rep) {
      skip(r, "no representation data for this group");
    } else if (!rep->characters) {
      skip(r, "no character table to attach representations to left cells");
    } else {
      auto lambda = attach_labels(in, *rep);
      const auto& L = cells.left;
      const int nc = static_cast<int>(L.num_cells());
      for (int c = 0; c < nc && !r.failed(); ++c)
        for (int d = 0; d < nc && !r.failed(); ++d) {
          const int x = L.cell(c).front(), y = L.cell(d).front();
          const bool related = which == 1 ? L.cell_leq(c, d) : cells.two_sided.leq(x, y);
          if (!related) continue;
          for (int l : lambda[c])
            for (int mu : lambda[d]) {
              ++r.checks;
              const bool bad = which == 1 ? G.less(rep->a[l], rep->a[mu])
                                          : rep->a[l] == rep->a[mu] && !cells.two_sided.equiv(x, y);
              if (bad && !r.failed())
                fail(r, {x, y},
                     names(W, {x, y}) + " with " + rep->labels[l] + " (a = " + exp_str(rep->a[l], k) + ") and " +
                         rep->labels[mu] + " (a = " + exp_str(rep->a[mu], k) + ")");
            }
        }
    }
  } else if (which == 3) {
    for (int x = 0; x < n && !r.failed(); ++x)
      for (int y = 0; y < n; ++y) {
        if (!cells.left.leq(x, y) || !cells.two_sided.equiv(x, y)) continue;
        ++r.checks;
        if (!cells.left.equiv(x, y)) {
          fail(r, {x, y}, names(W, {x, y}) + ": x <=_L y and x ~_LR y but not x ~_L y");
          break;
        }
      }
  } else if (which == 4) {
    const auto& delta = in.jd->delta;
    for (const auto& c : cells.left.cells()) {
      ++r.checks;
      Exponent low = delta[c.front()];
      for (int w : c) low = G.min(low, delta[w]);
      std::vector<int> at;
      for (int w : c)
        if (delta[w] == low) at.push_back(w);
      if (at.size() != 1) {
        fail(r, at, "Delta reaches its minimum " + exp_str(low, k) + " at " + std::to_string(at.size()) +
                        " elements of the left cell of " + W.format(c.front()));
        break;
      }
    }
  } else {
    throw std::invalid_argument("unknown property E" + std::to_string(which));
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

PropertyResult compare_cell_a_values(const VerifyInput& in, const RepInvariantData& rep) {
  PropertyResult r;
  r.name = "cell-a-values";
  const auto& W = in.group();
  const auto& lr = in.cells->two_sided;
  const auto& a = in.jd->a;
  const std::size_t k = in.kl->algebra().rank();
  std::map<Exponent, std::size_t> cell_sizes, expected;
  std::map<Exponent, std::size_t> cell_count;
  for (const auto& c : lr.cells()) {
    ++r.checks;
    for (int w : c)
      if (a[w] != a[c.front()]) {
        fail(r, {c.front(), w}, "a is not constant on the two-sided cell of " + W.format(c.front()));
        return r;
      }
    cell_sizes[a[c.front()]] += c.size();
    ++cell_count[a[c.front()]];
  }
  for (std::size_t i = 0; i < rep.labels.size(); ++i)
    expected[rep.a[i]] += static_cast<std::size_t>(rep.degrees[i]) * static_cast<std::size_t>(rep.degrees[i]);
  for (const auto& [v, size] : cell_sizes) {
    auto it = expected.find(v);
    if (it == expected.end() || it->second != size) {
      std::vector<int> wit;
      for (const auto& c : lr.cells())
        if (a[c.front()] == v) wit.push_back(c.front());
      fail(r, wit,
           "cells with a = " + exp_str(v, k) + " have " + std::to_string(size) + " elements, the table predicts " +
               std::to_string(it == expected.end() ? 0 : it->second));
      return r;
    }
  }
  if (cell_sizes.size() != expected.size()) {
    fail(r, {}, "the table has a-values that no two-sided cell attains");
    return r;
  }
  std::ostringstream os;
  os << lr.num_cells() << " two-sided cells, " << cell_sizes.size() << " distinct a-values, column " << rep.regime;
  r.detail = os.str();
  return r;
}

std::vector<PropertyResult> verify_auxiliary(const VerifyInput& in) {
  const auto& W = in.group();
  const auto& jd = *in.jd;
  const int n = static_cast<int>(W.size());
  std::vector<PropertyResult> out;

  PropertyResult inv;
  inv.name = "a-inverse";
  for (int z = 0; z < n; ++z) {
    ++inv.checks;
    if (jd.a[z] != jd.a[W.inverse(z)]) {
      fail(inv, {z}, W.format(z) + ": a(z) != a(z^-1)");
      break;
    }
  }
  out.push_back(inv);

  PropertyResult unit;
  unit.name = "gamma-unit";
  std::map<PairKey, Integer> acc;
  for (const auto& e : jd.gamma) {
    const int z = W.inverse(e.z);
    if (!jd.is_distinguished(z)) continue;
    auto [it, fresh] = acc.try_emplace({W.inverse(e.x), e.y}, Integer(e.value) * jd.n[z]);
    if (!fresh) it->second += Integer(e.value) * jd.n[z];
  }
  unit.checks = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  for (int x = 0; x < n && !unit.failed(); ++x) {
    auto it = acc.find({x, x});
    if (it == acc.end() || it->second != 1) fail(unit, {x, x}, "sum over D is not 1 for x = y = " + W.format(x));
  }
  for (const auto& [key, v] : acc)
    if (!unit.failed() && key.first != key.second && v != 0)
      fail(unit, {key.first, key.second}, "sum over D is nonzero for (x,y) = (" + names(W, {key.first, key.second}) + ")");
  out.push_back(unit);

  PropertyResult cells;
  cells.name = "gamma-a";
  for (const auto& e : jd.gamma) {
    ++cells.checks;
    if (jd.a[e.x] != jd.a[e.y] || jd.a[e.y] != jd.a[e.z]) {
      fail(cells, {e.x, e.y, e.z}, "gamma_{x,y,z} != 0 with distinct a-values for (" + names(W, {e.x, e.y, e.z}) + ")");
      break;
    }
  }
  out.push_back(cells);
  return out;
}

LeftRelationSummary left_relation_summary(const VerifyInput& in) {
  const auto& W = in.group();
  const auto& L = in.cells->left;
  const int n = static_cast<int>(W.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::set<PairKey> related;
  for (const auto& e : in.jd->gamma) {
    const int x = e.x, y = W.inverse(e.y);
    related.insert({x, y});
    parent[find(x)] = find(y);
  }
  LeftRelationSummary out;
  for (int x = 0; x < n; ++x)
    if (find(x) == x) ++out.classes;
  out.closure_matches_left_cells = out.classes == L.num_cells();
  for (int x = 0; x < n && out.closure_matches_left_cells; ++x)
    if (find(x) != find(L.cell(L.cell_of(x)).front())) out.closure_matches_left_cells = false;
  out.relation_equals_left_equivalence = out.closure_matches_left_cells;
  for (const auto& c : L.cells())
    for (int x : c)
      for (int y : c)
        if (!related.count({x, y})) out.relation_equals_left_equivalence = false;
  return out;
}

std::vector<std::string> parse_property_list(const std::string& spec) {
  auto range = [](char kind, int lo, int hi) {
    std::vector<std::string> out;
    for (int i = lo; i <= hi; ++i) out.push_back(std::string(1, kind) + std::to_string(i));
    return out;
  };
  auto bound = [](char kind) { return kind == 'P' ? 15 : 4; };
  if (spec.empty()) return range('P', 1, 15);
  std::vector<std::string> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    for (auto& ch : item) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    std::vector<std::string> add;
    if (item == "ALL" || item == "P") {
      add = range('P', 1, 15);
    } else if (item == "E") {
      add = range('E', 1, 4);
    } else {
      auto parse_one = [&](const std::string& s) {
        if (s.size() < 2 || (s[0] != 'P' && s[0] != 'E')) throw std::invalid_argument("unknown property '" + s + "'");
        std::size_t pos = 0;
        int v = std::stoi(s.substr(1), &pos);
        if (pos + 1 != s.size() || v < 1 || v > bound(s[0])) throw std::invalid_argument("unknown property '" + s + "'");
        return std::pair{s[0], v};
      };
      auto dots = item.find("..");
      if (dots != std::string::npos) {
        auto [k1, lo] = parse_one(item.substr(0, dots));
        auto [k2, hi] = parse_one(item.substr(dots + 2));
        if (k1 != k2 || lo > hi) throw std::invalid_argument("bad property range '" + item + "'");
        add = range(k1, lo, hi);
      } else {
        auto [kind, v] = parse_one(item);
        add = range(kind, v, v);
      }
    }
    for (auto& a : add)
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  return out;
}

ConjectureReport verify(const VerifyInput& in, const VerifyOptions& opts) {
  const auto start = Clock::now();
  ConjectureReport rep;
  const auto& W = in.group();
  rep.group_order = W.size();
  rep.gamma_entries = in.jd->gamma.size();
  rep.distinguished = in.jd->distinguished.size();
  rep.seed = opts.p15.seed;

  std::optional<RepInvariantData> builtin;
  const RepInvariantData* data = opts.rep;
  if (!data) {
    builtin = RepInvariantData::builtin(in.kl->algebra());
    if (builtin) data = &*builtin;
  }

  auto props = opts.props.empty() ? parse_property_list("") : opts.props;
  std::map<int, PropertyResult> p_cache;
  auto get_p = [&](int i) -> const PropertyResult& {
    auto it = p_cache.find(i);
    if (it == p_cache.end()) it = p_cache.emplace(i, verify_P(in, i)).first;
    return it->second;
  };
  for (const auto& name : props) {
    const int i = std::stoi(name.substr(1));
    if (name[0] == 'E') {
      rep.results.push_back(verify_E(in, i, data));
    } else if (i < 15) {
      rep.results.push_back(get_p(i));
    } else {
      if (get_p(4).status != Status::Pass || get_p(11).status != Status::Pass) {
        PropertyResult r;
        r.name = "P15";
        skip(r, "P4 and P11 must hold before P15 is checked");
        rep.results.push_back(r);
      } else {
        rep.results.push_back(verify_P15(in, opts.p15));
      }
    }
  }
  if (opts.auxiliary) {
    rep.auxiliary = verify_auxiliary(in);
    if (data && W.system().name() == "F4") rep.auxiliary.push_back(compare_cell_a_values(in, *data));
    auto rel = left_relation_summary(in);
    rep.notes.emplace_back("left-relation-classes", std::to_string(rel.classes));
    rep.notes.emplace_back("left-relation-closure-is-left-cells", rel.closure_matches_left_cells ? "yes" : "no");
    rep.notes.emplace_back("left-relation-equals-left-equivalence", rel.relation_equals_left_equivalence ? "yes" : "no");
  }
  rep.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return rep;
}

ConjectureReport verify(const Instance& inst, const VerifyOptions& opts) {
  auto rep = verify(VerifyInput::of(inst), opts);
  rep.instance = inst.describe();
  return rep;
}

DihedralOracle dihedral_oracle(const HeckeAlgebra& alg) {
  const auto& W = alg.group();
  const auto& sys = W.system();
  if (sys.rank() != 2) throw std::invalid_argument("the dihedral oracle needs a rank 2 system");
  const int m = sys.m(0, 1);
  if (m < 3) throw std::invalid_argument("the dihedral oracle needs m >= 3");
  const auto& G = alg.gamma();
  const Exponent L1 = alg.weights()[0], L2 = alg.weights()[1];
  if (m % 2 != 0) throw std::invalid_argument("for odd m all generators are conjugate, so L(s1) = L(s2)");
  if (!G.less(L2, L1)) throw std::invalid_argument("the dihedral oracle needs L(s1) > L(s2)");

  DihedralOracle o;
  o.m = m;
  for (int k = 0; k <= m; ++k) {
    o.one.push_back(W.from_word(alternating(0, k)));
    o.two.push_back(W.from_word(alternating(1, k)));
  }
  const auto& one = o.one;
  const auto& two = o.two;

  o.delta.assign(W.size(), Exponent{});
  for (int k = 0; 2 * k <= m; ++k) o.delta[one[2 * k]] = o.delta[two[2 * k]] = k * (L1 + L2);
  o.delta[two[1]] = L2;
  for (int k = 0; 2 * k + 1 < m; ++k) o.delta[one[2 * k + 1]] = (k + 1) * L1 - k * L2;
  for (int k = 1; 2 * k + 1 < m; ++k) o.delta[two[2 * k + 1]] = k * L1 + (k - 1) * L2;

  std::vector<std::pair<int, int>> dn = {{one[0], 1}, {two[1], 1}, {one[1], 1}, {two[3], 1}, {one[m - 1], -1}, {one[m], 1}};
  std::sort(dn.begin(), dn.end());
  for (auto [d, v] : dn) {
    o.distinguished.push_back(d);
    o.n.push_back(v);
  }

  std::vector<int> mid_a, mid_b;
  for (int k = 1; k <= m - 2; ++k) mid_a.push_back(k % 2 ? one[k] : two[k]);
  for (int k = 2; k <= m - 1; ++k) mid_b.push_back(k % 2 ? two[k] : one[k]);
  std::sort(mid_a.begin(), mid_a.end());
  std::sort(mid_b.begin(), mid_b.end());
  std::vector<int> middle = mid_a;
  middle.insert(middle.end(), mid_b.begin(), mid_b.end());
  std::sort(middle.begin(), middle.end());
  o.chain = {{one[m]}, {one[m - 1]}, middle, {two[1]}, {one[0]}};

  std::vector<std::string> rhos;
  for (int j = 1; j <= (m - 2) / 2; ++j) rhos.push_back("rho_" + std::to_string(j));
  o.left_cells = {{one[0]}, {two[1]}, mid_a, mid_b, {one[m - 1]}, {one[m]}};
  o.left_cell_labels = {{"1_W"}, {"eps1"}, rhos, rhos, {"eps2"}, {"eps"}};
  const std::vector<Exponent> cell_a = {Exponent{}, L2, L1, L1, (m / 2) * (L1 - L2) + L2, (m / 2) * (L1 + L2)};
  o.a.assign(W.size(), Exponent{});
  for (std::size_t c = 0; c < o.left_cells.size(); ++c)
    for (int w : o.left_cells[c]) o.a[w] = cell_a[c];

  const Poly unit = alg.one();
  const Poly zeta = alg.v(0) * alg.v_inv(1) + alg.v_inv(0) * alg.v(1);
  auto sorted = [](SparseVec v) {
    std::sort(v.begin(), v.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    return v;
  };
  for (int k = 0; k < m; ++k) {
    const std::string ks = std::to_string(k);
    o.products.push_back({one[1], one[k + 1], {{one[k + 1], alg.v_plus_inv(0)}}, "C_{1_1} C_{1_{k+1}}, k=" + ks});
    o.products.push_back({two[1], two[k + 1], {{two[k + 1], alg.v_plus_inv(1)}}, "C_{2_1} C_{2_{k+1}}, k=" + ks});
    o.products.push_back({two[1], one[k], {{two[k + 1], unit}}, "C_{2_1} C_{1_k}, k=" + ks});
    SparseVec e{{one[k + 1], unit}};
    if (k > 1) e.emplace_back(one[k - 1], zeta);
    if (k > 3) e.emplace_back(one[k - 3], unit);
    o.products.push_back({one[1], two[k], sorted(e), "C_{1_1} C_{2_k}, k=" + ks});
  }
  return o;
}

OracleComparison compare_with_oracle(const DihedralOracle& o, const Instance& inst) {
  OracleComparison out;
  const auto& W = inst.group();
  const std::size_t k = inst.gamma().rank();
  auto sc = inst.structure();
  auto jd = inst.jdata();
  const auto& cells = inst.cells();
  auto mismatch = [&](std::string s) {
    out.ok = false;
    out.mismatches.push_back(std::move(s));
  };

  for (const auto& p : o.products) {
    ++out.checks;
    if (sc->row(p.x, p.y) != p.expected) mismatch("product " + p.family);
  }
  for (std::size_t z = 0; z < W.size(); ++z) {
    out.checks += 2;
    if (jd->delta[z] != o.delta[z])
      mismatch("Delta(" + W.format(static_cast<int>(z)) + ") = " + exp_str(jd->delta[z], k) + ", expected " +
               exp_str(o.delta[z], k));
    if (jd->a[z] != o.a[z])
      mismatch("a(" + W.format(static_cast<int>(z)) + ") = " + exp_str(jd->a[z], k) + ", expected " +
               exp_str(o.a[z], k));
  }
  ++out.checks;
  if (jd->distinguished != o.distinguished) mismatch("the set D differs");
  for (std::size_t i = 0; i < o.distinguished.size(); ++i) {
    ++out.checks;
    const int d = o.distinguished[i];
    if (jd->n[d] != o.n[i]) mismatch("n_" + W.format(d) + " = " + jd->n[d].str() + ", expected " + o.n[i].str());
  }

  const auto& lr = cells.two_sided;
  ++out.checks;
  if (lr.num_cells() != o.chain.size()) mismatch("number of two-sided cells differs");
  for (std::size_t i = 0; i < o.chain.size(); ++i) {
    ++out.checks;
    const auto& c = lr.cell(lr.cell_of(o.chain[i].front()));
    if (c != o.chain[i]) mismatch("two-sided cell of " + W.format(o.chain[i].front()) + " differs");
    for (std::size_t j = 0; j < o.chain.size(); ++j) {
      ++out.checks;
      if (lr.leq(o.chain[i].front(), o.chain[j].front()) != (i <= j))
        mismatch("two-sided order between " + W.format(o.chain[i].front()) + " and " + W.format(o.chain[j].front()));
    }
  }

  const auto& L = cells.left;
  ++out.checks;
  if (L.num_cells() != o.left_cells.size()) mismatch("number of left cells differs");
  auto chars = CharacterTable::dihedral(o.m);
  for (std::size_t i = 0; i < o.left_cells.size(); ++i) {
    ++out.checks;
    const auto& c = L.cell(L.cell_of(o.left_cells[i].front()));
    if (c != o.left_cells[i]) {
      mismatch("left cell of " + W.format(o.left_cells[i].front()) + " differs");
      continue;
    }
    CellModule module(inst.kl_ptr(), c);
    auto mult = specialize_and_decompose(module, chars);
    std::vector<std::string> got;
    for (std::size_t j = 0; j < mult.size(); ++j)
      for (Integer t = 0; t < mult[j]; ++t) got.push_back(chars.labels[j]);
    auto want = o.left_cell_labels[i];
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    ++out.checks;
    if (got != want) mismatch("decomposition of the left cell of " + W.format(c.front()) + " differs");
  }
  return out;
}

}  // namespace uhecke
