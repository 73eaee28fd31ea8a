#include "uhecke/coxeter.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "uhecke/numfield.hpp"

namespace uhecke {

CoxeterSystem::CoxeterSystem(std::vector<std::vector<int>> matrix, std::vector<std::string> labels)
    : matrix_(std::move(matrix)), labels_(std::move(labels)) {
  const std::size_t n = matrix_.size();
  if (n == 0) throw std::invalid_argument("Coxeter matrix is empty");
  if (n > 32) throw std::invalid_argument("at most 32 generators are supported");
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix_[i].size() != n) throw std::invalid_argument("Coxeter matrix is not square");
    if (matrix_[i][i] != 1) throw std::invalid_argument("Coxeter matrix needs 1 on the diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix_[i][j] != matrix_[j][i]) throw std::invalid_argument("Coxeter matrix is not symmetric");
      if (i != j && matrix_[i][j] < 2)
        throw std::invalid_argument("off-diagonal Coxeter entries must be >= 2 (infinite orders unsupported)");
    }
  }
  if (labels_.empty())
    for (std::size_t i = 0; i < n; ++i) labels_.push_back("s" + std::to_string(i + 1));
  if (labels_.size() != n) throw std::invalid_argument("wrong number of generator labels");

  classes_.assign(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (classes_[i] >= 0) continue;
    std::vector<std::size_t> stack{i};
    classes_[i] = next;
    while (!stack.empty()) {
      auto s = stack.back();
      stack.pop_back();
      for (std::size_t t = 0; t < n; ++t)
        if (t != s && matrix_[s][t] % 2 == 1 && classes_[t] < 0) {
          classes_[t] = next;
          stack.push_back(t);
        }
    }
    ++next;
  }
}

std::size_t CoxeterSystem::num_generator_classes() const {
  return static_cast<std::size_t>(*std::max_element(classes_.begin(), classes_.end()) + 1);
}

namespace {

std::vector<std::vector<int>> chain(int n, const std::vector<int>& edges) {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  for (int i = 0; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = edges[i];
  return m;
}

}  // namespace

CoxeterSystem CoxeterSystem::type_A(int n) {
  if (n < 1) throw std::invalid_argument("type A needs rank >= 1");
  CoxeterSystem c(chain(n, std::vector<int>(std::max(n - 1, 0), 3)));
  c.name_ = "A" + std::to_string(n);
  return c;
}

CoxeterSystem CoxeterSystem::type_B(int n) {
  if (n < 2) throw std::invalid_argument("type B needs rank >= 2");
  std::vector<int> e(n - 1, 3);
  e[0] = 4;
  CoxeterSystem c(chain(n, e));
  c.name_ = "B" + std::to_string(n);
  return c;
}

CoxeterSystem CoxeterSystem::type_D(int n) {
  if (n < 4) throw std::invalid_argument("type D needs rank >= 4");
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  m[0][2] = m[2][0] = 3;
  m[1][2] = m[2][1] = 3;
  for (int i = 2; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = 3;
  CoxeterSystem c(std::move(m));
  c.name_ = "D" + std::to_string(n);
  return c;
}

CoxeterSystem CoxeterSystem::dihedral(int m) {
  if (m < 2) throw std::invalid_argument("I2(m) needs m >= 2");
  CoxeterSystem c({{1, m}, {m, 1}});
  c.name_ = "I2(" + std::to_string(m) + ")";
  return c;
}

CoxeterSystem CoxeterSystem::type_H(int n) {
  if (n != 3 && n != 4) throw std::invalid_argument("type H needs rank 3 or 4");
  std::vector<int> e(n - 1, 3);
  e[0] = 5;
  CoxeterSystem c(chain(n, e));
  c.name_ = "H" + std::to_string(n);
  return c;
}

CoxeterSystem CoxeterSystem::type_F4() {
  CoxeterSystem c(chain(4, {3, 4, 3}));
  c.name_ = "F4";
  return c;
}

CoxeterSystem CoxeterSystem::preset(const std::string& type, int rank, int m) {
  if (type == "A") return type_A(rank);
  if (type == "B" || type == "C") return type_B(rank);
  if (type == "D") return type_D(rank);
  if (type == "I2" || type == "I") return dihedral(m);
  if (type == "H3") return type_H(3);
  if (type == "H4") return type_H(4);
  if (type == "H") return type_H(rank);
  if (type == "F4" || (type == "F" && rank == 4)) return type_F4();
  if (type.size() > 1 && (type[0] == 'A' || type[0] == 'B' || type[0] == 'D')) {
    int r = 0;
    try {
      r = std::stoi(type.substr(1));
    } catch (const std::exception&) {
      throw std::invalid_argument("unknown Coxeter type '" + type + "'");
    }
    return preset(type.substr(0, 1), r, m);
  }
  throw std::invalid_argument("unknown Coxeter type '" + type + "'");
}

CoxeterSystem CoxeterSystem::parabolic(const std::vector<int>& subset) const {
  std::vector<int> idx(subset);
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) throw std::invalid_argument("repeated generator");
  if (idx.empty()) throw std::invalid_argument("parabolic subsystem needs at least one generator");
  std::vector<std::vector<int>> m(idx.size(), std::vector<int>(idx.size()));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || static_cast<std::size_t>(idx[i]) >= rank()) throw std::out_of_range("generator index");
    labels.push_back(labels_[idx[i]]);
    for (std::size_t j = 0; j < idx.size(); ++j) m[i][j] = matrix_[idx[i]][idx[j]];
  }
  CoxeterSystem c(std::move(m), std::move(labels));
  std::ostringstream os;
  os << (name_.empty() ? "W" : name_) << "_{";
  for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << labels_[idx[i]];
  os << "}";
  c.name_ = os.str();
  return c;
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int x : v) {
      h ^= static_cast<std::uint32_t>(x);
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

// Positive roots and the signed permutation action of each generator.
// Signed index: i in [0,N) is a positive root, N+i its negative.
struct RootSystem {
  std::size_t npos = 0;
  std::vector<std::vector<int>> gen_perm;  // [s][signed root] -> signed root
};

RootSystem build_roots(const CoxeterSystem& sys, std::size_t cap) {
  const std::size_t n = sys.rank();
  long M = 1;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 1; t < n; ++t) {
      M = std::lcm(M, static_cast<long>(sys.m(s, t)));
      if (M > 2520) throw std::invalid_argument("Coxeter matrix entries too large for exact enumeration");
    }
  CyclotomicRing ring(static_cast<unsigned>(2 * M));
  // c[s][t] = 2cos(pi/m_st) as zeta_{2M}^{M/m} + zeta_{2M}^{-M/m}.
  std::vector<std::vector<CyclotomicRing::Elem>> c(n, std::vector<CyclotomicRing::Elem>(n));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      c[s][t] = s == t ? ring.zero() : ring.two_cos(M / sys.m(s, t));

  using Root = std::vector<CyclotomicRing::Elem>;
  std::vector<Root> roots;
  std::map<Root, int> index;
  for (std::size_t s = 0; s < n; ++s) {
    Root r(n, ring.zero());
    r[s] = ring.one();
    index.emplace(r, static_cast<int>(roots.size()));
    roots.push_back(std::move(r));
  }
  auto reflect = [&](std::size_t s, const Root& b) {
    // s(b) = b + (sum_{t != s} 2cos(pi/m_st) b_t - 2 b_s) alpha_s
    CyclotomicRing::Elem coef = ring.neg(ring.add(b[s], b[s]));
    for (std::size_t t = 0; t < n; ++t)
      if (t != s) coef = ring.add(coef, ring.mul(c[s][t], b[t]));
    Root r = b;
    r[s] = ring.add(r[s], coef);
    return r;
  };

  std::vector<std::vector<int>> pos_image(n);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t s = 0; s < n; ++s) {
      if (i == s) continue;
      Root r = reflect(s, roots[i]);
      auto [it, inserted] = index.emplace(r, static_cast<int>(roots.size()));
      if (inserted) {
        roots.push_back(std::move(r));
        if (roots.size() > cap) throw std::runtime_error("group too large / possibly infinite (root closure exceeds cap)");
      }
    }
  }

  RootSystem rs;
  rs.npos = roots.size();
  const int N = static_cast<int>(rs.npos);
  rs.gen_perm.assign(n, std::vector<int>(2 * rs.npos));
  for (std::size_t s = 0; s < n; ++s)
    for (int i = 0; i < N; ++i) {
      int img = static_cast<std::size_t>(i) == s ? N + i : index.at(reflect(s, roots[i]));
      rs.gen_perm[s][i] = img;
      rs.gen_perm[s][N + i] = img >= N ? img - N : img + N;
    }
  return rs;
}

}  // namespace

CoxeterGroup::CoxeterGroup(CoxeterSystem sys, std::size_t cap) : sys_(std::move(sys)) {
  const std::size_t n = sys_.rank();
  RootSystem rs = build_roots(sys_, cap);
  const int N = static_cast<int>(rs.npos);

  // BFS over permutations of the signed roots; an element is keyed by the
  // images of the simple roots.
  std::vector<std::vector<int>> perms;
  std::vector<int> len;
  std::unordered_map<std::vector<int>, int, VecHash> key_of;
  auto key = [&](const std::vector<int>& p) { return std::vector<int>(p.begin(), p.begin() + n); };
  std::vector<int> id(2 * N);
  std::iota(id.begin(), id.end(), 0);
  perms.push_back(id);
  len.push_back(0);
  key_of.emplace(key(id), 0);
  for (std::size_t cur = 0; cur < perms.size(); ++cur) {
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<int> p(2 * N);
      for (int i = 0; i < 2 * N; ++i) p[i] = rs.gen_perm[s][perms[cur][i]];
      auto k = key(p);
      if (key_of.count(k)) continue;
      if (perms.size() >= cap) throw std::runtime_error("group too large / possibly infinite (more than " + std::to_string(cap) + " elements)");
      key_of.emplace(std::move(k), static_cast<int>(perms.size()));
      perms.push_back(std::move(p));
      len.push_back(len[cur] + 1);
    }
  }
  const std::size_t size = perms.size();

  auto lookup = [&](const std::vector<int>& p) { return key_of.at(key(p)); };
  auto compose = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> p(2 * N);
    for (int i = 0; i < 2 * N; ++i) p[i] = a[b[i]];
    return p;
  };
  std::vector<std::vector<int>> invperm(size, std::vector<int>(2 * N));
  for (std::size_t w = 0; w < size; ++w)
    for (int i = 0; i < 2 * N; ++i) invperm[w][perms[w][i]] = i;

  std::vector<std::uint32_t> ldes(size, 0), rdes(size, 0);
  for (std::size_t w = 0; w < size; ++w)
    for (std::size_t s = 0; s < n; ++s) {
      if (perms[w][s] >= N) rdes[w] |= 1u << s;
      if (invperm[w][s] >= N) ldes[w] |= 1u << s;
    }

  std::vector<int> lm(size * n);
  for (std::size_t w = 0; w < size; ++w)
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<int> p(2 * N);
      for (int i = 0; i < 2 * N; ++i) p[i] = rs.gen_perm[s][perms[w][i]];
      lm[w * n + s] = lookup(p);
    }

  // Canonical ShortLex words: smallest left descent, then the word of sw.
  std::vector<std::size_t> bfs_order(size);
  std::iota(bfs_order.begin(), bfs_order.end(), 0);
  std::stable_sort(bfs_order.begin(), bfs_order.end(), [&](auto a, auto b) { return len[a] < len[b]; });
  std::vector<Word> words(size);
  for (auto w : bfs_order) {
    if (len[w] == 0) continue;
    int s = std::countr_zero(ldes[w]);
    Word word{s};
    const Word& rest = words[lm[w * n + s]];
    word.insert(word.end(), rest.begin(), rest.end());
    words[w] = std::move(word);
  }

  std::vector<int> order(size);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (len[a] != len[b]) return len[a] < len[b];
    return words[a] < words[b];
  });
  std::vector<int> newid(size);
  for (std::size_t i = 0; i < size; ++i) newid[order[i]] = static_cast<int>(i);

  length_.resize(size);
  words_.resize(size);
  ldes_.resize(size);
  rdes_.resize(size);
  inv_.resize(size);
  lmul_.resize(size * n);
  rmul_.resize(size * n);
  for (std::size_t i = 0; i < size; ++i) {
    int old = order[i];
    length_[i] = len[old];
    words_[i] = words[old];
    ldes_[i] = ldes[old];
    rdes_[i] = rdes[old];
    inv_[i] = newid[lookup(invperm[old])];
    for (std::size_t s = 0; s < n; ++s) {
      lmul_[i * n + s] = newid[lm[old * n + s]];
      rmul_[i * n + s] = newid[lookup(compose(perms[old], rs.gen_perm[s]))];
    }
  }
}

int CoxeterGroup::first_left_descent(int w) const {
  if (ldes_[w] == 0) return -1;
  return std::countr_zero(ldes_[w]);
}

int CoxeterGroup::multiply(int x, int y) const {
  for (int s : words_[y]) x = right_mul(x, s);
  return x;
}

int CoxeterGroup::from_word(const Word& w) const {
  int x = 0;
  for (int s : w) {
    if (s < 0 || static_cast<std::size_t>(s) >= rank()) throw std::out_of_range("generator index out of range in word");
    x = right_mul(x, s);
  }
  return x;
}

void CoxeterGroup::build_bruhat() const {
  const std::size_t n = size();
  bwords_ = (n + 63) / 64;
  bruhat_.assign(n * bwords_, 0);
  bruhat_[0] |= 1;
  for (std::size_t w = 1; w < n; ++w) {
    int s = first_left_descent(static_cast<int>(w));
    int sw = left_mul(s, static_cast<int>(w));
    const std::uint64_t* below = &bruhat_[sw * bwords_];
    std::uint64_t* row = &bruhat_[w * bwords_];
    // Lifting property: y <= w iff min(y, sy) <= sw.
    for (std::size_t y = 0; y < n; ++y) {
      int m = is_left_descent(s, static_cast<int>(y)) ? left_mul(s, static_cast<int>(y)) : static_cast<int>(y);
      if ((below[m / 64] >> (m % 64)) & 1u) row[y / 64] |= std::uint64_t{1} << (y % 64);
    }
  }
}

bool CoxeterGroup::bruhat_leq(int y, int w) const {
  std::call_once(bruhat_once_, [this] { build_bruhat(); });
  return (bruhat_[static_cast<std::size_t>(w) * bwords_ + y / 64] >> (y % 64)) & 1u;
}

std::vector<int> CoxeterGroup::parabolic(const std::vector<int>& subset) const {
  std::uint32_t mask = 0;
  for (int s : subset) {
    if (s < 0 || static_cast<std::size_t>(s) >= rank()) throw std::out_of_range("generator index out of range");
    mask |= 1u << s;
  }
  std::vector<int> out;
  for (std::size_t w = 0; w < size(); ++w) {
    bool ok = true;
    for (int s : words_[w]) ok = ok && ((mask >> s) & 1u);
    if (ok) out.push_back(static_cast<int>(w));
  }
  return out;
}

std::string CoxeterGroup::format(int w) const {
  if (words_[w].empty()) return "1";
  std::string out;
  for (int s : words_[w]) out += sys_.labels()[s];
  return out;
}

WeightFunction::WeightFunction(const CoxeterSystem& sys, const OrderedGroup& gamma, std::vector<Exponent> values)
    : values_(std::move(values)) {
  if (values_.size() != sys.rank()) throw std::invalid_argument("weight function needs one value per generator");
  for (std::size_t s = 0; s < values_.size(); ++s) {
    for (std::size_t i = gamma.rank(); i < kMaxRank; ++i)
      if (values_[s][i] != 0) throw std::invalid_argument("weight exceeds the rank of Gamma");
    if (!gamma.positive(values_[s]))
      throw std::invalid_argument("weight of " + sys.labels()[s] + " is not positive in the monomial order");
  }
  const auto& cls = sys.generator_classes();
  for (std::size_t s = 0; s < values_.size(); ++s)
    for (std::size_t t = 0; t < values_.size(); ++t)
      if (cls[s] == cls[t] && values_[s] != values_[t])
        throw std::invalid_argument("inconsistent weights: " + sys.labels()[s] + " and " + sys.labels()[t] +
                                    " are conjugate but have different weights");
}

std::pair<OrderedGroup, WeightFunction> WeightFunction::universal(const CoxeterSystem& sys) {
  const std::size_t k = sys.num_generator_classes();
  OrderedGroup g = OrderedGroup::lex(k);
  std::vector<Exponent> v;
  for (int c : sys.generator_classes()) v.push_back(Exponent::unit(static_cast<std::size_t>(c)));
  return {g, WeightFunction(sys, g, std::move(v))};
}

Exponent WeightFunction::of_word(const Word& w) const {
  Exponent e;
  for (int s : w) e += values_[s];
  return e;
}

}  // namespace uhecke
