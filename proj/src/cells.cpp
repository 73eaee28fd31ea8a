#include "uhecke/cells.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace uhecke {

namespace {

// Iterative Tarjan; components come out sinks first.
std::vector<std::vector<int>> strongly_connected(std::size_t n, const std::vector<std::vector<int>>& edges) {
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  std::vector<std::vector<int>> comps;
  int counter = 0;
  std::vector<std::pair<int, std::size_t>> frames;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    frames.emplace_back(static_cast<int>(root), 0);
    index[root] = low[root] = counter++;
    stack.push_back(static_cast<int>(root));
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < edges[v].size()) {
        int u = edges[v][pos++];
        if (index[u] < 0) {
          index[u] = low[u] = counter++;
          stack.push_back(u);
          on_stack[u] = 1;
          frames.emplace_back(u, 0);
        } else if (on_stack[u]) {
          low[v] = std::min(low[v], index[u]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<int> comp;
        int u;
        do {
          u = stack.back();
          stack.pop_back();
          on_stack[u] = 0;
          comp.push_back(u);
        } while (u != v);
        comps.push_back(std::move(comp));
      }
      int done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
    }
  }
  return comps;
}

}  // namespace

CellPreorder::CellPreorder(std::size_t n, const std::vector<std::vector<int>>& edges) {
  auto comps = strongly_connected(n, edges);
  for (auto& c : comps) std::sort(c.begin(), c.end());

  std::vector<int> tarjan_of(n);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int w : comps[c]) tarjan_of[w] = static_cast<int>(c);

  // Final numbering: by smallest member.
  std::vector<int> order(comps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return comps[a].front() < comps[b].front(); });
  std::vector<int> rank_of(comps.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank_of[order[i]] = static_cast<int>(i);

  const std::size_t nc = comps.size();
  const std::size_t words = (nc + 63) / 64;
  below_.assign(nc, std::vector<std::uint64_t>(words, 0));
  for (std::size_t c = 0; c < nc; ++c) {
    auto& bits = below_[rank_of[c]];
    int self = rank_of[c];
    bits[self >> 6] |= std::uint64_t{1} << (self & 63);
    for (int w : comps[c])
      for (int y : edges[w]) {
        int d = tarjan_of[y];
        if (static_cast<std::size_t>(d) == c) continue;
        const auto& sub = below_[rank_of[d]];
        for (std::size_t k = 0; k < words; ++k) bits[k] |= sub[k];
      }
  }

  cells_.resize(nc);
  cell_of_.assign(n, -1);
  for (std::size_t c = 0; c < nc; ++c) {
    cells_[rank_of[c]] = comps[c];
    for (int w : comps[c]) cell_of_[w] = rank_of[c];
  }
}

std::vector<std::vector<int>> left_cell_edges(const KLTable& kl) {
  const auto& g = kl.group();
  const int n = static_cast<int>(g.size());
  std::vector<std::vector<int>> edges(n);
  for (int w = 0; w < n; ++w) {
    auto& e = edges[w];
    for (int s = 0; s < static_cast<int>(g.rank()); ++s) {
      if (g.is_left_descent(s, w)) continue;
      e.push_back(g.left_mul(s, w));
      for (const auto& [y, m] : kl.mu(s, w)) e.push_back(y);
    }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  return edges;
}

CellPartition compute_cells(const KLTable& kl) {
  const auto& g = kl.group();
  const std::size_t n = g.size();
  auto left = left_cell_edges(kl);
  std::vector<std::vector<int>> right(n), both(n);
  for (std::size_t w = 0; w < n; ++w) {
    for (int y : left[g.inverse(static_cast<int>(w))]) right[w].push_back(g.inverse(y));
    std::sort(right[w].begin(), right[w].end());
    std::set_union(left[w].begin(), left[w].end(), right[w].begin(), right[w].end(), std::back_inserter(both[w]));
  }
  CellPartition out;
  out.left = CellPreorder(n, left);
  out.right = CellPreorder(n, right);
  out.two_sided = CellPreorder(n, both);
  return out;
}

CellModule::CellModule(std::shared_ptr<const KLTable> kl, std::vector<int> cell)
    : kl_(std::move(kl)), cell_(std::move(cell)) {
  std::sort(cell_.begin(), cell_.end());
  const auto& alg = kl_->algebra();
  const std::size_t d = cell_.size();
  const std::size_t rank = alg.rank();
  for (std::size_t s = 0; s < kl_->group().rank(); ++s) {
    PolyMatrix m(d, d, Poly(rank));
    for (std::size_t j = 0; j < d; ++j) {
      SparseVec ex{{cell_[j], alg.one()}};
      for (auto& [y, c] : kl_->left_mul_C(static_cast<int>(s), ex)) {
        int i = index_of(y);
        if (i >= 0) m(i, j) = std::move(c);
      }
    }
    IntMatrix sp(d, d, Integer(0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) sp(i, j) = (i == j ? Integer(1) : Integer(0)) - m(i, j).at_one();
    gens_.push_back(std::move(m));
    spec_.push_back(std::move(sp));
  }
}

int CellModule::index_of(int w) const {
  auto it = std::lower_bound(cell_.begin(), cell_.end(), w);
  return it != cell_.end() && *it == w ? static_cast<int>(it - cell_.begin()) : -1;
}

PolyMatrix CellModule::action(const StructureConstants& sc, int w) const {
  const std::size_t d = cell_.size();
  PolyMatrix m(d, d, Poly(kl_->algebra().rank()));
  for (std::size_t j = 0; j < d; ++j)
    for (auto& [y, c] : sc.row(w, cell_[j])) {
      int i = index_of(y);
      if (i >= 0) m(i, j) = std::move(c);
    }
  return m;
}

IntMatrix CellModule::specialized(const Word& w) const {
  IntMatrix m = IntMatrix::identity(cell_.size(), Integer(1), Integer(0));
  for (int s : w) m = m * spec_.at(s);
  return m;
}

std::vector<std::vector<int>> conjugacy_classes(const CoxeterGroup& g) {
  const std::size_t n = g.size();
  std::vector<int> seen(n, -1);
  std::vector<std::vector<int>> classes;
  for (std::size_t w0 = 0; w0 < n; ++w0) {
    if (seen[w0] >= 0) continue;
    int id = static_cast<int>(classes.size());
    std::vector<int> cls{static_cast<int>(w0)};
    seen[w0] = id;
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (std::size_t s = 0; s < g.rank(); ++s) {
        int u = g.left_mul(static_cast<int>(s), g.right_mul(cls[i], static_cast<int>(s)));
        if (seen[u] < 0) {
          seen[u] = id;
          cls.push_back(u);
        }
      }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

int CharacterTable::index_of(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
}

std::vector<Integer> CharacterTable::degrees() const {
  std::vector<Integer> d;
  for (const auto& row : values) {
    if (!row.front().is_rational()) throw std::invalid_argument("character degree is not rational");
    d.push_back(numerator(row.front().rational_value()));
  }
  return d;
}

CharacterTable CharacterTable::dihedral(int m) {
  if (m < 2) throw std::invalid_argument("dihedral character table needs m >= 2");
  CharacterTable t;
  t.field = NumberField::real_cyclotomic(static_cast<unsigned>(m));
  const auto& F = *t.field;
  auto q = [&](long v) { return F.from_rational(Rational(v)); };

  t.class_reps.push_back({});
  t.class_sizes.push_back(1);
  const int top = m / 2;
  for (int k = 1; k <= top; ++k) {
    Word w;
    for (int i = 0; i < k; ++i) {
      w.push_back(0);
      w.push_back(1);
    }
    t.class_reps.push_back(w);
    t.class_sizes.push_back(m % 2 == 0 && k == top ? 1 : 2);
  }
  const bool even = m % 2 == 0;
  if (even) {
    t.class_reps.push_back({0});
    t.class_sizes.push_back(m / 2);
    t.class_reps.push_back({1});
    t.class_sizes.push_back(m / 2);
  } else {
    t.class_reps.push_back({0});
    t.class_sizes.push_back(m);
  }

  auto row = [&](auto on_rotation, auto on_reflection) {
    std::vector<NFElement> r;
    for (int k = 0; k <= top; ++k) r.push_back(on_rotation(k));
    r.push_back(on_reflection(0));
    if (even) r.push_back(on_reflection(1));
    return r;
  };
  auto parity = [&](int k) { return q(k % 2 == 0 ? 1 : -1); };

  t.labels.push_back("1_W");
  t.values.push_back(row([&](int) { return q(1); }, [&](int) { return q(1); }));
  t.labels.push_back("eps");
  t.values.push_back(row([&](int) { return q(1); }, [&](int) { return q(-1); }));
  if (even) {
    t.labels.push_back("eps1");
    t.values.push_back(row(parity, [&](int s) { return q(s == 0 ? 1 : -1); }));
    t.labels.push_back("eps2");
    t.values.push_back(row(parity, [&](int s) { return q(s == 0 ? -1 : 1); }));
  }
  const int nrho = even ? (m - 2) / 2 : (m - 1) / 2;
  for (int j = 1; j <= nrho; ++j) {
    t.labels.push_back("rho_" + std::to_string(j));
    t.values.push_back(row([&](int k) { return F.two_cos(static_cast<long>(j) * k); }, [&](int) { return q(0); }));
  }
  return t;
}

void CharacterTable::validate(const CoxeterGroup& g) const {
  if (!field) throw std::invalid_argument("character table has no field");
  const std::size_t nc = num_classes();
  if (class_sizes.size() != nc) throw std::invalid_argument("character table: class sizes do not match classes");
  if (values.size() != labels.size()) throw std::invalid_argument("character table: labels do not match rows");
  if (labels.size() != nc) throw std::invalid_argument("character table: not square");
  for (const auto& r : values)
    if (r.size() != nc) throw std::invalid_argument("character table: row length mismatch");

  auto classes = conjugacy_classes(g);
  if (classes.size() != nc)
    throw std::invalid_argument("character table: group has " + std::to_string(classes.size()) +
                                " classes, table has " + std::to_string(nc));
  std::vector<int> class_of(g.size());
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int w : classes[c]) class_of[w] = static_cast<int>(c);
  std::vector<char> hit(nc, 0);
  for (std::size_t i = 0; i < nc; ++i) {
    for (int s : class_reps[i])
      if (s < 0 || static_cast<std::size_t>(s) >= g.rank())
        throw std::invalid_argument("character table: class representative uses an unknown generator");
    int c = class_of[g.from_word(class_reps[i])];
    if (hit[c]) throw std::invalid_argument("character table: two representatives of one class");
    hit[c] = 1;
    if (Integer(classes[c].size()) != class_sizes[i])
      throw std::invalid_argument("character table: wrong size for class " + std::to_string(i));
  }
  if (!class_reps.front().empty() && g.from_word(class_reps.front()) != 0)
    throw std::invalid_argument("character table: the first class must be the identity");

  const NFElement order = field->from_rational(Rational(Integer(g.size())));
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i; j < labels.size(); ++j) {
      NFElement sum = field->zero();
      for (std::size_t c = 0; c < nc; ++c)
        sum += field->from_rational(Rational(class_sizes[c])) * values[i][c] * values[j][c];
      NFElement expect = i == j ? order : field->zero();
      if (sum != expect)
        throw std::invalid_argument("character table: orthogonality fails for " + labels[i] + ", " + labels[j]);
    }
}

std::vector<Integer> specialize_and_decompose(const CellModule& m, const CharacterTable& chars) {
  const auto& F = *chars.field;
  std::vector<NFElement> trace;
  for (const auto& w : chars.class_reps) trace.push_back(F.from_rational(Rational(m.character(w))));
  Integer order = 0;
  for (const auto& s : chars.class_sizes) order += s;
  std::vector<Integer> mult;
  for (std::size_t i = 0; i < chars.num_characters(); ++i) {
    NFElement sum = F.zero();
    for (std::size_t c = 0; c < chars.num_classes(); ++c)
      sum += F.from_rational(Rational(chars.class_sizes[c])) * trace[c] * chars.values[i][c];
    if (!sum.is_rational()) throw std::logic_error("irrational character multiplicity");
    Rational q = sum.rational_value() / Rational(order);
    if (denominator(q) != 1 || q < 0) throw std::logic_error("character multiplicity is not a natural number");
    mult.push_back(numerator(q));
  }
  return mult;
}

}  // namespace uhecke
