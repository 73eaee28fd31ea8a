#include "uhecke/io.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace uhecke {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Rational parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational number: '" + s + "'");
  }
}

std::string rational_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

json one_based(const Word& w) {
  json out = json::array();
  for (int s : w) out.push_back(s + 1);
  return out;
}

Word zero_based(const json& j, std::size_t rank) {
  Word w;
  for (const auto& v : j) {
    const int s = v.get<int>();
    if (s < 1 || static_cast<std::size_t>(s) > rank) throw std::invalid_argument("generator index out of range in word");
    w.push_back(s - 1);
  }
  return w;
}

json elements_json(const CoxeterGroup& W) {
  json out = json::array();
  for (std::size_t w = 0; w < W.size(); ++w) out.push_back(one_based(W.word(static_cast<int>(w))));
  return out;
}

void check_elements(const json& j, const CoxeterGroup& W) {
  if (!j.contains("elements") || j.at("elements") != elements_json(W))
    throw std::invalid_argument("stored element list does not match the group");
}

int id_at(const json& j, std::size_t n) {
  const int v = j.get<int>();
  if (v < 0 || static_cast<std::size_t>(v) >= n) throw std::invalid_argument("element index out of range");
  return v;
}

std::optional<Exponent> scalar_or_vector(const std::string& s, std::size_t rank) {
  auto parts = split(s, ':');
  if (parts.size() != rank) return std::nullopt;
  Exponent e;
  for (std::size_t i = 0; i < rank; ++i) e[i] = std::stoi(parts[i]);
  return e;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return os.str();
}

CoxeterSystem InstanceConfig::system() const {
  if (type.empty()) {
    if (coxeter_matrix.empty()) throw std::invalid_argument("no group given: set a type or a Coxeter matrix");
    return CoxeterSystem(coxeter_matrix);
  }
  return CoxeterSystem::preset(type, rank, m);
}

OrderedGroup InstanceConfig::gamma() const {
  std::size_t k = gamma_rank;
  if (universal) k = system().num_generator_classes();
  if (k == 0 || k > kMaxRank / 2) throw std::invalid_argument("gamma rank must be between 1 and " + std::to_string(kMaxRank / 2));
  if (order_weights.empty()) return OrderedGroup::lex(k);
  return OrderedGroup(k, order_weights);
}

std::vector<Exponent> InstanceConfig::weight_values(const CoxeterSystem& sys) const {
  if (universal) return WeightFunction::universal(sys).second.values();
  if (weights.empty()) return std::vector<Exponent>(sys.rank(), Exponent::unit(0));
  if (weights.size() != sys.rank())
    throw std::invalid_argument("expected " + std::to_string(sys.rank()) + " weights, got " + std::to_string(weights.size()));
  return weights;
}

json InstanceConfig::canonical() const {
  auto sys = system();
  auto G = gamma();
  json order = json::array();
  for (const auto& row : G.order_weights()) {
    json r = json::array();
    for (const auto& q : row) r.push_back(rational_string(q));
    order.push_back(r);
  }
  json w = json::array();
  for (const auto& e : weight_values(sys)) w.push_back(to_json(e, G.rank()));
  return json{{"coxeter_matrix", sys.matrix()}, {"gamma_rank", G.rank()}, {"order", order}, {"weights", w}};
}

std::string InstanceConfig::hash() const {
  return sha256_hex(canonical().dump() + "#format=" + std::to_string(kFormatVersion));
}

InstanceConfig InstanceConfig::from_json(const json& j) {
  InstanceConfig c;
  if (j.contains("type")) c.type = j.at("type").get<std::string>();
  if (j.contains("rank")) c.rank = j.at("rank").get<int>();
  if (j.contains("m")) c.m = j.at("m").get<int>();
  if (c.type == "I2" && c.rank == 0) c.rank = 2;
  if (j.contains("coxeter_matrix")) c.coxeter_matrix = j.at("coxeter_matrix").get<std::vector<std::vector<int>>>();
  if (j.contains("gamma_rank")) c.gamma_rank = j.at("gamma_rank").get<std::size_t>();
  if (j.contains("universal")) c.universal = j.at("universal").get<bool>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("workers")) c.workers = j.at("workers").get<unsigned>();
  if (j.contains("full_limit")) c.full_limit = j.at("full_limit").get<std::size_t>();
  if (j.contains("order")) {
    const auto& o = j.at("order");
    if (o.is_string()) {
      c.order_weights = parse_order(o.get<std::string>(), c.gamma_rank);
    } else {
      for (const auto& row : o) {
        std::vector<Rational> r;
        for (const auto& v : row) r.push_back(rational_from_json(v));
        c.order_weights.push_back(r);
      }
    }
  }
  if (j.contains("weights")) {
    const auto& w = j.at("weights");
    if (w.is_string()) {
      c.weights = parse_weights(w.get<std::string>(), c.system(), c.gamma_rank);
    } else {
      for (const auto& e : w) c.weights.push_back(e.is_number() ? e.get<int>() * Exponent::unit(0) : exponent_from_json(e));
    }
  }
  return c;
}

std::vector<Exponent> parse_weights(const std::string& spec, const CoxeterSystem& sys, std::size_t gamma_rank) {
  const std::size_t r = sys.rank();
  std::vector<std::optional<Exponent>> given(r);
  for (const auto& item : split(spec, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("weight '" + item + "' is not of the form s=value");
    const std::string name = item.substr(0, eq), value = item.substr(eq + 1);
    int s = -1;
    for (std::size_t i = 0; i < r; ++i)
      if (name == "s" + std::to_string(i + 1) || (i < sys.labels().size() && name == sys.labels()[i])) s = static_cast<int>(i);
    if (s < 0) throw std::invalid_argument("unknown generator '" + name + "'");
    std::optional<Exponent> e;
    try {
      e = scalar_or_vector(value, gamma_rank);
    } catch (const std::exception&) {
    }
    if (!e) throw std::invalid_argument("weight of " + name + " must have " + std::to_string(gamma_rank) + " integer coordinates separated by ':'");
    given[s] = e;
  }
  const auto& cls = sys.generator_classes();
  std::vector<Exponent> out(r);
  for (std::size_t s = 0; s < r; ++s) {
    if (given[s]) {
      out[s] = *given[s];
      continue;
    }
    bool found = false;
    for (std::size_t t = 0; t < r && !found; ++t)
      if (given[t] && cls[t] == cls[s]) {
        out[s] = *given[t];
        found = true;
      }
    if (!found) throw std::invalid_argument("no weight given for generator s" + std::to_string(s + 1));
  }
  return out;
}

std::vector<std::vector<Rational>> parse_order(const std::string& spec, std::size_t gamma_rank) {
  if (spec.empty() || spec == "lex") return {};
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : split(spec, ';')) {
    std::vector<Rational> r;
    for (const auto& v : split(row, ',')) r.push_back(parse_rational(v));
    if (r.size() != gamma_rank) throw std::invalid_argument("order row '" + row + "' needs " + std::to_string(gamma_rank) + " entries");
    rows.push_back(r);
  }
  return rows;
}

json to_json(const Exponent& e, std::size_t rank) { return e.to_vector(rank); }

Exponent exponent_from_json(const json& j) {
  auto v = j.get<std::vector<std::int64_t>>();
  if (v.size() > kMaxRank) throw std::invalid_argument("exponent has too many coordinates");
  return Exponent::from(v);
}

json to_json(const Poly& p) {
  json out = json::array();
  for (const auto& [e, c] : p.terms()) out.push_back({{"e", to_json(e, p.rank())}, {"c", c.str()}});
  return out;
}

Poly poly_from_json(const json& j, std::size_t rank) {
  std::vector<Poly::Term> terms;
  for (const auto& t : j) {
    auto e = exponent_from_json(t.at("e"));
    if (t.at("e").size() != rank) throw std::invalid_argument("polynomial term has the wrong rank");
    terms.emplace_back(e, Integer(t.at("c").get<std::string>()));
  }
  return Poly::from_terms(rank, std::move(terms));
}

json to_json(const RationalPoly& p) {
  json out = json::array();
  for (const auto& [e, c] : p.terms()) out.push_back({{"e", to_json(e, p.rank())}, {"c", rational_string(c)}});
  return out;
}

json to_json(const Rational& q) { return rational_string(q); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  return parse_rational(j.get<std::string>());
}

json to_json(const NFElement& x) {
  json out = json::array();
  for (const auto& c : x.coefficients()) out.push_back(rational_string(c));
  return out;
}

json word_json(const CoxeterGroup& W, int w) { return one_based(W.word(w)); }

int element_from_json(const CoxeterGroup& W, const json& j) {
  auto word = zero_based(j, W.rank());
  const int w = W.from_word(word);
  if (W.length(w) != static_cast<int>(word.size())) throw std::invalid_argument("word is not reduced");
  return w;
}

json to_json(const KLTable& kl) {
  const auto& W = kl.group();
  const std::size_t n = W.size(), r = W.rank();
  json p = json::array(), mu = json::array();
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t y = 0; y < n; ++y)
      if (!kl.p(static_cast<int>(y), static_cast<int>(w)).is_zero())
        p.push_back({w, y, to_json(kl.p(static_cast<int>(y), static_cast<int>(w)))});
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t s = 0; s < r; ++s)
      for (const auto& [y, c] : kl.mu(static_cast<int>(s), static_cast<int>(w))) mu.push_back({s, w, y, to_json(c)});
  return json{{"elements", elements_json(W)}, {"p", p}, {"mu", mu}};
}

std::shared_ptr<const KLTable> kl_from_json(const json& j, std::shared_ptr<const HeckeAlgebra> alg) {
  const auto& W = alg->group();
  check_elements(j, W);
  const std::size_t n = W.size(), r = W.rank(), k = alg->rank();
  std::vector<HVec> cprime(n, HVec(n, Poly(k)));
  for (const auto& e : j.at("p")) cprime[id_at(e[0], n)][id_at(e[1], n)] = poly_from_json(e[2], k);
  std::vector<SparseVec> mu(n * r);
  for (const auto& e : j.at("mu")) {
    const std::size_t s = e[0].get<std::size_t>();
    if (s >= r) throw std::invalid_argument("generator index out of range");
    mu[id_at(e[1], n) * r + s].emplace_back(id_at(e[2], n), poly_from_json(e[3], k));
  }
  return std::make_shared<const KLTable>(std::move(alg), std::move(cprime), std::move(mu));
}

json to_json(const JData& jd, const CoxeterGroup& W) {
  json a = json::array(), delta = json::array(), n = json::array(), gamma = json::array();
  for (std::size_t z = 0; z < jd.size(); ++z) {
    a.push_back(to_json(jd.a[z], jd.rank));
    delta.push_back(to_json(jd.delta[z], jd.rank));
    n.push_back(jd.n[z].str());
  }
  for (const auto& e : jd.gamma) gamma.push_back({e.x, e.y, e.z, e.value});
  return json{{"elements", elements_json(W)}, {"gamma_rank", jd.rank},   {"a", a},          {"delta", delta},
              {"n", n},                     {"distinguished", jd.distinguished}, {"gamma", gamma}};
}

JData jdata_from_json(const json& j, const CoxeterGroup& W) {
  check_elements(j, W);
  const std::size_t n = W.size();
  JData jd;
  jd.rank = j.at("gamma_rank").get<std::size_t>();
  if (j.at("a").size() != n || j.at("delta").size() != n || j.at("n").size() != n)
    throw std::invalid_argument("stored JData has the wrong size");
  for (std::size_t z = 0; z < n; ++z) {
    jd.a.push_back(exponent_from_json(j.at("a")[z]));
    jd.delta.push_back(exponent_from_json(j.at("delta")[z]));
    jd.n.emplace_back(j.at("n")[z].get<std::string>());
  }
  for (const auto& d : j.at("distinguished")) jd.distinguished.push_back(id_at(d, n));
  for (const auto& e : j.at("gamma"))
    jd.gamma.push_back({id_at(e[0], n), id_at(e[1], n), id_at(e[2], n), e[3].get<std::int64_t>()});
  if (!std::is_sorted(jd.distinguished.begin(), jd.distinguished.end()) ||
      !std::is_sorted(jd.gamma.begin(), jd.gamma.end(), [](const GammaEntry& l, const GammaEntry& r) {
        return std::tie(l.x, l.y, l.z) < std::tie(r.x, r.y, r.z);
      }))
    throw std::invalid_argument("stored JData is not sorted");
  return jd;
}

json structure_json(const StructureConstants& sc, const std::vector<std::pair<int, int>>& pairs) {
  const auto& W = sc.kl().group();
  json rows = json::array();
  for (auto [x, y] : pairs) {
    json row = json::array();
    for (const auto& [z, h] : sc.row(x, y)) row.push_back({{"z", word_json(W, z)}, {"h", to_json(h)}});
    rows.push_back({{"x", word_json(W, x)}, {"y", word_json(W, y)}, {"row", row}});
  }
  return json{{"rows", rows}};
}

json cells_json(const CellPartition& cells, const CoxeterGroup& W) {
  auto one = [&](const CellPreorder& pre) {
    json list = json::array(), order = json::array();
    for (const auto& c : pre.cells()) {
      json words = json::array();
      for (int w : c) words.push_back(word_json(W, w));
      list.push_back(words);
    }
    const int nc = static_cast<int>(pre.num_cells());
    for (int c = 0; c < nc; ++c)
      for (int d = 0; d < nc; ++d)
        if (c != d && pre.cell_leq(c, d)) order.push_back({c, d});
    return json{{"cells", list}, {"below", order}};
  };
  return json{{"left", one(cells.left)}, {"right", one(cells.right)}, {"two_sided", one(cells.two_sided)}};
}

json jring_json(const JData& jd, const CoxeterGroup& W, const AssociativityReport& assoc, std::optional<int> identity_failure) {
  json out = to_json(jd, W);
  json a{{"ok", assoc.ok}, {"exhaustive", assoc.exhaustive}, {"triples_checked", assoc.triples_checked}};
  if (assoc.witness) {
    json wit = json::array();
    for (int v : *assoc.witness) wit.push_back(word_json(W, v));
    a["witness"] = wit;
  }
  out["associativity"] = a;
  json identity = json::array();
  for (int d : jd.distinguished) identity.push_back({{"t", word_json(W, d)}, {"coefficient", jd.n[d].str()}});
  out["identity"] = identity;
  out["identity_law"] = identity_failure ? json{{"ok", false}, {"witness", word_json(W, *identity_failure)}} : json{{"ok", true}};
  return out;
}

json phi_json(const PhiMatrix& P, const CoxeterGroup& W) {
  json cols = json::array();
  for (std::size_t w = 0; w < P.P.cols(); ++w) {
    json col = json::array();
    for (std::size_t z = 0; z < P.P.rows(); ++z)
      if (!P.P(z, w).is_zero()) col.push_back({{"t", word_json(W, static_cast<int>(z))}, {"c", to_json(P.P(z, w))}});
    cols.push_back({{"w", word_json(W, static_cast<int>(w))}, {"phi", col}});
  }
  return json{{"columns", cols}, {"det_P1", to_json(P.det_P1)}};
}

json psi_json(const PsiMap& psi, const IsoCertificate& cert, bool include_matrix) {
  const auto& W = psi.kl().group();
  auto pair = [&](const std::optional<std::pair<int, int>>& p) -> json {
    if (!p) return nullptr;
    return json::array({word_json(W, p->first), word_json(W, p->second)});
  };
  json c{{"ok", cert.ok()},
         {"det_P1", to_json(cert.det_P1)},
         {"generators_ok", cert.generators_ok},
         {"generator_witness", pair(cert.generator_witness)},
         {"pairs_ok", cert.pairs_ok},
         {"pairs_exhaustive", cert.pairs_exhaustive},
         {"pairs_checked", cert.pairs_checked},
         {"pair_witness", pair(cert.pair_witness)},
         {"theta1_identity", cert.theta1_identity},
         {"theta1_witness", pair(cert.theta1_witness)},
         {"det_Q_computed", cert.det_Q_computed},
         {"det_Q_nonzero", cert.det_Q_nonzero},
         {"theta1_det_P_ok", cert.theta1_det_P_ok}};
  json out{{"certificate", c}, {"denominator", psi.denominator().str()}};
  if (include_matrix) {
    json cols = json::array();
    for (std::size_t w = 0; w < psi.size(); ++w) {
      json col = json::array();
      for (const auto& [g, p] : psi.psi_T(static_cast<int>(w))) col.push_back({{"g", word_json(W, g)}, {"c", to_json(p)}});
      cols.push_back({{"T", word_json(W, static_cast<int>(w))}, {"psi", col}});
    }
    out["matrix"] = cols;
  }
  return out;
}

json to_json(const PropertyResult& r, const CoxeterGroup& W) {
  json wit = json::array();
  for (int w : r.witness) wit.push_back(word_json(W, w));
  return json{{"name", r.name},     {"status", status_name(r.status)}, {"witness", wit},
              {"detail", r.detail}, {"checks", r.checks},             {"seconds", r.seconds}};
}

json to_json(const ConjectureReport& r, const CoxeterGroup& W) {
  json results = json::array(), aux = json::array(), notes = json::object();
  for (const auto& p : r.results) results.push_back(to_json(p, W));
  for (const auto& p : r.auxiliary) aux.push_back(to_json(p, W));
  for (const auto& [k, v] : r.notes) notes[k] = v;
  return json{{"instance", r.instance},
              {"group_order", r.group_order},
              {"gamma_entries", r.gamma_entries},
              {"distinguished", r.distinguished},
              {"seed", r.seed},
              {"ok", r.ok()},
              {"results", results},
              {"auxiliary", aux},
              {"notes", notes},
              {"seconds", r.seconds}};
}

json to_json(const DihedralOracle& o, const HeckeAlgebra& alg) {
  const auto& W = alg.group();
  const std::size_t k = alg.rank();
  auto words = [&](const std::vector<int>& ids) {
    json out = json::array();
    for (int w : ids) out.push_back(word_json(W, w));
    return out;
  };
  json delta = json::array(), a = json::array();
  for (std::size_t z = 0; z < W.size(); ++z) {
    delta.push_back({{"w", word_json(W, static_cast<int>(z))}, {"delta", to_json(o.delta[z], k)}});
    a.push_back({{"w", word_json(W, static_cast<int>(z))}, {"a", to_json(o.a[z], k)}});
  }
  json n = json::array();
  for (std::size_t i = 0; i < o.distinguished.size(); ++i)
    n.push_back({{"d", word_json(W, o.distinguished[i])}, {"n", o.n[i].str()}});
  json chain = json::array(), left = json::array(), products = json::array();
  for (const auto& c : o.chain) chain.push_back(words(c));
  for (std::size_t i = 0; i < o.left_cells.size(); ++i)
    left.push_back({{"cell", words(o.left_cells[i])}, {"affords", o.left_cell_labels[i]}});
  for (const auto& p : o.products) {
    json e = json::array();
    for (const auto& [z, c] : p.expected) e.push_back({{"z", word_json(W, z)}, {"h", to_json(c)}});
    products.push_back({{"family", p.family}, {"x", word_json(W, p.x)}, {"y", word_json(W, p.y)}, {"expected", e}});
  }
  return json{{"m", o.m},         {"delta", delta},       {"a", a},       {"distinguished", n},
              {"chain", chain},   {"left_cells", left},   {"products", products}};
}

json to_json(const OracleComparison& c) {
  return json{{"ok", c.ok}, {"checks", c.checks}, {"mismatches", c.mismatches}};
}

CharacterTable character_table_from_json(const json& j, const CoxeterGroup& W) {
  CharacterTable t;
  t.field = NumberField::real_cyclotomic(j.at("conductor").get<unsigned>());
  for (const auto& c : j.at("classes")) {
    t.class_reps.push_back(zero_based(c.at("representative"), W.rank()));
    t.class_sizes.push_back(Integer(c.at("size").is_string() ? c.at("size").get<std::string>() : std::to_string(c.at("size").get<std::int64_t>())));
  }
  for (const auto& ch : j.at("characters")) {
    t.labels.push_back(ch.at("label").get<std::string>());
    std::vector<NFElement> row;
    for (const auto& v : ch.at("values")) {
      std::vector<Rational> coeffs;
      if (v.is_array()) {
        for (const auto& q : v) coeffs.push_back(rational_from_json(q));
      } else {
        coeffs.push_back(rational_from_json(v));
      }
      row.push_back(t.field->from_coefficients(coeffs));
    }
    if (row.size() != t.class_reps.size()) throw std::invalid_argument("character " + t.labels.back() + " has the wrong number of values");
    t.values.push_back(row);
  }
  t.validate(W);
  return t;
}

json to_json(const CharacterTable& t) {
  json classes = json::array(), chars = json::array();
  for (std::size_t c = 0; c < t.num_classes(); ++c)
    classes.push_back({{"representative", one_based(t.class_reps[c])}, {"size", t.class_sizes[c].str()}});
  for (std::size_t i = 0; i < t.num_characters(); ++i) {
    json values = json::array();
    for (const auto& v : t.values[i]) values.push_back(to_json(v));
    chars.push_back({{"label", t.labels[i]}, {"values", values}});
  }
  return json{{"conductor", t.field->conductor()}, {"classes", classes}, {"characters", chars}};
}

RepInvariantData rep_data_from_json(const json& j, const CoxeterGroup& W) {
  RepInvariantData rep;
  if (j.contains("character_table")) rep.characters = character_table_from_json(j.at("character_table"), W);
  rep.regime = j.value("regime", std::string("user supplied"));
  for (const auto& e : j.at("invariants")) {
    rep.labels.push_back(e.at("label").get<std::string>());
    rep.a.push_back(exponent_from_json(e.at("a")));
    std::optional<NFElement> f;
    if (e.contains("f") && rep.characters) {
      std::vector<Rational> coeffs;
      for (const auto& q : e.at("f")) coeffs.push_back(rational_from_json(q));
      f = rep.characters->field->from_coefficients(coeffs);
    }
    rep.f.push_back(f);
    int degree = e.value("degree", 0);
    if (degree == 0 && rep.characters) {
      const int i = rep.characters->index_of(rep.labels.back());
      if (i >= 0) degree = static_cast<int>(rep.characters->degrees()[i]);
    }
    rep.degrees.push_back(degree);
  }
  return rep;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(1) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

TableCache::TableCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path TableCache::default_dir() {
  if (const char* d = std::getenv("UHECKE_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "uhecke";
  if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "uhecke";
  return std::filesystem::temp_directory_path() / "uhecke-cache";
}

std::filesystem::path TableCache::path(const std::string& key, const std::string& kind) const {
  return dir_ / (key + "." + kind + ".json");
}

std::optional<json> TableCache::load(const std::string& key, const std::string& kind, std::string* warning) const {
  const auto p = path(key, kind);
  if (!std::filesystem::exists(p)) return std::nullopt;
  try {
    json j = read_json_file(p);
    if (j.value("format_version", -1) != kFormatVersion) {
      if (warning) *warning = "cache file " + p.string() + " has another format version; recomputing";
      return std::nullopt;
    }
    if (j.value("key", std::string()) != key || !j.contains("data")) {
      if (warning) *warning = "cache file " + p.string() + " does not match its key; recomputing";
      return std::nullopt;
    }
    return j.at("data");
  } catch (const std::exception& e) {
    if (warning) *warning = "cache file " + p.string() + " is unreadable (" + e.what() + "); recomputing";
    return std::nullopt;
  }
}

void TableCache::store(const std::string& key, const std::string& kind, const json& data) const {
  write_json_file(path(key, kind), json{{"format_version", kFormatVersion}, {"key", key}, {"kind", kind}, {"data", data}});
}

std::shared_ptr<Instance> build_instance(const InstanceConfig& cfg, const TableCache* cache, std::vector<std::string>* log) {
  auto note = [&](std::string s) {
    if (log) log->push_back(std::move(s));
  };
  auto sys = cfg.system();
  auto G = cfg.gamma();
  auto L = cfg.weight_values(sys);
  InstanceOptions opts;
  opts.full_limit = cfg.full_limit;
  opts.workers = cfg.workers;
  const std::string key = cache ? cfg.hash() : std::string();

  bool kl_loaded = false;
  Instance::KLFactory factory;
  if (cache) {
    factory = [&](std::shared_ptr<const HeckeAlgebra> alg) -> std::shared_ptr<const KLTable> {
      std::string warning;
      auto data = cache->load(key, "kl", &warning);
      if (!warning.empty()) note("warning: " + warning);
      if (!data) return nullptr;
      try {
        auto kl = kl_from_json(*data, std::move(alg));
        kl_loaded = true;
        note("cache hit: kl " + key);
        return kl;
      } catch (const std::exception& e) {
        note(std::string("warning: stored KL table rejected (") + e.what() + "); recomputing");
        return nullptr;
      }
    };
  }
  auto inst = std::make_shared<Instance>(sys, G, L, opts, factory);
  if (cache && !kl_loaded) {
    cache->store(key, "kl", to_json(inst->kl()));
    note("cache store: kl " + key);
  }
  if (cache) {
    std::string warning;
    auto data = cache->load(key, "jdata", &warning);
    if (!warning.empty()) note("warning: " + warning);
    bool loaded = false;
    if (data) {
      try {
        inst->set_jdata(jdata_from_json(*data, inst->group()));
        loaded = true;
        note("cache hit: jdata " + key);
      } catch (const std::exception& e) {
        note(std::string("warning: stored JData rejected (") + e.what() + "); recomputing");
      }
    }
    if (!loaded) {
      cache->store(key, "jdata", to_json(*inst->jdata(), inst->group()));
      note("cache store: jdata " + key);
    }
  }
  return inst;
}

}  // namespace uhecke
