#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "uhecke/io.hpp"

using namespace uhecke;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
  /// Failures consisting only of the documented n_{1_{m-1}} sign.
  bool known_deviation_only = false;
};

struct Named {
  std::string name;
  std::shared_ptr<Instance> inst;
};

std::shared_ptr<Instance> weighted(const CoxeterSystem& sys, const std::vector<int>& L) {
  std::vector<Exponent> w;
  for (int l : L) w.push_back(l * Exponent::unit(0));
  return std::make_shared<Instance>(sys, OrderedGroup::integers(), w);
}

std::vector<Named> item1() {
  std::vector<Named> out;
  for (int m : {4, 6, 8, 10, 12}) {
    for (auto [b, a] : {std::pair{2, 1}, {3, 1}, {3, 2}})
      out.push_back({"I2(" + std::to_string(m) + ") (" + std::to_string(b) + "," + std::to_string(a) + ")",
                     weighted(CoxeterSystem::dihedral(m), {b, a})});
    out.push_back({"I2(" + std::to_string(m) + ") lex", Instance::universal(CoxeterSystem::dihedral(m))});
  }
  return out;
}

std::vector<Named> item2_extra() {
  std::vector<Named> out;
  for (auto sys : {CoxeterSystem::type_A(1), CoxeterSystem::type_A(2), CoxeterSystem::type_A(3), CoxeterSystem::type_B(2),
                   CoxeterSystem::type_B(3), CoxeterSystem::dihedral(5), CoxeterSystem::dihedral(7)})
    out.push_back({sys.name() + " equal", weighted(sys, std::vector<int>(sys.rank(), 1))});
  return out;
}

bool is_known_n_mismatch(const std::string& msg) { return msg.rfind("n_", 0) == 0 && msg.find("expected -1") != std::string::npos; }

Outcome criterion1(const std::vector<Named>& cases) {
  Outcome o;
  std::ostringstream fails;
  double worst = 0;
  std::size_t checks = 0;
  bool only_known = true;
  for (const auto& c : cases) {
    const auto t0 = Clock::now();
    auto oracle = dihedral_oracle(c.inst->algebra());
    auto cmp = compare_with_oracle(oracle, *c.inst);
    const double dt = since(t0);
    worst = std::max(worst, dt);
    checks += cmp.checks;
    if (dt > 10) {
      o.pass = false;
      only_known = false;
      fails << " " << c.name << " took " << dt << "s;";
    }
    if (!cmp.ok) {
      o.pass = false;
      for (const auto& m : cmp.mismatches) {
        only_known = only_known && is_known_n_mismatch(m);
        fails << " " << c.name << ": " << m << ";";
      }
    }
  }
  std::ostringstream d;
  d << cases.size() << " instances, " << checks << " checks, slowest " << worst << "s";
  if (!o.pass) d << "; mismatches:" << fails.str();
  o.detail = d.str();
  o.known_deviation_only = !o.pass && only_known;
  return o;
}

Outcome criterion2(const std::vector<Named>& cases) {
  Outcome o;
  const auto t0 = Clock::now();
  std::ostringstream fails;
  for (const auto& c : cases) {
    VerifyOptions opts;
    opts.props = parse_property_list("P1..P15");
    opts.auxiliary = false;
    auto r = verify(*c.inst, opts);
    for (const auto& p : r.results)
      if (p.status != Status::Pass) {
        o.pass = false;
        fails << " " << c.name << " " << p.name << " " << status_name(p.status) << " " << p.detail << ";";
      }
  }
  const double dt = since(t0);
  if (dt > 300) {
    o.pass = false;
    fails << " total " << dt << "s exceeds 300s;";
  }
  std::ostringstream d;
  d << cases.size() << " instances, P1-P15 (star), " << dt << "s";
  if (!o.pass) d << ";" << fails.str();
  o.detail = d.str();
  return o;
}

Outcome criterion3(const std::vector<Named>& cases) {
  Outcome o;
  std::ostringstream fails;
  std::size_t pairs = 0;
  for (const auto& c : cases) {
    PsiMap psi(c.inst->structure(), c.inst->jdata());
    auto cert = certify_iso(psi, 48, 2000, 1);
    pairs += cert.pairs_checked;
    if (!cert.ok() || !cert.theta1_identity || !cert.det_Q_nonzero) {
      o.pass = false;
      fails << " " << c.name << ";";
    }
  }
  auto a1 = weighted(CoxeterSystem::type_A(1), {1});
  PsiMap psi(a1->structure(), a1->jdata());
  auto to_r = [](const Poly& p) { return p.map_coefficients<Rational>([](const Integer& c) { return Rational(c); }); };
  const auto& alg = a1->algebra();
  const Rational half(1, 2);
  std::map<int, RationalPoly> expected{{0, (to_r(alg.v(0)) - to_r(alg.v_inv(0))) * half},
                                       {1, (to_r(alg.v(0)) + to_r(alg.v_inv(0))) * half}};
  auto got = psi.psi_T(1);
  if (std::map<int, RationalPoly>(got.begin(), got.end()) != expected) {
    o.pass = false;
    fails << " A1 closed form of psi(T_s);";
  }
  std::ostringstream d;
  d << cases.size() << " instances, " << pairs << " pairs, A1 closed form checked";
  if (!o.pass) d << ";" << fails.str();
  o.detail = d.str();
  return o;
}

Outcome criterion4(const std::vector<Named>& cases) {
  Outcome o;
  std::ostringstream fails;
  std::size_t triples = 0;
  for (const auto& c : cases) {
    auto jd = c.inst->jdata();
    const auto& W = c.inst->group();
    JRing J(jd, c.inst->group_ptr());
    auto assoc = J.check_associativity(120);
    triples += assoc.triples_checked;
    if (!assoc.ok || !assoc.exhaustive) {
      o.pass = false;
      fails << " " << c.name << " associativity;";
    }
    if (J.check_identity()) {
      o.pass = false;
      fails << " " << c.name << " identity;";
    }
    const int n = static_cast<int>(W.size());
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        Integer sum = 0;
        for (int d : jd->distinguished) sum += Integer(jd->gamma_at(W.inverse(x), y, d)) * jd->n[d];
        if (sum != (x == y ? 1 : 0)) {
          o.pass = false;
          fails << " " << c.name << " n-weighted identity at " << W.format(x) << "," << W.format(y) << ";";
        }
      }
  }
  std::ostringstream d;
  d << cases.size() << " instances, " << triples << " triples";
  if (!o.pass) d << ";" << fails.str();
  o.detail = d.str();
  return o;
}

Outcome criterion5(const std::vector<Named>& cases) {
  Outcome o;
  std::ostringstream fails;
  std::size_t checks = 0;
  std::mt19937_64 rng(1);
  for (const auto& c : cases) {
    const auto& alg = c.inst->algebra();
    const auto& W = c.inst->group();
    const auto& kl = c.inst->kl();
    const int n = static_cast<int>(W.size());
    bool ok = true;
    for (int w = 0; w < n; ++w) {
      const HVec& cw = kl.cprime(w);
      ok = ok && alg.bar(cw) == cw && cw[w] == alg.one();
      for (int y = 0; y < n; ++y)
        if (y != w && !cw[y].is_zero()) ok = ok && W.bruhat_leq(y, w) && supported_in_negative(cw[y], alg.gamma());
      ++checks;
    }
    if (!ok) fails << " " << c.name << " C' basis;";
    if (n <= 48) {
      auto sc = c.inst->structure();
      auto jd = c.inst->jdata();
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (const auto& [z, h] : sc->row(x, y)) {
            ++checks;
            if (!(sc->at(W.inverse(y), W.inverse(x), W.inverse(z)) == h)) {
              ok = false;
              fails << " " << c.name << " h symmetry;";
            }
          }
      for (const auto& e : jd->gamma) {
        ++checks;
        if (jd->gamma_at(e.y, e.z, e.x) != e.value) {
          ok = false;
          fails << " " << c.name << " gamma cyclic;";
        }
      }
      std::vector<std::pair<int, int>> pairs;
      if (n <= 16) {
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y) pairs.emplace_back(x, y);
      } else {
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int i = 0; i < 500; ++i) pairs.emplace_back(pick(rng), pick(rng));
      }
      std::vector<HVec> C(n), D(n);
      for (const auto& [x, y] : pairs) {
        if (C[x].empty()) C[x] = kl.c_basis(x);
        const int yi = W.inverse(y);
        if (D[yi].empty()) D[yi] = kl.dual_basis(yi);
        ++checks;
        if (!(alg.tau_product(C[x], D[yi]) == (x == y ? alg.one() : Poly(alg.rank())))) {
          ok = false;
          fails << " " << c.name << " dual pairing;";
        }
      }
    }
    o.pass = o.pass && ok;
  }
  std::ostringstream d;
  d << cases.size() << " instances, " << checks << " checks";
  if (!o.pass) d << ";" << fails.str();
  o.detail = d.str();
  return o;
}

/// First negative coefficient over the sweep, in a fixed search order.
json negativity_sweep() {
  for (auto sys : {CoxeterSystem::dihedral(4), CoxeterSystem::type_B(2)}) {
    for (int b = 2; b <= 4; ++b)
      for (int a = 1; a < b; ++a) {
        auto inst = weighted(sys, {b, a});
        const auto& W = inst->group();
        const int n = static_cast<int>(W.size());
        for (int w = 0; w < n; ++w)
          for (int y = 0; y < n; ++y)
            for (const auto& [e, c] : inst->kl().p(y, w).terms())
              if (c < 0)
                return json{{"group", sys.name()},
                            {"weights", {b, a}},
                            {"kind", "p"},
                            {"y", word_json(W, y)},
                            {"w", word_json(W, w)},
                            {"value", to_json(inst->kl().p(y, w))}};
        auto sc = inst->structure();
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            for (const auto& [z, h] : sc->row(x, y))
              for (const auto& [e, c] : h.terms())
                if (c < 0)
                  return json{{"group", sys.name()}, {"weights", {b, a}}, {"kind", "h"},   {"x", word_json(W, x)},
                              {"y", word_json(W, y)},  {"z", word_json(W, z)},   {"value", to_json(h)}};
      }
  }
  return nullptr;
}

Outcome criterion6(const std::filesystem::path& golden, bool write) {
  Outcome o;
  json witness = negativity_sweep();
  if (witness.is_null()) {
    o.pass = false;
    o.detail = "no negative coefficient found";
    return o;
  }
  if (write) write_json_file(golden, witness);
  if (!std::filesystem::exists(golden)) {
    o.pass = false;
    o.detail = "golden file " + golden.string() + " missing";
    return o;
  }
  json expected = read_json_file(golden);
  o.pass = expected == witness;
  o.detail = std::string(witness["kind"]) + "-coefficient witness in " + std::string(witness["group"]) + " L=" +
             witness["weights"].dump() + ": " + witness.dump() + (o.pass ? " (matches golden)" : " (differs from golden)");
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto t0 = Clock::now();
  const Exponent a = Exponent::unit(0), b = Exponent::unit(1);
  Instance inst(CoxeterSystem::type_F4(), OrderedGroup(2, {{0, 1}, {1, 0}}), {a, a, b, b});
  auto rep = RepInvariantData::f4(inst.algebra());
  VerifyOptions opts;
  opts.props = parse_property_list("P1..P15");
  opts.auxiliary = false;
  auto r = verify(inst, opts);
  auto in = VerifyInput::of(inst);
  auto cells = compare_cell_a_values(in, rep);
  std::ostringstream d;
  for (const auto& p : r.results)
    if (p.status != Status::Pass) {
      o.pass = false;
      d << p.name << " " << status_name(p.status) << " " << p.detail << "; ";
    }
  if (cells.status != Status::Pass) {
    o.pass = false;
    d << "cell a-values: " << cells.detail << "; ";
  }
  const int i42 = rep.index_of("4_2");
  const bool a42 = rep.a[i42] == b;
  o.pass = o.pass && a42;
  d << "|W|=1152, " << cells.detail << ", a(4_2)=" << (a42 ? "b" : "mismatch") << ", "
    << since(t0) << "s";
  o.detail = d.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  bool skip_extended = false, allow_known = false, write_golden = false;
  std::string golden_dir = UHECKE_GOLDEN_DIR;
  app.add_flag("--skip-extended", skip_extended, "Do not run the F4 computation");
  app.add_flag("--allow-known-deviation", allow_known,
               "Exit 0 when the only failure is the documented sign of n at 1_{m-1}");
  app.add_flag("--write-golden", write_golden, "Rewrite the negativity golden file");
  app.add_option("--golden-dir", golden_dir, "Directory with golden files");
  CLI11_PARSE(app, argc, argv);

  auto one = item1();
  auto two = one;
  for (auto& e : item2_extra()) two.push_back(e);

  struct Row {
    int id;
    std::string title;
    Outcome outcome;
    bool gating = true;
  };
  std::vector<Row> rows;
  auto run = [&](int id, const std::string& title, auto&& f, bool gating = true) {
    const auto t0 = Clock::now();
    Outcome o = f();
    std::ostringstream d;
    d << o.detail << " [" << since(t0) << "s]";
    o.detail = d.str();
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << title << "): " << o.detail << std::endl;
    rows.push_back({id, title, o, gating});
  };

  run(1, "dihedral oracle", [&] { return criterion1(one); });
  run(2, "conjecture suite", [&] { return criterion2(two); });
  run(3, "psi certificate", [&] { return criterion3(two); });
  run(4, "J-ring structure", [&] { return criterion4(two); });
  run(5, "property suites", [&] { return criterion5(two); });
  run(6, "negativity exhibit", [&] { return criterion6(std::filesystem::path(golden_dir) / "negativity.json", write_golden); });
  if (skip_extended)
    std::cout << "SKIP criterion 7 (F4 extended run): not requested" << std::endl;
  else
    run(7, "F4 extended run", [&] { return criterion7(); }, false);

  int rc = 0;
  for (const auto& r : rows)
    if (r.gating && !r.outcome.pass && !(allow_known && r.outcome.known_deviation_only)) rc = 1;
  return rc;
}
