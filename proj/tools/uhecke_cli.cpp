#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "uhecke/io.hpp"

using namespace uhecke;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonArgs {
  std::string config_file;
  std::string type;
  int rank = 0;
  int m = 0;
  std::string matrix;
  std::string weights;
  std::size_t gamma_rank = 0;
  std::string order;
  bool universal = false;
  std::string cache_dir;
  bool no_cache = false;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::size_t> full_limit;
  std::string output;
  bool verbose = false;
};

std::vector<std::vector<int>> parse_matrix(const std::string& spec) {
  std::vector<std::vector<int>> rows;
  std::stringstream ss(spec);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::vector<int> r;
    std::stringstream rs(row);
    std::string v;
    while (std::getline(rs, v, ',')) r.push_back(std::stoi(v));
    rows.push_back(r);
  }
  return rows;
}

InstanceConfig make_config(const CommonArgs& a, const std::string& default_type = "") {
  InstanceConfig cfg;
  if (!a.config_file.empty()) cfg = InstanceConfig::from_json(read_json_file(a.config_file));
  if (!a.type.empty()) cfg.type = a.type;
  if (cfg.type.empty() && cfg.coxeter_matrix.empty() && a.matrix.empty()) cfg.type = default_type;
  if (a.rank) cfg.rank = a.rank;
  if (a.m) cfg.m = a.m;
  if (!a.matrix.empty()) {
    cfg.coxeter_matrix = parse_matrix(a.matrix);
    if (a.type.empty()) cfg.type.clear();
  }
  if (cfg.type == "I2" && cfg.rank == 0) cfg.rank = 2;
  if (a.gamma_rank) cfg.gamma_rank = a.gamma_rank;
  if (a.universal) cfg.universal = true;
  if (!a.order.empty()) cfg.order_weights = parse_order(a.order, cfg.gamma_rank);
  if (!a.weights.empty()) {
    if (cfg.universal) throw std::invalid_argument("--weights and --universal are mutually exclusive");
    cfg.weights = parse_weights(a.weights, cfg.system(), cfg.gamma_rank);
  }
  if (a.seed) cfg.seed = *a.seed;
  if (a.workers) cfg.workers = *a.workers;
  if (a.full_limit) cfg.full_limit = *a.full_limit;
  return cfg;
}

void add_common(CLI::App* app, CommonArgs& a) {
  app->add_option("--config", a.config_file, "Instance configuration file (JSON)");
  app->add_option("--type", a.type, "Preset: A, B, D, I2, H3, H4, F4");
  app->add_option("--rank", a.rank, "Rank of the preset");
  app->add_option("--m", a.m, "m for I2(m)");
  app->add_option("--matrix", a.matrix, "Raw Coxeter matrix, rows separated by ';'");
  app->add_option("--weights", a.weights, "Weights, e.g. s1=3,s2=2 or s1=1:0,s2=0:1");
  app->add_option("--gamma-rank", a.gamma_rank, "k for Gamma = Z^k");
  app->add_option("--order", a.order, "Monomial order: lex or weight rows like 1,0;0,1");
  app->add_flag("--universal", a.universal, "Use the universal weight function");
  app->add_option("--cache-dir", a.cache_dir, "Table cache directory");
  app->add_flag("--no-cache", a.no_cache, "Do not read or write the table cache");
  app->add_option("--seed", a.seed, "Seed for sampled checks");
  app->add_option("--workers", a.workers, "Worker threads (0 = hardware concurrency)");
  app->add_option("--full-limit", a.full_limit, "Materialize structure constants up to this group order");
  app->add_option("--output,-o", a.output, "Write JSON here instead of stdout");
  app->add_flag("--verbose,-v", a.verbose, "Report cache activity");
}

struct Session {
  InstanceConfig cfg;
  std::shared_ptr<Instance> inst;
  std::string hash;
};

Session open_instance(const CommonArgs& a, const std::string& default_type = "") {
  Session s;
  try {
    s.cfg = make_config(a, default_type);
    s.hash = s.cfg.hash();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  std::optional<TableCache> cache;
  if (!a.no_cache) cache.emplace(a.cache_dir.empty() ? TableCache::default_dir() : std::filesystem::path(a.cache_dir));
  std::vector<std::string> log;
  try {
    s.inst = build_instance(s.cfg, cache ? &*cache : nullptr, &log);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  for (const auto& line : log)
    if (a.verbose || line.rfind("warning", 0) == 0) std::cerr << line << "\n";
  return s;
}

json envelope(const std::string& kind, const Session& s, json data) {
  return json{{"schema", "uhecke/" + kind},
              {"format_version", kFormatVersion},
              {"library_version", kLibraryVersion},
              {"instance", s.inst->describe()},
              {"config", s.cfg.canonical()},
              {"config_hash", s.hash},
              {"seed", s.cfg.seed},
              {"data", std::move(data)}};
}

void emit(const CommonArgs& a, const json& j) {
  if (a.output.empty()) {
    std::cout << j.dump(1) << "\n";
  } else {
    write_json_file(a.output, j);
  }
}

std::vector<std::pair<int, int>> parse_pairs(const std::string& spec, const CoxeterGroup& W) {
  std::vector<std::pair<int, int>> out;
  if (spec.empty() || spec == "all") {
    for (std::size_t x = 0; x < W.size(); ++x)
      for (std::size_t y = 0; y < W.size(); ++y) out.emplace_back(static_cast<int>(x), static_cast<int>(y));
    return out;
  }
  if (spec == "generators") {
    for (std::size_t s = 0; s < W.rank(); ++s)
      for (std::size_t y = 0; y < W.size(); ++y) out.emplace_back(W.generator(static_cast<int>(s)), static_cast<int>(y));
    return out;
  }
  try {
    json j = json::parse(spec);
    for (const auto& p : j) out.emplace_back(element_from_json(W, p.at(0)), element_from_json(W, p.at(1)));
  } catch (const std::exception& e) {
    throw InputError(std::string("--pairs must be all, generators or a JSON list of word pairs: ") + e.what());
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Kazhdan-Lusztig bases, cells and asymptotic rings of Hecke algebras with unequal parameters"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kLibraryVersion));

  CommonArgs a;
  std::string pairs, props = "all", p15_mode = "star", rep_file, char_file;
  std::size_t p15_samples = 100000, iso_samples = 2000, iso_pair_limit = 48;
  bool include_matrix = false, compare = false;

  auto* klpolys = app.add_subcommand("klpolys", "KL polynomials p_{y,w} and mu-coefficients");
  auto* hconsts = app.add_subcommand("hconsts", "Structure constants h_{x,y,z}");
  hconsts->add_option("--pairs", pairs, "all (default up to |W|=48), generators, or JSON [[x,y],...] of words");
  auto* cells = app.add_subcommand("cells", "Left, right and two-sided cells with their partial orders");
  auto* afn = app.add_subcommand("afn", "a-function, Delta, n, the set D and gamma");
  auto* jring = app.add_subcommand("jring", "Gamma table with associativity and identity certificates");
  auto* phi = app.add_subcommand("phi", "The homomorphism phi: H -> J_A on the C basis");
  auto* psi = app.add_subcommand("psi", "The homomorphism psi: H -> A[W] and its certificate");
  psi->add_flag("--with-matrix", include_matrix, "Include psi(T_w) for every w");
  psi->add_option("--samples", iso_samples, "Sampled pairs above the exhaustive limit");
  psi->add_option("--pair-limit", iso_pair_limit, "Check all pairs up to this group order");
  auto* verify_cmd = app.add_subcommand("verify", "Check P1-P15 and E1-E4 on the instance");
  verify_cmd->add_option("--props", props, "all, P, E, ranges like P1..P14, or a comma list");
  verify_cmd->add_option("--p15-mode", p15_mode, "star, direct or p15prime");
  verify_cmd->add_option("--p15-samples", p15_samples, "Samples for direct/p15prime above |W|=30");
  verify_cmd->add_option("--rep-data", rep_file, "Representation data file (labels, a-values, character table)");
  verify_cmd->add_option("--char-table", char_file, "Character table file used with the built-in a-values");
  auto* oracle = app.add_subcommand("oracle-dihedral", "Closed-form description of I2(m), m even, L(s1) > L(s2)");
  oracle->add_flag("--compare", compare, "Compare the closed forms with the computed tables");

  for (auto* sub : {klpolys, hconsts, cells, afn, jring, phi, psi, verify_cmd, oracle}) add_common(sub, a);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*oracle) {
      Session s = open_instance(a, "I2");
      DihedralOracle o;
      try {
        o = dihedral_oracle(s.inst->algebra());
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      json data{{"oracle", to_json(o, s.inst->algebra())}};
      int rc = 0;
      if (compare) {
        auto c = compare_with_oracle(o, *s.inst);
        data["comparison"] = to_json(c);
        std::cerr << (c.ok ? "oracle match" : "oracle mismatch") << " (" << c.checks << " checks)\n";
        for (const auto& msg : c.mismatches) std::cerr << "  " << msg << "\n";
        rc = c.ok ? 0 : 1;
      }
      emit(a, envelope("oracle-dihedral", s, data));
      return rc;
    }

    Session s = open_instance(a);
    const auto& W = s.inst->group();

    if (*klpolys) {
      emit(a, envelope("klpolys", s, to_json(s.inst->kl())));
      return 0;
    }
    if (*hconsts) {
      if (pairs.empty() && W.size() > 48) pairs = "generators";
      auto list = parse_pairs(pairs, W);
      emit(a, envelope("hconsts", s, structure_json(*s.inst->structure(), list)));
      return 0;
    }
    if (*cells) {
      emit(a, envelope("cells", s, cells_json(s.inst->cells(), W)));
      return 0;
    }
    if (*afn) {
      emit(a, envelope("afn", s, to_json(*s.inst->jdata(), W)));
      return 0;
    }
    if (*jring) {
      JRing ring(s.inst->jdata(), s.inst->group_ptr());
      auto assoc = ring.check_associativity(120, 20000, s.cfg.seed);
      auto identity = ring.check_identity();
      emit(a, envelope("jring", s, jring_json(*s.inst->jdata(), W, assoc, identity)));
      return assoc.ok && !identity ? 0 : 1;
    }
    if (*phi) {
      emit(a, envelope("phi", s, phi_json(phi_matrix(*s.inst->structure(), *s.inst->jdata()), W)));
      return 0;
    }
    if (*psi) {
      PsiMap map(s.inst->structure(), s.inst->jdata());
      auto cert = certify_iso(map, iso_pair_limit, iso_samples, s.cfg.seed);
      emit(a, envelope("psi", s, psi_json(map, cert, include_matrix)));
      return cert.ok() ? 0 : 1;
    }
    if (*verify_cmd) {
      VerifyOptions opts;
      std::optional<RepInvariantData> rep;
      try {
        opts.props = parse_property_list(props);
        opts.p15.mode = parse_p15_mode(p15_mode);
        opts.p15.samples = p15_samples;
        opts.p15.seed = s.cfg.seed;
        if (!rep_file.empty()) rep = rep_data_from_json(read_json_file(rep_file), W);
        if (!char_file.empty()) {
          if (!rep) rep = RepInvariantData::builtin(s.inst->algebra());
          if (!rep) throw std::invalid_argument("no built-in a-values for this instance; use --rep-data");
          rep->characters = character_table_from_json(read_json_file(char_file), W);
        }
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      if (rep) opts.rep = &*rep;
      auto report = verify(*s.inst, opts);
      report.seed = s.cfg.seed;
      json data = to_json(report, W);
      data["p15_mode"] = p15_mode_name(opts.p15.mode);
      emit(a, envelope("report", s, data));
      std::size_t passed = 0;
      for (const auto& r : report.results) passed += r.status == Status::Pass;
      std::cerr << report.instance << ": " << passed << "/" << report.results.size() << " passed"
                << (report.ok() ? "" : ", FAILED") << "\n";
      for (const auto& r : report.results)
        if (r.failed()) std::cerr << "  " << r.name << ": " << r.detail << "\n";
      return report.ok() ? 0 : 1;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
