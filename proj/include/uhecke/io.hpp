#pragma once

// Instance configuration, canonical JSON for all tables and reports, and a
// content-addressed on-disk cache.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "uhecke/iso.hpp"
#include "uhecke/verify.hpp"

namespace uhecke {

using json = nlohmann::json;

inline constexpr const char* kLibraryVersion = "1.0.0";
/// Bumped whenever a stored table layout changes; part of every cache key.
inline constexpr int kFormatVersion = 1;

struct InstanceConfig {
  /// Preset name ("A", "B", "D", "F4", "H3", "I2", ...) or empty for a raw matrix.
  std::string type;
  int rank = 0;
  int m = 0;
  std::vector<std::vector<int>> coxeter_matrix;
  /// Gamma = Z^gamma_rank.
  std::size_t gamma_rank = 1;
  /// Rows of the order matrix; empty means the lexicographic order.
  std::vector<std::vector<Rational>> order_weights;
  /// L(s) per generator; empty means L(s) = 1 for all s (or the universal
  /// weight function when `universal` is set).
  std::vector<Exponent> weights;
  bool universal = false;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::size_t full_limit = 200;

  CoxeterSystem system() const;
  OrderedGroup gamma() const;
  std::vector<Exponent> weight_values(const CoxeterSystem& sys) const;

  /// Everything that determines the computed tables, with sorted keys.
  json canonical() const;
  static InstanceConfig from_json(const json& j);
  /// SHA-256 over the canonical JSON and the format version, hex encoded.
  std::string hash() const;
};

std::string sha256_hex(const std::string& data);

/// Parses "s1=3,s2=2" or "s1=1:0,s3=0:1" into per-generator exponents; a
/// generator left out takes the value of a conjugate generator.
std::vector<Exponent> parse_weights(const std::string& spec, const CoxeterSystem& sys, std::size_t gamma_rank);
/// Parses "lex" or rows "0,1;1,0".
std::vector<std::vector<Rational>> parse_order(const std::string& spec, std::size_t gamma_rank);

json to_json(const Exponent& e, std::size_t rank);
Exponent exponent_from_json(const json& j);
json to_json(const Poly& p);
Poly poly_from_json(const json& j, std::size_t rank);
json to_json(const RationalPoly& p);
json to_json(const Rational& q);
Rational rational_from_json(const json& j);
json to_json(const NFElement& x);
json word_json(const CoxeterGroup& W, int w);
int element_from_json(const CoxeterGroup& W, const json& j);

json to_json(const KLTable& kl);
std::shared_ptr<const KLTable> kl_from_json(const json& j, std::shared_ptr<const HeckeAlgebra> alg);
json to_json(const JData& jd, const CoxeterGroup& W);
JData jdata_from_json(const json& j, const CoxeterGroup& W);

json structure_json(const StructureConstants& sc, const std::vector<std::pair<int, int>>& pairs);
json cells_json(const CellPartition& cells, const CoxeterGroup& W);
json jring_json(const JData& jd, const CoxeterGroup& W, const AssociativityReport& assoc, std::optional<int> identity_failure);
json phi_json(const PhiMatrix& P, const CoxeterGroup& W);
json psi_json(const PsiMap& psi, const IsoCertificate& cert, bool include_matrix);
json to_json(const PropertyResult& r, const CoxeterGroup& W);
json to_json(const ConjectureReport& r, const CoxeterGroup& W);
json to_json(const DihedralOracle& o, const HeckeAlgebra& alg);
json to_json(const OracleComparison& c);

/// Character table file: field conductor, classes (reduced words, sizes) and
/// values as coefficient vectors over the power basis; validated against W.
CharacterTable character_table_from_json(const json& j, const CoxeterGroup& W);
json to_json(const CharacterTable& t);
/// Representation data file: labels with a-values (and optionally f-values)
/// plus an embedded character table.
RepInvariantData rep_data_from_json(const json& j, const CoxeterGroup& W);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

class TableCache {
 public:
  explicit TableCache(std::filesystem::path dir);
  /// $UHECKE_CACHE_DIR, else $XDG_CACHE_HOME/uhecke, else ~/.cache/uhecke.
  static std::filesystem::path default_dir();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path(const std::string& key, const std::string& kind) const;

  /// Returns nullopt on a miss; corrupt or outdated files produce a warning.
  std::optional<json> load(const std::string& key, const std::string& kind, std::string* warning) const;
  void store(const std::string& key, const std::string& kind, const json& data) const;

 private:
  std::filesystem::path dir_;
};

/// Builds the instance, taking the KL table and JData from the cache when
/// present and storing them otherwise.
std::shared_ptr<Instance> build_instance(const InstanceConfig& cfg, const TableCache* cache,
                                         std::vector<std::string>* log = nullptr);

}  // namespace uhecke
