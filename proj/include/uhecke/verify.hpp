#pragma once

// Instance-level verification of P1-P15, P15', condition (*) and E1-E4,
// per-representation invariants a_lambda / f_lambda, and the closed-form
// description of I2(m) with L(s1) > L(s2) used as an oracle.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uhecke/instance.hpp"

namespace uhecke {

enum class Status { Pass, Fail, Skipped };
const char* status_name(Status s);

struct PropertyResult {
  std::string name;
  Status status = Status::Pass;
  /// Element ids making up a failure witness.
  std::vector<int> witness;
  /// Witness description, skip reason or a short summary.
  std::string detail;
  std::size_t checks = 0;
  double seconds = 0;

  bool failed() const { return status == Status::Fail; }
};

struct ConjectureReport {
  std::string instance;
  std::size_t group_order = 0;
  std::size_t gamma_entries = 0;
  std::size_t distinguished = 0;
  std::uint64_t seed = 1;
  std::vector<PropertyResult> results;
  /// Consequences of the properties checked alongside them.
  std::vector<PropertyResult> auxiliary;
  /// Informational findings; never affect the outcome.
  std::vector<std::pair<std::string, std::string>> notes;
  double seconds = 0;

  bool ok() const;
  const PropertyResult* find(const std::string& name) const;
};

/// Frozen tables a verifier reads.
struct VerifyInput {
  std::shared_ptr<const KLTable> kl;
  std::shared_ptr<const StructureConstants> sc;
  std::shared_ptr<const JData> jd;
  const CellPartition* cells = nullptr;

  static VerifyInput of(const Instance& inst);
  const CoxeterGroup& group() const { return kl->group(); }
};

/// which in 1..14.
PropertyResult verify_P(const VerifyInput& in, int which);

enum class P15Mode { Star, Direct, Prime };
const char* p15_mode_name(P15Mode m);
P15Mode parse_p15_mode(const std::string& s);

struct P15Options {
  P15Mode mode = P15Mode::Star;
  /// Direct and P15' modes are exhaustive up to this group order.
  std::size_t exhaustive_limit = 30;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
};

PropertyResult verify_P15(const VerifyInput& in, const P15Options& opts);

/// a_lambda and f_lambda for each irreducible character, plus the character
/// table used to attach characters to left cells.
struct RepInvariantData {
  std::vector<std::string> labels;
  std::vector<Exponent> a;
  std::vector<std::optional<NFElement>> f;
  std::vector<int> degrees;
  std::optional<CharacterTable> characters;
  std::string regime;

  int index_of(const std::string& label) const;

  /// I2(m); f_lambda is filled in when L(s1) != L(s2).
  static RepInvariantData dihedral(const HeckeAlgebra& alg);
  /// F4 with L(s1)=L(s2)=a, L(s3)=L(s4)=b and b >= a; the column is chosen by
  /// comparing b with a and 2a. No character table is attached.
  static RepInvariantData f4(const HeckeAlgebra& alg);
  /// Built-in data for the instance, if any.
  static std::optional<RepInvariantData> builtin(const HeckeAlgebra& alg);
};

/// Constituents of each specialized left cell module, as indices into rep.
std::vector<std::vector<int>> attach_labels(const VerifyInput& in, const RepInvariantData& rep);

/// which in 1..4; rep may be null (E1, E2 are then skipped).
PropertyResult verify_E(const VerifyInput& in, int which, const RepInvariantData* rep);

/// For each value v: the two-sided cells with a-value v have total size
/// sum of deg(lambda)^2 over the labels with a_lambda = v.
PropertyResult compare_cell_a_values(const VerifyInput& in, const RepInvariantData& rep);

/// a(z) = a(z^{-1}); sum_{d in D} gamma_{x^{-1},y,z^{-1}} n_z = delta_{xy};
/// gamma_{x,y,z} != 0 only if x, y, z lie in two-sided cells with equal a-values.
std::vector<PropertyResult> verify_auxiliary(const VerifyInput& in);

struct LeftRelationSummary {
  std::size_t classes = 0;
  bool closure_matches_left_cells = false;
  /// Every pair in a left cell is directly related.
  bool relation_equals_left_equivalence = false;
};
/// x <-> y iff gamma_{x,y^{-1},z} != 0 for some z; compares its closure with ~_L.
LeftRelationSummary left_relation_summary(const VerifyInput& in);

struct VerifyOptions {
  /// Names among P1..P15, E1..E4; empty means all of them.
  std::vector<std::string> props;
  P15Options p15;
  /// Overrides the built-in representation data.
  const RepInvariantData* rep = nullptr;
  bool auxiliary = true;
};

/// Expands "all", "P", "E", ranges like "P1..P14" and comma lists.
std::vector<std::string> parse_property_list(const std::string& spec);

ConjectureReport verify(const VerifyInput& in, const VerifyOptions& opts);
ConjectureReport verify(const Instance& inst, const VerifyOptions& opts);

struct DihedralOracle {
  int m = 0;
  std::vector<int> one, two;  // ids of 1_k and 2_k, k = 0..m
  std::vector<Exponent> delta, a;
  std::vector<int> distinguished;  // sorted
  std::vector<Integer> n;          // n_d, parallel to distinguished
  /// Two-sided cells from the bottom of the chain to the top.
  std::vector<std::vector<int>> chain;
  std::vector<std::vector<int>> left_cells;
  std::vector<std::vector<std::string>> left_cell_labels;

  struct Product {
    int x, y;
    SparseVec expected;
    std::string family;
  };
  std::vector<Product> products;
};

/// Requires I2(m), m even, L(s1) > L(s2); throws std::invalid_argument otherwise.
DihedralOracle dihedral_oracle(const HeckeAlgebra& alg);

struct OracleComparison {
  bool ok = true;
  std::size_t checks = 0;
  std::vector<std::string> mismatches;
};

OracleComparison compare_with_oracle(const DihedralOracle& oracle, const Instance& inst);

}  // namespace uhecke
