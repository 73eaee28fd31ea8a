#pragma once

// Left, right and two-sided cell preorders, cell modules, conjugacy classes
// and character tables used to decompose specialized cell modules.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "uhecke/hecke.hpp"
#include "uhecke/matrix.hpp"
#include "uhecke/numfield.hpp"

namespace uhecke {

/// A preorder on W given by reachability in a directed graph, together with
/// its equivalence classes. Cells are numbered by their smallest element.
class CellPreorder {
 public:
  CellPreorder() = default;
  /// edges[w] lists y with w -> y, meaning y <= w.
  CellPreorder(std::size_t n, const std::vector<std::vector<int>>& edges);

  std::size_t size() const { return cell_of_.size(); }
  std::size_t num_cells() const { return cells_.size(); }
  const std::vector<std::vector<int>>& cells() const { return cells_; }
  const std::vector<int>& cell(std::size_t c) const { return cells_[c]; }
  int cell_of(int w) const { return cell_of_[w]; }

  /// x <= y.
  bool leq(int x, int y) const { return cell_leq(cell_of_[x], cell_of_[y]); }
  bool equiv(int x, int y) const { return cell_of_[x] == cell_of_[y]; }
  /// Cell c <= cell d.
  bool cell_leq(int c, int d) const { return (below_[d][c >> 6] >> (c & 63)) & 1u; }

 private:
  std::vector<int> cell_of_;
  std::vector<std::vector<int>> cells_;
  std::vector<std::vector<std::uint64_t>> below_;  // per cell: bitset of cells <= it
};

struct CellPartition {
  CellPreorder left, right, two_sided;
};

/// Left edges w -> y whenever C_y occurs in C_s C_w for some s.
std::vector<std::vector<int>> left_cell_edges(const KLTable& kl);
CellPartition compute_cells(const KLTable& kl);

/// The module [C]_A of a left cell: C_w . e_x = sum_{y in C} h_{w,x,y} e_y.
class CellModule {
 public:
  CellModule(std::shared_ptr<const KLTable> kl, std::vector<int> cell);

  const std::vector<int>& cell() const { return cell_; }
  std::size_t dim() const { return cell_.size(); }
  /// Position of w in the cell, or -1.
  int index_of(int w) const;

  /// rho(C_s), entry (i,j) = h_{s, cell[j], cell[i]}.
  const PolyMatrix& generator_action(int s) const { return gens_[s]; }
  /// rho(C_w) read from structure constants.
  PolyMatrix action(const StructureConstants& sc, int w) const;
  /// The specialized module [C]_1: rho_1(s) = I - theta_1(rho(C_s)).
  const IntMatrix& specialized_generator(int s) const { return spec_[s]; }
  IntMatrix specialized(const Word& w) const;
  Integer character(const Word& w) const { return specialized(w).trace(); }

 private:
  std::shared_ptr<const KLTable> kl_;
  std::vector<int> cell_;
  std::vector<PolyMatrix> gens_;
  std::vector<IntMatrix> spec_;
};

/// Conjugacy classes of W, ordered by their smallest element.
std::vector<std::vector<int>> conjugacy_classes(const CoxeterGroup& g);

/// Irreducible characters of W with values in a real cyclotomic field.
struct CharacterTable {
  std::shared_ptr<const NumberField> field;
  std::vector<Word> class_reps;
  std::vector<Integer> class_sizes;
  std::vector<std::string> labels;
  std::vector<std::vector<NFElement>> values;  // [character][class]

  std::size_t num_classes() const { return class_reps.size(); }
  std::size_t num_characters() const { return labels.size(); }
  int index_of(const std::string& label) const;
  /// Character degrees (value at the identity class, which must be first).
  std::vector<Integer> degrees() const;

  /// Built-in table of I2(m) (generators s1, s2 at indices 0, 1).
  static CharacterTable dihedral(int m);

  /// Checks the class data against the group and the orthogonality relations;
  /// throws std::invalid_argument on inconsistency.
  void validate(const CoxeterGroup& g) const;
};

/// Multiplicities of the irreducible characters in [C]_1, indexed like the table.
std::vector<Integer> specialize_and_decompose(const CellModule& m, const CharacterTable& chars);

}  // namespace uhecke
