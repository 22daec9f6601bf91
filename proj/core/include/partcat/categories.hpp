#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "partcat/category_name.hpp"
#include "partcat/partition.hpp"
#include "partcat/span_basis.hpp"

namespace partcat {

/// Words ordered by length, then lexicographically (white first).
struct WordOrder {
  bool operator()(const ColoredWord& a, const ColoredWord& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// colored: words over {white, black}, caps join opposite colors.
/// real: every word is white and caps join any two legs (u = ū).
enum class ClosureMode { colored, real };

/// stable_within_bound: raising the bound from L-2 to L changed no cell with
/// at most L-2 legs. truncated_by_bound: it did, so the bound is binding.
enum class ClosureStatus { stable_within_bound, truncated_by_bound };

std::string to_string(ClosureMode mode);
std::string to_string(ClosureStatus status);

/// Every word that indexes a cell of a table with this bound and mode.
std::vector<ColoredWord> table_words(std::size_t bound, ClosureMode mode);

/// Partition-level table. Cells are stored in one-row form P(∅, w); the cell
/// P(k, l) is the image of P(∅, conj(k)·l) under from_one_row.
struct PartitionTable {
  std::size_t bound = 0;
  ClosureMode mode = ClosureMode::colored;
  ClosureStatus status = ClosureStatus::stable_within_bound;
  std::map<ColoredWord, std::set<Partition>, WordOrder> cells;

  std::vector<Partition> cell(const ColoredWord& upper, const ColoredWord& lower) const;
  bool contains(const Partition& pi) const;
  std::size_t total() const;
};

/// Linear-level table at fixed n, one-row cells as reduced bases.
struct LinearTable {
  std::size_t bound = 0;
  std::size_t n = 1;
  ClosureMode mode = ClosureMode::colored;
  ClosureStatus status = ClosureStatus::stable_within_bound;
  std::map<ColoredWord, SpanBasis, WordOrder> cells;

  SpanBasis cell(const ColoredWord& upper, const ColoredWord& lower) const;
  bool contains(const TensorMap& t) const;
  std::size_t total_dim() const;
};

/// Least family containing the generators and the duality pairings that is
/// closed under rotation, involution, tensor product and composition, within
/// `bound` legs. Generators are whitened in real mode.
PartitionTable close_partitions(const std::vector<Partition>& generators, std::size_t bound,
                                ClosureMode mode = ClosureMode::colored,
                                bool check_stability = true);

/// Linear analogue: least family of subspaces containing the generators and
/// the duality maps, closed under tensor, composition, adjoint, conjugation,
/// rotation and linear span, within `bound` legs at size n.
LinearTable close_linear(const std::vector<TensorMap>& generators, std::size_t n,
                         std::size_t bound, ClosureMode mode = ClosureMode::colored,
                         bool check_stability = true);
LinearTable close_linear(const LinearTable& generators, std::size_t bound,
                         bool check_stability = true);

/// Cells span{T_π : π in the cell}.
LinearTable span_table(const PartitionTable& table, std::size_t n);

/// Cells {π : is_member(π, cat)} for every word within the bound.
PartitionTable filter_table(const CategoryName& cat, std::size_t bound,
                            ClosureMode mode = ClosureMode::colored);

struct TableDifference {
  ColoredWord upper;  ///< always empty: cells are compared in one-row form
  ColoredWord lower;
  std::string witness;  ///< an element present on one side only
  std::string detail;
};

/// First differing cell in WordOrder, or nullopt when equal.
/// Throws PreconditionError when bounds (or n, mode) differ.
std::optional<TableDifference> table_difference(const PartitionTable& a, const PartitionTable& b);
std::optional<TableDifference> table_difference(const LinearTable& a, const LinearTable& b);
inline bool table_equal(const PartitionTable& a, const PartitionTable& b) {
  return !table_difference(a, b);
}
inline bool table_equal(const LinearTable& a, const LinearTable& b) {
  return !table_difference(a, b);
}

/// Cellwise a ⊂ b; nullopt when contained, else the first offending cell.
std::optional<TableDifference> table_containment(const LinearTable& a, const LinearTable& b);

/// One-row vector helpers at size n on words of length r (exposed for tests).
SparseVector cyclic_shift_vector(const SparseVector& v, std::size_t n, std::size_t r);
SparseVector reverse_vector(const SparseVector& v, std::size_t n, std::size_t r);
SparseVector contract_vector(const SparseVector& v, std::size_t n, std::size_t r, std::size_t i);
SparseVector tensor_vector(const SparseVector& a, const SparseVector& b, std::size_t n,
                           std::size_t rb);
/// Tensor a ⊗ b followed by joining the last j legs of a with the first j of
/// b (innermost pair first): the one-row form of composition.
SparseVector glue_vector(const SparseVector& a, std::size_t ra, const SparseVector& b,
                         std::size_t rb, std::size_t n, std::size_t j);

/// Reversal of a one-row partition (the one-row form of the involution).
Partition reverse_one_row(const Partition& pi);

}  // namespace partcat
