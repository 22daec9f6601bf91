#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace partcat {

using Rational = mpq_class;
using Index = std::uint64_t;

/// Sparse rational vector: (index, value) pairs, indices strictly
/// increasing, no stored zeros.
class SparseVector {
 public:
  using Entry = std::pair<Index, Rational>;

  SparseVector() = default;
  /// Entries may be unsorted and contain duplicates; they are summed.
  explicit SparseVector(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// Value at `index` (zero when absent).
  Rational at(Index index) const;
  Index leading_index() const { return entries_.front().first; }
  const Rational& leading_value() const { return entries_.front().second; }

  /// this += c * other
  void axpy(const Rational& c, const SparseVector& other);
  void scale(const Rational& c);

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Entry> entries_;
};

Rational dot(const SparseVector& a, const SparseVector& b);
SparseVector operator+(const SparseVector& a, const SparseVector& b);
SparseVector operator*(const Rational& c, const SparseVector& v);

/// "p/q" or "p".
std::string to_string(const Rational& q);

}  // namespace partcat
