#pragma once

#include <map>
#include <vector>

#include "partcat/tensor_map.hpp"

namespace partcat {

/// A subspace of maps at fixed (upper, lower, n), held as the unique reduced
/// row echelon basis. The pivot of a row is its smallest stored index; rows
/// have leading value 1 and vanish at every other pivot.
class SpanBasis {
 public:
  SpanBasis() = default;
  SpanBasis(ColoredWord upper, ColoredWord lower, std::size_t n);

  const ColoredWord& upper() const noexcept { return upper_; }
  const ColoredWord& lower() const noexcept { return lower_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return rows_.size(); }

  /// Adds v to the span; returns true when the dimension grew.
  bool insert(const SparseVector& v);
  bool insert(const TensorMap& t);

  /// v minus its component along the pivots (zero iff v is in the span).
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }
  bool contains(const TensorMap& t) const;
  /// Every row of `other` lies in this span.
  bool contains(const SpanBasis& other) const;

  /// Rows in increasing pivot order.
  std::vector<SparseVector> rows() const;
  std::vector<TensorMap> maps() const;
  std::vector<Index> pivots() const;

  friend bool operator==(const SpanBasis& a, const SpanBasis& b) {
    return a.upper_ == b.upper_ && a.lower_ == b.lower_ && a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  void check(const TensorMap& t) const;

  ColoredWord upper_;
  ColoredWord lower_;
  std::size_t n_ = 1;
  std::map<Index, SparseVector> rows_;  // keyed by pivot
};

}  // namespace partcat
