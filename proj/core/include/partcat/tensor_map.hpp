#pragma once

#include <cstddef>
#include <vector>

#include "partcat/sparse_vector.hpp"
#include "partcat/word.hpp"

namespace partcat {

/// n^e, throwing BudgetExceededError when the result does not fit in 62 bits.
Index checked_pow(std::size_t n, std::size_t e);

/// Exact rational matrix of shape n^|lower| x n^|upper| between tensor powers.
///
/// Entries are stored as a sparse vector over leg tuples
/// (i_1..i_k, j_1..j_l) encoded base n with the leftmost leg most
/// significant, i.e. index = col * n^l + row where col encodes the upper
/// (input) tuple and row the lower (output) tuple. A map with empty upper
/// word is a vector in the tensor power of the lower word.
class TensorMap {
 public:
  TensorMap() = default;
  TensorMap(ColoredWord upper, ColoredWord lower, std::size_t n, SparseVector entries = {});

  static TensorMap identity(const ColoredWord& word, std::size_t n);

  const ColoredWord& upper() const noexcept { return upper_; }
  const ColoredWord& lower() const noexcept { return lower_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t legs() const noexcept { return upper_.size() + lower_.size(); }
  Index rows() const { return checked_pow(n_, lower_.size()); }
  Index cols() const { return checked_pow(n_, upper_.size()); }

  const SparseVector& entries() const noexcept { return entries_; }
  Rational at(Index row, Index col) const { return entries_.at(col * rows() + row); }
  bool is_zero() const noexcept { return entries_.empty(); }

  /// Same (upper, lower, n).
  bool same_context(const TensorMap& other) const noexcept;

  friend bool operator==(const TensorMap&, const TensorMap&) = default;

 private:
  ColoredWord upper_;
  ColoredWord lower_;
  std::size_t n_ = 1;
  SparseVector entries_;
};

/// Matrix product b * a (apply a first). Requires a.lower == b.upper.
TensorMap multiply(const TensorMap& b, const TensorMap& a);
/// Kronecker product a ⊗ b.
TensorMap kron(const TensorMap& a, const TensorMap& b);
/// Conjugate transpose, a map in Hom(lower, upper).
TensorMap adjoint(const TensorMap& t);
/// Entrywise complex conjugate (identity on rational entries) viewed on the
/// color-flipped words.
TensorMap conjugate(const TensorMap& t);
/// Same entries, different words of the same lengths.
TensorMap with_words(const TensorMap& t, ColoredWord upper, ColoredWord lower);
TensorMap scaled(const Rational& c, const TensorMap& t);
TensorMap add(const TensorMap& a, const TensorMap& b);

/// New leg i carries the index of old leg source[i] (legs numbered as in
/// Partition). The leg analogue of relabelling a partition.
TensorMap remap_legs(const TensorMap& t, ColoredWord upper, ColoredWord lower,
                     const std::vector<std::size_t>& source);

/// Reshape into a vector on the word conj(upper)·lower, mirroring the
/// partition operation of the same name.
TensorMap to_one_row(const TensorMap& t);
TensorMap from_one_row(const TensorMap& t, std::size_t upper_legs);

/// Index tuple (most significant digit first) of a leg-tuple index.
std::vector<std::size_t> decode(Index index, std::size_t n, std::size_t digits);
Index encode(const std::vector<std::size_t>& digits, std::size_t n);

}  // namespace partcat
