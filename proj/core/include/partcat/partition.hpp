#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "partcat/word.hpp"

namespace partcat {

/// A set partition of the legs of a two-row diagram.
///
/// Legs 0..k-1 are the upper row left to right, legs k..k+l-1 the lower row
/// left to right. The block structure is stored as a restricted growth
/// string: leg i carries the label of its block, and labels are assigned in
/// order of first appearance. This is the canonical form (blocks sorted by
/// minimum leg), so defaulted equality and ordering are structural.
class Partition {
 public:
  /// The empty partition in P(∅, ∅).
  Partition() = default;
  /// `labels[i]` is any block tag for leg i; it is canonicalized.
  Partition(ColoredWord upper, ColoredWord lower, const std::vector<int>& labels);

  /// Blocks given as 0-based leg lists; must be disjoint, nonempty and cover.
  static Partition from_blocks(ColoredWord upper, ColoredWord lower,
                               const std::vector<std::vector<int>>& blocks);

  static Partition identity(Color c);
  /// ∪ in P(∅, ab).
  static Partition cup(Color a, Color b);
  /// ∩ in P(ab, ∅).
  static Partition cap(Color a, Color b);
  /// The basic crossing in P(ab, ba): upper leg 1 meets lower leg 2.
  static Partition crossing(Color a, Color b);
  /// One block containing every leg.
  static Partition one_block(ColoredWord upper, ColoredWord lower);
  /// Every leg its own block.
  static Partition discrete(ColoredWord upper, ColoredWord lower);

  const ColoredWord& upper() const noexcept { return upper_; }
  const ColoredWord& lower() const noexcept { return lower_; }
  std::size_t legs() const noexcept { return labels_.size(); }
  std::size_t num_blocks() const noexcept { return num_blocks_; }
  const std::vector<std::uint8_t>& labels() const noexcept { return labels_; }
  int label(std::size_t leg) const { return labels_[leg]; }

  bool is_upper(std::size_t leg) const noexcept { return leg < upper_.size(); }
  Color color(std::size_t leg) const;

  /// Blocks as ascending 0-based leg lists, sorted by minimum leg.
  std::vector<std::vector<int>> blocks() const;
  std::vector<int> block_sizes() const;

  /// `UPPER|LOWER:(b1)(b2)...` with 1-based legs, e.g. `ob|:(1,2)`.
  std::string str() const;
  static Partition parse(std::string_view text);

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    if (auto c = a.upper_ <=> b.upper_; c != 0) return c;
    if (auto c = a.lower_ <=> b.lower_; c != 0) return c;
    return a.labels_ <=> b.labels_;
  }

 private:
  ColoredWord upper_;
  ColoredWord lower_;
  std::vector<std::uint8_t> labels_;
  std::size_t num_blocks_ = 0;
};

std::size_t hash_value(const Partition& p) noexcept;
std::ostream& operator<<(std::ostream& os, const Partition& p);

/// Maximum number of legs a Partition can carry.
inline constexpr std::size_t kMaxLegs = 64;

/// All partitions in P(upper, lower), in lexicographic order of the
/// restricted growth string. The count is the Bell number B_{k+l}.
std::vector<Partition> enumerate(const ColoredWord& upper, const ColoredWord& lower);

/// Horizontal concatenation [πσ].
Partition tensor(const Partition& pi, const Partition& sigma);

struct Composition {
  Partition result;
  int loops = 0;
};

/// Vertical concatenation: π ∈ P(k,l) on top, σ ∈ P(l,m) below. Middle legs
/// are glued and erased; `loops` counts components living only in the middle.
/// Satisfies T_σ T_π = n^loops T_{result}.
Composition compose(const Partition& pi, const Partition& sigma);

/// Upside-down turning with colors switched; T_{π*} = T_π^*.
Partition involution(const Partition& pi);

/// Leftmost upper leg moves to the leftmost lower position, color flipped.
Partition rotate_ccw(const Partition& pi);
/// Leftmost lower leg moves to the leftmost upper position, color flipped.
Partition rotate_cw(const Partition& pi);
/// Rightmost lower leg moves to the rightmost upper position, color flipped.
Partition rotate_right_up(const Partition& pi);
/// Rightmost upper leg moves to the rightmost lower position, color flipped.
Partition rotate_right_down(const Partition& pi);

/// One step around the boundary circle: rotate_ccw when the upper row is
/// nonempty, otherwise a cyclic shift of the single row.
Partition rotate(const Partition& pi);

/// For π ∈ P(∅, w): the last leg moves to the front. Colors are preserved.
Partition cyclic_shift(const Partition& pi);

/// k-fold rotate_ccw: P(k,l) -> P(∅, conj(k) l).
Partition to_one_row(const Partition& pi);
/// Inverse of to_one_row: moves the first `upper_legs` legs up.
Partition from_one_row(const Partition& pi, std::size_t upper_legs);

/// For π ∈ P(∅, w): glue legs i and i+1, then erase them. This is the
/// composition with a cap on those two legs.
Partition contract_adjacent(const Partition& pi, std::size_t i);

/// Finest common coarsening. Both partitions must have the same words.
Partition join(const Partition& pi, const Partition& sigma);

/// π ≤ σ: every block of π lies inside a block of σ.
bool refines(const Partition& pi, const Partition& sigma);

/// Legs i, j share a block iff tuple[i] == tuple[j].
Partition kernel(const std::vector<int>& tuple, const ColoredWord& upper,
                 const ColoredWord& lower);

/// Möbius function of the partition lattice on the interval [π, σ].
/// Throws PreconditionError unless π ≤ σ.
std::int64_t mobius(const Partition& pi, const Partition& sigma);

/// Planarity with legs placed on a circle: upper row left to right, then the
/// lower row right to left.
bool is_noncrossing(const Partition& pi);

/// Number of unordered block pairs that cross on the boundary circle.
int crossing_count(const Partition& pi);

/// Position of each leg on the boundary circle used by is_noncrossing.
std::vector<int> circle_order(const Partition& pi);

/// Replaces every color by white.
Partition whitened(const Partition& pi);

}  // namespace partcat

template <>
struct std::hash<partcat::Partition> {
  std::size_t operator()(const partcat::Partition& p) const noexcept {
    return partcat::hash_value(p);
  }
};
