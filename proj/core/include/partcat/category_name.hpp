#pragma once

#include <string>
#include <string_view>

#include "partcat/partition.hpp"

namespace partcat {

/// Named categories of partitions with decidable membership.
///
/// Weights: a leg counts +1 for white and -1 for black, with upper legs
/// negated (the weight of the leg after rotating it into the lower row).
/// "Matching" means every block has total weight zero, which for a pair is
/// the usual rule: horizontal strings join opposite colors, vertical strings
/// equal colors.
struct CategoryName {
  enum class Tag {
    P,             ///< all partitions
    NC,            ///< noncrossing
    P2,            ///< pairings, colors ignored
    NC2,           ///< matching noncrossing pairings
    NC2Real,       ///< noncrossing pairings, colors ignored
    MatchingP2,    ///< matching pairings
    P12,           ///< singletons and pairings, colors ignored
    MatchingP12,   ///< singletons and matching pairings
    NC12,          ///< noncrossing singletons and pairings, colors ignored
    MatchingNC12,  ///< noncrossing singletons and matching pairings
    Ps,            ///< every block weight divisible by s
    Peven,         ///< every block of even size
    NCeven,        ///< noncrossing, every block of even size
    H242D,         ///< even block weights and charge(k) = charge(l) mod 4
  };

  Tag tag = Tag::P;
  int s = 0;  ///< only for Ps

  static CategoryName parse(std::string_view text);
  std::string str() const;

  /// True when membership depends on the colors of the legs.
  bool colored() const noexcept;

  friend bool operator==(const CategoryName&, const CategoryName&) = default;
};

bool is_member(const Partition& pi, const CategoryName& cat);

/// Rotated weight of each block (see CategoryName).
std::vector<int> block_weights(const Partition& pi);

}  // namespace partcat
