#include "partcat/category_name.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <utility>

#include "partcat/errors.hpp"

namespace partcat {

namespace {

using Tag = CategoryName::Tag;

constexpr std::array<std::pair<Tag, std::string_view>, 13> kNames{{
    {Tag::P, "P"},
    {Tag::NC, "NC"},
    {Tag::P2, "P2"},
    {Tag::NC2, "NC2"},
    {Tag::NC2Real, "NC2Real"},
    {Tag::MatchingP2, "MatchingP2"},
    {Tag::P12, "P12"},
    {Tag::MatchingP12, "MatchingP12"},
    {Tag::NC12, "NC12"},
    {Tag::MatchingNC12, "MatchingNC12"},
    {Tag::Peven, "Peven"},
    {Tag::NCeven, "NCeven"},
    {Tag::H242D, "H242D"},
}};

bool sizes_at_most_two(const Partition& pi, bool allow_singletons) {
  for (int b : pi.block_sizes()) {
    if (b > 2 || (b == 1 && !allow_singletons)) return false;
  }
  return true;
}

bool all_even(const Partition& pi) {
  for (int b : pi.block_sizes()) {
    if (b % 2 != 0) return false;
  }
  return true;
}

// Pairs must have weight zero; singletons are unconstrained.
bool pairs_matching(const Partition& pi) {
  const auto sizes = pi.block_sizes();
  const auto weights = block_weights(pi);
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    if (sizes[b] == 2 && weights[b] != 0) return false;
  }
  return true;
}

int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

CategoryName CategoryName::parse(std::string_view text) {
  for (const auto& [tag, name] : kNames) {
    if (text == name) return {tag, 0};
  }
  // Ps(3), P^3
  std::string_view digits;
  if (text.size() > 3 && text.substr(0, 3) == "Ps(" && text.back() == ')') {
    digits = text.substr(3, text.size() - 4);
  } else if (text.size() > 2 && text.substr(0, 2) == "P^") {
    digits = text.substr(2);
  }
  if (!digits.empty()) {
    int s = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), s);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && s >= 1) {
      return {Tag::Ps, s};
    }
  }
  throw ParseError("unknown category name \"" + std::string(text) + "\"");
}

std::string CategoryName::str() const {
  if (tag == Tag::Ps) return "Ps(" + std::to_string(s) + ")";
  for (const auto& [t, name] : kNames) {
    if (t == tag) return std::string(name);
  }
  return "?";
}

bool CategoryName::colored() const noexcept {
  switch (tag) {
    case Tag::NC2:
    case Tag::MatchingP2:
    case Tag::MatchingP12:
    case Tag::MatchingNC12:
    case Tag::H242D:
      return true;
    case Tag::Ps:
      return s > 2;
    default:
      return false;
  }
}

std::vector<int> block_weights(const Partition& pi) {
  std::vector<int> w(pi.num_blocks(), 0);
  for (std::size_t i = 0; i < pi.legs(); ++i) {
    int v = pi.color(i) == Color::white ? 1 : -1;
    if (pi.is_upper(i)) v = -v;
    w[pi.label(i)] += v;
  }
  return w;
}

bool is_member(const Partition& pi, const CategoryName& cat) {
  switch (cat.tag) {
    case Tag::P:
      return true;
    case Tag::NC:
      return is_noncrossing(pi);
    case Tag::P2:
      return sizes_at_most_two(pi, false);
    case Tag::NC2Real:
      return sizes_at_most_two(pi, false) && is_noncrossing(pi);
    case Tag::MatchingP2:
      return sizes_at_most_two(pi, false) && pairs_matching(pi);
    case Tag::NC2:
      return sizes_at_most_two(pi, false) && pairs_matching(pi) && is_noncrossing(pi);
    case Tag::P12:
      return sizes_at_most_two(pi, true);
    case Tag::MatchingP12:
      return sizes_at_most_two(pi, true) && pairs_matching(pi);
    case Tag::NC12:
      return sizes_at_most_two(pi, true) && is_noncrossing(pi);
    case Tag::MatchingNC12:
      return sizes_at_most_two(pi, true) && pairs_matching(pi) && is_noncrossing(pi);
    case Tag::Ps: {
      if (cat.s < 1) throw PreconditionError("Ps requires s >= 1");
      const auto w = block_weights(pi);
      return std::all_of(w.begin(), w.end(), [&](int x) { return mod(x, cat.s) == 0; });
    }
    case Tag::Peven:
      return all_even(pi);
    case Tag::NCeven:
      return all_even(pi) && is_noncrossing(pi);
    case Tag::H242D:
      return all_even(pi) && mod(pi.upper().charge() - pi.lower().charge(), 4) == 0;
  }
  return false;
}

}  // namespace partcat
