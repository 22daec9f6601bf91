#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace partcat {

/// Tensor-factor color: white stands for u, black for its conjugate.
enum class Color : std::uint8_t { white = 0, black = 1 };

constexpr Color flip(Color c) noexcept {
  return c == Color::white ? Color::black : Color::white;
}

/// A word over {white, black}. Printed with `o` for white and `b` for black.
class ColoredWord {
 public:
  ColoredWord() = default;
  explicit ColoredWord(std::vector<Color> letters) : letters_(std::move(letters)) {}
  ColoredWord(std::initializer_list<Color> letters) : letters_(letters) {}

  /// Parses `o`/`b` letters; the empty string is the empty word.
  static ColoredWord parse(std::string_view text);
  static ColoredWord white(std::size_t length);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Color operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Color>& letters() const noexcept { return letters_; }

  /// #white - #black.
  int charge() const noexcept;

  ColoredWord flipped() const;
  ColoredWord reversed() const;
  /// Reverse and flip: the word labelling the dual object.
  ColoredWord conjugate() const;
  ColoredWord concat(const ColoredWord& other) const;
  ColoredWord slice(std::size_t begin, std::size_t end) const;
  bool all_white() const noexcept;

  std::string str() const;

  friend bool operator==(const ColoredWord&, const ColoredWord&) = default;
  friend auto operator<=>(const ColoredWord& a, const ColoredWord& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Color> letters_;
};

/// Every word of the given length, in lexicographic order (white first).
std::vector<ColoredWord> all_words(std::size_t length);

std::size_t hash_value(const ColoredWord& w) noexcept;
std::ostream& operator<<(std::ostream& os, const ColoredWord& w);

}  // namespace partcat

template <>
struct std::hash<partcat::ColoredWord> {
  std::size_t operator()(const partcat::ColoredWord& w) const noexcept {
    return partcat::hash_value(w);
  }
};
