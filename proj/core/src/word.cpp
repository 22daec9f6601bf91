#include "partcat/word.hpp"

#include <algorithm>
#include <ostream>

#include "partcat/errors.hpp"

namespace partcat {

ColoredWord ColoredWord::parse(std::string_view text) {
  std::vector<Color> letters;
  letters.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case 'o': letters.push_back(Color::white); break;
      case 'b': letters.push_back(Color::black); break;
      default:
        throw ParseError("colored word: unexpected letter '" + std::string(1, ch) +
                         "' in \"" + std::string(text) + "\"");
    }
  }
  return ColoredWord(std::move(letters));
}

ColoredWord ColoredWord::white(std::size_t length) {
  return ColoredWord(std::vector<Color>(length, Color::white));
}

int ColoredWord::charge() const noexcept {
  int c = 0;
  for (Color x : letters_) c += (x == Color::white) ? 1 : -1;
  return c;
}

ColoredWord ColoredWord::flipped() const {
  std::vector<Color> out(letters_.size());
  std::transform(letters_.begin(), letters_.end(), out.begin(), flip);
  return ColoredWord(std::move(out));
}

ColoredWord ColoredWord::reversed() const {
  return ColoredWord(std::vector<Color>(letters_.rbegin(), letters_.rend()));
}

ColoredWord ColoredWord::conjugate() const { return reversed().flipped(); }

ColoredWord ColoredWord::concat(const ColoredWord& other) const {
  std::vector<Color> out = letters_;
  out.insert(out.end(), other.letters_.begin(), other.letters_.end());
  return ColoredWord(std::move(out));
}

ColoredWord ColoredWord::slice(std::size_t begin, std::size_t end) const {
  return ColoredWord(std::vector<Color>(letters_.begin() + static_cast<std::ptrdiff_t>(begin),
                                        letters_.begin() + static_cast<std::ptrdiff_t>(end)));
}

bool ColoredWord::all_white() const noexcept {
  return std::all_of(letters_.begin(), letters_.end(),
                     [](Color c) { return c == Color::white; });
}

std::string ColoredWord::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Color c : letters_) s.push_back(c == Color::white ? 'o' : 'b');
  return s;
}

std::vector<ColoredWord> all_words(std::size_t length) {
  std::vector<ColoredWord> out;
  const std::size_t count = std::size_t{1} << length;
  out.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<Color> letters(length);
    for (std::size_t i = 0; i < length; ++i) {
      // most significant bit first, so the order is lexicographic
      letters[i] = ((mask >> (length - 1 - i)) & 1U) ? Color::black : Color::white;
    }
    out.emplace_back(std::move(letters));
  }
  return out;
}

std::size_t hash_value(const ColoredWord& w) noexcept {
  std::size_t h = 0xcbf29ce484222325ULL ^ w.size();
  for (Color c : w.letters()) {
    h = (h ^ static_cast<std::size_t>(c)) * 0x100000001b3ULL;
  }
  return h;
}

std::ostream& operator<<(std::ostream& os, const ColoredWord& w) { return os << '"' << w.str() << '"'; }

}  // namespace partcat
