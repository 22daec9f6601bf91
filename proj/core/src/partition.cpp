#include "partcat/partition.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <ostream>

#include "partcat/errors.hpp"

namespace partcat {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Builds a partition whose new leg i is old leg `source[i]` of `pi`.
Partition remap(const Partition& pi, ColoredWord upper, ColoredWord lower,
                const std::vector<std::size_t>& source) {
  std::vector<int> labels(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) labels[i] = pi.label(source[i]);
  return Partition(std::move(upper), std::move(lower), labels);
}

std::vector<std::size_t> iota_range(std::size_t begin, std::size_t end) {
  std::vector<std::size_t> out(end - begin);
  std::iota(out.begin(), out.end(), begin);
  return out;
}

void append(std::vector<std::size_t>& dst, const std::vector<std::size_t>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

void require_same_words(const Partition& a, const Partition& b, const char* what) {
  if (a.upper() != b.upper() || a.lower() != b.lower()) {
    throw WordMismatchError(std::string(what) + ": words differ (" + a.str() + " vs " +
                            b.str() + ")");
  }
}

}  // namespace

Partition::Partition(ColoredWord upper, ColoredWord lower, const std::vector<int>& labels)
    : upper_(std::move(upper)), lower_(std::move(lower)) {
  if (labels.size() != upper_.size() + lower_.size()) {
    throw PreconditionError("partition: label count does not match the words");
  }
  if (labels.size() > kMaxLegs) throw PreconditionError("partition: too many legs");
  labels_.resize(labels.size());
  std::vector<std::pair<int, int>> seen;  // (raw tag, canonical label)
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find_if(seen.begin(), seen.end(),
                           [&](const auto& e) { return e.first == labels[i]; });
    if (it == seen.end()) {
      seen.emplace_back(labels[i], static_cast<int>(seen.size()));
      labels_[i] = static_cast<std::uint8_t>(seen.size() - 1);
    } else {
      labels_[i] = static_cast<std::uint8_t>(it->second);
    }
  }
  num_blocks_ = seen.size();
}

Partition Partition::from_blocks(ColoredWord upper, ColoredWord lower,
                                 const std::vector<std::vector<int>>& blocks) {
  const std::size_t n = upper.size() + lower.size();
  std::vector<int> labels(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw PreconditionError("partition: empty block");
    for (int leg : blocks[b]) {
      if (leg < 0 || static_cast<std::size_t>(leg) >= n) {
        throw PreconditionError("partition: leg index out of range");
      }
      if (labels[static_cast<std::size_t>(leg)] != -1) {
        throw PreconditionError("partition: blocks overlap");
      }
      labels[static_cast<std::size_t>(leg)] = static_cast<int>(b);
    }
  }
  if (std::find(labels.begin(), labels.end(), -1) != labels.end()) {
    throw PreconditionError("partition: blocks do not cover every leg");
  }
  return Partition(std::move(upper), std::move(lower), labels);
}

Partition Partition::identity(Color c) { return Partition({c}, {c}, {0, 0}); }
Partition Partition::cup(Color a, Color b) { return Partition({}, {a, b}, {0, 0}); }
Partition Partition::cap(Color a, Color b) { return Partition({a, b}, {}, {0, 0}); }
Partition Partition::crossing(Color a, Color b) {
  return Partition({a, b}, {b, a}, {0, 1, 1, 0});
}

Partition Partition::one_block(ColoredWord upper, ColoredWord lower) {
  const std::size_t n = upper.size() + lower.size();
  return Partition(std::move(upper), std::move(lower), std::vector<int>(n, 0));
}

Partition Partition::discrete(ColoredWord upper, ColoredWord lower) {
  std::vector<int> labels(upper.size() + lower.size());
  std::iota(labels.begin(), labels.end(), 0);
  return Partition(std::move(upper), std::move(lower), labels);
}

Color Partition::color(std::size_t leg) const {
  return leg < upper_.size() ? upper_[leg] : lower_[leg - upper_.size()];
}

std::vector<std::vector<int>> Partition::blocks() const {
  std::vector<std::vector<int>> out(num_blocks_);
  for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]].push_back(static_cast<int>(i));
  return out;
}

std::vector<int> Partition::block_sizes() const {
  std::vector<int> out(num_blocks_, 0);
  for (auto l : labels_) ++out[l];
  return out;
}

std::string Partition::str() const {
  std::string s = upper_.str() + "|" + lower_.str() + ":";
  for (const auto& block : blocks()) {
    s.push_back('(');
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) s.push_back(',');
      s += std::to_string(block[i] + 1);
    }
    s.push_back(')');
  }
  return s;
}

Partition Partition::parse(std::string_view text) {
  const auto bar = text.find('|');
  const auto colon = text.find(':');
  if (bar == std::string_view::npos || colon == std::string_view::npos || colon < bar) {
    throw ParseError("partition: expected UPPER|LOWER:(blocks), got \"" + std::string(text) + "\"");
  }
  ColoredWord upper = ColoredWord::parse(text.substr(0, bar));
  ColoredWord lower = ColoredWord::parse(text.substr(bar + 1, colon - bar - 1));
  std::vector<std::vector<int>> blocks;
  std::string_view rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos < rest.size()) {
    if (rest[pos] != '(') throw ParseError("partition: expected '(' in \"" + std::string(text) + "\"");
    const auto close = rest.find(')', pos);
    if (close == std::string_view::npos) throw ParseError("partition: unbalanced '('");
    std::vector<int> block;
    std::string_view inner = rest.substr(pos + 1, close - pos - 1);
    std::size_t p = 0;
    while (p <= inner.size()) {
      auto comma = inner.find(',', p);
      if (comma == std::string_view::npos) comma = inner.size();
      std::string_view num = inner.substr(p, comma - p);
      int v = 0;
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
      if (ec != std::errc() || ptr != num.data() + num.size() || v < 1) {
        throw ParseError("partition: bad leg number \"" + std::string(num) + "\"");
      }
      block.push_back(v - 1);
      p = comma + 1;
    }
    blocks.push_back(std::move(block));
    pos = close + 1;
  }
  try {
    return from_blocks(std::move(upper), std::move(lower), blocks);
  } catch (const PreconditionError& e) {
    throw ParseError(std::string(e.what()) + " in \"" + std::string(text) + "\"");
  }
}

std::size_t hash_value(const Partition& p) noexcept {
  std::size_t h = hash_value(p.upper()) * 31 + hash_value(p.lower());
  for (auto l : p.labels()) h = (h ^ l) * 0x100000001b3ULL;
  return h;
}

std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << p.str(); }

std::vector<Partition> enumerate(const ColoredWord& upper, const ColoredWord& lower) {
  const std::size_t n = upper.size() + lower.size();
  if (n > kMaxLegs) throw PreconditionError("enumerate: too many legs");
  std::vector<Partition> out;
  std::vector<int> rgs(n, 0);
  // Iterative restricted-growth-string enumeration in lexicographic order.
  std::vector<int> prefix_max(n + 1, -1);
  auto emit = [&] { out.emplace_back(upper, lower, rgs); };
  if (n == 0) {
    emit();
    return out;
  }
  std::size_t pos = 0;
  rgs[0] = 0;
  prefix_max[1] = 0;
  pos = 1;
  while (true) {
    if (pos == n) {
      emit();
      // backtrack to the rightmost position that can still be incremented
      std::size_t i = n - 1;
      while (i > 0 && rgs[i] == prefix_max[i] + 1) --i;
      if (i == 0) break;
      ++rgs[i];
      prefix_max[i + 1] = std::max(prefix_max[i], rgs[i]);
      pos = i + 1;
      continue;
    }
    rgs[pos] = 0;
    prefix_max[pos + 1] = prefix_max[pos];
    ++pos;
  }
  return out;
}

Partition tensor(const Partition& pi, const Partition& sigma) {
  const std::size_t k1 = pi.upper().size(), l1 = pi.lower().size();
  const std::size_t k2 = sigma.upper().size(), l2 = sigma.lower().size();
  const int shift = static_cast<int>(pi.num_blocks());
  std::vector<int> labels;
  labels.reserve(pi.legs() + sigma.legs());
  for (std::size_t i = 0; i < k1; ++i) labels.push_back(pi.label(i));
  for (std::size_t i = 0; i < k2; ++i) labels.push_back(shift + sigma.label(i));
  for (std::size_t i = 0; i < l1; ++i) labels.push_back(pi.label(k1 + i));
  for (std::size_t i = 0; i < l2; ++i) labels.push_back(shift + sigma.label(k2 + i));
  return Partition(pi.upper().concat(sigma.upper()), pi.lower().concat(sigma.lower()), labels);
}

Composition compose(const Partition& pi, const Partition& sigma) {
  if (pi.lower() != sigma.upper()) {
    throw WordMismatchError("compose: lower word " + pi.lower().str() +
                            " does not match upper word " + sigma.upper().str());
  }
  const std::size_t k = pi.upper().size(), l = pi.lower().size(), m = sigma.lower().size();
  const std::size_t bp = pi.num_blocks();
  UnionFind uf(bp + sigma.num_blocks());
  for (std::size_t j = 0; j < l; ++j) uf.unite(pi.label(k + j), bp + sigma.label(j));
  std::vector<int> labels;
  labels.reserve(k + m);
  std::vector<bool> visible(bp + sigma.num_blocks(), false);
  for (std::size_t i = 0; i < k; ++i) {
    auto r = uf.find(pi.label(i));
    visible[r] = true;
    labels.push_back(static_cast<int>(r));
  }
  for (std::size_t j = 0; j < m; ++j) {
    auto r = uf.find(bp + sigma.label(l + j));
    visible[r] = true;
    labels.push_back(static_cast<int>(r));
  }
  int loops = 0;
  for (std::size_t b = 0; b < visible.size(); ++b) {
    if (uf.find(b) == b && !visible[b]) ++loops;
  }
  return {Partition(pi.upper(), sigma.lower(), labels), loops};
}

Partition involution(const Partition& pi) {
  const std::size_t k = pi.upper().size();
  std::vector<std::size_t> source = iota_range(k, pi.legs());
  append(source, iota_range(0, k));
  return remap(pi, pi.lower().flipped(), pi.upper().flipped(), source);
}

Partition rotate_ccw(const Partition& pi) {
  const std::size_t k = pi.upper().size();
  if (k == 0) throw PreconditionError("rotate_ccw: upper row is empty");
  std::vector<std::size_t> source = iota_range(1, k);
  source.push_back(0);
  append(source, iota_range(k, pi.legs()));
  ColoredWord lower = ColoredWord({flip(pi.upper()[0])}).concat(pi.lower());
  return remap(pi, pi.upper().slice(1, k), std::move(lower), source);
}

Partition rotate_cw(const Partition& pi) {
  const std::size_t k = pi.upper().size(), l = pi.lower().size();
  if (l == 0) throw PreconditionError("rotate_cw: lower row is empty");
  std::vector<std::size_t> source{k};
  append(source, iota_range(0, k));
  append(source, iota_range(k + 1, pi.legs()));
  ColoredWord upper = ColoredWord({flip(pi.lower()[0])}).concat(pi.upper());
  return remap(pi, std::move(upper), pi.lower().slice(1, l), source);
}

Partition rotate_right_up(const Partition& pi) {
  const std::size_t k = pi.upper().size(), l = pi.lower().size();
  if (l == 0) throw PreconditionError("rotate_right_up: lower row is empty");
  std::vector<std::size_t> source = iota_range(0, k);
  source.push_back(pi.legs() - 1);
  append(source, iota_range(k, pi.legs() - 1));
  ColoredWord upper = pi.upper().concat(ColoredWord({flip(pi.lower()[l - 1])}));
  return remap(pi, std::move(upper), pi.lower().slice(0, l - 1), source);
}

Partition rotate_right_down(const Partition& pi) {
  const std::size_t k = pi.upper().size();
  if (k == 0) throw PreconditionError("rotate_right_down: upper row is empty");
  std::vector<std::size_t> source = iota_range(0, k - 1);
  append(source, iota_range(k, pi.legs()));
  source.push_back(k - 1);
  ColoredWord lower = pi.lower().concat(ColoredWord({flip(pi.upper()[k - 1])}));
  return remap(pi, pi.upper().slice(0, k - 1), std::move(lower), source);
}

Partition rotate(const Partition& pi) {
  if (!pi.upper().empty()) return rotate_ccw(pi);
  if (pi.lower().empty()) return pi;
  return cyclic_shift(pi);
}

Partition cyclic_shift(const Partition& pi) {
  if (!pi.upper().empty()) throw PreconditionError("cyclic_shift: partition is not one-row");
  const std::size_t l = pi.lower().size();
  if (l == 0) return pi;
  std::vector<std::size_t> source{l - 1};
  append(source, iota_range(0, l - 1));
  ColoredWord lower = ColoredWord({pi.lower()[l - 1]}).concat(pi.lower().slice(0, l - 1));
  return remap(pi, ColoredWord(), std::move(lower), source);
}

Partition to_one_row(const Partition& pi) {
  // k-fold rotate_ccw in one remap: upper legs reversed, colors flipped.
  const std::size_t k = pi.upper().size();
  std::vector<std::size_t> source;
  source.reserve(pi.legs());
  for (std::size_t i = k; i-- > 0;) source.push_back(i);
  append(source, iota_range(k, pi.legs()));
  return remap(pi, ColoredWord(), pi.upper().conjugate().concat(pi.lower()), source);
}

Partition from_one_row(const Partition& pi, std::size_t upper_legs) {
  if (!pi.upper().empty()) throw PreconditionError("from_one_row: partition is not one-row");
  if (upper_legs > pi.legs()) throw PreconditionError("from_one_row: too many upper legs");
  std::vector<std::size_t> source;
  source.reserve(pi.legs());
  for (std::size_t i = upper_legs; i-- > 0;) source.push_back(i);
  append(source, iota_range(upper_legs, pi.legs()));
  ColoredWord upper = pi.lower().slice(0, upper_legs).conjugate();
  return remap(pi, std::move(upper), pi.lower().slice(upper_legs, pi.legs()), source);
}

Partition contract_adjacent(const Partition& pi, std::size_t i) {
  if (!pi.upper().empty()) throw PreconditionError("contract_adjacent: partition is not one-row");
  const std::size_t l = pi.lower().size();
  if (i + 1 >= l) throw PreconditionError("contract_adjacent: position out of range");
  const int a = pi.label(i), b = pi.label(i + 1);
  std::vector<int> labels;
  labels.reserve(l - 2);
  std::vector<Color> colors;
  colors.reserve(l - 2);
  for (std::size_t j = 0; j < l; ++j) {
    if (j == i || j == i + 1) continue;
    const int lab = pi.label(j);
    labels.push_back(lab == b ? a : lab);
    colors.push_back(pi.lower()[j]);
  }
  return Partition(ColoredWord(), ColoredWord(std::move(colors)), labels);
}

Partition join(const Partition& pi, const Partition& sigma) {
  require_same_words(pi, sigma, "join");
  const std::size_t n = pi.legs();
  UnionFind uf(n);
  std::vector<int> first_pi(pi.num_blocks(), -1), first_sigma(sigma.num_blocks(), -1);
  for (std::size_t i = 0; i < n; ++i) {
    int& fp = first_pi[pi.label(i)];
    if (fp < 0) fp = static_cast<int>(i); else uf.unite(static_cast<std::size_t>(fp), i);
    int& fs = first_sigma[sigma.label(i)];
    if (fs < 0) fs = static_cast<int>(i); else uf.unite(static_cast<std::size_t>(fs), i);
  }
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(uf.find(i));
  return Partition(pi.upper(), pi.lower(), labels);
}

bool refines(const Partition& pi, const Partition& sigma) {
  require_same_words(pi, sigma, "refines");
  std::vector<int> target(pi.num_blocks(), -1);
  for (std::size_t i = 0; i < pi.legs(); ++i) {
    int& t = target[pi.label(i)];
    if (t < 0) t = sigma.label(i);
    else if (t != sigma.label(i)) return false;
  }
  return true;
}

Partition kernel(const std::vector<int>& tuple, const ColoredWord& upper, const ColoredWord& lower) {
  if (tuple.size() != upper.size() + lower.size()) {
    throw PreconditionError("kernel: tuple length does not match the words");
  }
  return Partition(upper, lower, tuple);
}

std::int64_t mobius(const Partition& pi, const Partition& sigma) {
  if (!refines(pi, sigma)) {
    throw PreconditionError("mobius: " + pi.str() + " does not refine " + sigma.str());
  }
  // number of pi-blocks inside each sigma-block
  std::vector<int> count(sigma.num_blocks(), 0);
  std::vector<bool> seen(pi.num_blocks(), false);
  for (std::size_t i = 0; i < pi.legs(); ++i) {
    if (!seen[pi.label(i)]) {
      seen[pi.label(i)] = true;
      ++count[sigma.label(i)];
    }
  }
  std::int64_t mu = 1;
  for (int b : count) {
    std::int64_t f = 1;
    for (int j = 2; j < b; ++j) f *= j;
    mu *= ((b - 1) % 2 == 0) ? f : -f;
  }
  return mu;
}

std::vector<int> circle_order(const Partition& pi) {
  const std::size_t k = pi.upper().size(), l = pi.lower().size();
  std::vector<int> pos(pi.legs());
  for (std::size_t i = 0; i < k; ++i) pos[i] = static_cast<int>(i);
  for (std::size_t j = 0; j < l; ++j) pos[k + j] = static_cast<int>(k + (l - 1 - j));
  return pos;
}

namespace {

std::vector<int> labels_on_circle(const Partition& pi) {
  const auto pos = circle_order(pi);
  std::vector<int> seq(pi.legs());
  for (std::size_t i = 0; i < pi.legs(); ++i) seq[static_cast<std::size_t>(pos[i])] = pi.label(i);
  return seq;
}

}  // namespace

bool is_noncrossing(const Partition& pi) {
  const auto seq = labels_on_circle(pi);
  std::vector<int> last(pi.num_blocks(), -1);
  for (std::size_t p = 0; p < seq.size(); ++p) last[seq[p]] = static_cast<int>(p);
  std::vector<bool> opened(pi.num_blocks(), false);
  std::vector<int> stack;
  for (std::size_t p = 0; p < seq.size(); ++p) {
    const int b = seq[p];
    if (stack.empty() || stack.back() != b) {
      if (opened[b]) return false;
      opened[b] = true;
      stack.push_back(b);
    }
    if (last[b] == static_cast<int>(p)) stack.pop_back();
  }
  return true;
}

int crossing_count(const Partition& pi) {
  const auto seq = labels_on_circle(pi);
  const int nb = static_cast<int>(pi.num_blocks());
  int count = 0;
  for (int a = 0; a < nb; ++a) {
    for (int b = a + 1; b < nb; ++b) {
      int alternations = 0, prev = -1;
      for (int x : seq) {
        if ((x == a || x == b) && x != prev) {
          ++alternations;
          prev = x;
        }
      }
      if (alternations >= 4) ++count;
    }
  }
  return count;
}

Partition whitened(const Partition& pi) {
  std::vector<int> labels(pi.labels().begin(), pi.labels().end());
  return Partition(ColoredWord::white(pi.upper().size()), ColoredWord::white(pi.lower().size()),
                   labels);
}

}  // namespace partcat
