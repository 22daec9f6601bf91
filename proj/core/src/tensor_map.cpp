#include "partcat/tensor_map.hpp"

#include <map>
#include <numeric>

#include "partcat/errors.hpp"

namespace partcat {

Index checked_pow(std::size_t n, std::size_t e) {
  Index r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (n != 0 && r > (Index{1} << 62) / n) {
      throw BudgetExceededError("index space n^" + std::to_string(e) + " with n=" +
                                std::to_string(n) + " does not fit in 62 bits");
    }
    r *= n;
  }
  return r;
}

std::vector<std::size_t> decode(Index index, std::size_t n, std::size_t digits) {
  std::vector<std::size_t> out(digits);
  for (std::size_t i = digits; i-- > 0;) {
    out[i] = static_cast<std::size_t>(index % n);
    index /= n;
  }
  return out;
}

Index encode(const std::vector<std::size_t>& digits, std::size_t n) {
  Index r = 0;
  for (auto d : digits) r = r * n + d;
  return r;
}

TensorMap::TensorMap(ColoredWord upper, ColoredWord lower, std::size_t n, SparseVector entries)
    : upper_(std::move(upper)), lower_(std::move(lower)), n_(n), entries_(std::move(entries)) {
  if (n_ < 1) throw PreconditionError("tensor map: n must be at least 1");
  const Index size = checked_pow(n_, upper_.size() + lower_.size());
  if (!entries_.empty() && entries_.entries().back().first >= size) {
    throw PreconditionError("tensor map: entry index out of range");
  }
}

TensorMap TensorMap::identity(const ColoredWord& word, std::size_t n) {
  const Index d = checked_pow(n, word.size());
  std::vector<SparseVector::Entry> e;
  e.reserve(d);
  for (Index i = 0; i < d; ++i) e.emplace_back(i * d + i, 1);
  return TensorMap(word, word, n, SparseVector(std::move(e)));
}

bool TensorMap::same_context(const TensorMap& other) const noexcept {
  return upper_ == other.upper_ && lower_ == other.lower_ && n_ == other.n_;
}

TensorMap multiply(const TensorMap& b, const TensorMap& a) {
  if (a.lower() != b.upper() || a.n() != b.n()) {
    throw WordMismatchError("multiply: inner words or sizes differ");
  }
  const Index mid = a.rows();
  const Index out_rows = b.rows();
  // b entries grouped by their column (the shared middle index)
  std::map<Index, std::vector<std::pair<Index, const Rational*>>> by_mid;
  for (const auto& [idx, v] : b.entries().entries()) {
    by_mid[idx / out_rows].emplace_back(idx % out_rows, &v);
  }
  std::vector<SparseVector::Entry> out;
  for (const auto& [idx, v] : a.entries().entries()) {
    const Index col = idx / mid, m = idx % mid;
    auto it = by_mid.find(m);
    if (it == by_mid.end()) continue;
    for (const auto& [row, w] : it->second) out.emplace_back(col * out_rows + row, v * *w);
  }
  return TensorMap(a.upper(), b.lower(), a.n(), SparseVector(std::move(out)));
}

TensorMap kron(const TensorMap& a, const TensorMap& b) {
  if (a.n() != b.n()) throw WordMismatchError("kron: sizes differ");
  const Index ra = a.rows(), rb = b.rows(), cb = b.cols();
  const Index rows = ra * rb;
  std::vector<SparseVector::Entry> out;
  out.reserve(a.entries().nnz() * b.entries().nnz());
  for (const auto& [ia, va] : a.entries().entries()) {
    const Index ca_ = ia / ra, rowa = ia % ra;
    for (const auto& [ib, vb] : b.entries().entries()) {
      const Index cb_ = ib / rb, rowb = ib % rb;
      out.emplace_back((ca_ * cb + cb_) * rows + rowa * rb + rowb, va * vb);
    }
  }
  return TensorMap(a.upper().concat(b.upper()), a.lower().concat(b.lower()), a.n(),
                   SparseVector(std::move(out)));
}

TensorMap adjoint(const TensorMap& t) {
  const Index r = t.rows(), c = t.cols();
  std::vector<SparseVector::Entry> out;
  out.reserve(t.entries().nnz());
  for (const auto& [idx, v] : t.entries().entries()) {
    out.emplace_back((idx % r) * c + idx / r, v);
  }
  return TensorMap(t.lower(), t.upper(), t.n(), SparseVector(std::move(out)));
}

TensorMap conjugate(const TensorMap& t) {
  return TensorMap(t.upper().flipped(), t.lower().flipped(), t.n(), t.entries());
}

TensorMap with_words(const TensorMap& t, ColoredWord upper, ColoredWord lower) {
  if (upper.size() != t.upper().size() || lower.size() != t.lower().size()) {
    throw WordMismatchError("with_words: word lengths differ");
  }
  return TensorMap(std::move(upper), std::move(lower), t.n(), t.entries());
}

TensorMap scaled(const Rational& c, const TensorMap& t) {
  return TensorMap(t.upper(), t.lower(), t.n(), c * t.entries());
}

TensorMap add(const TensorMap& a, const TensorMap& b) {
  if (!a.same_context(b)) throw WordMismatchError("add: contexts differ");
  return TensorMap(a.upper(), a.lower(), a.n(), a.entries() + b.entries());
}

TensorMap remap_legs(const TensorMap& t, ColoredWord upper, ColoredWord lower,
                     const std::vector<std::size_t>& source) {
  const std::size_t legs = t.legs();
  if (source.size() != legs || upper.size() + lower.size() != legs) {
    throw PreconditionError("remap_legs: leg count mismatch");
  }
  const std::size_t n = t.n();
  std::vector<SparseVector::Entry> out;
  out.reserve(t.entries().nnz());
  std::vector<std::size_t> fresh(legs);
  for (const auto& [idx, v] : t.entries().entries()) {
    const auto old = decode(idx, n, legs);
    for (std::size_t i = 0; i < legs; ++i) fresh[i] = old[source[i]];
    out.emplace_back(encode(fresh, n), v);
  }
  return TensorMap(std::move(upper), std::move(lower), n, SparseVector(std::move(out)));
}

TensorMap to_one_row(const TensorMap& t) {
  const std::size_t k = t.upper().size();
  std::vector<std::size_t> source;
  for (std::size_t i = k; i-- > 0;) source.push_back(i);
  for (std::size_t i = k; i < t.legs(); ++i) source.push_back(i);
  return remap_legs(t, ColoredWord(), t.upper().conjugate().concat(t.lower()), source);
}

TensorMap from_one_row(const TensorMap& t, std::size_t upper_legs) {
  if (!t.upper().empty()) throw PreconditionError("from_one_row: map is not a vector");
  if (upper_legs > t.legs()) throw PreconditionError("from_one_row: too many upper legs");
  std::vector<std::size_t> source;
  for (std::size_t i = upper_legs; i-- > 0;) source.push_back(i);
  for (std::size_t i = upper_legs; i < t.legs(); ++i) source.push_back(i);
  return remap_legs(t, t.lower().slice(0, upper_legs).conjugate(),
                    t.lower().slice(upper_legs, t.legs()), source);
}

}  // namespace partcat
