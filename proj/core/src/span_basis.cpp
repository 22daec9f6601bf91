#include "partcat/span_basis.hpp"

#include "partcat/errors.hpp"

namespace partcat {

SpanBasis::SpanBasis(ColoredWord upper, ColoredWord lower, std::size_t n)
    : upper_(std::move(upper)), lower_(std::move(lower)), n_(n) {}

void SpanBasis::check(const TensorMap& t) const {
  if (t.upper() != upper_ || t.lower() != lower_ || t.n() != n_) {
    throw WordMismatchError("span basis: map context (" + t.upper().str() + "," +
                            t.lower().str() + ") does not match (" + upper_.str() + "," +
                            lower_.str() + ")");
  }
}

SparseVector SpanBasis::reduce(SparseVector v) const {
  if (rows_.empty() || v.empty()) return v;
  std::vector<std::pair<const SparseVector*, Rational>> hits;
  for (const auto& [idx, val] : v.entries()) {
    auto it = rows_.find(idx);
    if (it != rows_.end()) hits.emplace_back(&it->second, val);
  }
  for (const auto& [row, coef] : hits) v.axpy(-coef, *row);
  return v;
}

bool SpanBasis::insert(const SparseVector& v) {
  SparseVector w = reduce(v);
  if (w.empty()) return false;
  const Index pivot = w.leading_index();
  w.scale(1 / w.leading_value());
  for (auto& [p, row] : rows_) {
    Rational c = row.at(pivot);
    if (sgn(c) != 0) row.axpy(-c, w);
  }
  rows_.emplace(pivot, std::move(w));
  return true;
}

bool SpanBasis::insert(const TensorMap& t) {
  check(t);
  return insert(t.entries());
}

bool SpanBasis::contains(const TensorMap& t) const {
  check(t);
  return contains(t.entries());
}

bool SpanBasis::contains(const SpanBasis& other) const {
  for (const auto& [p, row] : other.rows_) {
    if (!contains(row)) return false;
  }
  return true;
}

std::vector<SparseVector> SpanBasis::rows() const {
  std::vector<SparseVector> out;
  out.reserve(rows_.size());
  for (const auto& [p, row] : rows_) out.push_back(row);
  return out;
}

std::vector<TensorMap> SpanBasis::maps() const {
  std::vector<TensorMap> out;
  out.reserve(rows_.size());
  for (const auto& [p, row] : rows_) out.emplace_back(upper_, lower_, n_, row);
  return out;
}

std::vector<Index> SpanBasis::pivots() const {
  std::vector<Index> out;
  for (const auto& [p, row] : rows_) out.push_back(p);
  return out;
}

}  // namespace partcat
