#include "partcat/sparse_vector.hpp"

#include <algorithm>

namespace partcat {

SparseVector::SparseVector(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& e : entries) {
    if (!entries_.empty() && entries_.back().first == e.first) {
      entries_.back().second += e.second;
    } else {
      entries_.push_back(std::move(e));
    }
  }
  std::erase_if(entries_, [](const Entry& e) { return sgn(e.second) == 0; });
}

Rational SparseVector::at(Index index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, Index i) { return e.first < i; });
  if (it != entries_.end() && it->first == index) return it->second;
  return 0;
}

void SparseVector::axpy(const Rational& c, const SparseVector& other) {
  if (sgn(c) == 0 || other.empty()) return;
  std::vector<Entry> out;
  out.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == entries_.end() || b->first < a->first) {
      out.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      Rational v = a->second + c * b->second;
      if (sgn(v) != 0) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
}

void SparseVector::scale(const Rational& c) {
  if (sgn(c) == 0) {
    entries_.clear();
    return;
  }
  for (auto& e : entries_) e.second *= c;
}

Rational dot(const SparseVector& a, const SparseVector& b) {
  Rational s = 0;
  auto x = a.entries().begin();
  auto y = b.entries().begin();
  while (x != a.entries().end() && y != b.entries().end()) {
    if (x->first < y->first) {
      ++x;
    } else if (y->first < x->first) {
      ++y;
    } else {
      s += x->second * y->second;
      ++x;
      ++y;
    }
  }
  return s;
}

SparseVector operator+(const SparseVector& a, const SparseVector& b) {
  SparseVector out = a;
  out.axpy(1, b);
  return out;
}

SparseVector operator*(const Rational& c, const SparseVector& v) {
  SparseVector out = v;
  out.scale(c);
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace partcat
