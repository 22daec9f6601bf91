#include "partcat/categories.hpp"

#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "partcat/errors.hpp"
#include "partcat/linmaps.hpp"

namespace partcat {

std::string to_string(ClosureMode mode) {
  return mode == ClosureMode::colored ? "colored" : "real";
}

std::string to_string(ClosureStatus status) {
  return status == ClosureStatus::stable_within_bound ? "stable_within_bound"
                                                      : "truncated_by_bound";
}

std::vector<ColoredWord> table_words(std::size_t bound, ClosureMode mode) {
  std::vector<ColoredWord> out;
  for (std::size_t r = 0; r <= bound; ++r) {
    if (mode == ClosureMode::real) {
      out.push_back(ColoredWord::white(r));
    } else {
      for (auto& w : all_words(r)) out.push_back(std::move(w));
    }
  }
  return out;
}

namespace {

ColoredWord shift_word(const ColoredWord& w) {
  if (w.empty()) return w;
  return w.slice(w.size() - 1, w.size()).concat(w.slice(0, w.size() - 1));
}

ColoredWord remove_pair(const ColoredWord& w, std::size_t i) {
  return w.slice(0, i).concat(w.slice(i + 2, w.size()));
}

ColoredWord one_row_word(const ColoredWord& upper, const ColoredWord& lower) {
  return upper.conjugate().concat(lower);
}

bool can_contract(const ColoredWord& w, std::size_t i, ClosureMode mode) {
  return mode == ClosureMode::real || w[i] != w[i + 1];
}

// Legs a[r-1-t] and b[t] for t < j are joined pairwise, as in a composition.
bool glueable(const ColoredWord& a, const ColoredWord& b, std::size_t j, ClosureMode mode) {
  if (mode == ClosureMode::real) return true;
  for (std::size_t t = 0; t < j; ++t) {
    if (a[a.size() - 1 - t] == b[t]) return false;
  }
  return true;
}

std::optional<Partition> glue(const Partition& a, const Partition& b, std::size_t j,
                              ClosureMode mode) {
  if (!glueable(a.lower(), b.lower(), j, mode)) return std::nullopt;
  Partition p = tensor(a, b);
  for (std::size_t t = 0; t < j; ++t) p = contract_adjacent(p, a.legs() - 1 - t);
  return p;
}

struct VectorHash {
  std::size_t operator()(const SparseVector& v) const noexcept {
    std::size_t h = v.nnz();
    for (const auto& [idx, val] : v.entries()) {
      h = (h ^ std::hash<Index>{}(idx)) * 0x100000001b3ULL;
      h ^= std::hash<long>{}(mpz_get_si(val.get_num_mpz_t()));
    }
    return h;
  }
};

PartitionTable partition_closure(const std::vector<Partition>& generators, std::size_t bound,
                                 ClosureMode mode) {
  PartitionTable table;
  table.bound = bound;
  table.mode = mode;
  for (auto& w : table_words(bound, mode)) table.cells[w];

  std::deque<Partition> queue;
  std::vector<std::vector<Partition>> processed(bound + 1);
  auto add = [&](Partition p) {
    if (p.legs() > bound) return;
    if (mode == ClosureMode::real) p = whitened(p);
    auto& cell = table.cells[p.lower()];
    if (cell.insert(p).second) queue.push_back(std::move(p));
  };

  if (mode == ClosureMode::colored) {
    add(Partition::cup(Color::white, Color::black));
    add(Partition::cup(Color::black, Color::white));
  } else {
    add(Partition::cup(Color::white, Color::white));
  }
  for (const auto& g : generators) {
    if (g.legs() <= bound) add(to_one_row(g));
  }

  while (!queue.empty()) {
    Partition x = std::move(queue.front());
    queue.pop_front();
    const std::size_t r = x.legs();
    if (r > 0) add(cyclic_shift(x));
    add(reverse_one_row(x));
    for (std::size_t i = 0; i + 1 < r; ++i) {
      if (can_contract(x.lower(), i, mode)) add(contract_adjacent(x, i));
    }
    processed[r].push_back(x);
    for (std::size_t len = 0; len <= bound; ++len) {
      for (std::size_t j = 0; j <= std::min(r, len); ++j) {
        if (r + len - 2 * j > bound) continue;
        for (const auto& y : processed[len]) {
          if (auto g = glue(x, y, j, mode)) add(std::move(*g));
          if (auto g = glue(y, x, j, mode)) add(std::move(*g));
        }
      }
    }
  }
  return table;
}

LinearTable linear_closure(const std::vector<TensorMap>& generators, std::size_t n,
                           std::size_t bound, ClosureMode mode) {
  LinearTable table;
  table.bound = bound;
  table.n = n;
  table.mode = mode;
  for (auto& w : table_words(bound, mode)) table.cells.emplace(w, SpanBasis({}, w, n));

  struct Item {
    ColoredWord word;
    SparseVector vec;
  };
  std::deque<Item> queue;
  std::vector<std::vector<Item>> processed(bound + 1);
  std::map<ColoredWord, std::unordered_set<SparseVector, VectorHash>, WordOrder> seen;

  auto add = [&](ColoredWord w, SparseVector v) {
    if (w.size() > bound || v.empty()) return;
    if (mode == ClosureMode::real) w = ColoredWord::white(w.size());
    if (!seen[w].insert(v).second) return;
    if (table.cells.at(w).insert(v)) queue.push_back({std::move(w), std::move(v)});
  };

  {
    std::vector<SparseVector::Entry> cup;
    for (std::size_t a = 0; a < n; ++a) cup.emplace_back(a * n + a, 1);
    const SparseVector cup_vec(std::move(cup));
    if (mode == ClosureMode::colored) {
      add(ColoredWord{Color::white, Color::black}, cup_vec);
      add(ColoredWord{Color::black, Color::white}, cup_vec);
    } else {
      add(ColoredWord::white(2), cup_vec);
    }
  }
  for (const auto& g : generators) {
    if (g.n() != n) throw PreconditionError("close_linear: generator size differs from n");
    if (g.legs() > bound) continue;
    TensorMap v = to_one_row(g);
    add(v.lower(), v.entries());
  }

  while (!queue.empty()) {
    Item x = std::move(queue.front());
    queue.pop_front();
    const std::size_t r = x.word.size();
    if (r > 0) add(shift_word(x.word), cyclic_shift_vector(x.vec, n, r));
    add(x.word.reversed(), reverse_vector(x.vec, n, r));
    if (mode == ClosureMode::colored) add(x.word.flipped(), x.vec);
    for (std::size_t i = 0; i + 1 < r; ++i) {
      if (can_contract(x.word, i, mode)) add(remove_pair(x.word, i), contract_vector(x.vec, n, r, i));
    }
    processed[r].push_back(x);
    for (std::size_t len = 0; len <= bound; ++len) {
      for (std::size_t j = 0; j <= std::min(r, len); ++j) {
        if (r + len - 2 * j > bound) continue;
        for (const auto& y : processed[len]) {
          if (glueable(x.word, y.word, j, mode)) {
            add(x.word.slice(0, r - j).concat(y.word.slice(j, len)),
                glue_vector(x.vec, r, y.vec, len, n, j));
          }
          if (glueable(y.word, x.word, j, mode)) {
            add(y.word.slice(0, len - j).concat(x.word.slice(j, r)),
                glue_vector(y.vec, len, x.vec, r, n, j));
          }
        }
      }
    }
  }
  return table;
}

template <class Table>
ClosureStatus compare_lower(const Table& big, const Table& small) {
  for (const auto& [w, cell] : small.cells) {
    if (!(big.cells.at(w) == cell)) return ClosureStatus::truncated_by_bound;
  }
  return ClosureStatus::stable_within_bound;
}

std::string render(const SparseVector& v, std::size_t limit = 8) {
  std::ostringstream os;
  os << "[";
  std::size_t shown = 0;
  for (const auto& [idx, val] : v.entries()) {
    if (shown++ == limit) {
      os << ", ...";
      break;
    }
    if (shown > 1) os << ", ";
    os << idx << ":" << val.get_str();
  }
  os << "]";
  return os.str();
}

}  // namespace

std::vector<Partition> PartitionTable::cell(const ColoredWord& upper,
                                            const ColoredWord& lower) const {
  std::vector<Partition> out;
  auto it = cells.find(one_row_word(upper, lower));
  if (it == cells.end()) {
    throw PreconditionError("partition table: cell outside the bound or mode");
  }
  for (const auto& p : it->second) out.push_back(from_one_row(p, upper.size()));
  std::sort(out.begin(), out.end());
  return out;
}

bool PartitionTable::contains(const Partition& pi) const {
  Partition p = to_one_row(pi);
  if (mode == ClosureMode::real) p = whitened(p);
  auto it = cells.find(p.lower());
  return it != cells.end() && it->second.count(p) > 0;
}

std::size_t PartitionTable::total() const {
  std::size_t s = 0;
  for (const auto& [w, c] : cells) s += c.size();
  return s;
}

SpanBasis LinearTable::cell(const ColoredWord& upper, const ColoredWord& lower) const {
  auto it = cells.find(one_row_word(upper, lower));
  if (it == cells.end()) throw PreconditionError("linear table: cell outside the bound or mode");
  SpanBasis out(upper, lower, n);
  for (const auto& m : it->second.maps()) out.insert(from_one_row(m, upper.size()));
  return out;
}

bool LinearTable::contains(const TensorMap& t) const {
  TensorMap v = to_one_row(t);
  ColoredWord w = mode == ClosureMode::real ? ColoredWord::white(v.legs()) : v.lower();
  auto it = cells.find(w);
  return it != cells.end() && it->second.contains(v.entries());
}

std::size_t LinearTable::total_dim() const {
  std::size_t s = 0;
  for (const auto& [w, c] : cells) s += c.dim();
  return s;
}

PartitionTable close_partitions(const std::vector<Partition>& generators, std::size_t bound,
                                ClosureMode mode, bool check_stability) {
  PartitionTable table = partition_closure(generators, bound, mode);
  if (check_stability && bound >= 2) {
    table.status = compare_lower(table, partition_closure(generators, bound - 2, mode));
  }
  return table;
}

LinearTable close_linear(const std::vector<TensorMap>& generators, std::size_t n,
                         std::size_t bound, ClosureMode mode, bool check_stability) {
  LinearTable table = linear_closure(generators, n, bound, mode);
  if (check_stability && bound >= 2) {
    table.status = compare_lower(table, linear_closure(generators, n, bound - 2, mode));
  }
  return table;
}

LinearTable close_linear(const LinearTable& generators, std::size_t bound, bool check_stability) {
  std::vector<TensorMap> gens;
  for (const auto& [w, cell] : generators.cells) {
    for (auto& m : cell.maps()) gens.push_back(std::move(m));
  }
  return close_linear(gens, generators.n, bound, generators.mode, check_stability);
}

LinearTable span_table(const PartitionTable& table, std::size_t n) {
  LinearTable out;
  out.bound = table.bound;
  out.n = n;
  out.mode = table.mode;
  out.status = table.status;
  for (const auto& [w, cell] : table.cells) {
    SpanBasis basis({}, w, n);
    for (const auto& p : cell) basis.insert(build_map(p, n));
    out.cells.emplace(w, std::move(basis));
  }
  return out;
}

PartitionTable filter_table(const CategoryName& cat, std::size_t bound, ClosureMode mode) {
  PartitionTable table;
  table.bound = bound;
  table.mode = mode;
  for (const auto& w : table_words(bound, mode)) {
    auto& cell = table.cells[w];
    for (auto& p : enumerate({}, w)) {
      if (is_member(p, cat)) cell.insert(std::move(p));
    }
  }
  return table;
}

std::optional<TableDifference> table_difference(const PartitionTable& a, const PartitionTable& b) {
  if (a.bound != b.bound || a.mode != b.mode) {
    throw PreconditionError("table_difference: bounds or modes differ");
  }
  for (const auto& [w, ca] : a.cells) {
    const auto& cb = b.cells.at(w);
    if (ca == cb) continue;
    TableDifference d{{}, w, "", ""};
    for (const auto& p : ca) {
      if (!cb.count(p)) {
        d.witness = p.str();
        d.detail = "present in the first table only";
        return d;
      }
    }
    for (const auto& p : cb) {
      if (!ca.count(p)) {
        d.witness = p.str();
        d.detail = "present in the second table only";
        return d;
      }
    }
  }
  return std::nullopt;
}

std::optional<TableDifference> table_difference(const LinearTable& a, const LinearTable& b) {
  if (a.bound != b.bound || a.mode != b.mode || a.n != b.n) {
    throw PreconditionError("table_difference: bounds, sizes or modes differ");
  }
  for (const auto& [w, ca] : a.cells) {
    const auto& cb = b.cells.at(w);
    if (ca == cb) continue;
    TableDifference d{{}, w, "", ""};
    const std::string dims =
        " (dimensions " + std::to_string(ca.dim()) + " vs " + std::to_string(cb.dim()) + ")";
    for (const auto& row : ca.rows()) {
      if (!cb.contains(row)) {
        d.witness = render(row);
        d.detail = "vector in the first table only" + dims;
        return d;
      }
    }
    for (const auto& row : cb.rows()) {
      if (!ca.contains(row)) {
        d.witness = render(row);
        d.detail = "vector in the second table only" + dims;
        return d;
      }
    }
  }
  return std::nullopt;
}

std::optional<TableDifference> table_containment(const LinearTable& a, const LinearTable& b) {
  if (a.bound != b.bound || a.mode != b.mode || a.n != b.n) {
    throw PreconditionError("table_containment: bounds, sizes or modes differ");
  }
  for (const auto& [w, ca] : a.cells) {
    for (const auto& row : ca.rows()) {
      if (!b.cells.at(w).contains(row)) {
        return TableDifference{{}, w, render(row), "vector outside the second table"};
      }
    }
  }
  return std::nullopt;
}

SparseVector cyclic_shift_vector(const SparseVector& v, std::size_t n, std::size_t r) {
  if (r == 0) return v;
  const Index high = checked_pow(n, r - 1);
  std::vector<SparseVector::Entry> out;
  out.reserve(v.nnz());
  for (const auto& [idx, val] : v.entries()) out.emplace_back((idx % n) * high + idx / n, val);
  return SparseVector(std::move(out));
}

SparseVector reverse_vector(const SparseVector& v, std::size_t n, std::size_t r) {
  std::vector<SparseVector::Entry> out;
  out.reserve(v.nnz());
  for (const auto& [idx, val] : v.entries()) {
    Index x = idx, y = 0;
    for (std::size_t t = 0; t < r; ++t) {
      y = y * n + x % n;
      x /= n;
    }
    out.emplace_back(y, val);
  }
  return SparseVector(std::move(out));
}

SparseVector contract_vector(const SparseVector& v, std::size_t n, std::size_t r, std::size_t i) {
  if (i + 1 >= r) throw PreconditionError("contract_vector: position out of range");
  const Index low_size = checked_pow(n, r - i - 2);
  std::vector<SparseVector::Entry> out;
  for (const auto& [idx, val] : v.entries()) {
    const Index low = idx % low_size;
    Index rest = idx / low_size;
    const Index b = rest % n;
    rest /= n;
    const Index a = rest % n;
    rest /= n;
    if (a == b) out.emplace_back(rest * low_size + low, val);
  }
  return SparseVector(std::move(out));
}

SparseVector tensor_vector(const SparseVector& a, const SparseVector& b, std::size_t n,
                           std::size_t rb) {
  const Index shift = checked_pow(n, rb);
  std::vector<SparseVector::Entry> out;
  out.reserve(a.nnz() * b.nnz());
  for (const auto& [ia, va] : a.entries()) {
    for (const auto& [ib, vb] : b.entries()) out.emplace_back(ia * shift + ib, va * vb);
  }
  return SparseVector(std::move(out));
}

SparseVector glue_vector(const SparseVector& a, std::size_t ra, const SparseVector& b,
                         std::size_t rb, std::size_t n, std::size_t j) {
  if (j > ra || j > rb) throw PreconditionError("glue_vector: too many joined legs");
  const Index inner = checked_pow(n, j), tail = checked_pow(n, rb - j);
  std::unordered_map<Index, std::vector<const SparseVector::Entry*>> by_head;
  for (const auto& e : b.entries()) by_head[e.first / tail].push_back(&e);
  std::vector<SparseVector::Entry> out;
  for (const auto& [ia, va] : a.entries()) {
    // the last j digits of a, read backwards, must equal the first j of b
    Index x = ia % inner, head = 0;
    for (std::size_t t = 0; t < j; ++t) {
      head = head * n + x % n;
      x /= n;
    }
    auto it = by_head.find(head);
    if (it == by_head.end()) continue;
    const Index base = (ia / inner) * tail;
    for (const auto* e : it->second) out.emplace_back(base + e->first % tail, va * e->second);
  }
  return SparseVector(std::move(out));
}

Partition reverse_one_row(const Partition& pi) { return to_one_row(involution(pi)); }

}  // namespace partcat
