#include "partcat/halflib.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <unordered_map>

#include "partcat/errors.hpp"
#include "partcat/linmaps.hpp"

namespace partcat {

namespace {

std::vector<std::vector<Rational>> centering(std::size_t n) {
  std::vector<std::vector<Rational>> q(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q[i][j] = Rational(i == j ? 1 : 0) - Rational(1, n);
  }
  return q;
}

// output position -> input leg of the crossing
std::vector<std::size_t> crossing_source(std::size_t legs) {
  if (legs == 3) return {2, 1, 0};
  if (legs == 4) return {2, 3, 0, 1};
  throw PreconditionError("half-liberation maps exist for 3 or 4 legs, got " + std::to_string(legs));
}

SparseVector from_accumulator(std::unordered_map<Index, Rational>& acc) {
  std::vector<SparseVector::Entry> entries;
  entries.reserve(acc.size());
  for (auto& [i, v] : acc) {
    if (sgn(v) != 0) entries.emplace_back(i, std::move(v));
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return SparseVector(std::move(entries));
}

}  // namespace

Eigen::MatrixXcd IsometryPair::r() const {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  p(0, 0) = 0;
  return f * p;
}

IsometryPair build_F(std::size_t n, Flavor flavor) {
  if (n < 2) throw PreconditionError("build_F: n must be at least 2");
  const auto en = static_cast<Eigen::Index>(n);
  const double s = std::sqrt(static_cast<double>(n));
  Eigen::MatrixXcd f(en, en);
  if (flavor == Flavor::real) {
    // Householder reflection along v = e₀ − ξ/√n
    Eigen::VectorXcd v = Eigen::VectorXcd::Constant(en, -1.0 / s);
    v(0) += 1.0;
    f = Eigen::MatrixXcd::Identity(en, en) - 2.0 * v * v.adjoint() / v.squaredNorm();
  } else {
    for (Eigen::Index j = 0; j < en; ++j) {
      for (Eigen::Index k = 0; k < en; ++k) {
        f(j, k) = std::polar(1.0 / s, 2 * std::numbers::pi * static_cast<double>((j * k) % en) /
                                          static_cast<double>(n));
      }
    }
  }
  IsometryPair pair = isometry_from_frame(f);
  pair.flavor = flavor;
  return pair;
}

IsometryPair isometry_from_frame(const Eigen::MatrixXcd& f) {
  if (f.rows() != f.cols() || f.rows() < 2) throw PreconditionError("isometry: F must be square, n ≥ 2");
  IsometryPair pair;
  pair.n = static_cast<std::size_t>(f.rows());
  pair.f = f;
  pair.flavor = f.imag().cwiseAbs().maxCoeff() < 1e-14 ? Flavor::real : Flavor::complex;
  pair.rr_star = centering(pair.n);
  if (isometry_defect(pair) > 1e-10) throw PreconditionError("isometry: F is not unitary with F e0 = xi/sqrt(n)");
  return pair;
}

double isometry_defect(const IsometryPair& pair) {
  const auto en = static_cast<Eigen::Index>(pair.n);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(en, en);
  double d = (pair.f.adjoint() * pair.f - id).cwiseAbs().maxCoeff();
  const double c = 1.0 / std::sqrt(static_cast<double>(pair.n));
  for (Eigen::Index i = 0; i < en; ++i) d = std::max(d, std::abs(pair.f(i, 0) - c));
  const Eigen::MatrixXcd r = pair.r();
  const Eigen::MatrixXcd rr = r * r.adjoint();
  for (Eigen::Index i = 0; i < en; ++i) {
    for (Eigen::Index j = 0; j < en; ++j) {
      const auto& q = pair.rr_star[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      d = std::max(d, std::abs(rr(i, j) - q.get_d()));
    }
  }
  return d;
}

Partition crossing_base(const ColoredWord& upper) {
  const std::size_t legs = upper.size();
  const auto src = crossing_source(legs);
  std::vector<Color> lower(legs);
  std::vector<int> labels(2 * legs);
  for (std::size_t pos = 0; pos < legs; ++pos) {
    lower[pos] = upper[src[pos]];
    labels[src[pos]] = static_cast<int>(pos);
    labels[legs + pos] = static_cast<int>(pos);
  }
  return Partition(upper, ColoredWord(lower), labels);
}

TensorMap t_conjugated(const IsometryPair& pair, const ColoredWord& upper) {
  const std::size_t n = pair.n;
  const std::size_t legs = upper.size();
  const TensorMap base = build_map(crossing_base(upper), n);
  const Index rows = base.rows();
  // R on a white leg and R̄ on a black one give the same real RR*.
  std::unordered_map<Index, Rational> cur;
  for (const auto& [i, v] : base.entries().entries()) cur.emplace(i, v);
  Index stride = rows;
  for (std::size_t t = 0; t < legs; ++t) {
    stride /= n;
    std::unordered_map<Index, Rational> next;
    next.reserve(cur.size() * n);
    for (const auto& [idx, v] : cur) {
      const Index col = idx / rows, row = idx % rows;
      const std::size_t digit = static_cast<std::size_t>((row / stride) % n);
      const Index rest = row - digit * stride;
      for (std::size_t a = 0; a < n; ++a) {
        const Rational& q = pair.rr_star[a][digit];
        if (sgn(q) != 0) next[col * rows + rest + a * stride] += q * v;
      }
    }
    cur = std::move(next);
  }
  return TensorMap(base.upper(), base.lower(), n, from_accumulator(cur));
}

TensorMap t_conjugated(const IsometryPair& pair, std::size_t legs) {
  return t_conjugated(pair, ColoredWord::white(legs));
}

Eigen::MatrixXcd t_conjugated_numeric(const IsometryPair& pair, const ColoredWord& upper) {
  const TensorMap base = build_map(crossing_base(upper), pair.n);
  const Eigen::MatrixXcd r = pair.r();
  const Eigen::MatrixXcd t = dense(base).cast<std::complex<double>>();
  return tensor_power(r, base.lower()) * t * tensor_power(r, base.upper()).adjoint();
}

TensorMap t_explicit(std::size_t n, const ColoredWord& upper) {
  if (n < 2) throw PreconditionError("t_explicit: n must be at least 2");
  const std::size_t legs = upper.size();
  const auto src = crossing_source(legs);
  const Partition base = crossing_base(upper);
  const Index rows = checked_pow(n, legs);
  std::unordered_map<Index, Rational> acc;
  for (Index col = 0; col < rows; ++col) {
    const auto in = decode(col, n, legs);
    // S = set of output factors replaced by ξ'
    for (unsigned s = 0; s < (1u << legs); ++s) {
      const int k = std::popcount(s);
      Rational coeff(k % 2 == 0 ? 1 : -1);
      for (int i = 0; i < k; ++i) coeff /= static_cast<unsigned long>(n);
      std::vector<std::size_t> free_pos;
      std::vector<std::size_t> out(legs);
      for (std::size_t pos = 0; pos < legs; ++pos) {
        if (s & (1u << pos)) {
          free_pos.push_back(pos);
        } else {
          out[pos] = in[src[pos]];
        }
      }
      const Index spread = checked_pow(n, free_pos.size());
      for (Index f = 0; f < spread; ++f) {
        const auto fill = decode(f, n, free_pos.size());
        for (std::size_t i = 0; i < free_pos.size(); ++i) out[free_pos[i]] = fill[i];
        acc[col * rows + encode(out, n)] += coeff;
      }
    }
  }
  return TensorMap(base.upper(), base.lower(), n, from_accumulator(acc));
}

TensorMap t_explicit(std::size_t n, std::size_t legs) { return t_explicit(n, ColoredWord::white(legs)); }

std::vector<MobiusTerm> mobius_terms(const Partition& base) {
  const auto blocks = base.blocks();
  for (const auto& b : blocks) {
    if (b.size() != 2) throw PreconditionError("mobius_terms: base must be a pairing, got " + base.str());
  }
  const std::size_t pairs = blocks.size();
  if (pairs > 16) throw PreconditionError("mobius_terms: too many pairs");
  std::vector<unsigned> masks(1u << pairs);
  for (unsigned m = 0; m < masks.size(); ++m) masks[m] = m;
  std::stable_sort(masks.begin(), masks.end(),
                   [](unsigned a, unsigned b) { return std::popcount(a) < std::popcount(b); });
  std::vector<MobiusTerm> out;
  for (unsigned m : masks) {
    std::vector<int> labels(base.legs());
    int next = static_cast<int>(pairs);
    for (std::size_t b = 0; b < pairs; ++b) {
      const bool broken = (m >> b) & 1u;
      labels[static_cast<std::size_t>(blocks[b][0])] = static_cast<int>(b);
      labels[static_cast<std::size_t>(blocks[b][1])] = broken ? next++ : static_cast<int>(b);
    }
    Partition pi(base.upper(), base.lower(), labels);
    out.push_back({pi, mobius(pi, base), static_cast<std::size_t>(std::popcount(m))});
  }
  return out;
}

TensorMap t_mobius(std::size_t n, const Partition& base) {
  TensorMap sum(base.upper(), base.lower(), n);
  for (const auto& term : mobius_terms(base)) {
    Rational c(term.mu);
    for (std::size_t i = 0; i < term.broken; ++i) c /= static_cast<unsigned long>(n);
    sum = add(sum, scaled(c, build_map(term.pi, n)));
  }
  return sum;
}

TripleCheck verify_triple(std::size_t n, const ColoredWord& upper) {
  TripleCheck check;
  check.n = n;
  check.upper = upper;
  const auto pair = build_F(n, upper.all_white() ? Flavor::real : Flavor::complex);
  const TensorMap conj = t_conjugated(pair, upper);
  const TensorMap expl = t_explicit(n, upper);
  check.conjugated_eq_explicit = conj == expl;
  check.explicit_eq_mobius = expl == t_mobius(n, crossing_base(upper));
  return check;
}

std::string to_string(RelationTarget t) {
  switch (t) {
    case RelationTarget::BNo: return "BNo";
    case RelationTarget::CNo: return "CNo";
    case RelationTarget::CNx: return "CNx";
    case RelationTarget::CNoo: return "CNoo";
    case RelationTarget::UNss: return "UNss";
  }
  return "?";
}

RelationTarget relation_target_from_string(const std::string& s) {
  for (auto t : {RelationTarget::BNo, RelationTarget::CNo, RelationTarget::CNx, RelationTarget::CNoo,
                 RelationTarget::UNss}) {
    if (to_string(t) == s) return t;
  }
  throw ParseError("unknown relation target \"" + s + "\"");
}

std::vector<Relation> emit_relations(RelationTarget target, std::size_t n) {
  auto half = [n](const char* word) {
    const Partition base = crossing_base(ColoredWord::parse(word));
    return Relation{"T in Hom(" + base.upper().str() + "," + base.lower().str() + ")", t_mobius(n, base)};
  };
  std::vector<Relation> out;
  switch (target) {
    case RelationTarget::BNo:
      out.push_back(half("ooo"));
      break;
    case RelationTarget::CNo:
      for (const auto& w : all_words(3)) out.push_back(half(w.str().c_str()));
      break;
    case RelationTarget::CNx:
      out.push_back(half("obo"));
      break;
    case RelationTarget::CNoo:
      out.push_back(half("obob"));
      out.push_back(half("obbo"));
      break;
    case RelationTarget::UNss:
      for (const char* w : {"obob", "obbo"}) {
        const Partition base = crossing_base(ColoredWord::parse(w));
        out.push_back({"T_" + base.str(), build_map(base, n)});
      }
      break;
  }
  return out;
}

PartitionTable half_envelope(std::size_t n, std::size_t bound) {
  std::vector<TensorMap> gens;
  for (auto& r : emit_relations(RelationTarget::BNo, n)) gens.push_back(to_one_row(r.map));
  gens.push_back(build_map(Partition::one_block({}, ColoredWord::white(1)), n));
  const LinearTable closed = close_linear(gens, n, bound, ClosureMode::real, false);
  PartitionTable table;
  table.bound = bound;
  table.mode = ClosureMode::real;
  table.status = closed.status;
  for (const auto& w : table_words(bound, ClosureMode::real)) {
    auto& cell = table.cells[w];
    const SpanBasis& span = closed.cells.at(w);
    for (const auto& pi : enumerate({}, w)) {
      if (span.contains(build_map(pi, n))) cell.insert(pi);
    }
  }
  return table;
}

}  // namespace partcat
