#include "partcat/linmaps.hpp"

#include <algorithm>
#include <map>

#include "partcat/errors.hpp"

namespace partcat {

TensorMap build_map(const Partition& pi, std::size_t n) {
  if (n < 1) throw PreconditionError("build_map: n must be at least 1");
  const std::size_t legs = pi.legs();
  const std::size_t nb = pi.num_blocks();
  const Index count = checked_pow(n, nb);
  checked_pow(n, legs);
  std::vector<SparseVector::Entry> entries;
  entries.reserve(count);
  std::vector<std::size_t> value(nb, 0);
  for (Index c = 0; c < count; ++c) {
    Index idx = 0;
    for (std::size_t leg = 0; leg < legs; ++leg) idx = idx * n + value[pi.label(leg)];
    entries.emplace_back(idx, 1);
    for (std::size_t b = nb; b-- > 0;) {  // odometer
      if (++value[b] < n) break;
      value[b] = 0;
    }
  }
  SparseVector v(std::move(entries));
  if (v.nnz() != count) throw std::logic_error("build_map: nonzero count differs from n^blocks");
  return TensorMap(pi.upper(), pi.lower(), n, std::move(v));
}

Index gram_entry(const Partition& pi, const Partition& sigma, std::size_t n) {
  return checked_pow(n, join(pi, sigma).num_blocks());
}

namespace {

void require_context(const TensorMap& target, const std::vector<TensorMap>& basis) {
  for (const auto& b : basis) {
    if (!b.same_context(target)) throw WordMismatchError("span_membership: context mismatch");
  }
}

std::optional<std::vector<Rational>> membership_echelon(const TensorMap& target,
                                                        const std::vector<TensorMap>& basis) {
  const std::size_t m = basis.size();
  struct Row {
    SparseVector vec;
    std::vector<Rational> comb;  // vec = Σ comb_i basis_i
  };
  std::map<Index, Row> rows;  // echelon form keyed by pivot
  auto reduce = [&](SparseVector& v, std::vector<Rational>& comb) {
    // v - Σ comb_i basis_i stays invariant
    std::size_t pos = 0;
    while (pos < v.nnz()) {
      const auto& [idx, val] = v.entries()[pos];
      auto it = rows.find(idx);
      if (it == rows.end()) {
        ++pos;
        continue;
      }
      const Rational c = val / it->second.vec.leading_value();
      v.axpy(-c, it->second.vec);
      for (std::size_t i = 0; i < m; ++i) comb[i] += c * it->second.comb[i];
      // entries before pos are untouched by rows with pivot >= idx
    }
  };
  for (std::size_t i = 0; i < m; ++i) {
    SparseVector v = basis[i].entries();
    std::vector<Rational> comb(m);
    comb[i] = 1;
    std::vector<Rational> used(m);
    reduce(v, used);
    if (v.empty()) continue;
    for (std::size_t j = 0; j < m; ++j) comb[j] -= used[j];
    const Index p = v.leading_index();
    rows.emplace(p, Row{std::move(v), std::move(comb)});
  }
  SparseVector t = target.entries();
  std::vector<Rational> coeffs(m);
  reduce(t, coeffs);
  if (!t.empty()) return std::nullopt;
  return coeffs;
}

std::optional<std::vector<Rational>> membership_gram(const TensorMap& target,
                                                     const std::vector<TensorMap>& basis) {
  const std::size_t m = basis.size();
  // augmented system [G | b]
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      a[i][j] = dot(basis[i].entries(), basis[j].entries());
      a[j][i] = a[i][j];
    }
    a[i][m] = dot(basis[i].entries(), target.entries());
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < m; ++c) {
    std::size_t p = r;
    while (p < m && sgn(a[p][c]) == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j <= m; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i) {
    if (sgn(a[i][m]) != 0) return std::nullopt;  // cannot happen for a Gram system
  }
  std::vector<Rational> x(m);
  for (std::size_t i = 0; i < r; ++i) x[pivot_cols[i]] = a[i][m];
  Rational bx = 0;
  for (std::size_t i = 0; i < m; ++i) bx += dot(basis[i].entries(), target.entries()) * x[i];
  if (bx != dot(target.entries(), target.entries())) return std::nullopt;
  return x;
}

// q·ζ^e with q > 0 (or q == 0), e reduced mod m.
struct Phased {
  Rational q;
  std::size_t e = 0;
  friend bool operator==(const Phased&, const Phased&) = default;
};

Phased make_phased(Rational q, std::size_t e, std::size_t m) {
  e %= m;
  if (sgn(q) < 0) {  // m is even here
    q = -q;
    e = (e + m / 2) % m;
  }
  return {q, e};
}

// Phase exponent contributed by g^{⊗w} acting on the index tuple.
std::size_t tuple_phase(const MonomialMatrix& g, const ColoredWord& w,
                        const std::vector<std::size_t>& idx) {
  std::size_t e = 0;
  for (std::size_t t = 0; t < w.size(); ++t) {
    const std::size_t p = g.phase[idx[t]];
    e += (w[t] == Color::white) ? p : (g.m - p) % g.m;
  }
  return e % g.m;
}

}  // namespace

std::optional<std::vector<Rational>> span_membership(const TensorMap& target,
                                                     const std::vector<TensorMap>& basis,
                                                     SpanBackend backend) {
  require_context(target, basis);
  return backend == SpanBackend::echelon ? membership_echelon(target, basis)
                                         : membership_gram(target, basis);
}

bool intertwines(const TensorMap& t, const MonomialMatrix& g_in) {
  if (g_in.n() != t.n()) throw PreconditionError("intertwines: matrix size differs from n");
  // an even order lets q·ζ^e absorb signs
  const MonomialMatrix g = g_in.m % 2 == 0 ? g_in : g_in.lifted(2 * g_in.m);
  const std::size_t n = t.n(), k = t.upper().size(), l = t.lower().size();
  const MonomialMatrix ginv = g.inverse();
  std::map<Index, Phased> lhs, rhs;
  std::vector<std::size_t> moved;
  for (const auto& [idx, val] : t.entries().entries()) {
    const auto digits = decode(idx, n, k + l);
    std::vector<std::size_t> in(digits.begin(), digits.begin() + static_cast<long>(k));
    std::vector<std::size_t> out(digits.begin() + static_cast<long>(k), digits.end());
    // (g^{⊗l} t)[perm(J), I] = c_J t[J, I]
    {
      moved = in;
      for (auto d : out) moved.push_back(g.perm[d]);
      lhs[encode(moved, n)] = make_phased(val, tuple_phase(g, t.lower(), out), g.m);
    }
    // (t g^{⊗k})[J, perm^{-1}(I)] = c_{perm^{-1} I} t[J, I]
    {
      std::vector<std::size_t> pre(k);
      for (std::size_t s = 0; s < k; ++s) pre[s] = ginv.perm[in[s]];
      moved = pre;
      moved.insert(moved.end(), out.begin(), out.end());
      rhs[encode(moved, n)] = make_phased(val, tuple_phase(g, t.upper(), pre), g.m);
    }
  }
  return lhs == rhs;
}

Eigen::MatrixXcd tensor_power(const Eigen::MatrixXcd& g, const ColoredWord& w) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (std::size_t t = 0; t < w.size(); ++t) {
    const Eigen::MatrixXcd f = (w[t] == Color::white) ? g : g.conjugate().eval();
    Eigen::MatrixXcd next(out.rows() * f.rows(), out.cols() * f.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) {
        next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = out(i, j) * f;
      }
    }
    out = std::move(next);
  }
  return out;
}

Eigen::MatrixXd dense(const TensorMap& t) {
  const Index r = t.rows(), c = t.cols();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  for (const auto& [idx, v] : t.entries().entries()) {
    m(static_cast<Eigen::Index>(idx % r), static_cast<Eigen::Index>(idx / r)) = v.get_d();
  }
  return m;
}

double intertwining_residual(const TensorMap& t, const Eigen::MatrixXcd& g) {
  if (static_cast<std::size_t>(g.rows()) != t.n() || g.rows() != g.cols()) {
    throw PreconditionError("intertwines: matrix size differs from n");
  }
  const Eigen::MatrixXcd tm = dense(t).cast<std::complex<double>>();
  const Eigen::MatrixXcd diff = tensor_power(g, t.lower()) * tm - tm * tensor_power(g, t.upper());
  return diff.cwiseAbs().maxCoeff();
}

bool intertwines(const TensorMap& t, const Eigen::MatrixXcd& g, double tolerance) {
  double scale = 1.0;
  for (const auto& [idx, v] : t.entries().entries()) scale = std::max(scale, std::abs(v.get_d()));
  return intertwining_residual(t, g) <= tolerance * scale;
}

}  // namespace partcat
