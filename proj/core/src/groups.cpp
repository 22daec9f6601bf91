#include "partcat/groups.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "partcat/errors.hpp"
#include "partcat/linmaps.hpp"
#include "partcat/parallel.hpp"
#include "partcat/tensor_map.hpp"

namespace partcat {

namespace {

std::size_t even_lcm(std::size_t a) { return std::lcm<std::size_t>(2, a); }

std::vector<MonomialMatrix> common_order(const std::vector<MonomialMatrix>& gs) {
  std::size_t m = 2;
  for (const auto& g : gs) m = std::lcm(m, g.m);
  std::vector<MonomialMatrix> out;
  out.reserve(gs.size());
  for (const auto& g : gs) out.push_back(g.lifted(m));
  return out;
}

// Closure of a generating set under products.
std::vector<MonomialMatrix> generate(const std::vector<MonomialMatrix>& gens, std::size_t n,
                                     std::size_t m, std::size_t limit) {
  std::set<MonomialMatrix> seen{MonomialMatrix::identity(n, m)};
  std::vector<MonomialMatrix> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<MonomialMatrix> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        auto y = g * x;
        if (seen.insert(y).second) {
          if (seen.size() > limit) throw BudgetExceededError("elements: group exceeds the limit");
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// Greedy generating subset: keep an element when it is outside the subgroup
// generated by the ones kept so far.
std::vector<MonomialMatrix> greedy_generators(const std::vector<MonomialMatrix>& all,
                                              std::size_t n, std::size_t m) {
  std::vector<MonomialMatrix> gens;
  std::set<MonomialMatrix> sub{MonomialMatrix::identity(n, m)};
  for (const auto& g : all) {
    if (sub.count(g)) continue;
    gens.push_back(g);
    auto closed = generate(gens, n, m, all.size() + 1);
    sub = std::set<MonomialMatrix>(closed.begin(), closed.end());
    if (sub.size() == all.size()) break;
  }
  return gens;
}

MonomialMatrix transposition(std::size_t n, std::size_t m) {
  auto g = MonomialMatrix::identity(n, m);
  std::swap(g.perm[0], g.perm[1]);
  return g;
}

MonomialMatrix long_cycle(std::size_t n, std::size_t m) {
  auto g = MonomialMatrix::identity(n, m);
  for (std::size_t i = 0; i < n; ++i) g.perm[i] = (i + 1) % n;
  return g;
}

std::vector<MonomialMatrix> permutation_generators(std::size_t n, std::size_t m) {
  if (n < 2) return {};
  return {transposition(n, m), long_cycle(n, m)};
}

// Image of basis tuple `idx` under g^{⊗w}: target index and phase exponent.
std::pair<Index, std::size_t> act(const MonomialMatrix& g, const ColoredWord& w, Index idx,
                                  std::size_t n, std::vector<std::size_t>& digits) {
  const std::size_t r = w.size();
  digits.resize(r);
  for (std::size_t t = r; t-- > 0;) {
    digits[t] = static_cast<std::size_t>(idx % n);
    idx /= n;
  }
  Index target = 0;
  std::size_t e = 0;
  for (std::size_t t = 0; t < r; ++t) {
    const std::size_t p = g.phase[digits[t]];
    e += w[t] == Color::white ? p : (g.m - p) % g.m;
    target = target * n + g.perm[digits[t]];
  }
  return {target, e % g.m};
}

Index space_size(std::size_t n, std::size_t r, Index budget) {
  Index size = 1;
  for (std::size_t t = 0; t < r; ++t) {
    if (size > budget / std::max<std::size_t>(n, 1)) {
      throw BudgetExceededError("intertwiner space: n^legs exceeds the budget");
    }
    size *= n;
  }
  if (size > budget) throw BudgetExceededError("intertwiner space: n^legs exceeds the budget");
  return size;
}

Rational unit_sign(std::size_t e, std::size_t m) {
  if (e % m == 0) return 1;
  if (2 * (e % m) == m) return -1;
  throw PreconditionError("fixed space has no rational basis (phase " + std::to_string(e) + "/" +
                          std::to_string(m) + ")");
}

Eigen::VectorXcd dense_vector(const SparseVector& v, Index size) {
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(size));
  for (const auto& [idx, val] : v.entries()) x(static_cast<Eigen::Index>(idx)) = val.get_d();
  return x;
}

Eigen::MatrixXcd orthonormal_columns(const Eigen::MatrixXcd& a) {
  if (a.cols() == 0) return a;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
  const auto rank = qr.rank();
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(a.rows(), rank);
  return q;
}

}  // namespace

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::SN: return "SN";
    case GroupKind::HNs: return "HNs";
    case GroupKind::HNsd: return "HNsd";
    case GroupKind::Finite: return "Finite";
    case GroupKind::ON: return "ON";
    case GroupKind::UN: return "UN";
    case GroupKind::UNd: return "UNd";
    case GroupKind::BN: return "BN";
    case GroupKind::CN: return "CN";
    case GroupKind::Conjugated: return "Conjugated";
  }
  return "?";
}

std::string to_string(FixMethod method) {
  switch (method) {
    case FixMethod::automatic: return "automatic";
    case FixMethod::exact_average: return "exact_average";
    case FixMethod::generator_check: return "generator_check";
    case FixMethod::sampled: return "sampled";
  }
  return "?";
}

GroupModel GroupModel::SN(std::size_t n) {
  if (n == 0) throw PreconditionError("group: n must be positive");
  GroupModel g;
  g.kind = GroupKind::SN;
  g.n = n;
  return g;
}

GroupModel GroupModel::HNs(std::size_t n, std::size_t s) {
  if (s == 0) throw PreconditionError("HNs: s must be positive");
  GroupModel g = SN(n);
  g.kind = GroupKind::HNs;
  g.s = s;
  return g;
}

GroupModel GroupModel::HNsd(std::size_t n, std::size_t s, std::size_t d) {
  GroupModel g = HNs(n, s);
  if (d == 0 || d % 2 != 0 || even_lcm(s) % d != 0) {
    throw PreconditionError("HNsd: need 2 | d | lcm(2, s), got s=" + std::to_string(s) +
                            " d=" + std::to_string(d));
  }
  g.kind = GroupKind::HNsd;
  g.d = d;
  return g;
}

GroupModel GroupModel::finite(std::vector<MonomialMatrix> gens) {
  if (gens.empty()) throw PreconditionError("finite group: give at least one matrix");
  const std::size_t n = gens.front().n();
  for (const auto& g : gens) {
    if (g.n() != n) throw PreconditionError("finite group: matrix sizes differ");
  }
  GroupModel g = SN(n);
  g.kind = GroupKind::Finite;
  g.given = common_order(gens);
  return g;
}

GroupModel GroupModel::trivial(std::size_t n) { return finite({MonomialMatrix::identity(n, 2)}); }

namespace {
GroupModel sampled(GroupKind kind, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw PreconditionError("group: n must be positive");
  GroupModel g;
  g.kind = kind;
  g.n = n;
  g.seed = seed;
  return g;
}
}  // namespace

GroupModel GroupModel::ON(std::size_t n, std::uint64_t seed) { return sampled(GroupKind::ON, n, seed); }
GroupModel GroupModel::UN(std::size_t n, std::uint64_t seed) { return sampled(GroupKind::UN, n, seed); }
GroupModel GroupModel::UNd(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (d == 0) throw PreconditionError("UNd: d must be positive");
  GroupModel g = sampled(GroupKind::UNd, n, seed);
  g.d = d;
  return g;
}
GroupModel GroupModel::BN(std::size_t n, std::uint64_t seed) { return sampled(GroupKind::BN, n, seed); }
GroupModel GroupModel::CN(std::size_t n, std::uint64_t seed) { return sampled(GroupKind::CN, n, seed); }

GroupModel GroupModel::conjugated(const GroupModel& base, Eigen::MatrixXcd f) {
  if (f.rows() != static_cast<Eigen::Index>(base.n) || f.cols() != f.rows()) {
    throw PreconditionError("conjugated: F must be n x n");
  }
  if (!(f * f.adjoint()).isIdentity(1e-10)) throw PreconditionError("conjugated: F must be unitary");
  GroupModel g = sampled(GroupKind::Conjugated, base.n, base.seed);
  g.base = std::make_shared<const GroupModel>(base);
  g.conjugator = std::move(f);
  return g;
}

bool GroupModel::exact() const {
  return kind == GroupKind::SN || kind == GroupKind::HNs || kind == GroupKind::HNsd ||
         kind == GroupKind::Finite;
}

std::size_t GroupModel::phase_order() const {
  switch (kind) {
    case GroupKind::SN: return 2;
    case GroupKind::HNs:
    case GroupKind::HNsd: return even_lcm(s);
    case GroupKind::Finite: return given.front().m;
    default: throw PreconditionError("phase_order: sampled group");
  }
}

bool GroupModel::real() const {
  switch (kind) {
    case GroupKind::SN:
    case GroupKind::ON:
    case GroupKind::BN: return true;
    case GroupKind::HNs:
    case GroupKind::HNsd: return s <= 2;
    case GroupKind::Finite:
      return std::all_of(given.begin(), given.end(), [](const MonomialMatrix& g) {
        return std::all_of(g.phase.begin(), g.phase.end(),
                           [&](std::size_t p) { return 2 * p % g.m == 0; });
      });
    case GroupKind::Conjugated: return base->real() && conjugator.imag().isZero(1e-12);
    default: return false;
  }
}

std::string GroupModel::name() const {
  const std::string N = std::to_string(n);
  switch (kind) {
    case GroupKind::SN: return "S_" + N;
    case GroupKind::HNs: return "H_" + N + "^" + std::to_string(s);
    case GroupKind::HNsd: return "H_" + N + "^{" + std::to_string(s) + "," + std::to_string(d) + "}";
    case GroupKind::Finite: return "Finite_" + N + "(" + std::to_string(given.size()) + " gens)";
    case GroupKind::ON: return "O_" + N;
    case GroupKind::UN: return "U_" + N;
    case GroupKind::UNd: return "U_" + N + "^" + std::to_string(d);
    case GroupKind::BN: return "B_" + N;
    case GroupKind::CN: return "C_" + N;
    case GroupKind::Conjugated: return "F " + base->name() + " F*";
  }
  return "?";
}

GroupModel group_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const std::size_t n = kind == "Conjugated" ? j.at("base").at("N").get<std::size_t>()
                                               : j.at("N").get<std::size_t>();
    const std::uint64_t seed = j.value("seed", std::uint64_t{0});
    if (kind == "SN") return GroupModel::SN(n);
    if (kind == "HNs") return GroupModel::HNs(n, j.at("s").get<std::size_t>());
    if (kind == "HNsd") {
      return GroupModel::HNsd(n, j.at("s").get<std::size_t>(), j.at("d").get<std::size_t>());
    }
    if (kind == "Trivial") return GroupModel::trivial(n);
    if (kind == "Finite") {
      std::vector<MonomialMatrix> gens;
      for (const auto& e : j.at("generators")) {
        MonomialMatrix g;
        g.perm = e.at("perm").get<std::vector<std::size_t>>();
        g.phase = e.value("phase", std::vector<std::size_t>(g.perm.size(), 0));
        g.m = e.value("m", std::size_t{2});
        if (g.perm.size() != n || g.phase.size() != n) throw ParseError("Finite: generator size != N");
        std::vector<std::size_t> check = g.perm;
        std::sort(check.begin(), check.end());
        for (std::size_t i = 0; i < n; ++i) {
          if (check[i] != i) throw ParseError("Finite: perm is not a permutation");
        }
        for (auto& p : g.phase) p %= g.m;
        gens.push_back(std::move(g));
      }
      return GroupModel::finite(std::move(gens));
    }
    if (kind == "ON") return GroupModel::ON(n, seed);
    if (kind == "UN") return GroupModel::UN(n, seed);
    if (kind == "UNd") return GroupModel::UNd(n, j.at("d").get<std::size_t>(), seed);
    if (kind == "BN") return GroupModel::BN(n, seed);
    if (kind == "CN") return GroupModel::CN(n, seed);
    if (kind == "Conjugated") {
      const GroupModel base = group_from_json(j.at("base"));
      Eigen::MatrixXcd f(base.n, base.n);
      const auto& rows = j.at("F");
      if (rows.size() != base.n) throw ParseError("Conjugated: F has the wrong shape");
      for (std::size_t r = 0; r < base.n; ++r) {
        if (rows[r].size() != base.n) throw ParseError("Conjugated: F has the wrong shape");
        for (std::size_t c = 0; c < base.n; ++c) {
          const auto& x = rows[r][c];
          f(r, c) = x.is_array() ? std::complex<double>(x.at(0).get<double>(), x.at(1).get<double>())
                                 : std::complex<double>(x.get<double>(), 0);
        }
      }
      return GroupModel::conjugated(base, f);
    }
    throw ParseError("unknown group kind: " + kind);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("group spec: ") + e.what());
  }
}

nlohmann::json to_json(const GroupModel& g) {
  nlohmann::json j{{"kind", to_string(g.kind)}, {"N", g.n}};
  switch (g.kind) {
    case GroupKind::HNs: j["s"] = g.s; break;
    case GroupKind::HNsd:
      j["s"] = g.s;
      j["d"] = g.d;
      break;
    case GroupKind::Finite: {
      nlohmann::json gens = nlohmann::json::array();
      for (const auto& x : g.given) gens.push_back({{"perm", x.perm}, {"phase", x.phase}, {"m", x.m}});
      j["generators"] = gens;
      break;
    }
    case GroupKind::UNd:
      j["d"] = g.d;
      j["seed"] = g.seed;
      break;
    case GroupKind::Conjugated: {
      j["base"] = to_json(*g.base);
      nlohmann::json rows = nlohmann::json::array();
      for (Eigen::Index r = 0; r < g.conjugator.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < g.conjugator.cols(); ++c) {
          row.push_back({g.conjugator(r, c).real(), g.conjugator(r, c).imag()});
        }
        rows.push_back(row);
      }
      j["F"] = rows;
      break;
    }
    case GroupKind::SN: break;
    default: j["seed"] = g.seed;
  }
  return j;
}

std::vector<MonomialMatrix> elements(const GroupModel& g, std::size_t limit) {
  if (!g.exact()) throw PreconditionError("elements: " + g.name() + " is not a finite kind");
  const std::size_t n = g.n, m = g.phase_order();
  if (g.kind == GroupKind::Finite) return generate(g.given, n, m, limit);

  const std::size_t s = g.kind == GroupKind::SN ? 1 : g.s;
  double expected = std::pow(static_cast<double>(s), static_cast<double>(n));
  for (std::size_t i = 2; i <= n; ++i) expected *= static_cast<double>(i);
  if (expected > static_cast<double>(limit)) {
    throw BudgetExceededError("elements: " + g.name() + " exceeds the limit");
  }
  std::vector<MonomialMatrix> out;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<std::size_t> rho(n, 0);
    while (true) {
      MonomialMatrix x;
      x.m = m;
      x.perm = perm;
      x.phase.resize(n);
      for (std::size_t i = 0; i < n; ++i) x.phase[i] = rho[i] * (m / s);
      if (g.kind != GroupKind::HNsd || (x.det_phase() * g.d) % m == 0) out.push_back(std::move(x));
      std::size_t i = 0;
      while (i < n && ++rho[i] == s) rho[i++] = 0;
      if (i == n) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MonomialMatrix> generators(const GroupModel& g) {
  if (!g.exact()) throw PreconditionError("generators: " + g.name() + " is not a finite kind");
  const std::size_t n = g.n, m = g.phase_order();
  switch (g.kind) {
    case GroupKind::SN: return permutation_generators(n, m);
    case GroupKind::HNs: {
      auto gens = permutation_generators(n, m);
      if (g.s > 1) {
        auto diag = MonomialMatrix::identity(n, m);
        diag.phase[0] = m / g.s;
        gens.push_back(diag);
      }
      return gens;
    }
    case GroupKind::HNsd: return greedy_generators(elements(g), n, m);
    default: return g.given;
  }
}

Eigen::MatrixXcd haar_orthogonal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd z(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t j = 0; j < n; ++j) {
    if (r(j, j) < 0) q.col(j) *= -1;
  }
  return q.cast<std::complex<double>>();
}

Eigen::MatrixXcd haar_unitary(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd z(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z(i, j) = {normal(rng), normal(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

Eigen::MatrixXd flat_frame(std::size_t n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  a.col(0).setOnes();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  if (q(0, 0) < 0) q.col(0) *= -1;
  return q;
}

HaarSampler::HaarSampler(const GroupModel& g, std::uint64_t seed) : g_(g), rng_(seed) {
  if (g.exact()) finite_ = elements(g);
  if (g.kind == GroupKind::Conjugated) inner_ = std::make_shared<HaarSampler>(*g.base, seed);
}

Eigen::MatrixXcd HaarSampler::next() {
  const std::size_t n = g_.n;
  switch (g_.kind) {
    case GroupKind::ON: return haar_orthogonal(n, rng_);
    case GroupKind::UN: return haar_unitary(n, rng_);
    case GroupKind::UNd: {
      Eigen::MatrixXcd u = haar_unitary(n, rng_);
      std::uniform_int_distribution<std::size_t> pick(0, g_.d - 1);
      const std::complex<double> target =
          std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(pick(rng_)) / static_cast<double>(g_.d));
      u.col(0) *= target / u.determinant();
      return u;
    }
    case GroupKind::BN:
    case GroupKind::CN: {
      const Eigen::MatrixXcd f = flat_frame(n).cast<std::complex<double>>();
      Eigen::MatrixXcd block = Eigen::MatrixXcd::Identity(n, n);
      if (n > 1) {
        block.bottomRightCorner(n - 1, n - 1) =
            g_.kind == GroupKind::BN ? haar_orthogonal(n - 1, rng_) : haar_unitary(n - 1, rng_);
      }
      return f * block * f.adjoint();
    }
    case GroupKind::Conjugated: return g_.conjugator * inner_->next() * g_.conjugator.adjoint();
    default: {
      std::uniform_int_distribution<std::size_t> pick(0, finite_.size() - 1);
      return finite_[pick(rng_)].dense();
    }
  }
}

Eigen::MatrixXcd haar_sample(const GroupModel& g, std::uint64_t seed) {
  if (g.exact()) throw PreconditionError("haar_sample: " + g.name() + " is an exact kind");
  return HaarSampler(g, seed).next();
}

std::vector<SparseVector> fixed_vectors_average(const std::vector<MonomialMatrix>& elems,
                                                const ColoredWord& w, std::size_t n) {
  if (elems.empty()) throw PreconditionError("fixed vectors: empty element list");
  const auto gs = common_order(elems);
  const std::size_t m = gs.front().m;
  const Index size = space_size(n, w.size(), Index{1} << 40);
  std::vector<bool> visited(size, false);
  std::vector<SparseVector> out;
  using Sums = std::map<Index, std::vector<long>>;
  for (Index t = 0; t < size; ++t) {
    if (visited[t]) continue;
    // P e_t up to the factor |G|, as phase histograms per target tuple
    Sums sums = parallel_chunks(
        gs.size(), Sums{},
        [&](std::size_t lo, std::size_t hi) {
          Sums part;
          std::vector<std::size_t> digits;
          for (std::size_t i = lo; i < hi; ++i) {
            auto [target, e] = act(gs[i], w, t, n, digits);
            auto& h = part[target];
            if (h.empty()) h.assign(m, 0);
            ++h[e];
          }
          return part;
        },
        [m](Sums a, Sums b) {
          for (auto& [k, h] : b) {
            auto& x = a[k];
            if (x.empty()) x.assign(m, 0);
            for (std::size_t e = 0; e < m; ++e) x[e] += h[e];
          }
          return a;
        });
    auto value = [m](const std::vector<long>& h) {
      return Cyclotomic::from_powers(m, std::vector<Rational>(h.begin(), h.end()));
    };
    for (const auto& [target, h] : sums) visited[target] = true;
    const Cyclotomic lead = value(sums.at(t));
    if (lead.is_rational() && sgn(lead.rational()) == 0) continue;
    const Rational lead_q = lead.rational();
    std::vector<SparseVector::Entry> entries;
    for (const auto& [target, h] : sums) {
      const Cyclotomic c = value(h);
      if (!c.is_rational()) {
        throw PreconditionError("fixed space has no rational basis: coefficient " + c.str());
      }
      entries.emplace_back(target, c.rational() / lead_q);
    }
    out.emplace_back(std::move(entries));
  }
  return out;
}

std::vector<SparseVector> fixed_vectors_generators(const std::vector<MonomialMatrix>& gens_in,
                                                   const ColoredWord& w, std::size_t n) {
  const auto gens = gens_in.empty() ? gens_in : common_order(gens_in);
  const std::size_t m = gens.empty() ? 2 : gens.front().m;
  const Index size = space_size(n, w.size(), Index{1} << 40);
  // x_s = ζ^{offset[s]} x_{parent[s]}
  std::vector<Index> parent(size);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::size_t> offset(size, 0);
  std::vector<bool> broken(size, false);
  auto find = [&](Index s) {
    std::vector<Index> path;
    while (parent[s] != s) {
      path.push_back(s);
      s = parent[s];
    }
    // compress from the top so each offset becomes relative to the root
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const Index p = parent[*it];
      if (p != s) offset[*it] = (offset[*it] + offset[p]) % m;
      parent[*it] = s;
    }
    return s;
  };
  std::vector<std::size_t> digits;
  for (const auto& g : gens) {
    for (Index t = 0; t < size; ++t) {
      auto [gt, e] = act(g, w, t, n, digits);
      // constraint x_{gt} = ζ^e x_t
      const Index ra = find(gt), rb = find(t);
      const std::size_t rel = (e + offset[t] + m - offset[gt] % m) % m;
      if (ra == rb) {
        if (rel != 0) broken[ra] = true;
      } else {
        parent[ra] = rb;
        offset[ra] = rel;
        broken[rb] = broken[rb] || broken[ra];
      }
    }
  }
  std::map<Index, std::vector<SparseVector::Entry>> comps;
  for (Index t = 0; t < size; ++t) {
    const Index r = find(t);
    if (broken[r]) continue;
    comps[r].emplace_back(t, unit_sign(t == r ? 0 : offset[t], m));
  }
  std::vector<std::pair<Index, SparseVector>> ordered;
  for (auto& [r, entries] : comps) {
    SparseVector v(std::move(entries));
    const Rational lead = v.leading_value();
    v.scale(1 / lead);
    ordered.emplace_back(v.leading_index(), std::move(v));
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<SparseVector> out;
  for (auto& [k, v] : ordered) out.push_back(std::move(v));
  return out;
}

std::size_t IntertwinerSpace::dim() const {
  return basis ? basis->dim() : static_cast<std::size_t>(numeric.cols());
}

double IntertwinerSpace::residual(const TensorMap& t) const {
  if (t.upper() != upper || t.lower() != lower || t.n() != n) {
    throw WordMismatchError("residual: map context differs from the space");
  }
  const TensorMap v = to_one_row(t);
  const Index size = checked_pow(n, v.legs());
  const Eigen::VectorXcd x = dense_vector(v.entries(), size);
  const double norm = x.norm();
  if (norm == 0) return 0;
  Eigen::MatrixXcd q = numeric;
  if (basis) {
    if (basis->contains(t)) return 0;
    SpanBasis one_row({}, v.lower(), n);
    for (const auto& m : basis->maps()) one_row.insert(to_one_row(m));
    const auto rows = one_row.rows();
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) a.col(static_cast<Eigen::Index>(i)) = dense_vector(rows[i], size);
    q = orthonormal_columns(a);
  }
  if (q.cols() == 0) return 1;
  return (x - q * (q.adjoint() * x)).norm() / norm;
}

bool IntertwinerSpace::contains(const TensorMap& t, double tolerance) const {
  if (basis) return basis->contains(t);
  return residual(t) < tolerance;
}

IntertwinerSpace intertwiner_space(const GroupModel& g, const ColoredWord& upper,
                                   const ColoredWord& lower, const FixOptions& options) {
  IntertwinerSpace out;
  out.upper = upper;
  out.lower = lower;
  out.n = g.n;
  const ColoredWord w = upper.conjugate().concat(lower);
  const Index size = space_size(g.n, w.size(), options.budget);

  FixMethod method = options.method;
  if (method == FixMethod::automatic) {
    method = g.exact() ? FixMethod::exact_average : FixMethod::sampled;
  }
  if (method != FixMethod::sampled && !g.exact()) {
    throw PreconditionError("intertwiner_space: exact methods need a finite kind");
  }
  out.method = method;

  if (method != FixMethod::sampled) {
    const auto vectors = method == FixMethod::exact_average
                             ? fixed_vectors_average(elements(g), w, g.n)
                             : fixed_vectors_generators(generators(g), w, g.n);
    SpanBasis basis(upper, lower, g.n);
    for (const auto& v : vectors) basis.insert(from_one_row(TensorMap({}, w, g.n, v), upper.size()));
    out.basis = std::move(basis);
    return out;
  }

  const auto dim = static_cast<Eigen::Index>(size);
  const std::size_t samples = std::max<std::size_t>(1, options.samples);
  HaarSampler sampler(g, g.seed);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  for (std::size_t i = 0; i < samples; ++i) {
    const Eigen::MatrixXcd a = tensor_power(sampler.next(), w) - id;
    h.noalias() += a.adjoint() * a;
  }
  h /= static_cast<double>(samples);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
  const Eigen::VectorXd values = eig.eigenvalues();
  const double top = values.size() ? values.maxCoeff() : 0.0;
  const double cut = options.threshold * top;
  Eigen::Index rank = 0;
  while (rank < values.size() && values(rank) <= cut) ++rank;
  out.numeric = eig.eigenvectors().leftCols(rank);
  out.spectrum.assign(values.data(), values.data() + values.size());
  out.threshold = options.threshold;
  out.samples = samples;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) > 0.1 * cut && values(i) < 10 * cut) out.ill_conditioned = true;
  }
  return out;
}

MomentReport character_moment(const GroupModel& g, std::size_t k, const Rational& t,
                              std::size_t samples) {
  if (sgn(t) <= 0 || t > 1) throw PreconditionError("character_moment: t must lie in (0, 1]");
  MomentReport r;
  r.k = k;
  r.t = t;
  const Rational scaled = t * static_cast<unsigned long>(g.n);
  const mpz_class floor_value = scaled.get_num() / scaled.get_den();
  const std::size_t cut = floor_value.get_ui();

  if (g.exact()) {
    const auto elems = elements(g);
    const std::size_t m = elems.front().m;
    using Hist = std::vector<Rational>;
    // Σ_g χ_t(g)^k in the group ring of Z_m
    Hist total = parallel_chunks(
        elems.size(), Hist(m, 0),
        [&](std::size_t lo, std::size_t hi) {
          Hist part(m, 0);
          for (std::size_t i = lo; i < hi; ++i) {
            const auto& x = elems[i];
            std::vector<long> chi(m, 0);
            for (std::size_t j = 0; j < cut; ++j) {
              if (x.perm[j] == j) ++chi[x.phase[j]];
            }
            std::vector<Rational> pw(m, 0);
            pw[0] = 1;
            for (std::size_t step = 0; step < k; ++step) {
              std::vector<Rational> next(m, 0);
              for (std::size_t a = 0; a < m; ++a) {
                if (sgn(pw[a]) == 0) continue;
                for (std::size_t b = 0; b < m; ++b) {
                  if (chi[b]) next[(a + b) % m] += pw[a] * chi[b];
                }
              }
              pw = std::move(next);
            }
            for (std::size_t e = 0; e < m; ++e) part[e] += pw[e];
          }
          return part;
        },
        [m](Hist a, Hist b) {
          for (std::size_t e = 0; e < m; ++e) a[e] += b[e];
          return a;
        });
    Cyclotomic v = Cyclotomic::from_powers(m, total);
    v *= Rational(1, static_cast<unsigned long>(elems.size()));
    r.exact = true;
    r.estimate = v.value();
    r.value = std::move(v);
    return r;
  }

  HaarSampler sampler(g, g.seed);
  std::complex<double> acc = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Eigen::MatrixXcd u = sampler.next();
    std::complex<double> chi = 0;
    for (std::size_t j = 0; j < cut; ++j) chi += u(j, j);
    acc += std::pow(chi, static_cast<int>(k));
  }
  r.samples = samples;
  r.estimate = acc / static_cast<double>(samples);
  return r;
}

nlohmann::json to_json(const MomentReport& r) {
  nlohmann::json j{{"k", r.k}, {"t", r.t.get_str()}, {"exact", r.exact},
                   {"estimate", {r.estimate.real(), r.estimate.imag()}}};
  if (r.value) j["value"] = r.value->str();
  if (!r.exact) j["samples"] = r.samples;
  return j;
}

}  // namespace partcat
