#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "partcat/errors.hpp"
#include "partcat/groups.hpp"
#include "partcat/linmaps.hpp"

using namespace partcat;

namespace {

ColoredWord w(const char* s) { return ColoredWord::parse(s); }

// dim of the fixed space as the trace of the averaged projector, using
// tr(g^{⊗w}) = Π tr(g or ḡ)
double projector_trace(const std::vector<MonomialMatrix>& elems, const ColoredWord& word) {
  std::complex<double> total = 0;
  for (const auto& g : elems) {
    const std::complex<double> tr = g.dense().trace();
    std::complex<double> p = 1;
    for (std::size_t t = 0; t < word.size(); ++t) p *= word[t] == Color::white ? tr : std::conj(tr);
    total += p;
  }
  return total.real() / static_cast<double>(elems.size());
}

// number of set partitions of r points whose block sizes are all multiples of s
std::uint64_t partitions_with_block_multiple(std::size_t r, std::size_t s) {
  // f(r) = Σ_{j ≡ 0 (s), 1 ≤ j ≤ r} C(r-1, j-1) f(r-j)
  std::vector<std::uint64_t> f(r + 1, 0);
  f[0] = 1;
  auto choose = [](std::size_t a, std::size_t b) {
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < b; ++i) c = c * (a - i) / (i + 1);
    return c;
  };
  for (std::size_t m = 1; m <= r; ++m)
    for (std::size_t j = s; j <= m; j += s) f[m] += choose(m - 1, j - 1) * f[m - j];
  return f[r];
}

// pairings of a one-row word joining opposite colors
std::uint64_t matching_pairings(const ColoredWord& word) {
  if (word.empty()) return 1;
  std::uint64_t total = 0;
  for (std::size_t j = 1; j < word.size(); ++j) {
    if (word[j] == word[0]) continue;
    ColoredWord rest = word.slice(1, j).concat(word.slice(j + 1, word.size()));
    total += matching_pairings(rest);
  }
  return total;
}

}  // namespace

TEST(CyclotomicTest, Arithmetic) {
  EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<long>{1, 0, -1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<long>{-1, 1}));
  auto i = Cyclotomic::root(4, 1);
  EXPECT_EQ((i * i).rational(), -1);
  EXPECT_EQ((Cyclotomic::root(3, 1) + Cyclotomic::root(3, 2)).rational(), -1);
  EXPECT_EQ(i.conjugate(), Cyclotomic::root(4, 3));
  EXPECT_FALSE(i.is_rational());
  EXPECT_THROW(i.rational(), PreconditionError);
  std::vector<Rational> all(6, 1);
  EXPECT_EQ(Cyclotomic::from_powers(6, all).rational(), 0);
  EXPECT_NEAR(std::abs(Cyclotomic::root(5, 2).value() - std::polar(1.0, 4 * M_PI / 5)), 0, 1e-12);
}

TEST(Elements, Counts) {
  EXPECT_EQ(elements(GroupModel::SN(4)).size(), 24u);
  EXPECT_EQ(elements(GroupModel::HNs(3, 2)).size(), 48u);
  EXPECT_EQ(elements(GroupModel::HNs(2, 3)).size(), 18u);
  EXPECT_EQ(elements(GroupModel::HNsd(3, 4, 2)).size(), 192u);
  EXPECT_EQ(elements(GroupModel::HNsd(3, 4, 4)).size(), 384u);
  EXPECT_EQ(elements(GroupModel::trivial(3)).size(), 1u);
  EXPECT_THROW(elements(GroupModel::UN(2)), PreconditionError);
  EXPECT_THROW(GroupModel::HNsd(3, 4, 3), PreconditionError);
  EXPECT_THROW(GroupModel::HNsd(3, 3, 3), PreconditionError);
  EXPECT_THROW(elements(GroupModel::SN(9), 1000), BudgetExceededError);
}

TEST(Elements, HNsdMatchesDeterminantCondition) {
  for (auto [n, s, d] : {std::tuple{2, 4, 2}, {3, 4, 2}, {3, 6, 2}, {3, 3, 6}, {3, 3, 2}, {2, 6, 6}}) {
    // brute force: all monomial matrices over Z_s with det^d = 1, via dense determinants
    auto all = elements(GroupModel::HNs(n, s));
    std::size_t expected = 0;
    for (const auto& g : all) {
      const auto det = g.dense().determinant();
      if (std::abs(std::pow(det, d) - 1.0) < 1e-9) ++expected;
    }
    auto sub = elements(GroupModel::HNsd(n, s, d));
    EXPECT_EQ(sub.size(), expected) << n << " " << s << " " << d;
    for (const auto& g : sub) {
      EXPECT_NEAR(std::abs(std::pow(g.dense().determinant(), d) - 1.0), 0, 1e-9);
      EXPECT_EQ(std::set<std::size_t>(g.perm.begin(), g.perm.end()).size(), static_cast<std::size_t>(n));
      for (auto p : g.phase) EXPECT_EQ(p * static_cast<std::size_t>(s) % g.m, 0u);
    }
  }
}

TEST(Elements, H242IsH2UnionIH2) {
  auto h2 = elements(GroupModel::HNs(2, 2));
  std::set<MonomialMatrix> expected;
  for (const auto& g : h2) {
    auto x = g.lifted(4);
    expected.insert(x);
    for (auto& p : x.phase) p = (p + 1) % 4;
    expected.insert(x);
  }
  auto h = elements(GroupModel::HNsd(2, 4, 2));
  EXPECT_EQ(h.size(), 16u);
  EXPECT_EQ(std::set<MonomialMatrix>(h.begin(), h.end()), expected);
}

TEST(Generators, GenerateTheGroup) {
  for (const auto& g : {GroupModel::SN(4), GroupModel::HNs(3, 3), GroupModel::HNsd(3, 4, 2)}) {
    auto gens = generators(g);
    auto closure = elements(GroupModel::finite(gens));
    EXPECT_EQ(closure, elements(g)) << g.name();
  }
}

TEST(FixSpace, Examples) {
  auto s4 = intertwiner_space(GroupModel::SN(4), {}, w("oo"));
  EXPECT_EQ(s4.dim(), 2u);
  EXPECT_NEAR(projector_trace(elements(GroupModel::SN(4)), w("oo")), 2.0, 1e-9);
  EXPECT_EQ(intertwiner_space(GroupModel::HNsd(2, 4, 2), {}, w("o")).dim(), 0u);
  EXPECT_EQ(intertwiner_space(GroupModel::trivial(3), {}, w("o")).dim(), 3u);
  EXPECT_EQ(intertwiner_space(GroupModel::trivial(2), w("o"), w("o")).dim(), 4u);
}

TEST(FixSpace, BellAndEvenBlockCounts) {
  for (std::size_t r = 0; r <= 4; ++r) {
    const auto word = ColoredWord::white(r);
    EXPECT_EQ(intertwiner_space(GroupModel::SN(4), {}, word).dim(), oracle::bell_numbers(5)[r]);
    EXPECT_EQ(intertwiner_space(GroupModel::HNs(4, 2), {}, word).dim(),
              partitions_with_block_multiple(r, 2));
    EXPECT_NEAR(projector_trace(elements(GroupModel::HNs(4, 2)), word),
                static_cast<double>(partitions_with_block_multiple(r, 2)), 1e-9);
  }
  // S_N is easy: Fix is spanned by all partition maps once N ≥ legs
  auto space = intertwiner_space(GroupModel::SN(3), w("oo"), w("o"));
  SpanBasis span(w("oo"), w("o"), 3);
  for (const auto& p : enumerate(w("oo"), w("o"))) span.insert(build_map(p, 3));
  EXPECT_EQ(*space.basis, span);
}

TEST(FixSpace, MethodsAgree) {
  const std::vector<GroupModel> groups{GroupModel::SN(3), GroupModel::HNs(3, 2), GroupModel::HNs(2, 3),
                                       GroupModel::HNsd(2, 4, 2), GroupModel::HNsd(3, 4, 2),
                                       GroupModel::HNs(2, 4)};
  for (const auto& g : groups) {
    for (std::size_t r = 0; r <= 6; ++r) {
      if (std::pow(static_cast<double>(g.n), static_cast<double>(r)) > 1e4) continue;
      for (const auto& word : all_words(r)) {
        FixOptions a, b;
        a.method = FixMethod::exact_average;
        b.method = FixMethod::generator_check;
        auto x = intertwiner_space(g, {}, word, a);
        auto y = intertwiner_space(g, {}, word, b);
        EXPECT_EQ(*x.basis, *y.basis) << g.name() << " " << word.str();
        EXPECT_NEAR(projector_trace(elements(g), word), static_cast<double>(x.dim()), 1e-8)
            << g.name() << " " << word.str();
      }
    }
  }
}

TEST(FixSpace, EveryBasisMapIntertwines) {
  auto g = GroupModel::HNsd(3, 4, 2);
  auto space = intertwiner_space(g, w("ob"), w("bo"));
  ASSERT_GT(space.dim(), 0u);
  for (const auto& m : space.basis->maps()) {
    for (const auto& x : generators(g)) EXPECT_TRUE(intertwines(m, x));
  }
}

TEST(FixSpace, NonRationalSpaceIsReported) {
  // e0 -> ζ e1, e1 -> ζ^{-1} e0 fixes (1, ζ) and nothing rational
  MonomialMatrix x = MonomialMatrix::identity(2, 3);
  x.perm = {1, 0};
  x.phase = {1, 2};
  auto g = GroupModel::finite({x});
  EXPECT_THROW(intertwiner_space(g, {}, w("o")), PreconditionError);
}

TEST(FixSpace, BudgetExceeded) {
  FixOptions o;
  o.budget = 100;
  EXPECT_THROW(intertwiner_space(GroupModel::SN(4), {}, w("oooo"), o), BudgetExceededError);
}

TEST(Haar, UnitaryMoments) {
  std::mt19937_64 rng(7);
  std::complex<double> mean = 0;
  double second = 0;
  const int count = 10000;
  for (int i = 0; i < count; ++i) {
    auto u = haar_unitary(3, rng);
    mean += u(0, 0);
    second += std::norm(u(0, 0));
    if (i < 5) EXPECT_TRUE((u * u.adjoint()).isIdentity(1e-10));
  }
  EXPECT_LT(std::abs(mean / double(count)), 0.05);
  EXPECT_NEAR(second / count, 1.0 / 3.0, 0.02);
}

TEST(Haar, KindsAndReproducibility) {
  auto bn = GroupModel::BN(4, 3);
  HaarSampler s(bn, 3);
  Eigen::VectorXcd xi = Eigen::VectorXcd::Ones(4);
  for (int i = 0; i < 50; ++i) {
    auto u = s.next();
    EXPECT_LT((u * xi - xi).norm(), 1e-10);
    EXPECT_TRUE((u * u.transpose()).isIdentity(1e-10));
    EXPECT_LT(u.imag().norm(), 1e-12);
  }
  HaarSampler d(GroupModel::UNd(3, 4), 11);
  for (int i = 0; i < 50; ++i) {
    auto det = d.next().determinant();
    EXPECT_NEAR(std::abs(std::pow(det, 4) - 1.0), 0, 1e-9);
  }
  EXPECT_TRUE(haar_sample(GroupModel::ON(3), 5).isApprox(haar_sample(GroupModel::ON(3), 5)));
  EXPECT_FALSE(haar_sample(GroupModel::ON(3), 5).isApprox(haar_sample(GroupModel::ON(3), 6)));
  EXPECT_THROW(haar_sample(GroupModel::SN(3), 1), PreconditionError);
  auto f = flat_frame(5);
  EXPECT_TRUE((f * f.transpose()).isIdentity(1e-12));
  EXPECT_NEAR(f(2, 0), 1 / std::sqrt(5.0), 1e-12);
}

TEST(SampledFix, UnitaryBrauerCounts) {
  for (std::size_t n : {2u, 3u}) {
    auto g = GroupModel::UN(n, 1);
    for (std::size_t r = 0; r <= 4; ++r) {
      for (const auto& word : all_words(r)) {
        FixOptions o;
        o.samples = 200;
        auto space = intertwiner_space(g, {}, word, o);
        EXPECT_EQ(space.dim(), matching_pairings(word)) << n << " " << word.str();
        EXPECT_FALSE(space.ill_conditioned);
      }
    }
  }
}

TEST(SampledFix, ResidualsSeparate) {
  FixOptions o;
  o.samples = 200;
  auto space = intertwiner_space(GroupModel::ON(3, 2), w("oo"), w("oo"), o);
  EXPECT_EQ(space.dim(), 3u);
  EXPECT_LT(space.residual(build_map(Partition::crossing(Color::white, Color::white), 3)), 1e-8);
  EXPECT_GT(space.residual(build_map(Partition::one_block(w("oo"), w("oo")), 3)), 1e-2);
  auto exact = intertwiner_space(GroupModel::SN(3), w("oo"), w("oo"));
  EXPECT_EQ(exact.residual(build_map(Partition::one_block(w("oo"), w("oo")), 3)), 0);
  EXPECT_GT(intertwiner_space(GroupModel::HNs(3, 2), w("o"), w("o")).residual(
                build_map(Partition::parse("o|o:(1)(2)"), 3)),
            0.5);
}

TEST(Moments, BellNumbersOverS5) {
  const std::vector<int> bell{1, 2, 5, 15};
  for (std::size_t k = 1; k <= 4; ++k) {
    auto r = character_moment(GroupModel::SN(5), k, 1);
    ASSERT_TRUE(r.exact);
    EXPECT_EQ(r.value->rational(), bell[k - 1]);
  }
  EXPECT_EQ(character_moment(GroupModel::trivial(3), 1, 1).value->rational(), 3);
  // truncated: χ_{1/2} on S_4 counts fixed points among the first 2 points,
  // each fixed with probability 1/4, both with probability 1/12
  EXPECT_EQ(character_moment(GroupModel::SN(4), 1, Rational(1, 2)).value->rational(),
            Rational(1, 2));
  EXPECT_EQ(character_moment(GroupModel::SN(4), 2, Rational(1, 2)).value->rational(),
            Rational(2, 3));
  // complex reflection group: E[χ^k] counts partitions with blocks of size ≡ 0 (3)
  for (std::size_t k = 1; k <= 4; ++k) {
    EXPECT_EQ(character_moment(GroupModel::HNs(4, 3), k, 1).value->rational(),
              Rational(static_cast<long>(partitions_with_block_multiple(k, 3))));
  }
  EXPECT_THROW(character_moment(GroupModel::SN(3), 1, 0), PreconditionError);
  auto sampled = character_moment(GroupModel::ON(4, 3), 2, 1, 4000);
  EXPECT_FALSE(sampled.exact);
  EXPECT_NEAR(sampled.estimate.real(), 1.0, 0.15);
}

TEST(GroupJson, RoundTrip) {
  for (const auto& g : {GroupModel::SN(4), GroupModel::HNsd(3, 4, 2), GroupModel::HNs(2, 3),
                        GroupModel::UNd(2, 2, 9), GroupModel::BN(3, 1), GroupModel::trivial(2)}) {
    auto j = to_json(g);
    auto back = group_from_json(j);
    EXPECT_EQ(to_json(back), j);
    EXPECT_EQ(back.name(), g.name());
  }
  auto g = group_from_json(nlohmann::json::parse(R"({"kind":"HNsd","N":3,"s":4,"d":2})"));
  EXPECT_EQ(elements(g).size(), 192u);
  auto c = group_from_json(nlohmann::json::parse(
      R"({"kind":"Conjugated","base":{"kind":"SN","N":2},"F":[[0,1],[1,0]]})"));
  EXPECT_EQ(c.kind, GroupKind::Conjugated);
  EXPECT_THROW(group_from_json(nlohmann::json::parse(R"({"kind":"XN","N":3})")), ParseError);
  EXPECT_THROW(group_from_json(nlohmann::json::parse(R"({"kind":"HNsd","N":3,"s":4})")), ParseError);
}
