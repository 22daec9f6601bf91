#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "partcat/easiness.hpp"
#include "partcat/errors.hpp"
#include "partcat/linmaps.hpp"

using namespace partcat;

namespace {

ColoredWord w(const char* s) { return ColoredWord::parse(s); }

using Cd = std::complex<double>;

// Rows of (g^{⊗w} - I) applied to the one-row vectors of the given
// partitions, stacked over every group element. Built from the Kronecker
// definition of δ_π and the monomial action on basis tuples.
Eigen::MatrixXcd fixing_conditions(const std::vector<MonomialMatrix>& elems,
                                   const std::vector<Partition>& parts, std::size_t n) {
  const ColoredWord& word = parts.front().lower();
  const std::size_t len = word.size();
  std::vector<std::vector<int>> tuples;
  oracle::for_each_tuple(n, len, [&](const std::vector<int>& t) { tuples.push_back(t); });
  auto index = [&](const std::vector<int>& t) {
    std::size_t i = 0;
    for (int x : t) i = i * n + static_cast<std::size_t>(x);
    return i;
  };
  Eigen::MatrixXcd rows(static_cast<Eigen::Index>(elems.size() * tuples.size()),
                        static_cast<Eigen::Index>(parts.size()));
  rows.setZero();
  Eigen::Index r = 0;
  for (const auto& g : elems) {
    // (g v)[g·t] = ζ^e v[t]; compare with v at every target
    std::vector<std::vector<Cd>> image(parts.size(), std::vector<Cd>(tuples.size(), 0));
    for (const auto& t : tuples) {
      std::vector<int> target(len);
      long e = 0;
      for (std::size_t i = 0; i < len; ++i) {
        const auto x = static_cast<std::size_t>(t[i]);
        target[i] = static_cast<int>(g.perm[x]);
        e += word[i] == Color::white ? static_cast<long>(g.phase[x]) : -static_cast<long>(g.phase[x]);
      }
      const Cd z = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(g.m));
      for (std::size_t p = 0; p < parts.size(); ++p) {
        if (oracle::delta(parts[p], t)) image[p][index(target)] += z;
      }
    }
    for (const auto& t : tuples) {
      for (std::size_t p = 0; p < parts.size(); ++p) {
        rows(r, static_cast<Eigen::Index>(p)) = image[p][index(t)] - (oracle::delta(parts[p], t) ? 1.0 : 0.0);
      }
      ++r;
    }
  }
  return rows;
}

bool fixed_by_all(const std::vector<MonomialMatrix>& elems, const Partition& pi, std::size_t n) {
  return fixing_conditions(elems, {pi}, n).norm() < 1e-9;
}

// generated by diag(i, -i): on oo it fixes the off-diagonal vector, which is
// T_disc - T_(12), but neither map alone
GroupModel antidiagonal_phase() {
  MonomialMatrix d;
  d.m = 4;
  d.perm = {0, 1};
  d.phase = {1, 3};
  return GroupModel::finite({d});
}

std::size_t colored_bell_total(std::size_t bound) {
  const auto bell = oracle::bell_numbers(bound + 1);
  std::size_t total = 0;
  for (std::size_t r = 0; r <= bound; ++r) total += (std::size_t{1} << r) * bell[r];
  return total;
}

}  // namespace

TEST(Envelope, MatchesBruteForceFixedness) {
  for (const auto& g : {GroupModel::SN(4), GroupModel::HNs(3, 3), GroupModel::HNsd(3, 4, 2),
                        GroupModel::HNsd(2, 4, 2)}) {
    const auto env = easy_envelope(g, 4);
    const auto elems = elements(g);
    for (const auto& word : table_words(4, ClosureMode::colored)) {
      const auto& cell = env.table.cells.at(word);
      for (const auto& pi : enumerate({}, word)) {
        EXPECT_EQ(cell.count(pi) == 1, fixed_by_all(elems, pi, g.n)) << g.name() << " " << pi;
      }
    }
  }
}

TEST(Envelope, KnownEnvelopes) {
  EXPECT_EQ(easy_envelope(GroupModel::SN(4), 4).table.total(), colored_bell_total(4));
  // every block balanced modulo s
  auto balanced = [](const Partition& pi, int s) {
    for (const auto& b : pi.blocks()) {
      int c = 0;
      for (int leg : b) c += pi.color(static_cast<std::size_t>(leg)) == Color::white ? 1 : -1;
      if (((c % s) + s) % s != 0) return false;
    }
    return true;
  };
  const std::pair<GroupModel, int> cases[] = {{GroupModel::HNs(3, 3), 3}, {GroupModel::HNsd(3, 4, 2), 4}};
  for (const auto& [g, s] : cases) {
    const auto env = easy_envelope(g, 4);
    for (const auto& word : table_words(4, ClosureMode::colored)) {
      std::set<Partition> expected;
      for (const auto& pi : enumerate({}, word)) {
        if (balanced(pi, s)) expected.insert(pi);
      }
      EXPECT_EQ(env.table.cells.at(word), expected) << g.name() << " " << word;
    }
  }
}

TEST(Envelope, IsClosedWithinBound) {
  for (const auto& g : {GroupModel::SN(3), GroupModel::HNs(3, 3), GroupModel::HNsd(2, 4, 2)}) {
    const auto env = easy_envelope(g, 4);
    EXPECT_FALSE(envelope_closure_defect(env).has_value()) << g.name();
  }
}

TEST(Envelope, RejectsNonHomogeneousFiniteModel) {
  EXPECT_THROW(easy_envelope(GroupModel::trivial(3), 2), PreconditionError);
  EXPECT_FALSE(is_homogeneous(GroupModel::trivial(3)));
  EXPECT_TRUE(is_homogeneous(GroupModel::HNs(3, 2)));
}

TEST(Envelope, SampledKindCarriesWarning) {
  EnvelopeOptions opts;
  opts.fix.samples = 200;
  const auto env = easy_envelope(GroupModel::UN(2, 7), 2, opts);
  EXPECT_FALSE(env.exact);
  EXPECT_FALSE(env.warnings.empty());
  // U(2): the colored pairings on ob are in, the discrete partition is not
  EXPECT_EQ(env.table.cells.at(w("ob")), std::set<Partition>{Partition::parse("|ob:(1,2)")});
  EXPECT_TRUE(env.table.cells.at(w("oo")).empty());
}

TEST(EpCell, LevelOneIsTheEnvelope) {
  const auto g = GroupModel::HNsd(2, 4, 2);
  const auto env = easy_envelope(g, 4);
  for (const auto& word : {w("oooo"), w("oobb"), w("obob"), w("oo")}) {
    const auto cell = ep_cell(g, {}, word, 1);
    const auto& expected = env.table.cells.at(word);
    EXPECT_EQ(std::set<Partition>(cell.d1.begin(), cell.d1.end()), expected);
    EXPECT_EQ(cell.solutions.size(), expected.size());
  }
  // two-row cells agree with the one-row envelope through rotation
  const auto cell = ep_cell(g, w("oo"), w("oo"), 1);
  EXPECT_EQ(cell.d1.size(), env.table.cells.at(w("bboo")).size());
}

TEST(EpCell, PairsMatchBruteForce) {
  EpOptions all;
  all.skip_inside_d1 = false;
  const std::pair<GroupModel, ColoredWord> cases[] = {
      {GroupModel::HNsd(2, 4, 2), w("oooo")}, {GroupModel::HNsd(2, 4, 2), w("oobb")},
      {antidiagonal_phase(), w("oo")}, {antidiagonal_phase(), w("oooo")}, {antidiagonal_phase(), w("oobo")}};
  for (const auto& [g, word] : cases) {
    const auto elems = elements(g);
    const auto cell = ep_cell(g, {}, word, 2, all);
    std::set<std::pair<Partition, Partition>> got;
    for (const auto& s : cell.solutions) got.emplace(s.support[0], s.support[1]);
    std::set<std::pair<Partition, Partition>> expected;
    const auto parts = enumerate({}, word);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        const auto m = fixing_conditions(elems, {parts[i], parts[j]}, g.n);
        const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
        const auto nullity = 2 - (sv.array() > 1e-8).count();
        const bool full = nullity == 2 ||
                          (nullity == 1 && m.col(0).norm() > 1e-9 && m.col(1).norm() > 1e-9);
        if (full) expected.emplace(parts[i], parts[j]);
      }
    }
    EXPECT_EQ(got, expected) << g.name() << " " << word;
    EXPECT_EQ(cell.subsets_examined, parts.size() * (parts.size() - 1) / 2);
    EXPECT_EQ(cell.subsets_skipped, 0u);
  }
}

TEST(EpCell, FastPathDropsOnlyReducibleSubsets) {
  const auto g = antidiagonal_phase();
  EpOptions all;
  all.skip_inside_d1 = false;
  for (const auto& word : {w("oooo"), w("oobo")}) {
    const auto slow = ep_cell(g, {}, word, 2, all);
    const auto fast = ep_cell(g, {}, word, 2);
    const std::set<Partition> d1(fast.d1.begin(), fast.d1.end());
    std::size_t outside_pairs = 0;
    for (const auto& s : slow.solutions) {
      if (!d1.count(s.support[0]) && !d1.count(s.support[1])) ++outside_pairs;
    }
    EXPECT_EQ(fast.solutions.size(), outside_pairs) << word;
    EXPECT_EQ(fast.subsets_examined + fast.subsets_skipped, slow.subsets_examined);
    for (const auto& s : fast.solutions) {
      ASSERT_EQ(s.kernel.size(), 1u);
      for (const auto& a : s.kernel[0]) EXPECT_NE(sgn(a), 0);
    }
  }
  EXPECT_GT(ep_cell(g, {}, w("oobo"), 2).solutions.size(), 0u);
  EXPECT_GT(ep_cell(g, {}, w("oooo"), 2, all).solutions.size(), 0u);
  const auto oo = ep_cell(g, {}, w("oo"), 2);
  EXPECT_TRUE(oo.d1.empty());
  ASSERT_EQ(oo.solutions.size(), 1u);
  const auto& k = oo.solutions[0].kernel.at(0);
  EXPECT_EQ(k[0], -k[1]);
}

TEST(EpCell, TrivialGroupHasNoGenuineCombinations) {
  const auto g = GroupModel::trivial(2);
  const auto fast = ep_cell(g, {}, w("oo"), 2);
  EXPECT_EQ(fast.d1.size(), 2u);
  EXPECT_TRUE(fast.solutions.empty());
  EpOptions all;
  all.skip_inside_d1 = false;
  const auto slow = ep_cell(g, {}, w("oo"), 2, all);
  ASSERT_EQ(slow.solutions.size(), 1u);
  EXPECT_EQ(slow.solutions[0].kernel.size(), 2u);
}

TEST(EpCell, MapsAreIntertwiners) {
  const auto g = GroupModel::HNsd(2, 4, 2);
  const auto space = intertwiner_space(g, w("oo"), w("oo"));
  const auto cell = ep_cell(*space.basis, 2);
  for (const auto& m : ep_maps(cell, 2)) EXPECT_TRUE(space.basis->contains(m));
}

TEST(EpCell, BudgetAndExactness) {
  EpOptions tight;
  tight.max_subsets = 10;
  tight.skip_inside_d1 = false;
  EXPECT_THROW(ep_cell(GroupModel::SN(2), {}, w("oooo"), 3, tight), BudgetExceededError);
  EXPECT_THROW(ep_cell(GroupModel::ON(2), {}, w("oo"), 1), PreconditionError);
  EXPECT_THROW(ep_cell(GroupModel::SN(2), {}, w("oo"), 0), PreconditionError);
}

TEST(GpTable, TrivialGroupTruthIsEverything) {
  const auto truth = fix_table(GroupModel::trivial(2), 3);
  std::size_t full = 0;
  for (std::size_t r = 0; r <= 3; ++r) full += (std::size_t{1} << r) * (std::size_t{1} << r);
  EXPECT_EQ(truth.total_dim(), full);
  const auto report = easiness_level_probe(GroupModel::trivial(2), 2, 3, 3);
  for (const auto& e : report.per_p) {
    EXPECT_EQ(e.verdict, LevelVerdict::strictly_smaller);
    EXPECT_EQ(e.true_dim, full);
    EXPECT_LT(e.gp_dim, full);
  }
}

TEST(GpTable, MonotoneInP) {
  const auto g = GroupModel::HNsd(3, 4, 2);
  const auto c1 = gp_table(g, 1, 4, 6);
  const auto c2 = gp_table(g, 2, 4, 6);
  const auto truth = fix_table(g, 6);
  EXPECT_FALSE(table_containment(c1, c2).has_value());
  EXPECT_FALSE(table_containment(c2, truth).has_value());
  EXPECT_LE(c1.total_dim(), c2.total_dim());
}

TEST(GpTable, HarvestModesAgree) {
  const auto g = GroupModel::HNsd(3, 4, 2);
  for (std::size_t p : {1u, 2u}) {
    const auto a = gp_table(g, p, 4, 6, HarvestMode::full);
    const auto b = gp_table(g, p, 4, 6, HarvestMode::fixed_points);
    EXPECT_TRUE(table_equal(a, b)) << "p = " << p;
  }
  EXPECT_THROW(gp_table(g, 1, 6, 4), PreconditionError);
}

TEST(LevelProbe, EasyGroupsAreEqualAtLevelOne) {
  for (const auto& g : {GroupModel::SN(4), GroupModel::HNs(3, 3), GroupModel::HNsd(2, 4, 2)}) {
    const auto r = easiness_level_probe(g, 3, 4, 4);
    ASSERT_EQ(r.per_p.size(), 3u);
    EXPECT_EQ(r.per_p[0].verdict, LevelVerdict::equal_within_bound) << g.name();
    EXPECT_FALSE(r.per_p[0].inferred);
    EXPECT_TRUE(r.per_p[1].inferred);
    EXPECT_EQ(r.per_p[2].verdict, LevelVerdict::equal_within_bound);
  }
}

TEST(LevelProbe, DeterminantGroupNeedsSixLegs) {
  const auto g = GroupModel::HNsd(3, 4, 2);
  EXPECT_EQ(easiness_level_probe(g, 1, 4, 4).per_p[0].verdict, LevelVerdict::equal_within_bound);
  const auto r = easiness_level_probe(g, 1, 4, 6);
  ASSERT_EQ(r.per_p[0].verdict, LevelVerdict::strictly_smaller);
  ASSERT_TRUE(r.per_p[0].witness.has_value());
  EXPECT_EQ(r.per_p[0].witness->lower.size(), 6u);
  EXPECT_LT(r.per_p[0].gp_dim, r.per_p[0].true_dim);
  EXPECT_EQ(r.bell_bound, std::optional<std::uint64_t>(203));
  const auto j = to_json(r);
  EXPECT_EQ(j["per_p"][0]["verdict"], "strictly_smaller");
  EXPECT_EQ(j["harvest_mode"], "fixed_points");
}

TEST(LevelProbe, WitnessVectorIsFixed) {
  // the witness cell at six legs: Fix is strictly bigger than the span of D¹
  const auto g = GroupModel::HNsd(3, 4, 2);
  const auto word = w("oooooo");
  const auto space = intertwiner_space(g, {}, word);
  SpanBasis d1({}, word, 3);
  for (const auto& pi : enumerate({}, word)) {
    const auto t = build_map(pi, 3);
    if (space.basis->contains(t)) d1.insert(t);
  }
  EXPECT_LT(d1.dim(), space.dim());
}

TEST(PresentationProbe, Values) {
  EXPECT_EQ(presentation_level_probe(GroupModel::SN(3), 4, 4).level, std::optional<std::size_t>(3));
  const auto t = presentation_level_probe(GroupModel::trivial(2), 3, 3);
  EXPECT_EQ(t.level, std::optional<std::size_t>(1));
  EXPECT_EQ(t.per_r.size(), 1u);
}

TEST(BellBound, Values) {
  const auto bell = oracle::bell_numbers(26);
  for (std::size_t r = 0; r <= 25; ++r) EXPECT_EQ(bell_bound(r), bell[r]) << r;
  EXPECT_EQ(bell_bound(4), 15u);
  EXPECT_EQ(bell_bound(0), 1u);
  EXPECT_EQ(bell_bound(6), 203u);
  EXPECT_THROW(bell_bound(26), PreconditionError);
  EXPECT_EQ(known_bell_bound(GroupModel::HNsd(2, 4, 2)), std::optional<std::uint64_t>(15));
  EXPECT_FALSE(known_bell_bound(GroupModel::SN(3)).has_value());
}
