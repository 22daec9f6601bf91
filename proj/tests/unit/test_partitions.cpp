#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "partcat/category_name.hpp"
#include "partcat/errors.hpp"
#include "partcat/linmaps.hpp"
#include "partcat/partition.hpp"

using namespace partcat;

namespace {

const Color W = Color::white;
const Color B = Color::black;

ColoredWord w(const char* s) { return ColoredWord::parse(s); }

}  // namespace

TEST(Word, ParseAndCharge) {
  auto x = w("oob");
  EXPECT_EQ(x.size(), 3u);
  EXPECT_EQ(x.charge(), 1);
  EXPECT_EQ(x.conjugate().str(), "obb");
  EXPECT_EQ(ColoredWord().charge(), 0);
  EXPECT_THROW(w("ox"), ParseError);
  EXPECT_EQ(all_words(3).size(), 8u);
  EXPECT_EQ(all_words(2).front().str(), "oo");
}

TEST(Enumerate, BellCounts) {
  const auto bell = oracle::bell_numbers(9);
  for (std::size_t r = 0; r <= 8; ++r) {
    for (std::size_t k = 0; k <= r; k += (r > 4 ? r : 1)) {
      auto parts = enumerate(ColoredWord::white(k), ColoredWord::white(r - k));
      EXPECT_EQ(parts.size(), bell[r]) << "r=" << r;
    }
  }
  EXPECT_EQ(enumerate({}, w("oo")).size(), 2u);
  EXPECT_EQ(enumerate({}, {}).size(), 1u);
  EXPECT_EQ(enumerate(w("oo"), w("oo")).size(), 15u);
}

TEST(Enumerate, SortedDistinctAndCanonical) {
  auto parts = enumerate(w("ob"), w("bo"));
  std::set<Partition> s(parts.begin(), parts.end());
  EXPECT_EQ(s.size(), parts.size());
  EXPECT_TRUE(std::is_sorted(parts.begin(), parts.end()));
  for (const auto& p : parts) EXPECT_EQ(Partition::parse(p.str()), p);
}

TEST(TextFormat, RoundTrip) {
  auto cap = Partition::parse("ob|:(1,2)");
  EXPECT_EQ(cap, Partition::cap(W, B));
  EXPECT_EQ(cap.str(), "ob|:(1,2)");
  EXPECT_EQ(Partition().str(), "|:");
  EXPECT_EQ(Partition::parse("|:"), Partition());
  EXPECT_THROW(Partition::parse("oo|o:(1,2)"), ParseError);
  EXPECT_THROW(Partition::parse("o|o:(1)(1,2)"), ParseError);
  EXPECT_THROW(Partition::parse("o|o(1,2)"), ParseError);
}

TEST(Tensor, Examples) {
  auto id = Partition::identity(W);
  auto two = tensor(id, id);
  EXPECT_EQ(two.str(), "oo|oo:(1,3)(2,4)");
  EXPECT_EQ(tensor(Partition(), two), two);
  auto cc = tensor(Partition::cup(W, B), Partition::cap(W, B));
  EXPECT_EQ(cc.upper(), w("ob"));
  EXPECT_EQ(cc.lower(), w("ob"));
  EXPECT_EQ(cc.blocks(), (std::vector<std::vector<int>>{{0, 1}, {2, 3}}));
}

TEST(Compose, Examples) {
  auto c = compose(Partition::cup(W, B), Partition::cap(W, B));
  EXPECT_EQ(c.result, Partition());
  EXPECT_EQ(c.loops, 1);
  auto x = Partition::crossing(W, W);
  auto xx = compose(x, x);
  EXPECT_EQ(xx.result, tensor(Partition::identity(W), Partition::identity(W)));
  EXPECT_EQ(xx.loops, 0);
  auto pi = Partition::parse("ob|o:(1,3)(2)");
  auto pid = compose(pi, Partition::identity(W));
  EXPECT_EQ(pid.result, pi);
  EXPECT_EQ(pid.loops, 0);
  EXPECT_THROW(compose(Partition::identity(W), Partition::identity(B)), WordMismatchError);
}

TEST(Involution, ExamplesAndInvolutivity) {
  EXPECT_EQ(involution(Partition::cap(W, B)), Partition::cup(B, W));
  EXPECT_EQ(involution(Partition::crossing(W, W)), Partition::crossing(B, B));
  EXPECT_EQ(involution(Partition::crossing(W, B)), Partition::crossing(W, B));
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = rng() % 4, l = rng() % 3;
    auto p = oracle::random_partition(rng, oracle::random_word(rng, k), oracle::random_word(rng, l));
    EXPECT_EQ(involution(involution(p)), p);
  }
}

TEST(Rotation, Examples) {
  EXPECT_EQ(rotate_ccw(Partition::identity(W)), Partition::cup(B, W));
  EXPECT_THROW(rotate_ccw(Partition::cup(W, B)), PreconditionError);
  EXPECT_THROW(rotate_cw(Partition::cap(W, B)), PreconditionError);
  auto p = Partition::parse("obo|bb:(1,4)(2,3,5)");
  auto one = to_one_row(p);
  EXPECT_TRUE(one.upper().empty());
  EXPECT_EQ(one.lower(), p.upper().conjugate().concat(p.lower()));
  Partition q = p;
  for (int i = 0; i < 3; ++i) q = rotate_ccw(q);
  EXPECT_EQ(q, one);
  EXPECT_EQ(from_one_row(one, 3), p);
  EXPECT_EQ(rotate_cw(rotate_ccw(p)), p);
  EXPECT_EQ(rotate_right_up(rotate_right_down(p)), p);
}

TEST(Rotation, FullTurnIsCyclicRelabeling) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    auto p = oracle::random_partition(rng, {}, oracle::random_word(rng, 1 + rng() % 5));
    Partition q = p;
    for (std::size_t i = 0; i < p.legs(); ++i) q = rotate(q);
    EXPECT_EQ(q, p);
  }
}

// Reshape invariant: entry (J, I) of T_π equals entry (rev(I), J) of T of the
// fully rotated partition.
TEST(Rotation, CommutesWithReshape) {
  const std::size_t n = 2;
  for (std::size_t legs = 0; legs <= 5; ++legs) {
    for (std::size_t k = 0; k <= legs; ++k) {
      for (const auto& up : all_words(k)) {
        const auto low = ColoredWord::white(legs - k);
        for (const auto& p : enumerate(up, low)) {
          auto m = oracle::dense_map(p, n);
          auto v = oracle::dense_map(to_one_row(p), n);
          oracle::for_each_tuple(n, legs, [&](const std::vector<int>& t) {
            std::size_t col = 0, row = 0, flat = 0;
            for (std::size_t i = 0; i < k; ++i) col = col * n + t[i];
            for (std::size_t j = k; j < legs; ++j) row = row * n + t[j];
            for (std::size_t i = k; i-- > 0;) flat = flat * n + t[i];
            for (std::size_t j = k; j < legs; ++j) flat = flat * n + t[j];
            ASSERT_EQ(m[row][col], v[flat][0]) << p.str();
          });
        }
      }
    }
  }
}

TEST(Lattice, JoinExamples) {
  auto a = Partition::parse("|oooo:(1,2)(3,4)");
  auto b = Partition::parse("|oooo:(1,4)(2,3)");
  EXPECT_EQ(join(a, a), a);
  EXPECT_EQ(join(a, b), Partition::one_block({}, w("oooo")));
  EXPECT_EQ(join(a, Partition::discrete({}, w("oooo"))), a);
  EXPECT_THROW(join(a, Partition::parse("|oobo:(1,2)(3,4)")), WordMismatchError);
}

TEST(Lattice, KernelAndDelta) {
  EXPECT_EQ(kernel({1, 1, 2, 2}, {}, w("oooo")), Partition::parse("|oooo:(1,2)(3,4)"));
  EXPECT_EQ(kernel({5, 5, 5}, {}, w("ooo")), Partition::one_block({}, w("ooo")));
  for (std::size_t legs = 0; legs <= 4; ++legs) {
    for (const auto& p : enumerate({}, ColoredWord::white(legs))) {
      oracle::for_each_tuple(3, legs, [&](const std::vector<int>& t) {
        EXPECT_EQ(oracle::delta(p, t), refines(p, kernel(t, {}, ColoredWord::white(legs))));
      });
    }
  }
}

TEST(Lattice, Mobius) {
  auto s2 = Partition::discrete({}, w("oo"));
  auto pair = Partition::one_block({}, w("oo"));
  EXPECT_EQ(mobius(pair, pair), 1);
  EXPECT_EQ(mobius(s2, pair), -1);
  EXPECT_EQ(mobius(Partition::discrete({}, w("ooo")), Partition::one_block({}, w("ooo"))), 2);
  EXPECT_THROW(mobius(pair, s2), PreconditionError);
  for (std::size_t legs = 1; legs <= 5; ++legs) {
    auto all = enumerate({}, ColoredWord::white(legs));
    for (const auto& pi : all) {
      for (const auto& sigma : all) {
        if (!refines(pi, sigma)) continue;
        // defining recursion, summed directly
        std::int64_t s = 0;
        for (const auto& rho : all) {
          if (refines(pi, rho) && refines(rho, sigma)) s += mobius(pi, rho);
        }
        EXPECT_EQ(s, pi == sigma ? 1 : 0);
        if (legs <= 4) EXPECT_EQ(mobius(pi, sigma), oracle::mobius_recursive(pi, sigma));
      }
    }
  }
}

TEST(Noncrossing, Basics) {
  EXPECT_FALSE(is_noncrossing(Partition::crossing(W, W)));
  EXPECT_EQ(crossing_count(Partition::crossing(W, W)), 1);
  EXPECT_TRUE(is_noncrossing(Partition::parse("oo|oo:(1,2)(3,4)")));
  EXPECT_TRUE(is_noncrossing(Partition::parse("oo|oo:(1,3)(2,4)")));
  EXPECT_FALSE(is_noncrossing(Partition::parse("oo|oo:(1,4)(2,3)")));
  EXPECT_FALSE(is_noncrossing(Partition::parse("|oooo:(1,3)(2,4)")));
  // NC counts are Catalan numbers
  const std::size_t catalan[] = {1, 1, 2, 5, 14, 42, 132};
  for (std::size_t r = 0; r <= 6; ++r) {
    std::size_t c = 0;
    for (const auto& p : enumerate({}, ColoredWord::white(r))) c += is_noncrossing(p);
    EXPECT_EQ(c, catalan[r]);
  }
}

TEST(Membership, Examples) {
  auto x = Partition::crossing(W, W);
  EXPECT_TRUE(is_member(x, CategoryName::parse("P2")));
  EXPECT_FALSE(is_member(x, CategoryName::parse("NC")));
  EXPECT_TRUE(is_member(Partition::cup(W, B), CategoryName::parse("NC2")));
  EXPECT_FALSE(is_member(Partition::cup(W, W), CategoryName::parse("MatchingP2")));
  EXPECT_TRUE(is_member(Partition::identity(B), CategoryName::parse("NC2")));
  EXPECT_FALSE(is_member(Partition::parse("o|b:(1,2)"), CategoryName::parse("NC2")));
  std::size_t count = 0;
  for (const auto& p : enumerate({}, w("oooo"))) count += is_member(p, CategoryName::parse("Ps(2)"));
  EXPECT_EQ(count, 4u);
  EXPECT_THROW(CategoryName::parse("Q7"), ParseError);
  EXPECT_EQ(CategoryName::parse("P^3").str(), "Ps(3)");
}

TEST(Membership, H242D) {
  const auto d = CategoryName::parse("H242D");
  EXPECT_TRUE(is_member(Partition::parse("|oooo:(1,2,3,4)"), d));
  EXPECT_FALSE(is_member(Partition::parse("|oo:(1,2)"), d));
  EXPECT_TRUE(is_member(Partition::parse("|ob:(1,2)"), d));
  EXPECT_TRUE(is_member(Partition::parse("o|o:(1,2)"), d));
  EXPECT_FALSE(is_member(Partition::parse("o|b:(1,2)"), d));
}

// Category axioms for the named categories within 4 legs on white/black words.
TEST(Membership, NamedCategoriesAreCategories) {
  const char* names[] = {"P", "NC", "P2", "NC2", "MatchingP2", "P12", "MatchingP12",
                         "NC12", "MatchingNC12", "Ps(3)", "Peven", "NCeven", "H242D"};
  std::mt19937_64 rng(3);
  for (const char* name : names) {
    const auto cat = CategoryName::parse(name);
    const bool colored = cat.colored();
    auto word = [&](std::size_t len) {
      return colored ? oracle::random_word(rng, len) : ColoredWord::white(len);
    };
    for (Color c : {W, B}) {
      if (!colored && c == B) continue;
      EXPECT_TRUE(is_member(Partition::identity(c), cat)) << name;
      EXPECT_TRUE(is_member(Partition::cup(c, colored ? flip(c) : c), cat)) << name;
    }
    std::vector<Partition> members;
    for (int t = 0; t < 400 && members.size() < 60; ++t) {
      auto p = oracle::random_partition(rng, word(rng() % 3), word(rng() % 4));
      if (is_member(p, cat)) members.push_back(p);
    }
    for (const auto& a : members) {
      EXPECT_TRUE(is_member(involution(a), cat)) << name << " " << a.str();
      if (!a.upper().empty()) EXPECT_TRUE(is_member(rotate_ccw(a), cat)) << name << " " << a.str();
      for (const auto& b : members) {
        if (a.legs() + b.legs() <= 6) EXPECT_TRUE(is_member(tensor(a, b), cat)) << name;
        if (a.lower() == b.upper()) {
          EXPECT_TRUE(is_member(compose(a, b).result, cat)) << name << " " << a.str() << " " << b.str();
        }
      }
    }
  }
}
