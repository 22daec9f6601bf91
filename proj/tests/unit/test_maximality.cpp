#include <gtest/gtest.h>

#include "oracles.hpp"
#include "partcat/errors.hpp"
#include "partcat/linmaps.hpp"
#include "partcat/maximality.hpp"

using namespace partcat;

namespace {

Partition p(const char* s) { return Partition::parse(s); }
CategoryName cat(const char* s) { return CategoryName::parse(s); }

const Partition kCrossing = p("oo|oo:(1,4)(2,3)");

Rational power(std::size_t n, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= static_cast<long>(n);
  return r;
}

// the operator behind a cap or drop step, as a map applied after (lower) or before (upper) T
TensorMap step_map_identity(const Partition& cur, const CappingStep& s, std::size_t n) {
  const std::size_t k = cur.upper().size(), l = cur.lower().size();
  const TensorMap t = build_map(cur, n);
  switch (s.op) {
    case CappingStep::Op::cap_lower: return multiply(build_map(cap_below(l, s.position), n), t);
    case CappingStep::Op::drop_lower: return multiply(build_map(drop_below(l, s.position), n), t);
    case CappingStep::Op::cap_upper:
      return multiply(t, build_map(whitened(involution(cap_below(k, s.position))), n));
    case CappingStep::Op::drop_upper:
      return multiply(t, build_map(whitened(involution(drop_below(k, s.position))), n));
    default: return t;
  }
}

}  // namespace

TEST(Capping, BasicCrossingNeedsNoSteps) {
  const auto c = capping_search(Partition::crossing(Color::white, Color::white));
  EXPECT_TRUE(c.found);
  EXPECT_TRUE(c.steps.empty());
  EXPECT_EQ(c.end, kCrossing);
  EXPECT_FALSE(replay(c).has_value());
}

TEST(Capping, TensorWithIdentityNeedsOneCap) {
  const auto c = capping_search(tensor(kCrossing, p("o|o:(1,2)")));
  ASSERT_TRUE(c.found);
  std::size_t caps = 0;
  for (const auto& s : c.steps) caps += s.op == CappingStep::Op::cap_lower || s.op == CappingStep::Op::cap_upper;
  EXPECT_EQ(caps, 1u);
  EXPECT_EQ(c.steps.back().result, kCrossing);
  EXPECT_FALSE(replay(c).has_value());
}

TEST(Capping, RotationsAloneReachTheCrossing) {
  const auto c = capping_search(p("|oooo:(1,3)(2,4)"));
  ASSERT_TRUE(c.found);
  for (const auto& s : c.steps) EXPECT_EQ(s.loops, 0);
  EXPECT_EQ(c.end, kCrossing);
}

TEST(Capping, EveryCrossingPartitionUpToSixLegs) {
  for (std::size_t legs = 2; legs <= 6; ++legs) {
    for (const auto& q : enumerate({}, ColoredWord::white(legs))) {
      if (crossing_count(q) == 0) continue;
      const auto c = capping_search(q);
      ASSERT_TRUE(c.found) << q;
      EXPECT_FALSE(replay(c).has_value()) << q;
      for (const auto& s : c.steps) EXPECT_GT(crossing_count(s.result), 0) << q;
    }
  }
}

TEST(Capping, PairingsWithoutSingletons) {
  CappingOptions opts;
  opts.singletons = false;
  for (const auto& q : enumerate({}, ColoredWord::white(6))) {
    if (crossing_count(q) == 0 || !is_member(q, cat("P2"))) continue;
    const auto c = capping_search(q, opts);
    if (!c.found) continue;
    for (const auto& s : c.steps) {
      EXPECT_NE(s.op, CappingStep::Op::drop_lower);
      EXPECT_NE(s.op, CappingStep::Op::drop_upper);
      EXPECT_TRUE(is_member(s.result, cat("P2"))) << s.result;
    }
  }
  // every cap of the triple crossing is noncrossing, so only a singleton drop gets through
  const auto triple = p("|oooooo:(1,4)(2,5)(3,6)");
  EXPECT_FALSE(capping_search(triple, opts).found);
  EXPECT_TRUE(capping_search(triple).found);
  EXPECT_TRUE(capping_search(p("|oooooo:(1,3)(2,5)(4,6)"), opts).found);
}

TEST(Capping, StepsAreMapIdentities) {
  const std::size_t n = 3;
  for (const char* text : {"|oooooo:(1,4)(2,5)(3,6)", "|ooooo:(1,3)(2,5)(4)", "oo|oooo:(1,4,6)(2,5)(3)"}) {
    const auto c = capping_search(p(text));
    ASSERT_TRUE(c.found) << text;
    Partition cur = c.start;
    for (const auto& s : c.steps) {
      const bool rotation = s.op != CappingStep::Op::cap_lower && s.op != CappingStep::Op::cap_upper &&
                            s.op != CappingStep::Op::drop_lower && s.op != CappingStep::Op::drop_upper;
      if (!rotation) {
        EXPECT_EQ(step_map_identity(cur, s, n), scaled(power(n, s.loops), build_map(s.result, n)))
            << text << " " << to_string(s.op);
      }
      cur = s.result;
    }
  }
}

TEST(Capping, ReplayCatchesTampering) {
  auto c = capping_search(p("|oooooo:(1,4)(2,5)(3,6)"));
  ASSERT_GE(c.steps.size(), 2u);
  auto bad = c;
  bad.steps[1].result = p("oo|oo:(1,2)(3,4)");
  EXPECT_TRUE(replay(bad).has_value());
  bad = c;
  bad.steps.back().loops += 1;
  EXPECT_TRUE(replay(bad).has_value());
  bad = c;
  bad.steps.front().position = 9;
  EXPECT_TRUE(replay(bad).has_value());

  const auto round = certificate_from_json(nlohmann::json::parse(to_json(c).dump()));
  EXPECT_EQ(round.steps.size(), c.steps.size());
  EXPECT_FALSE(replay(round).has_value());
  EXPECT_THROW(certificate_from_json(nlohmann::json{{"start", "|oo:(1,2)"}}), ParseError);
  EXPECT_THROW(capping_op_from_string("fold"), ParseError);
}

TEST(Capping, RejectsNoncrossing) {
  EXPECT_THROW(capping_search(p("|oooo:(1,4)(2,3)")), PreconditionError);
  EXPECT_THROW(cap_below(2, 1), PreconditionError);
  EXPECT_THROW(apply_step(kCrossing, CappingStep::Op::cap_lower, 1), PreconditionError);
}

TEST(CapBelow, Shapes) {
  EXPECT_EQ(cap_below(2, 0), p("oo|:(1,2)"));
  EXPECT_EQ(cap_below(4, 1), p("oooo|oo:(1,5)(2,3)(4,6)"));
  EXPECT_EQ(drop_below(3, 2), p("ooo|oo:(1,4)(2,5)(3)"));
}

TEST(Order2, CrossingWithCapsReachesAllPartitions) {
  const auto r = order2_check(cat("NC"), cat("P"), p("|oooo:(1,3)(2,4)"), p("|oooo:(1,2)(3,4)"), 1, 1, 4, 4);
  EXPECT_EQ(r.verdict, Order2Verdict::reaches_span_E);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_EQ(r.closure_dim, r.target_dim);
}

TEST(Order2, ScalingInvariance) {
  const auto a = order2_check(cat("NC2Real"), cat("P2"), kCrossing, p("oo|oo:(1,2)(3,4)"), 2, -3, 3, 4);
  const auto b = order2_check(cat("NC2Real"), cat("P2"), kCrossing, p("oo|oo:(1,2)(3,4)"), 4, -6, 3, 4);
  EXPECT_EQ(a.verdict, b.verdict);
  EXPECT_EQ(a.closure_dim, b.closure_dim);
  EXPECT_EQ(a.verdict, Order2Verdict::reaches_span_E);
}

TEST(Order2, ColoredContextUsesColoredMode) {
  const auto r = order2_check(cat("NC2"), cat("MatchingP2"), p("ob|bo:(1,4)(2,3)"), p("ob|bo:(1,2)(3,4)"), 1, 2, 3, 4);
  EXPECT_EQ(r.verdict, Order2Verdict::reaches_span_E);
  EXPECT_GT(r.target_dim, 0u);
}

TEST(Order2, PairInsideDIsRejected) {
  EXPECT_THROW(order2_check(cat("NC2Real"), cat("P2"), p("oo|oo:(1,3)(2,4)"), p("oo|oo:(1,2)(3,4)"), 1, 1, 3, 4),
               PreconditionError);
}

TEST(Order2, Preconditions) {
  const auto x = kCrossing, y = p("oo|oo:(1,2)(3,4)");
  EXPECT_THROW(order2_check(cat("NC"), cat("P"), x, y, 0, 1, 3, 4), PreconditionError);
  EXPECT_THROW(order2_check(cat("NC"), cat("P"), x, y, 1, 0, 3, 4), PreconditionError);
  EXPECT_THROW(order2_check(cat("NC"), cat("P2"), x, p("oo|oo:(1,2,3,4)"), 1, 1, 3, 4), PreconditionError);
  EXPECT_THROW(order2_check(cat("NC"), cat("P"), y, p("oo|oo:(1,2,3,4)"), 1, 1, 3, 4), PreconditionError);
  EXPECT_THROW(order2_check(cat("NC"), cat("P"), x, p("o|ooo:(1,2)(3,4)"), 1, 1, 3, 4), PreconditionError);
  EXPECT_THROW(order2_check(cat("NC"), cat("P"), x, x, 1, -1, 3, 4), PreconditionError);
  EXPECT_THROW(order2_check(cat("NC"), cat("P"), x, y, 1, 1, 3, 2), PreconditionError);
}

TEST(Series, PairCountsAndDeterminism) {
  const auto o = series_runner(Series::O, 4, 4, default_coefficients(), 100, 7);
  EXPECT_EQ(o.pairs_available, 20u);
  EXPECT_EQ(o.pairs_used, 20u);
  EXPECT_EQ(o.instances.size(), 100u);
  EXPECT_EQ(o.stuck, 0u);
  EXPECT_FALSE(o.expected_inconclusive);

  const auto s1 = series_runner(Series::S, 4, 4, {{1, 1}, {1, -1}, {2, -3}}, 8, 3);
  const auto s2 = series_runner(Series::S, 4, 4, {{1, 1}, {1, -1}, {2, -3}}, 8, 3);
  EXPECT_EQ(s1.pairs_available, 140u);
  EXPECT_EQ(s1.pairs_used, 8u);
  EXPECT_EQ(to_json(s1).dump(), to_json(s2).dump());
  for (std::size_t i = 1; i < s1.instances.size(); ++i) {
    EXPECT_LE(s1.instances[i - 1].pi.legs(), s1.instances[i].pi.legs());
  }
  EXPECT_EQ(s1.stuck, 0u);
}

TEST(Series, HalfAndHypothetical) {
  const auto b = series_runner(Series::B, 3, 4, {{5, 7}, {1, 1000}}, 6, 1);
  EXPECT_EQ(b.pairs_available, 90u);
  EXPECT_EQ(b.stuck, 0u);
  const auto h = series_runner(Series::H, 3, 4, default_coefficients(), 10, 1);
  EXPECT_TRUE(h.expected_inconclusive);
  EXPECT_EQ(h.pairs_available, 30u);
  EXPECT_EQ(to_json(h)["E"], "Peven");
  EXPECT_THROW(series_from_string("Q"), ParseError);
  EXPECT_THROW(series_runner(Series::O, 3, 4, {{0, 1}}, 5, 1), PreconditionError);
}
