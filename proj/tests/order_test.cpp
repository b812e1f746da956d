#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ordercdf/order.hpp"
#include "ordercdf/spaces/finite_space.hpp"
#include "ordercdf/spaces/lex_product.hpp"
#include "ordercdf/spaces/real_interval.hpp"

using namespace ordercdf;

namespace {

const FiniteSpace abc({"a", "b", "c"});
const RealInterval unit = RealInterval::unit();
const LexProduct lex01 = LexProduct::uniform_fibers(FiniteSpace({"0", "1"}), 0.0, 1.0);

}  // namespace

TEST(Compare, FiniteChain) {
  EXPECT_EQ(compare(abc, abc.point("a"), abc.point("c")), Ordering::less);
  EXPECT_EQ(compare(abc, abc.point("c"), abc.point("b")), Ordering::greater);
}

TEST(Compare, LexUsesOuterFirst) {
  EXPECT_EQ(compare(lex01, LexPoint{0, 0.9}, LexPoint{1, 0.1}), Ordering::less);
  EXPECT_EQ(compare(lex01, LexPoint{1, 0.2}, LexPoint{1, 0.1}), Ordering::greater);
}

TEST(Compare, RealReflexive) { EXPECT_EQ(compare(unit, 0.5, 0.5), Ordering::equal); }

TEST(Compare, OutsideUniverseIsDomainError) {
  EXPECT_THROW(compare(unit, 0.5, 1.5), DomainError);
  EXPECT_THROW(compare(abc, FinitePoint{3}, FinitePoint{0}), DomainError);
}

// Antisymmetry and transitivity on random triples; the order has no epsilon.
TEST(Compare, TotalOrderAxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const LexPoint x{rng() % 2, u(rng)}, y{rng() % 2, u(rng)}, z{rng() % 2, u(rng)};
    const auto xy = compare(lex01, x, y), yz = compare(lex01, y, z), xz = compare(lex01, x, z);
    if (xy == Ordering::equal) {
      EXPECT_EQ(x, y);
    }
    if (xy != Ordering::greater && yz != Ordering::greater) {
      EXPECT_NE(xz, Ordering::greater);
    }
    EXPECT_EQ(xy == Ordering::less, compare(lex01, y, x) == Ordering::greater);
  }
  EXPECT_EQ(compare(unit, 0.1, std::nextafter(0.1, 1.0)), Ordering::less);
}

TEST(Isolation, FiniteMiddlePointIsIsolated) {
  const auto r = classify_isolation(abc, abc.point("b"));
  EXPECT_TRUE(r.left_isolated);
  EXPECT_TRUE(r.right_isolated);
  EXPECT_EQ(r.left_witness, abc.point("a"));
  EXPECT_EQ(r.right_witness, abc.point("c"));
}

TEST(Isolation, RealInteriorIsNeither) {
  const auto r = classify_isolation(unit, 0.3);
  EXPECT_FALSE(r.left_isolated);
  EXPECT_FALSE(r.right_isolated);
}

TEST(Isolation, LexFiberStartHasPredecessor) {
  const auto r = classify_isolation(lex01, LexPoint{1, 0.0});
  EXPECT_TRUE(r.left_isolated);
  ASSERT_TRUE(r.left_witness);
  EXPECT_EQ(*r.left_witness, (LexPoint{0, 1.0}));
  EXPECT_FALSE(r.right_isolated);
  // nothing lies strictly between (0,1) and (1,0)
  for (double t : {0.0, 0.5, 1.0}) {
    const LexPoint p0{0, t}, p1{1, t};
    EXPECT_FALSE(less(lex01, LexPoint{0, 1.0}, p0) && less(lex01, p0, LexPoint{1, 0.0}));
    EXPECT_FALSE(less(lex01, LexPoint{0, 1.0}, p1) && less(lex01, p1, LexPoint{1, 0.0}));
  }
}

TEST(Isolation, EndpointsOfUnitInterval) {
  EXPECT_TRUE(classify_isolation(unit, 0.0).is_min);
  EXPECT_TRUE(classify_isolation(unit, 1.0).right_isolated);
}

TEST(Bounds, FiniteSubsets) {
  const std::vector<FinitePoint> bc{abc.point("b"), abc.point("c")};
  const std::vector<FinitePoint> ab{abc.point("a"), abc.point("b")};
  EXPECT_EQ(*infimum(abc, bc), ExtPoint<FiniteSpace>(abc.point("b")));
  EXPECT_EQ(*supremum(abc, ab), ExtPoint<FiniteSpace>(abc.point("b")));
  EXPECT_TRUE(supremum(abc, std::vector<FinitePoint>{})->is_neg_inf());
  EXPECT_TRUE(infimum(abc, std::vector<FinitePoint>{})->is_pos_inf());
}

TEST(Spaces, IntegerRangeSteps) {
  const IntegerRange r(0, 10);
  EXPECT_EQ(r.successor(3), 4);
  EXPECT_EQ(r.successor(10), std::nullopt);
  EXPECT_EQ(r.predecessor(0), std::nullopt);
  EXPECT_EQ(r.dense_points(100).size(), 11u);
}

TEST(Spaces, RealIntervalCompleteness) {
  EXPECT_TRUE(unit.is_complete());
  const RealInterval open(0.0, 1.0, false, false);
  EXPECT_FALSE(open.is_complete());
  EXPECT_EQ(open.min(), std::nullopt);
  EXPECT_FALSE(open.contains(0.0));
  EXPECT_TRUE(open.contains(0.5));
}

TEST(Spaces, FormatParseRoundTrip) {
  for (double x : {0.0, 0.1, 1.0 / 3.0, 0.7, std::nextafter(1.0, 0.0)}) {
    EXPECT_EQ(unit.parse(unit.format(x)), x);
  }
  const LexPoint p{1, 0.25};
  EXPECT_EQ(lex01.parse(lex01.format(p)), p);
  EXPECT_EQ(abc.parse("c"), FinitePoint{2});
  EXPECT_ANY_THROW(abc.parse("d"));
}

TEST(Spaces, FiniteLabelsValidated) {
  EXPECT_THROW(FiniteSpace({}), ConfigError);
  EXPECT_THROW(FiniteSpace({"a", "a"}), ConfigError);
}

TEST(Spaces, DensePointsAreDistinctMembers) {
  auto pts = lex01.dense_points(64);
  ASSERT_EQ(pts.size(), 64u);
  for (const auto& p : pts) EXPECT_TRUE(lex01.contains(p));
  std::sort(pts.begin(), pts.end(), [](const LexPoint& a, const LexPoint& b) { return less(lex01, a, b); });
  for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_TRUE(less(lex01, pts[i - 1], pts[i]));
}
