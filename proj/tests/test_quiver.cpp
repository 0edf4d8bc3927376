#include <gtest/gtest.h>

#include "generators.hpp"

using namespace seqwalk;

namespace {

Quiver kronecker_chain() {
  return Quiver({"1", "2", "3"}, {{"a1", 0, 1}, {"b1", 0, 1}, {"a2", 1, 2}, {"b2", 1, 2}});
}

}  // namespace

TEST(Quiver, LookupsAndAdjacency) {
  Quiver q = kronecker_chain();
  EXPECT_EQ(q.point_count(), 3u);
  EXPECT_EQ(q.arrow_count(), 4u);
  EXPECT_EQ(q.find_point("2"), 1);
  EXPECT_EQ(q.find_arrow("b2"), 3);
  EXPECT_FALSE(q.find_arrow("zz"));
  EXPECT_EQ(q.arrows_from(1).size(), 2u);
  EXPECT_EQ(q.arrows_into(1).size(), 2u);
  EXPECT_TRUE(q.arrows_into(0).empty());
}

TEST(Quiver, InvalidArrowRejected) {
  EXPECT_THROW(Quiver({"1"}, {{"a", 0, 3}}), Error);
}

TEST(Quiver, OppositeIsInvolution) {
  Quiver q = kronecker_chain();
  Quiver op = q.opposite();
  EXPECT_EQ(op.arrow(0).source, 1);
  EXPECT_EQ(op.arrow(0).target, 0);
  EXPECT_EQ(op.opposite(), q);
}

TEST(Path, CompositionIsLeftToRight) {
  Quiver q = kronecker_chain();
  Path p = Path::from_arrows(q, {0, 2});
  EXPECT_EQ(p.source, 0);
  EXPECT_EQ(p.target, 2);
  EXPECT_EQ(p.points(q), (std::vector<int>{0, 1, 2}));
  EXPECT_THROW(Path::from_arrows(q, {2, 0}), Error);
}

TEST(LinComb, CancellationAndParallelism) {
  Quiver q = kronecker_chain();
  LinComb r(Path::from_arrows(q, {0, 2}));
  r.add(Path::from_arrows(q, {1, 3}), Scalar(1));
  EXPECT_EQ(r.term_count(), 2u);
  r.add(Path::from_arrows(q, {0, 2}), Scalar(-1));
  EXPECT_EQ(r.term_count(), 1u);
  EXPECT_THROW(r.add(Path::of_arrow(q, 0), Scalar(1)), Error);
  LinComb s = r.scaled(Scalar(3));
  EXPECT_TRUE(s.proportional_to(r));
}

TEST(Walk, ReducedZigzagInverse) {
  Quiver q = kronecker_chain();
  Walk w = Walk::make(q, {{0, 1}, {2, 1}, {3, -1}, {1, -1}});
  EXPECT_TRUE(is_reduced(w));
  EXPECT_FALSE(is_zigzag(w));
  EXPECT_EQ(w.start(), 0);
  EXPECT_EQ(w.inverse().inverse(), w);
  EXPECT_EQ(w.points(q), (std::vector<int>{0, 1, 2, 1, 0}));
  Walk back = Walk::make(q, {{0, 1}, {0, -1}});
  EXPECT_FALSE(is_reduced(back));
  EXPECT_THROW(Walk::make(q, {{0, 1}, {1, 1}}), Error);
  Walk z = Walk::make(q, {{0, 1}, {1, -1}});
  EXPECT_TRUE(is_zigzag(z));
}

TEST(Walk, DirectedRunsAndSubpaths) {
  Quiver q = kronecker_chain();
  Walk w = Walk::make(q, {{0, 1}, {2, 1}, {3, -1}, {1, -1}});
  auto runs = directed_runs(w);
  ASSERT_EQ(runs.size(), 2u);
  EXPECT_EQ(runs[0], (std::pair<std::size_t, std::size_t>{0, 2}));
  EXPECT_EQ(run_path(q, w, 2, 2), Path::from_arrows(q, {1, 3}));
  auto subs = directed_subpaths(q, w);
  // a1, a2, a1a2, b1, b2, b1b2
  EXPECT_EQ(subs.size(), 6u);
}

TEST(Walk, SameDirection) {
  Quiver q = kronecker_chain();
  Walk u = Walk::from_path(q, Path::from_arrows(q, {0, 2}));
  Walk v = Walk::from_path(q, Path::from_arrows(q, {1, 3}));
  EXPECT_TRUE(same_direction(u, v));
  EXPECT_FALSE(same_direction(u, v.inverse()));
}

TEST(BoundQuiver, OppositeReversesRelations) {
  auto bq = read_bound_quiver(gen::data("seven_vertex.bq")).quiver;
  auto op = bq.opposite();
  EXPECT_EQ(op.relations.size(), 2u);
  EXPECT_EQ(op.relations[0].source(), bq.relations[0].target());
  EXPECT_EQ(op.opposite().quiver, bq.quiver);
  EXPECT_EQ(op.opposite().relations, bq.relations);
}
