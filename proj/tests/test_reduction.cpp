#include <gtest/gtest.h>

#include "generators.hpp"

using namespace seqwalk;

namespace {

SequentialWalkCertificate find_cert(const TruncatedAlgebra& a, const std::string& walk, int max_len = 8) {
  DetectorConfig cfg;
  cfg.max_walk_len = max_len;
  for (const auto& c : detect_sequential_walks(a, cfg))
    if (walk_string(a.quiver(), c.full_walk) == walk) return c;
  throw std::runtime_error("certificate not found: " + walk);
}

std::vector<std::string> names(const Quiver& q, const std::vector<int>& pts) {
  std::vector<std::string> out;
  for (int x : pts) out.push_back(q.point_name(x));
  return out;
}

std::size_t dim_at(const Quiver& q, const Representation& m, const std::string& x) {
  return m.dims[static_cast<std::size_t>(*q.find_point(x))];
}

// Structure constants reproduce the ambient product of basis elements.
void expect_closed(const BasedAlgebra& b) {
  const auto& amb = b.ambient();
  for (std::size_t i = 0; i < b.dimension(); ++i)
    for (std::size_t j = 0; j < b.dimension(); ++j) {
      SparseVec prod = b.ambient_product(b.basis()[i].rep, b.basis()[j].rep);
      SparseVec back;
      for (const auto& [k, c] : b.product(i, j)) back.axpy(c, b.basis()[static_cast<std::size_t>(k)].rep);
      EXPECT_EQ(amb.reduce(back), prod);
    }
}

}  // namespace

TEST(FullSubcategory, DimensionIsSumOfBlocks) {
  for (const auto& f : gen::corpus()) {
    auto a = gen::load(f);
    std::vector<int> pts;
    for (std::size_t x = 0; x < a.point_count(); x += 2) pts.push_back(static_cast<int>(x));
    auto b = full_subcategory(a, pts);
    std::size_t expect = 0;
    for (int x : pts)
      for (int y : pts) expect += a.dimension(x, y);
    EXPECT_EQ(b.dimension(), expect) << f;
    expect_closed(b);
  }
  EXPECT_THROW(full_subcategory(gen::load("a4_overlap.bq"), {}), Error);
}

TEST(FullSubcategory, WholeAlgebraQuiverIsOriginal) {
  for (const auto& f : gen::corpus()) {
    auto a = gen::load(f);
    std::vector<int> all;
    for (std::size_t x = 0; x < a.point_count(); ++x) all.push_back(static_cast<int>(x));
    auto b = full_subcategory(a, all);
    EXPECT_EQ(b.dimension(), a.dimension()) << f;
    EXPECT_EQ(quiver_of(b).quiver.arrow_count(), a.quiver().arrow_count()) << f;
    auto pres = present_as_bound_quiver(b, {}, {}, "whole");
    EXPECT_EQ(TruncatedAlgebra::build(pres.bound_quiver).dimension(), a.dimension()) << f;
    EXPECT_EQ(TruncatedAlgebra::build(pres.bound_quiver).top_relations().size(), a.top_relations().size()) << f;
  }
}

TEST(Cut, ConsistencyOfArrowSets) {
  auto a = gen::load("kronecker_chain_comm.bq");
  const auto& r = a.top_relations().front();
  EXPECT_FALSE(is_consistent_cut(r, {0}));
  EXPECT_TRUE(is_consistent_cut(r, {0, 1}));
  EXPECT_TRUE(is_consistent_cut(r, {}));
}

TEST(Cut, InconsistentCutRejected) {
  auto a = gen::load("kronecker_chain_comm.bq");
  auto b = full_subcategory(a, {0, 1, 2});
  auto g = quiver_of(b);
  auto a1 = g.quiver.find_arrow("a1");
  ASSERT_TRUE(a1);
  try {
    cut_arrows(b, g, {*a1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CutNotConsistent);
  }
}

TEST(Cut, ConsistentCutSplits) {
  auto a = gen::load("kronecker_chain_comm.bq");
  auto b = full_subcategory(a, {0, 1, 2});
  auto g = quiver_of(b);
  std::set<int> s{*g.quiver.find_arrow("a1"), *g.quiver.find_arrow("b1")};
  auto cut = cut_arrows(b, g, s);
  // A / <a1, b1> is the path algebra of 2 => 3 on top of the isolated point 1
  EXPECT_EQ(cut.algebra.dimension(), 5u);
  EXPECT_EQ(cut.algebra.dimension() + cut.ideal_dim, b.dimension());
  expect_closed(cut.algebra);
}

TEST(StandardReduction, SevenVertexWalkthrough) {
  auto a = gen::load("seven_vertex.bq");
  auto cert = find_cert(a, "a1 b1 ~b3 ~a3 a2 b2");
  auto r = standard_reduction(a, cert);
  EXPECT_EQ(names(a.quiver(), r.points), (std::vector<std::string>{"1", "2", "3", "7"}));
  const Quiver& eq = r.eae_quiver.quiver;
  std::size_t seven_to_one = 0;
  for (const auto& ar : eq.arrows()) seven_to_one += eq.point_name(ar.source) == "7" && eq.point_name(ar.target) == "1";
  EXPECT_EQ(seven_to_one, 2u);
  EXPECT_EQ(r.cut.size(), 1u);
  expect_closed(r.eae);
  expect_closed(r.reduced);

  const BoundQuiver& bq = r.presented.bound_quiver;
  EXPECT_EQ(bq.quiver.arrow_count(), 5u);
  ASSERT_EQ(bq.relations.size(), 1u);
  const Quiver& bqq = bq.quiver;
  LinComb expect(Path::from_arrows(bqq, {*bqq.find_arrow("a1"), *bqq.find_arrow("b1")}));
  expect.add(Path::from_arrows(bqq, {*bqq.find_arrow("a2"), *bqq.find_arrow("b2")}), Scalar(1));
  EXPECT_TRUE(bq.relations[0].proportional_to(expect));
  EXPECT_TRUE(r.postcondition);

  auto b = TruncatedAlgebra::build(bq);
  EXPECT_EQ(b.dimension(), r.reduced.dimension());
  auto m = string_module(b, r.w2);
  EXPECT_EQ(dim_at(bqq, m, "7"), 1u);
  EXPECT_EQ(dim_at(bqq, m, "1"), 1u);
  EXPECT_EQ(m.total_dim(), 2u);
  EXPECT_EQ(proj_dim(b, m), 2);
  EXPECT_EQ(inj_dim(b, m), 2);

  auto omega = syzygy(b, m);
  EXPECT_EQ(omega.total_dim(), 3u);
  for (const char* x : {"1", "2", "3"}) EXPECT_EQ(dim_at(bqq, omega, x), 1u);
  auto top = top_dims(bqq, omega);
  EXPECT_EQ(top[static_cast<std::size_t>(*bqq.find_point("2"))], 1u);
  EXPECT_EQ(top[static_cast<std::size_t>(*bqq.find_point("3"))], 1u);
  EXPECT_EQ(top[static_cast<std::size_t>(*bqq.find_point("1"))], 0u);

  auto omega7 = syzygy(b, simple(b, *bqq.find_point("7")));
  auto sum = omega.dims;
  sum[static_cast<std::size_t>(*bqq.find_point("1"))] += 1;
  EXPECT_EQ(omega7.dims, sum);
}

TEST(StandardReduction, MonomialKronecker) {
  auto a = gen::load("kronecker_chain_mono.bq");
  auto r = standard_reduction(a, find_cert(a, "a1 a2 ~b2 ~b1 a1 a2"));
  EXPECT_EQ(r.points.size(), 3u);
  EXPECT_TRUE(r.cut.empty());
  auto b = TruncatedAlgebra::build(r.presented.bound_quiver);
  EXPECT_EQ(b.dimension(), a.dimension());
  EXPECT_EQ(walk_string(b.quiver(), r.w2), "~b2 ~b1");
  auto m = string_module(b, r.w2);
  EXPECT_EQ(proj_dim(b, m), 2);
  EXPECT_EQ(inj_dim(b, m), 2);
}

TEST(StandardReduction, BandWalk) {
  auto a = gen::load("band_quiver.bq");
  auto r = standard_reduction(a, find_cert(a, "a b c ~d c e f"));
  auto b = TruncatedAlgebra::build(r.presented.bound_quiver);
  EXPECT_EQ(walk_string(b.quiver(), r.w2), "c ~d c");
  auto m = string_module(b, r.w2);
  EXPECT_GT(*proj_dim(b, m), 1);
  EXPECT_GT(*inj_dim(b, m), 1);
}

TEST(StandardReduction, DependentSegmentResidues) {
  // a3 b3 + a4 b4 + a5 b5 = 0, so the residues of the three segments of w'
  // through 7 -> 1 are dependent in rad/rad^2 of eAe
  auto a = gen::load("seven_vertex.bq");
  auto cert = find_cert(a, "a1 b1 ~b3 ~a3 a4 b4 ~b5 ~a5 a1 b1", 10);
  try {
    standard_reduction(a, cert);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SegmentResidueZero);
  }
}

TEST(StandardReduction, PresentationRoundTripOnCorpus) {
  for (const auto& f : gen::corpus()) {
    auto a = gen::load(f);
    for (const auto& c : detect_sequential_walks(a)) {
      StandardReduction r;
      try {
        r = standard_reduction(a, c);
      } catch (const Error& e) {
        ASSERT_EQ(e.code(), ErrorCode::SegmentResidueZero) << f << ": " << e.what();
        continue;
      }
      auto b = TruncatedAlgebra::build(r.presented.bound_quiver);
      EXPECT_EQ(b.dimension(), r.reduced.dimension()) << f;
      EXPECT_EQ(r.reduced.dimension() + r.ideal_dim, r.eae.dimension()) << f;
      EXPECT_TRUE(is_reduced(r.w2)) << f;
      EXPECT_TRUE(r.postcondition) << f;
      auto again = parse_bound_quiver(emit_bound_quiver(r.presented.bound_quiver)).quiver;
      EXPECT_EQ(TruncatedAlgebra::build(again).dimension(), b.dimension()) << f;
    }
  }
}
