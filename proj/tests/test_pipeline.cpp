#include <gtest/gtest.h>

#include "generators.hpp"

using namespace seqwalk;

TEST(Report, Verdicts) {
  EXPECT_EQ(shod_obstruction_report(gen::load("kronecker_chain_comm.bq")).verdict, Verdict::Inconclusive);
  EXPECT_EQ(shod_obstruction_report(gen::load("a4_overlap.bq")).verdict, Verdict::Inconclusive);
  EXPECT_EQ(shod_obstruction_report(gen::load("tree_example.bq")).verdict, Verdict::Inconclusive);
  EXPECT_EQ(shod_obstruction_report(gen::load("kronecker_chain_mono.bq")).verdict, Verdict::NotShod);
  EXPECT_EQ(shod_obstruction_report(gen::load("band_quiver.bq")).verdict, Verdict::NotShod);
  EXPECT_EQ(shod_obstruction_report(gen::load("nakayama_a5.bq")).verdict, Verdict::NotShod);
  EXPECT_STREQ(to_string(Verdict::NotShod), "NOT_SHOD");
  EXPECT_STREQ(to_string(Verdict::Inconclusive), "INCONCLUSIVE");
}

TEST(Report, WitnessesAboveOne) {
  for (const auto& f : gen::corpus()) {
    auto rep = shod_obstruction_report(gen::load(f));
    EXPECT_EQ(rep.witnesses.size() + rep.skipped.size(), rep.certificates.size()) << f;
    for (const auto& w : rep.witnesses) {
      EXPECT_TRUE(!w.pd || *w.pd > 1) << f;
      EXPECT_TRUE(!w.id || *w.id > 1) << f;
      EXPECT_TRUE(w.postcondition) << f;
    }
  }
}

TEST(Report, SevenVertexRecordsSkippedCertificates) {
  auto rep = shod_obstruction_report(gen::load("seven_vertex.bq"));
  EXPECT_EQ(rep.verdict, Verdict::NotShod);
  EXPECT_EQ(rep.certificates.size(), 192u);
  EXPECT_EQ(rep.skipped.size(), 84u);
  for (const auto& s : rep.skipped) EXPECT_EQ(s.code, ErrorCode::SegmentResidueZero);
}

TEST(Report, WitnessLimit) {
  auto rep = shod_obstruction_report(gen::load("band_quiver.bq"), {}, 2);
  EXPECT_EQ(rep.witnesses.size(), 2u);
  EXPECT_EQ(rep.verdict, Verdict::NotShod);
}

TEST(Witness, SevenVertexValues) {
  auto a = gen::load("seven_vertex.bq");
  const auto certs = detect_sequential_walks(a);
  auto it = std::find_if(certs.begin(), certs.end(),
                         [&](const auto& c) { return walk_string(a.quiver(), c.full_walk) == "a1 b1 ~b3 ~a3 a2 b2"; });
  ASSERT_NE(it, certs.end());
  auto w = witness_for(a, *it, static_cast<std::size_t>(it - certs.begin()));
  EXPECT_EQ(w.retained.size(), 4u);
  EXPECT_EQ(w.eae_dim, 11u);
  EXPECT_EQ(w.cut_size, 1u);
  EXPECT_EQ(w.reduced.quiver.arrow_count(), 5u);
  EXPECT_EQ(w.pd, 2);
  EXPECT_EQ(w.id, 2);
}

TEST(Uniserial, NakayamaSimple) {
  auto a = gen::load("nakayama_a5.bq");
  auto s3 = simple(a, 2);
  EXPECT_EQ(proj_dim(a, s3), 2);
  EXPECT_EQ(inj_dim(a, s3), 2);
  auto cert = sequential_walk_from_uniserial(a, s3);
  EXPECT_TRUE(check_sequential(a, cert));
  EXPECT_EQ(walk_string(a.quiver(), cert.full_walk), "x1 x2 x3 x4");
}

TEST(Uniserial, Preconditions) {
  auto a = gen::load("nakayama_a5.bq");
  EXPECT_THROW(sequential_walk_from_uniserial(a, projective(a, 0)), Error);
  auto tree = gen::load("tree_example.bq");
  try {
    sequential_walk_from_uniserial(tree, string_module(tree, parse_walk(tree.quiver(), "eta ~gamma")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionUnmet);
  }
  auto gentle = gen::load("gentle_kronecker.bq");
  try {
    sequential_walk_from_uniserial(gentle, string_module(gentle, parse_walk(gentle.quiver(), "a1 ~b1")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionUnmet);
  }
  EXPECT_THROW(sequential_walk_from_uniserial(gen::load("a4_overlap.bq"), simple(gen::load("a4_overlap.bq"), 0)), Error);
  EXPECT_THROW(sequential_walk_from_uniserial(gen::load("kronecker_chain_comm.bq"), simple(gen::load("kronecker_chain_comm.bq"), 0)),
               Error);
}

// Uniserial modules with pd, id >= 2 over gldim-2 Nakayama algebras always
// produce a sequential walk.
TEST(Uniserial, RandomNakayama) {
  for (const auto& a : gen::random_nakayama_gldim2(31, 25))
    for (const auto& m : gen::interval_modules(a)) {
      auto pd = proj_dim(a, m), id = inj_dim(a, m);
      if (!pd || !id || *pd < 2 || *id < 2) continue;
      auto cert = sequential_walk_from_uniserial(a, m);
      EXPECT_TRUE(check_sequential(a, cert));
    }
}
