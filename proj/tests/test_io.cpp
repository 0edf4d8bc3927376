#include <gtest/gtest.h>

#include "generators.hpp"

using namespace seqwalk;

namespace {

std::string header = "quiver t\npoints 1 2 3\narrow a 1 2\narrow b 2 3\narrow c 1 2\n";

void expect_parse_error(const std::string& text, int line, const std::string& fragment) {
  try {
    parse_bound_quiver(text);
    FAIL() << "expected a parse error for:\n" << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(Parse, BasicFile) {
  auto in = parse_bound_quiver(header + "rel a*b - 2*c*b\n");
  const auto& bq = in.quiver;
  EXPECT_EQ(bq.name, "t");
  EXPECT_EQ(bq.quiver.point_count(), 3u);
  ASSERT_EQ(bq.relations.size(), 1u);
  EXPECT_EQ(bq.relations[0].term_count(), 2u);
  EXPECT_FALSE(in.truncation_given);
  EXPECT_EQ(bq.truncation, 4);
}

TEST(Parse, CommentsFieldAndTruncation) {
  auto in = parse_bound_quiver("# c\n" + header + "rel a*b  # zero\ntruncate 3\nfield 5\n");
  EXPECT_TRUE(in.truncation_given);
  EXPECT_EQ(in.quiver.truncation, 3);
  EXPECT_EQ(in.quiver.field_char, 5u);
}

TEST(Parse, RationalCoefficients) {
  auto in = parse_bound_quiver(header + "rel 1/2*a*b + 3/4*c*b\n");
  const auto& terms = in.quiver.relations[0].terms();
  std::vector<mpq_class> cs;
  for (const auto& [p, c] : terms) cs.push_back(c.rational());
  EXPECT_EQ(cs, (std::vector<mpq_class>{mpq_class(1, 2), mpq_class(3, 4)}));
}

TEST(Parse, Errors) {
  expect_parse_error(header + "arrow d 1 9\n", 6, "undeclared point '9'");
  expect_parse_error(header + "rel a\n", 6, "relation branch shorter than two");
  expect_parse_error(header + "rel a*zz\n", 6, "unknown arrow 'zz'");
  expect_parse_error(header + "rel a*b + a\n", 6, "shorter than two");
  expect_parse_error(header + "rel b*a\n", 6, "do not compose");
  expect_parse_error(header + "rel a*b - a*b\n", 6, "cancels to zero");
  expect_parse_error(header + "arrow a 2 3\n", 6, "duplicate arrow");
  expect_parse_error(header + "truncate 1\n", 6, "at least 2");
  expect_parse_error(header + "field 4\n", 6, "prime");
  expect_parse_error(header + "frobnicate\n", 6, "unknown keyword");
  expect_parse_error("quiver t\n", 1, "no points");
  expect_parse_error(header + "arrow 9x 1 2\n", 6, "invalid arrow name");
}

TEST(Parse, ErrorColumnPointsAtToken) {
  try {
    parse_bound_quiver(header + "rel a*zz\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 7);
  }
}

TEST(Emit, RoundTripsCorpus) {
  for (const auto& f : gen::corpus()) {
    auto bq = read_bound_quiver(gen::data(f)).quiver;
    auto again = parse_bound_quiver(emit_bound_quiver(bq)).quiver;
    EXPECT_EQ(again, bq) << f;
    EXPECT_EQ(emit_bound_quiver(again), emit_bound_quiver(bq)) << f;
  }
}

TEST(Emit, RoundTripsFiniteField) {
  auto bq = parse_bound_quiver(header + "rel a*b + 4*c*b\nfield 7\n").quiver;
  EXPECT_EQ(parse_bound_quiver(emit_bound_quiver(bq)).quiver, bq);
}

TEST(Walks, ParseAndPrint) {
  auto bq = read_bound_quiver(gen::data("kronecker_chain_mono.bq")).quiver;
  const Quiver& q = bq.quiver;
  Walk w = parse_walk(q, "a1 a2 ~b2 ~b1 a1 a2");
  EXPECT_EQ(w.letters().size(), 6u);
  EXPECT_EQ(walk_string(q, w), "a1 a2 ~b2 ~b1 a1 a2");
  EXPECT_EQ(parse_walk(q, "e2"), Walk::trivial(1));
  EXPECT_EQ(walk_string(q, Walk::trivial(1)), "e2");
  EXPECT_THROW(parse_walk(q, "a1 b1"), ParseError);
  EXPECT_THROW(parse_walk(q, "zz"), ParseError);
  EXPECT_THROW(parse_walk(q, ""), ParseError);
}

TEST(Dot, ListsEveryArrow) {
  auto bq = read_bound_quiver(gen::data("seven_vertex.bq")).quiver;
  std::string dot = dot_string(bq.quiver, "seven");
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  std::size_t edges = 0;
  for (std::size_t at = dot.find("->"); at != std::string::npos; at = dot.find("->", at + 2)) ++edges;
  EXPECT_EQ(edges, 10u);
}
