// Copyright 2026 The homspasm Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "homspasm/graph6.hpp"

#include <gtest/gtest.h>

#include "homspasm/errors.hpp"
#include "test_util.hpp"

namespace homspasm {
namespace {

// Reference strings produced by networkx.to_graph6_bytes.
TEST(Graph6Test, KnownEncodings) {
  EXPECT_EQ(format_graph6(complete_graph(3)), "Bw");
  EXPECT_EQ(format_graph6(complete_graph(4)), "C~");
  EXPECT_EQ(format_graph6(path_graph(3)), "Bg");
  EXPECT_EQ(format_graph6(cycle_graph(5)), "Dhc");
  EXPECT_EQ(format_graph6(star_graph(3)), "Cs");
  EXPECT_EQ(format_graph6(Graph(0)), "?");
  EXPECT_EQ(format_graph6(Graph(1)), "@");
}

TEST(Graph6Test, Petersen) {
  Graph g = parse_graph6("IheA@GUAo");
  EXPECT_EQ(g.num_vertices(), 10);
  EXPECT_EQ(g.num_edges(), 15);
  for (int v = 0; v < 10; ++v) EXPECT_EQ(g.degree(v), 3);
}

TEST(Graph6Test, RoundTripRandom) {
  std::mt19937_64 rng(3);
  for (int n : {0, 1, 2, 5, 30, 62, 63, 64, 100}) {
    Graph g = testing::random_graph(rng, n, 0.3);
    EXPECT_EQ(parse_graph6(format_graph6(g)), g) << n;
  }
}

TEST(Graph6Test, LongHeader) {
  Graph g = [] { std::mt19937_64 rng(5); return testing::random_graph_m(rng, 300, 400); }();
  std::string text = format_graph6(g);
  EXPECT_EQ(text[0], '~');
  EXPECT_EQ(parse_graph6(text), g);
}

TEST(Graph6Test, AcceptsOptionalHeaderAndNewline) {
  EXPECT_EQ(parse_graph6(">>graph6<<Bw\n"), complete_graph(3));
}

TEST(Graph6Test, RejectsMalformed) {
  EXPECT_THROW(parse_graph6(""), ParseError);
  EXPECT_THROW(parse_graph6("C"), ParseError);     // missing data bytes
  EXPECT_THROW(parse_graph6("Bww"), ParseError);   // trailing byte
  EXPECT_THROW(parse_graph6("B\x7f"), ParseError); // out of range
  EXPECT_THROW(parse_graph6("Bx"), ParseError);    // nonzero padding bits
}

TEST(Graph6Test, PatternNamesAndAnchors) {
  EXPECT_EQ(parse_pattern("C5").graph, cycle_graph(5));
  EXPECT_EQ(parse_pattern("P4").graph, path_graph(4));
  EXPECT_EQ(parse_pattern("K4").graph, complete_graph(4));
  EXPECT_EQ(parse_pattern("S3").graph, star_graph(3));
  EXPECT_FALSE(parse_pattern("K4").anchor.has_value());
  auto spec = parse_pattern("P3@1");
  EXPECT_EQ(spec.graph, path_graph(3));
  EXPECT_EQ(spec.anchor, 1);
  auto g6 = parse_pattern("Bw@2");
  EXPECT_EQ(g6.graph, complete_graph(3));
  EXPECT_EQ(g6.anchor, 2);
  EXPECT_THROW(parse_pattern("P3@3"), ParseError);
  EXPECT_THROW(parse_pattern("P3@"), ParseError);
  EXPECT_THROW(parse_pattern("X9"), ParseError);
}

}  // namespace
}  // namespace homspasm
