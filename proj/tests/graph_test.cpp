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

#include "homspasm/graph.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

#include "homspasm/oracle.hpp"
#include "test_util.hpp"

namespace homspasm {
namespace {

TEST(GraphTest, NormalizesAndSortsEdges) {
  Graph g(4, {{2, 1}, {0, 3}, {1, 0}});
  ASSERT_EQ(g.num_edges(), 3);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1}));
  EXPECT_EQ(g.edges()[1], (Edge{0, 3}));
  EXPECT_EQ(g.edges()[2], (Edge{1, 2}));
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(2, 3));
  EXPECT_EQ(g.degree(1), 2);
}

TEST(GraphTest, RejectsMalformedEdgeLists) {
  EXPECT_THROW(Graph(3, {{1, 1}}), std::invalid_argument);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(Graph(3, {{0, 3}}), std::invalid_argument);
  EXPECT_THROW(Graph(3, {{-1, 0}}), std::invalid_argument);
  EXPECT_THROW(Graph(-1), std::invalid_argument);
}

TEST(GraphTest, EmptyGraph) {
  Graph g(0);
  EXPECT_TRUE(g.empty());
  EXPECT_EQ(g.num_edges(), 0);
  EXPECT_TRUE(is_connected(g));
  EXPECT_TRUE(connected_components(g).empty());
}

TEST(GraphTest, AnchoredGraphValidatesAnchor) {
  EXPECT_THROW(AnchoredGraph(path_graph(3), 3), std::invalid_argument);
  EXPECT_THROW(AnchoredGraph(path_graph(3), -1), std::invalid_argument);
  EXPECT_EQ(AnchoredGraph(path_graph(3), 1).anchor, 1);
}

TEST(GraphTest, NamedFamilies) {
  EXPECT_EQ(cycle_graph(5).num_edges(), 5);
  EXPECT_TRUE(cycle_graph(5).has_edge(4, 0));
  EXPECT_EQ(path_graph(4).num_edges(), 3);
  EXPECT_EQ(path_graph(1).num_edges(), 0);
  EXPECT_EQ(complete_graph(6).num_edges(), 15);
  EXPECT_EQ(star_graph(9).num_vertices(), 10);
  EXPECT_EQ(star_graph(9).degree(0), 9);
  EXPECT_THROW(cycle_graph(2), std::invalid_argument);
}

TEST(GraphTest, RelabelAndInduce) {
  Graph p = path_graph(3);  // 0-1-2
  const int perm[] = {2, 0, 1};
  Graph q = p.relabeled(perm);
  EXPECT_TRUE(q.has_edge(2, 0));
  EXPECT_TRUE(q.has_edge(0, 1));
  EXPECT_FALSE(q.has_edge(2, 1));
  const int keep[] = {2, 0};
  Graph k = complete_graph(4).induced(keep);
  EXPECT_EQ(k, complete_graph(2));
}

TEST(GraphTest, DisjointUnionWithEmptyIsIdentity) {
  Graph g = cycle_graph(4);
  EXPECT_EQ(disjoint_union(g, Graph(0)), g);
  Graph u = disjoint_union(complete_graph(3), path_graph(2));
  EXPECT_EQ(u.num_vertices(), 5);
  EXPECT_EQ(u.num_edges(), 4);
  EXPECT_TRUE(u.has_edge(3, 4));
}

TEST(GraphTest, CategoricalProductEdgeCount) {
  // Hom(K2, G x H) = Hom(K2, G) Hom(K2, H): 2|E| = 6 * 6.
  Graph p = categorical_product(complete_graph(3), complete_graph(3));
  EXPECT_EQ(p.num_vertices(), 9);
  EXPECT_EQ(p.num_edges(), 18);
  EXPECT_EQ(oracle::brute_hom(complete_graph(2), p), 36u);
  // (a,u) ~ (b,w) iff a~b and u~w.
  EXPECT_TRUE(p.has_edge(0 * 3 + 1, 1 * 3 + 2));
  EXPECT_FALSE(p.has_edge(0 * 3 + 1, 1 * 3 + 1));
}

TEST(GraphTest, Components) {
  Graph g(6, {{0, 3}, {3, 5}, {1, 4}});
  EXPECT_FALSE(is_connected(g));
  auto ids = component_ids(g);
  EXPECT_EQ(ids, (std::vector<int>{0, 1, 2, 0, 1, 0}));
  auto comps = connected_components(g);
  ASSERT_EQ(comps.size(), 3u);
  EXPECT_EQ(comps[0], path_graph(3));
  EXPECT_EQ(comps[1], path_graph(2));
  EXPECT_EQ(comps[2], Graph(1));
}

TEST(GraphTest, HomIdentitiesOnSmallGraphs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Graph f = testing::random_graph(rng, 1 + trial % 4, 0.6);
    Graph g = testing::random_graph(rng, 1 + trial % 3, 0.6);
    Graph h = testing::random_graph(rng, 2 + trial % 3, 0.6);
    EXPECT_EQ(oracle::brute_hom(f, categorical_product(g, h)),
              oracle::brute_hom(f, g) * oracle::brute_hom(f, h));
    EXPECT_EQ(oracle::brute_hom(disjoint_union(f, g), h),
              oracle::brute_hom(f, h) * oracle::brute_hom(g, h));
  }
}

}  // namespace
}  // namespace homspasm
