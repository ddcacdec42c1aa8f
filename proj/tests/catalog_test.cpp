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

#include "homspasm/catalog.hpp"

#include <gtest/gtest.h>

#include <set>

#include "homspasm/canonical.hpp"
#include "homspasm/errors.hpp"

namespace homspasm {
namespace {

// Unlabeled graphs and connected graphs on n vertices (OEIS A000088, A001349).
TEST(CatalogTest, CountsMatchKnownSequences) {
  const std::size_t all[] = {1, 1, 2, 4, 11, 34, 156, 1044};
  const std::size_t connected[] = {0, 1, 1, 2, 6, 21, 112, 853};
  for (int n = 0; n <= 7; ++n) {
    EXPECT_EQ(enumerate_graphs(n).size(), all[n]) << n;
    if (n >= 1) {
      EXPECT_EQ(enumerate_connected_graphs(n, n).size(), connected[n]) << n;
    }
  }
}

TEST(CatalogTest, ConnectedTwoToFiveHasThirty) {
  EXPECT_EQ(enumerate_connected_graphs(2, 5).size(), 30u);
  EXPECT_EQ(enumerate_connected_graphs(1, 5).size(), 31u);
}

TEST(CatalogTest, OutputIsCanonicalDistinctAndOrdered) {
  auto graphs = enumerate_graphs(6);
  std::set<std::string> keys;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    EXPECT_TRUE(keys.insert(canonical_key(graphs[i])).second);
    if (i > 0) {
      EXPECT_LE(graphs[i - 1].num_edges(), graphs[i].num_edges());
    }
  }
  for (const Graph& g : enumerate_connected_graphs(1, 6)) EXPECT_TRUE(is_connected(g));
}

TEST(CatalogTest, Limits) {
  EXPECT_THROW(enumerate_graphs(8), LimitError);
  EXPECT_THROW(enumerate_connected_graphs(2, 8), LimitError);
}

}  // namespace
}  // namespace homspasm
