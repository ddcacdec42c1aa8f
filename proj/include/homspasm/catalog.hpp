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

#ifndef HOMSPASM_CATALOG_HPP_
#define HOMSPASM_CATALOG_HPP_

#include <vector>

#include "homspasm/graph.hpp"

namespace homspasm {

inline constexpr int kDefaultCatalogLimit = 7;

// One canonical representative per isomorphism class of graphs on exactly
// `n` vertices, ordered by (edge count, canonical key).
std::vector<Graph> enumerate_graphs(int n, int limit = kDefaultCatalogLimit);

// Connected graphs with min_vertices..max_vertices vertices, ordered by
// (vertex count, edge count, canonical key).
std::vector<Graph> enumerate_connected_graphs(int min_vertices, int max_vertices,
                                              int limit = kDefaultCatalogLimit);

}  // namespace homspasm

#endif  // HOMSPASM_CATALOG_HPP_
