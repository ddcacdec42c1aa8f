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

#ifndef HOMSPASM_DECOMP_HPP_
#define HOMSPASM_DECOMP_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homspasm/graph.hpp"

namespace homspasm {

inline constexpr int kDefaultTreewidthLimit = 14;

struct TreeDecomposition {
  std::vector<std::vector<int>> bags;  // each sorted ascending
  std::vector<std::pair<int, int>> tree_edges;
  int width = -1;  // max bag size - 1; -1 when there are no bags
};

enum class NiceKind { kLeaf, kIntroduce, kForget, kJoin };

struct NiceNode {
  NiceKind kind = NiceKind::kLeaf;
  std::vector<int> bag;  // sorted ascending
  int vertex = -1;       // introduced or forgotten vertex
  std::vector<int> children;
};

// Rooted nice decomposition. Children always precede their parent in
// `nodes`, so a forward pass is a valid bottom-up evaluation order.
struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;
  int root = -1;
  std::optional<int> anchor;

  int width() const;
};

struct TreewidthResult {
  int width = -1;
  TreeDecomposition decomposition;
};

// Exact treewidth by dynamic programming over vertex subsets (elimination
// orderings). Empty graph: -1; edgeless: 0. Throws LimitError beyond `limit`.
TreewidthResult treewidth_exact(const Graph& g, int limit = kDefaultTreewidthLimit);

// Decomposition built from an elimination ordering (first eliminated first).
TreeDecomposition decomposition_from_ordering(const Graph& g,
                                              const std::vector<int>& ordering);

// Root bag is empty, or {anchor} when an anchor is given; the anchor is
// never forgotten. Throws std::invalid_argument if `td` is not valid for `g`.
NiceTreeDecomposition to_nice(const TreeDecomposition& td, const Graph& g,
                              std::optional<int> anchor = std::nullopt);

// nullopt when valid, otherwise a description of the first violation.
std::optional<std::string> validate(const TreeDecomposition& td, const Graph& g);
std::optional<std::string> validate(const NiceTreeDecomposition& td, const Graph& g);

// Debug dump {bags, edges, width, kind}.
std::string decomposition_json(const TreeDecomposition& td);
std::string decomposition_json(const NiceTreeDecomposition& td);

}  // namespace homspasm

#endif  // HOMSPASM_DECOMP_HPP_
