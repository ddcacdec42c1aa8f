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

#ifndef HOMSPASM_GRAPH6_HPP_
#define HOMSPASM_GRAPH6_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "homspasm/graph.hpp"

namespace homspasm {

// Standard graph6 encoding: N(n) header followed by the upper triangle of
// the adjacency matrix in column order, packed 6 bits per printable byte.
std::string format_graph6(const Graph& g);
Graph parse_graph6(std::string_view text);  // throws ParseError

// A pattern given by name or graph6, optionally anchored.
struct PatternSpec {
  Graph graph;
  std::optional<int> anchor;
};

// Names: C<n> (cycle), P<n> (n-vertex path), K<n> (clique), S<n> (star with
// n leaves, center 0). Anything else is tried as graph6. A trailing "@<i>"
// marks vertex i as the anchor.
PatternSpec parse_pattern(std::string_view text);
Graph named_pattern(std::string_view name);

}  // namespace homspasm

#endif  // HOMSPASM_GRAPH6_HPP_
