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

#ifndef HOMSPASM_ORACLE_HPP_
#define HOMSPASM_ORACLE_HPP_

#include <cstdint>
#include <vector>

#include "homspasm/graph.hpp"

// Brute-force reference counts written directly from the definitions. Only
// the Graph type is shared with the rest of the library, so agreement with
// the engine is independent evidence.
namespace homspasm::oracle {

inline constexpr int kMaxPatternVertices = 7;
inline constexpr std::uint64_t kMaxMaps = 1'000'000'000;

// All counts throw LimitError when |V(H)|^|V(F)| exceeds kMaxMaps or F has
// more than kMaxPatternVertices vertices.
std::uint64_t brute_hom(const Graph& f, const Graph& h);
std::vector<std::uint64_t> brute_hom_node(const AnchoredGraph& f, const Graph& h);
std::uint64_t brute_inj(const Graph& f, const Graph& h);
std::vector<std::uint64_t> brute_inj_node(const AnchoredGraph& f, const Graph& h);
// Distinct subgraphs (vertex set, edge set) of h isomorphic to f.
std::uint64_t brute_sub(const Graph& f, const Graph& h);
// Distinct subgraphs isomorphic to f via an isomorphism sending the anchor to v.
std::vector<std::uint64_t> brute_sub_node(const AnchoredGraph& f, const Graph& h);
// Vertex subsets of h inducing a graph isomorphic to f.
std::uint64_t brute_indsub(const Graph& f, const Graph& h);

// Permutation enumeration.
std::uint64_t brute_aut(const Graph& f);
std::uint64_t brute_aut_anchored(const AnchoredGraph& f);
bool brute_isomorphic(const Graph& a, const Graph& b);

}  // namespace homspasm::oracle

#endif  // HOMSPASM_ORACLE_HPP_
