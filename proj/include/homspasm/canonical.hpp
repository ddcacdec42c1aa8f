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

#ifndef HOMSPASM_CANONICAL_HPP_
#define HOMSPASM_CANONICAL_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "homspasm/graph.hpp"

namespace homspasm {

// Canonical labeling of a (possibly anchored) graph.
//
// The key is the graph6 string of the canonically relabeled graph; for
// anchored graphs it is followed by ':' and the anchor's canonical index.
// Keys are equal iff the inputs are isomorphic (anchor-preserving when
// anchored). Works for graphs with at most 64 vertices.
struct CanonicalForm {
  std::string key;
  Graph graph;                 // input relabeled by `labeling`
  std::vector<int> labeling;   // labeling[v] = canonical index of vertex v
  int anchor = -1;             // canonical anchor index, or -1
};

CanonicalForm canonical_form(const Graph& g);
CanonicalForm canonical_form(const AnchoredGraph& g);

// Shorthands for canonical_form(...).key.
std::string canonical_key(const Graph& g);
std::string canonical_key(const AnchoredGraph& g);

bool is_isomorphic(const Graph& g, const Graph& h);
bool is_isomorphic(const AnchoredGraph& g, const AnchoredGraph& h);

// Exact automorphism counts; throws LimitError if the count overflows 64 bits.
std::uint64_t automorphism_count(const Graph& g);
std::uint64_t anchored_automorphism_count(const AnchoredGraph& g);

// Canonical key of a vertex-colored graph; colors are ordered, so the key
// distinguishes colorings that differ only by a permutation of color names.
std::string colored_canonical_key(const Graph& g, const std::vector<int>& color);

}  // namespace homspasm

#endif  // HOMSPASM_CANONICAL_HPP_
