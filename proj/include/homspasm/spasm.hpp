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

#ifndef HOMSPASM_SPASM_HPP_
#define HOMSPASM_SPASM_HPP_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homspasm/graph.hpp"
#include "homspasm/partition.hpp"
#include "homspasm/rational.hpp"

namespace homspasm {

// The counting function a combination's terms refer to.
enum class BasisKind { kHom, kInj, kSub, kIndSub };
enum class Level { kGraph, kNode };

std::string_view to_string(BasisKind kind);
std::string_view to_string(Level level);
BasisKind parse_basis_kind(std::string_view text);
Level parse_level(std::string_view text);

// One term coefficient * Kind(graph, .). The graph is stored under its
// canonical labeling; node-level terms carry the canonical anchor index.
struct BasisTerm {
  Graph graph;
  std::optional<int> anchor;
  std::string key;
  Rational coefficient;
};

BasisTerm make_term(const Graph& g, Rational coefficient);
// The fixed column order: (vertex count, edge count, canonical key).
bool term_order(const BasisTerm& a, const BasisTerm& b);
BasisTerm make_term(const AnchoredGraph& g, Rational coefficient);

// A graph motif parameter as a finite linear combination. Terms are sorted by
// (vertex count, edge count, canonical key) with unique keys and nonzero
// coefficients once simplified.
struct LinearCombination {
  BasisKind basis = BasisKind::kHom;
  Level level = Level::kGraph;
  std::vector<BasisTerm> terms;
  std::string label;  // human-readable name, e.g. "Sub(C5)"

  std::size_t size() const { return terms.size(); }
  const BasisTerm* find(std::string_view key) const;
};

// Sub(pattern, .) expanded into homomorphism counts over the loop-free
// quotients of the pattern.
LinearCombination spasm_of(const Graph& pattern, int limit = kDefaultPartitionLimit);
// Node-level Sub(pattern, H, v) in terms of anchored homomorphism counts.
LinearCombination anchored_spasm_of(const AnchoredGraph& pattern,
                                    int limit = kDefaultPartitionLimit);

// Inj(pattern, .) in the Hom basis (Moebius inversion on the partition lattice).
LinearCombination inj_expansion(const Graph& pattern, int limit = kDefaultPartitionLimit);
LinearCombination inj_expansion(const AnchoredGraph& pattern,
                                int limit = kDefaultPartitionLimit);

inline constexpr int kIndSubVertexLimit = 10;
// Largest number of non-edges whose subsets are enumerated.
inline constexpr int kIndSubNonEdgeLimit = 28;

// IndSub(pattern, .) in the Hom basis via inclusion-exclusion over added
// non-edges at the Inj level.
LinearCombination indsub_expansion(const Graph& pattern);

using GraphPredicate = std::function<bool(const Graph&)>;

inline constexpr int kPropertyParamLimit = 7;

// Number of k-vertex induced subgraphs satisfying `property`, in the Hom
// basis. `property` is evaluated once per isomorphism class on canonical
// representatives and must be isomorphism-invariant.
LinearCombination indsub_property_param(int k, const GraphPredicate& property);

namespace predicates {
GraphPredicate always_true();
GraphPredicate connected();
GraphPredicate isomorphic_to(const Graph& g);
}  // namespace predicates

// Expand any basis kind into the Hom basis; Hom input is simplified only.
LinearCombination to_hom_basis(const LinearCombination& c);

// Merge terms with equal keys, drop zeros, restore canonical order.
LinearCombination simplify(const LinearCombination& c);
// Concatenate and simplify; basis and level must agree.
LinearCombination combine(const LinearCombination& a, const LinearCombination& b);
LinearCombination scale(const LinearCombination& c, const Rational& factor);

// Keep only terms whose graph has treewidth > k.
LinearCombination filter_min_treewidth(const LinearCombination& c, int k);

// Canonically deduplicated maximal connected components of the inputs, in
// (vertex count, edge count, key) order.
std::vector<Graph> connected_component_support(const std::vector<Graph>& graphs);

// Serialization {basis_kind, level, label, terms: [{graph6, anchor?, num, den}]}.
std::string to_json(const LinearCombination& c);
LinearCombination combination_from_json(std::string_view text);  // throws ParseError

}  // namespace homspasm

#endif  // HOMSPASM_SPASM_HPP_
