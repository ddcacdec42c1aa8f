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

#ifndef HOMSPASM_HOMCOUNT_HPP_
#define HOMSPASM_HOMCOUNT_HPP_

#include <atomic>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "homspasm/decomp.hpp"
#include "homspasm/graph.hpp"
#include "homspasm/rational.hpp"
#include "homspasm/spasm.hpp"

namespace homspasm {

// Host graph in compressed adjacency form. Neighbor arrays are sorted, so
// edge membership is a binary search.
class HostGraph {
 public:
  HostGraph() = default;
  explicit HostGraph(const Graph& g);
  // Validates like Graph: no loops, duplicates or out-of-range endpoints.
  HostGraph(int num_vertices, std::span<const Edge> edges);

  int num_vertices() const { return n_; }
  long long num_edges() const { return static_cast<long long>(neighbors_.size()) / 2; }
  std::span<const int> neighbors(int v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(int u, int v) const;

 private:
  int n_ = 0;
  std::vector<int> offsets_ = {0};
  std::vector<int> neighbors_;
};

// Per-vertex anchored counts, tagged with the anchored pattern's key.
struct CountVector {
  std::string key;
  std::vector<Count> counts;
};

// Plans whose bags exceed this size are refused on hosts larger than
// kWidthGuardHostVertices unless explicitly allowed.
inline constexpr int kWidthGuardBagSize = 5;
inline constexpr int kWidthGuardHostVertices = 100000;

struct CountOptions {
  bool allow_wide_plans = false;
};

// Execution plan for one pattern: a nice tree decomposition per connected
// component. Anchored plans thread the anchor to the root of its component.
class HomPlan {
 public:
  explicit HomPlan(const Graph& pattern);
  explicit HomPlan(const AnchoredGraph& pattern);

  bool anchored() const { return anchored_.has_value(); }
  int width() const;

  Count count(const HostGraph& host, const CountOptions& options = {}) const;
  // Anchored plans only.
  std::vector<Count> count_node(const HostGraph& host,
                                const CountOptions& options = {}) const;

 private:
  struct Component {
    Graph graph;
    NiceTreeDecomposition plan;
  };
  std::vector<Component> free_;
  std::optional<Component> anchored_;
};

Count hom_count(const Graph& pattern, const HostGraph& host,
                const CountOptions& options = {});
CountVector hom_count_node(const AnchoredGraph& pattern, const HostGraph& host,
                           const CountOptions& options = {});

// Run the counting DP on a caller-supplied plan for a connected or
// disconnected pattern; `plan` must validate against `pattern`.
Count hom_count_with_plan(const Graph& pattern, const NiceTreeDecomposition& plan,
                          const HostGraph& host, const CountOptions& options = {});
std::vector<Count> hom_count_node_with_plan(const Graph& pattern,
                                            const NiceTreeDecomposition& plan,
                                            const HostGraph& host,
                                            const CountOptions& options = {});

// Exact value of a Hom-basis combination; std::invalid_argument for other
// bases or the wrong level.
Rational evaluate(const LinearCombination& c, const HostGraph& host,
                  const CountOptions& options = {});
std::vector<Rational> evaluate_node(const LinearCombination& c, const HostGraph& host,
                                    const CountOptions& options = {});

struct BatchOptions {
  int jobs = 1;
  std::size_t chunk_size = 256;
  CountOptions count;
};

// Result for one host. Graph level fills `hom` (one per distinct term) and
// `derived` (one per parameter); node level fills the per-vertex variants,
// indexed [column][vertex].
struct BatchRow {
  std::size_t host_index = 0;
  std::vector<Count> hom;
  std::vector<Rational> derived;
  std::vector<std::vector<Count>> node_hom;
  std::vector<std::vector<Rational>> node_derived;
  std::optional<std::string> error;
};

// Evaluates several Hom-basis parameters over many hosts. Terms shared
// between parameters are counted once per host; rows come back in host order
// and do not depend on the number of workers.
class BatchEvaluator {
 public:
  BatchEvaluator(std::vector<LinearCombination> params, Level level);

  Level level() const { return level_; }
  const std::vector<LinearCombination>& params() const { return params_; }
  // Distinct terms in column order; coefficients are not meaningful.
  const std::vector<BasisTerm>& terms() const { return terms_; }

  BatchRow evaluate(const HostGraph& host, const CountOptions& options = {}) const;
  void run(std::span<const HostGraph> hosts, const BatchOptions& options,
           const std::function<void(BatchRow&&)>& sink) const;

  // Number of single-term homomorphism counts performed so far.
  long long hom_evaluations() const { return evaluations_.load(); }

 private:
  Level level_;
  std::vector<LinearCombination> params_;
  std::vector<BasisTerm> terms_;
  std::vector<HomPlan> plans_;
  // uses_[p] lists (term index, coefficient) pairs of parameter p.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> uses_;
  mutable std::atomic<long long> evaluations_{0};
};

std::vector<BatchRow> batch_evaluate(const std::vector<LinearCombination>& params,
                                     std::span<const HostGraph> hosts, Level level,
                                     const BatchOptions& options = {});

}  // namespace homspasm

#endif  // HOMSPASM_HOMCOUNT_HPP_
