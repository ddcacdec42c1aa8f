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

#include "homspasm/homcount.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <new>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

#include "homspasm/canonical.hpp"
#include "homspasm/errors.hpp"

namespace homspasm {
namespace {

// Raised by the 64-bit arithmetic when a value no longer fits; the DP is
// then rerun with arbitrary-precision counts.
struct Overflow {};

inline void add_into(std::uint64_t& a, std::uint64_t b) {
  if (__builtin_add_overflow(a, b, &a)) throw Overflow{};
}
inline std::uint64_t times(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline void add_into(Count& a, const Count& b) { a += b; }
inline Count times(const Count& a, const Count& b) { return a * b; }

// Bag assignments packed `bits` per slot, slots in sorted-bag order.
using Key = unsigned __int128;

template <typename T>
using Table = std::vector<std::pair<Key, T>>;

template <typename T>
void sort_and_merge(Table<T>& table) {
  std::sort(table.begin(), table.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (out > 0 && table[out - 1].first == table[i].first) {
      add_into(table[out - 1].second, table[i].second);
    } else {
      if (out != i) table[out] = std::move(table[i]);
      ++out;
    }
  }
  table.resize(out);
}

int slot_bits(int host_vertices) {
  if (host_vertices <= 2) return 1;
  return std::bit_width(static_cast<unsigned>(host_vertices - 1));
}

int position_in(const std::vector<int>& bag, int v) {
  return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

template <typename T>
class DpRun {
 public:
  DpRun(const Graph& pattern, const NiceTreeDecomposition& plan, const HostGraph& host)
      : pattern_(pattern), plan_(plan), host_(host), bits_(slot_bits(host.num_vertices())) {
    slot_mask_ = (Key{1} << bits_) - 1;
  }

  Table<T> run() {
    const int count = static_cast<int>(plan_.nodes.size());
    std::vector<Table<T>> tables(count);
    for (int i = 0; i < count; ++i) {
      const NiceNode& node = plan_.nodes[i];
      switch (node.kind) {
        case NiceKind::kLeaf:
          tables[i].push_back({Key{0}, T(1)});
          break;
        case NiceKind::kIntroduce:
          // Output keys are unique but unsorted.
          tables[i] = introduce(node, std::move(tables[node.children[0]]));
          sort_and_merge(tables[i]);
          break;
        case NiceKind::kForget:
          tables[i] = forget(node, std::move(tables[node.children[0]]));
          break;
        case NiceKind::kJoin:
          tables[i] = join(std::move(tables[node.children[0]]),
                           std::move(tables[node.children[1]]));
          break;
      }
    }
    return std::move(tables[plan_.root]);
  }

 private:
  Key slot(Key key, int pos) const { return (key >> (pos * bits_)) & slot_mask_; }

  Table<T> introduce(const NiceNode& node, Table<T> child) {
    const auto& child_bag = plan_.nodes[node.children[0]].bag;
    const int v = node.vertex;
    const int pos = position_in(node.bag, v);
    std::vector<int> linked;  // child-bag positions of v's pattern neighbors
    for (int u : pattern_.neighbors(v)) {
      if (std::binary_search(child_bag.begin(), child_bag.end(), u)) {
        linked.push_back(position_in(child_bag, u));
      }
    }
    const int shift = pos * bits_;
    const Key low_mask = (shift == 0) ? Key{0} : ((Key{1} << shift) - 1);
    Table<T> out;
    std::vector<int> images(linked.size());
    for (auto& [key, value] : child) {
      const Key low = key & low_mask;
      // Slots at and above `pos` move up by one; nothing lies above a
      // full-width key.
      const int up = shift + bits_;
      const Key high = up >= 128 ? Key{0} : ((key >> shift) << up);
      auto emit = [&](int x) { out.push_back({low | (Key(x) << shift) | high, value}); };
      if (linked.empty()) {
        for (int x = 0; x < host_.num_vertices(); ++x) emit(x);
        continue;
      }
      std::size_t pivot = 0;
      for (std::size_t k = 0; k < linked.size(); ++k) {
        images[k] = static_cast<int>(slot(key, linked[k]));
        if (host_.degree(images[k]) < host_.degree(images[pivot])) pivot = k;
      }
      for (int x : host_.neighbors(images[pivot])) {
        bool ok = true;
        for (std::size_t k = 0; k < linked.size() && ok; ++k) {
          if (k != pivot) ok = host_.has_edge(images[k], x);
        }
        if (ok) emit(x);
      }
    }
    return out;
  }

  Table<T> forget(const NiceNode& node, Table<T> child) {
    const auto& child_bag = plan_.nodes[node.children[0]].bag;
    const int shift = position_in(child_bag, node.vertex) * bits_;
    const Key low_mask = (shift == 0) ? Key{0} : ((Key{1} << shift) - 1);
    for (auto& entry : child) {
      const Key key = entry.first;
      const Key high = (key >> shift) >> bits_;
      entry.first = (key & low_mask) | (high << shift);
    }
    sort_and_merge(child);
    return child;
  }

  Table<T> join(Table<T> left, Table<T> right) {
    if (left.size() > right.size()) std::swap(left, right);
    Table<T> out;
    out.reserve(left.size());
    std::size_t j = 0;
    for (auto& [key, value] : left) {
      while (j < right.size() && right[j].first < key) ++j;
      if (j == right.size()) break;
      if (right[j].first == key) out.push_back({key, times(value, right[j].second)});
    }
    return out;
  }

  const Graph& pattern_;
  const NiceTreeDecomposition& plan_;
  const HostGraph& host_;
  int bits_;
  Key slot_mask_;
};

void check_plan(const NiceTreeDecomposition& plan, const HostGraph& host,
                const CountOptions& options) {
  const int bag_size = plan.width() + 1;
  if (bag_size > kWidthGuardBagSize && host.num_vertices() > kWidthGuardHostVertices &&
      !options.allow_wide_plans) {
    throw LimitError("plan with bags of " + std::to_string(bag_size) +
                     " vertices refused on a host with " +
                     std::to_string(host.num_vertices()) +
                     " vertices (override the width guard to force)");
  }
  if (bag_size * slot_bits(host.num_vertices()) > 128) {
    throw LimitError("bag assignments do not fit the 128-bit table key");
  }
}

template <typename T>
std::vector<Count> root_counts(const Table<T>& root, bool anchored, int host_vertices) {
  if (!anchored) {
    Count total = 0;
    if (!root.empty()) total = Count(root.front().second);
    return {total};
  }
  std::vector<Count> out(host_vertices, 0);
  for (const auto& [key, value] : root) out[static_cast<int>(key)] = Count(value);
  return out;
}

// Graph-level plans return a single total; anchored plans one count per
// host vertex.
std::vector<Count> run_plan(const Graph& pattern, const NiceTreeDecomposition& plan,
                            const HostGraph& host, const CountOptions& options) {
  check_plan(plan, host, options);
  const bool anchored = plan.anchor.has_value();
  // Tables grow like |V(H)|^(width+1); running out of memory is a resource
  // limit of this instance, not a program error.
  try {
    try {
      DpRun<std::uint64_t> dp(pattern, plan, host);
      return root_counts(dp.run(), anchored, host.num_vertices());
    } catch (const Overflow&) {
      DpRun<Count> dp(pattern, plan, host);
      return root_counts(dp.run(), anchored, host.num_vertices());
    }
  } catch (const std::bad_alloc&) {
    throw LimitError("counting tables for a width-" + std::to_string(plan.width()) +
                     " plan exceed available memory");
  }
}

NiceTreeDecomposition plan_for(const Graph& component, std::optional<int> anchor) {
  return to_nice(treewidth_exact(component).decomposition, component, anchor);
}

}  // namespace

HostGraph::HostGraph(const Graph& g) : n_(g.num_vertices()) {
  offsets_.assign(n_ + 1, 0);
  for (int v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + g.degree(v);
  neighbors_.reserve(offsets_[n_]);
  for (int v = 0; v < n_; ++v) {
    auto nbrs = g.neighbors(v);
    neighbors_.insert(neighbors_.end(), nbrs.begin(), nbrs.end());
  }
}

HostGraph::HostGraph(int num_vertices, std::span<const Edge> edges)
    : HostGraph(Graph(num_vertices, std::vector<Edge>(edges.begin(), edges.end()))) {}

bool HostGraph::has_edge(int u, int v) const {
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

HomPlan::HomPlan(const Graph& pattern) {
  for (Graph& comp : connected_components(pattern)) {
    NiceTreeDecomposition plan = plan_for(comp, std::nullopt);
    free_.push_back({std::move(comp), std::move(plan)});
  }
}

HomPlan::HomPlan(const AnchoredGraph& pattern) {
  const Graph& g = pattern.graph;
  auto comp = component_ids(g);
  int count = *std::max_element(comp.begin(), comp.end()) + 1;
  for (int c = 0; c < count; ++c) {
    std::vector<int> members;
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (comp[v] == c) members.push_back(v);
    }
    Graph sub = g.induced(members);
    if (c == comp[pattern.anchor]) {
      int anchor = static_cast<int>(
          std::find(members.begin(), members.end(), pattern.anchor) - members.begin());
      NiceTreeDecomposition plan = plan_for(sub, anchor);
      anchored_ = Component{std::move(sub), std::move(plan)};
    } else {
      NiceTreeDecomposition plan = plan_for(sub, std::nullopt);
      free_.push_back({std::move(sub), std::move(plan)});
    }
  }
}

int HomPlan::width() const {
  int w = anchored_ ? anchored_->plan.width() : -1;
  for (const auto& c : free_) w = std::max(w, c.plan.width());
  return w;
}

Count HomPlan::count(const HostGraph& host, const CountOptions& options) const {
  Count total = 1;
  for (const auto& c : free_) {
    total *= run_plan(c.graph, c.plan, host, options).front();
    if (total == 0) return total;
  }
  if (anchored_) {
    Count sum = 0;
    for (const Count& x : run_plan(anchored_->graph, anchored_->plan, host, options)) sum += x;
    total *= sum;
  }
  return total;
}

std::vector<Count> HomPlan::count_node(const HostGraph& host,
                                       const CountOptions& options) const {
  if (!anchored_) throw std::invalid_argument("node-level count needs an anchored plan");
  Count rest = 1;
  for (const auto& c : free_) rest *= run_plan(c.graph, c.plan, host, options).front();
  std::vector<Count> out = run_plan(anchored_->graph, anchored_->plan, host, options);
  if (rest != 1) {
    for (Count& x : out) x *= rest;
  }
  return out;
}

Count hom_count(const Graph& pattern, const HostGraph& host, const CountOptions& options) {
  return HomPlan(pattern).count(host, options);
}

CountVector hom_count_node(const AnchoredGraph& pattern, const HostGraph& host,
                           const CountOptions& options) {
  return {canonical_key(pattern), HomPlan(pattern).count_node(host, options)};
}

Count hom_count_with_plan(const Graph& pattern, const NiceTreeDecomposition& plan,
                          const HostGraph& host, const CountOptions& options) {
  if (plan.anchor) throw std::invalid_argument("graph-level count needs an unanchored plan");
  if (auto err = validate(plan, pattern)) throw std::invalid_argument("invalid plan: " + *err);
  return run_plan(pattern, plan, host, options).front();
}

std::vector<Count> hom_count_node_with_plan(const Graph& pattern,
                                            const NiceTreeDecomposition& plan,
                                            const HostGraph& host,
                                            const CountOptions& options) {
  if (!plan.anchor) throw std::invalid_argument("node-level count needs an anchored plan");
  if (auto err = validate(plan, pattern)) throw std::invalid_argument("invalid plan: " + *err);
  return run_plan(pattern, plan, host, options);
}

Rational evaluate(const LinearCombination& c, const HostGraph& host,
                  const CountOptions& options) {
  if (c.basis != BasisKind::kHom) {
    throw std::invalid_argument("evaluate needs a Hom-basis combination");
  }
  if (c.level != Level::kGraph) throw std::invalid_argument("evaluate needs graph level");
  Rational total = 0;
  for (const BasisTerm& t : c.terms) {
    total += t.coefficient * Rational(HomPlan(t.graph).count(host, options));
  }
  return total;
}

std::vector<Rational> evaluate_node(const LinearCombination& c, const HostGraph& host,
                                    const CountOptions& options) {
  if (c.basis != BasisKind::kHom) {
    throw std::invalid_argument("evaluate_node needs a Hom-basis combination");
  }
  if (c.level != Level::kNode) throw std::invalid_argument("evaluate_node needs node level");
  std::vector<Rational> out(host.num_vertices(), Rational(0));
  for (const BasisTerm& t : c.terms) {
    auto counts = HomPlan(AnchoredGraph(t.graph, *t.anchor)).count_node(host, options);
    for (int v = 0; v < host.num_vertices(); ++v) out[v] += t.coefficient * Rational(counts[v]);
  }
  return out;
}

BatchEvaluator::BatchEvaluator(std::vector<LinearCombination> params, Level level)
    : level_(level), params_(std::move(params)) {
  std::map<std::string, BasisTerm> distinct;
  for (const auto& p : params_) {
    if (p.basis != BasisKind::kHom) {
      throw std::invalid_argument("parameter '" + p.label + "' is not in the Hom basis");
    }
    if (p.level != level_) {
      throw std::invalid_argument("parameter '" + p.label + "' has the wrong level");
    }
    for (const auto& t : p.terms) distinct.try_emplace(t.key, t);
  }
  for (auto& [key, t] : distinct) terms_.push_back(std::move(t));
  std::sort(terms_.begin(), terms_.end(), term_order);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    index[terms_[i].key] = i;
    if (level_ == Level::kNode) {
      plans_.emplace_back(AnchoredGraph(terms_[i].graph, *terms_[i].anchor));
    } else {
      plans_.emplace_back(terms_[i].graph);
    }
  }
  for (const auto& p : params_) {
    auto& use = uses_.emplace_back();
    for (const auto& t : p.terms) use.push_back({index.at(t.key), t.coefficient});
  }
}

BatchRow BatchEvaluator::evaluate(const HostGraph& host, const CountOptions& options) const {
  BatchRow row;
  const int n = host.num_vertices();
  if (level_ == Level::kGraph) {
    for (const HomPlan& plan : plans_) {
      row.hom.push_back(plan.count(host, options));
      ++evaluations_;
    }
    for (const auto& use : uses_) {
      Rational value = 0;
      for (const auto& [term, coeff] : use) value += coeff * Rational(row.hom[term]);
      row.derived.push_back(std::move(value));
    }
  } else {
    for (const HomPlan& plan : plans_) {
      row.node_hom.push_back(plan.count_node(host, options));
      ++evaluations_;
    }
    for (const auto& use : uses_) {
      std::vector<Rational> values(n, Rational(0));
      for (const auto& [term, coeff] : use) {
        for (int v = 0; v < n; ++v) values[v] += coeff * Rational(row.node_hom[term][v]);
      }
      row.node_derived.push_back(std::move(values));
    }
  }
  return row;
}

void BatchEvaluator::run(std::span<const HostGraph> hosts, const BatchOptions& options,
                         const std::function<void(BatchRow&&)>& sink) const {
  if (options.jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  const std::size_t chunk = std::max<std::size_t>(1, options.chunk_size);
  std::vector<BatchRow> rows;
  for (std::size_t start = 0; start < hosts.size(); start += chunk) {
    const std::size_t end = std::min(hosts.size(), start + chunk);
    rows.assign(end - start, BatchRow{});
    auto work = [&](std::size_t i) {
      BatchRow& row = rows[i - start];
      try {
        row = evaluate(hosts[i], options.count);
      } catch (const std::exception& e) {
        row = BatchRow{};
        row.error = e.what();
      }
      row.host_index = i;
    };
    const int workers =
        static_cast<int>(std::min<std::size_t>(options.jobs, end - start));
    if (workers <= 1) {
      for (std::size_t i = start; i < end; ++i) work(i);
    } else {
      std::atomic<std::size_t> next{start};
      std::vector<std::jthread> pool;
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < end; i = next++) work(i);
        });
      }
    }
    for (auto& row : rows) sink(std::move(row));
  }
}

std::vector<BatchRow> batch_evaluate(const std::vector<LinearCombination>& params,
                                     std::span<const HostGraph> hosts, Level level,
                                     const BatchOptions& options) {
  BatchEvaluator evaluator(params, level);
  std::vector<BatchRow> out;
  evaluator.run(hosts, options, [&](BatchRow&& row) { out.push_back(std::move(row)); });
  return out;
}

}  // namespace homspasm
