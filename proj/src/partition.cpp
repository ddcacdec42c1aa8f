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

#include "homspasm/partition.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "homspasm/errors.hpp"

namespace homspasm {
namespace {

void check_limit(int n, int limit) {
  if (n > limit) {
    throw LimitError("partition enumeration over " + std::to_string(n) +
                     " vertices exceeds the limit of " + std::to_string(limit));
  }
}

}  // namespace

Partition::Partition(std::vector<int> assignment) : assignment_(std::move(assignment)) {
  int max_seen = -1;
  for (int b : assignment_) {
    if (b < 0 || b > max_seen + 1) {
      throw std::invalid_argument("partition is not in restricted-growth form");
    }
    max_seen = std::max(max_seen, b);
  }
  num_blocks_ = max_seen + 1;
}

std::vector<std::vector<int>> Partition::blocks() const {
  std::vector<std::vector<int>> out(num_blocks_);
  for (int v = 0; v < size(); ++v) out[assignment_[v]].push_back(v);
  return out;
}

long long Partition::moebius_weight() const {
  std::vector<int> sizes(num_blocks_, 0);
  for (int b : assignment_) ++sizes[b];
  long long weight = 1;
  for (int s : sizes) {
    for (int k = 2; k < s; ++k) weight *= k;
    if ((s - 1) % 2 == 1) weight = -weight;
  }
  return weight;
}

void for_each_partition(int n, const std::function<void(const Partition&)>& fn,
                        int limit) {
  if (n < 0) throw std::invalid_argument("negative partition size");
  check_limit(n, limit);
  if (n == 0) {
    fn(Partition({}));
    return;
  }
  std::vector<int> a(n, 0);
  std::vector<int> prefix_max(n, 0);  // max of a[0..i]
  while (true) {
    fn(Partition(a));
    int i = n - 1;
    while (i > 0 && a[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) return;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (int j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

std::vector<Partition> enumerate_partitions(int n, int limit) {
  std::vector<Partition> out;
  for_each_partition(n, [&](const Partition& p) { out.push_back(p); }, limit);
  return out;
}

void for_each_loop_free_partition(const Graph& g,
                                  const std::function<void(const Partition&)>& fn,
                                  int limit) {
  const int n = g.num_vertices();
  check_limit(n, limit);
  std::vector<int> a(n, 0);
  // blocks[b] lists the vertices assigned to block b so far.
  std::vector<std::vector<int>> blocks;
  auto recurse = [&](auto& self, int v) -> void {
    if (v == n) {
      fn(Partition(a));
      return;
    }
    const int existing = static_cast<int>(blocks.size());
    for (int b = 0; b <= existing; ++b) {
      if (b < existing) {
        bool clash = std::any_of(blocks[b].begin(), blocks[b].end(),
                                 [&](int u) { return g.has_edge(u, v); });
        if (clash) continue;
        blocks[b].push_back(v);
      } else {
        blocks.push_back({v});
      }
      a[v] = b;
      self(self, v + 1);
      if (b < existing) {
        blocks[b].pop_back();
      } else {
        blocks.pop_back();
      }
    }
  };
  recurse(recurse, 0);
}

Quotient quotient(const Graph& g, const Partition& p) {
  if (p.size() != g.num_vertices()) {
    throw std::invalid_argument("partition covers " + std::to_string(p.size()) +
                                " vertices, graph has " +
                                std::to_string(g.num_vertices()));
  }
  Quotient q;
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    int a = p.block_of(e.u);
    int b = p.block_of(e.v);
    if (a == b) {
      q.has_loop = true;
      continue;
    }
    edges.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  q.graph = Graph(p.num_blocks(), std::move(edges));
  return q;
}

AnchoredQuotient quotient(const AnchoredGraph& g, const Partition& p) {
  Quotient q = quotient(g.graph, p);
  return {AnchoredGraph(std::move(q.graph), p.block_of(g.anchor)), q.has_loop};
}

}  // namespace homspasm
