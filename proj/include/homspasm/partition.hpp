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

#ifndef HOMSPASM_PARTITION_HPP_
#define HOMSPASM_PARTITION_HPP_

#include <functional>
#include <span>
#include <vector>

#include "homspasm/graph.hpp"

namespace homspasm {

inline constexpr int kDefaultPartitionLimit = 12;

// Set partition of {0..n-1} in restricted-growth form: assignment[0] == 0 and
// each block id is at most one more than the largest id before it.
class Partition {
 public:
  // Throws std::invalid_argument if `assignment` is not restricted-growth.
  explicit Partition(std::vector<int> assignment);

  int size() const { return static_cast<int>(assignment_.size()); }
  int num_blocks() const { return num_blocks_; }
  int block_of(int v) const { return assignment_[v]; }
  const std::vector<int>& assignment() const { return assignment_; }
  std::vector<std::vector<int>> blocks() const;

  // Product over blocks of (-1)^(|B|-1) (|B|-1)!: the Moebius function of the
  // partition lattice between the all-singletons partition and this one.
  long long moebius_weight() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> assignment_;
  int num_blocks_ = 0;
};

// All Bell(n) partitions of {0..n-1} in lexicographic restricted-growth
// order. Throws LimitError when n exceeds `limit`.
std::vector<Partition> enumerate_partitions(int n, int limit = kDefaultPartitionLimit);
void for_each_partition(int n, const std::function<void(const Partition&)>& fn,
                        int limit = kDefaultPartitionLimit);

// Partitions of V(g) into independent sets, i.e. exactly those whose quotient
// is loop-free, in the same relative order as for_each_partition.
void for_each_loop_free_partition(const Graph& g,
                                  const std::function<void(const Partition&)>& fn,
                                  int limit = kDefaultPartitionLimit);

struct Quotient {
  Graph graph;
  bool has_loop = false;
};

// Contract each block to its block id; parallel edges merge, and an edge
// inside a block sets has_loop instead of producing a self-loop.
Quotient quotient(const Graph& g, const Partition& p);

// Anchored variant: the anchor becomes the block containing it.
struct AnchoredQuotient {
  AnchoredGraph graph;
  bool has_loop = false;
};
AnchoredQuotient quotient(const AnchoredGraph& g, const Partition& p);

}  // namespace homspasm

#endif  // HOMSPASM_PARTITION_HPP_
