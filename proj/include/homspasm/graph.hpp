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

#ifndef HOMSPASM_GRAPH_HPP_
#define HOMSPASM_GRAPH_HPP_

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace homspasm {

// Undirected edge stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable simple undirected graph on vertices 0..n-1.
//
// Construction validates the edge list: self-loops, duplicates (in either
// orientation) and out-of-range endpoints throw std::invalid_argument.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int num_vertices);
  Graph(int num_vertices, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  bool empty() const { return n_ == 0; }

  // Sorted ascending; edges sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const int> neighbors(int v) const {
    return {adjacency_[v].data(), adjacency_[v].size()};
  }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  bool has_edge(int u, int v) const;

  // Vertex x of this graph becomes vertex perm[x] of the result.
  Graph relabeled(std::span<const int> perm) const;
  // Subgraph induced by `vertices`, relabeled 0.. in the given order.
  Graph induced(std::span<const int> vertices) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

// A graph with one marked vertex.
struct AnchoredGraph {
  AnchoredGraph() = default;
  AnchoredGraph(Graph g, int anchor_vertex);

  Graph graph;
  int anchor = 0;

  friend bool operator==(const AnchoredGraph&, const AnchoredGraph&) = default;
};

// Named families with the documented labelings.
Graph cycle_graph(int n);     // 0-1-...-(n-1)-0, n >= 3
Graph path_graph(int n);      // 0-1-...-(n-1), n vertices
Graph complete_graph(int n);
Graph star_graph(int leaves); // center 0

Graph disjoint_union(const Graph& g, const Graph& h);
// Vertex (a,u) is a * h.n + u.
Graph categorical_product(const Graph& g, const Graph& h);

bool is_connected(const Graph& g);
// Component id per vertex, numbered by smallest member.
std::vector<int> component_ids(const Graph& g);
// Each component relabeled 0.. preserving relative vertex order.
std::vector<Graph> connected_components(const Graph& g);

}  // namespace homspasm

#endif  // HOMSPASM_GRAPH_HPP_
