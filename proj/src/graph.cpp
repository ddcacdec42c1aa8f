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

#include "homspasm/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace homspasm {

Graph::Graph(int num_vertices) : Graph(num_vertices, {}) {}

Graph::Graph(int num_vertices, std::vector<Edge> edges)
    : n_(num_vertices), edges_(std::move(edges)) {
  if (n_ < 0) throw std::invalid_argument("negative vertex count");
  for (Edge& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + ") out of range");
    }
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw std::invalid_argument("duplicate edge (" + std::to_string(dup->u) +
                                "," + std::to_string(dup->v) + ")");
  }
  adjacency_.assign(n_, {});
  for (const Edge& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  const auto& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

Graph Graph::relabeled(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != n_) {
    throw std::invalid_argument("permutation size mismatch");
  }
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.push_back({perm[e.u], perm[e.v]});
  return Graph(n_, std::move(out));
}

Graph Graph::induced(std::span<const int> vertices) const {
  std::vector<int> index(n_, -1);
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i) {
    index[vertices[i]] = i;
  }
  std::vector<Edge> out;
  for (const Edge& e : edges_) {
    if (index[e.u] >= 0 && index[e.v] >= 0) {
      out.push_back({index[e.u], index[e.v]});
    }
  }
  return Graph(static_cast<int>(vertices.size()), std::move(out));
}

AnchoredGraph::AnchoredGraph(Graph g, int anchor_vertex)
    : graph(std::move(g)), anchor(anchor_vertex) {
  if (anchor < 0 || anchor >= graph.num_vertices()) {
    throw std::invalid_argument("anchor " + std::to_string(anchor) +
                                " out of range");
  }
}

Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return Graph(n, std::move(edges));
}

Graph path_graph(int n) {
  if (n < 1) throw std::invalid_argument("path needs at least 1 vertex");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph(n, std::move(edges));
}

Graph complete_graph(int n) {
  if (n < 1) throw std::invalid_argument("clique needs at least 1 vertex");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  }
  return Graph(n, std::move(edges));
}

Graph star_graph(int leaves) {
  if (leaves < 0) throw std::invalid_argument("negative leaf count");
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return Graph(leaves + 1, std::move(edges));
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  const int shift = g.num_vertices();
  std::vector<Edge> edges = g.edges();
  for (const Edge& e : h.edges()) edges.push_back({e.u + shift, e.v + shift});
  return Graph(g.num_vertices() + h.num_vertices(), std::move(edges));
}

Graph categorical_product(const Graph& g, const Graph& h) {
  const int hn = h.num_vertices();
  std::vector<Edge> edges;
  // Each unordered pair of product edges arises from (a,b)x(u,v) and
  // (a,b)x(v,u); both orientations of h's edge give distinct product edges.
  for (const Edge& ge : g.edges()) {
    for (const Edge& he : h.edges()) {
      edges.push_back({ge.u * hn + he.u, ge.v * hn + he.v});
      edges.push_back({ge.u * hn + he.v, ge.v * hn + he.u});
    }
  }
  return Graph(g.num_vertices() * hn, std::move(edges));
}

std::vector<int> component_ids(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<int> comp(n, -1);
  std::vector<int> stack;
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : g.neighbors(v)) {
        if (comp[w] < 0) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

bool is_connected(const Graph& g) {
  if (g.num_vertices() <= 1) return true;
  auto comp = component_ids(g);
  return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
}

std::vector<Graph> connected_components(const Graph& g) {
  auto comp = component_ids(g);
  int count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::vector<int>> members(count);
  for (int v = 0; v < g.num_vertices(); ++v) members[comp[v]].push_back(v);
  std::vector<Graph> out;
  out.reserve(count);
  for (const auto& m : members) out.push_back(g.induced(m));
  return out;
}

}  // namespace homspasm
