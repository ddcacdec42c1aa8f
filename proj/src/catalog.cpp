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

#include "homspasm/catalog.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "homspasm/canonical.hpp"
#include "homspasm/errors.hpp"

namespace homspasm {
namespace {

void check_limit(int n, int limit) {
  if (n > limit) {
    throw LimitError("graph enumeration over " + std::to_string(n) +
                     " vertices exceeds the limit of " + std::to_string(limit));
  }
}

// Sorted by (edge count, key).
std::vector<Graph> sorted_classes(std::map<std::string, Graph> classes) {
  std::vector<std::pair<std::string, Graph>> items(
      std::make_move_iterator(classes.begin()), std::make_move_iterator(classes.end()));
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    return a.second.num_edges() < b.second.num_edges();
  });
  std::vector<Graph> out;
  out.reserve(items.size());
  for (auto& item : items) out.push_back(std::move(item.second));
  return out;
}

}  // namespace

std::vector<Graph> enumerate_graphs(int n, int limit) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  check_limit(n, limit);
  // Every graph on k vertices is a graph on k-1 vertices plus one vertex
  // joined to some subset of the others.
  std::vector<Graph> level = {Graph(0)};
  for (int k = 1; k <= n; ++k) {
    std::map<std::string, Graph> classes;
    for (const Graph& base : level) {
      const int prev = k - 1;
      for (unsigned mask = 0; mask < (1u << prev); ++mask) {
        std::vector<Edge> edges = base.edges();
        for (int u = 0; u < prev; ++u) {
          if (mask >> u & 1) edges.push_back({u, prev});
        }
        CanonicalForm form = canonical_form(Graph(k, std::move(edges)));
        classes.try_emplace(std::move(form.key), std::move(form.graph));
      }
    }
    level = sorted_classes(std::move(classes));
  }
  return level;
}

std::vector<Graph> enumerate_connected_graphs(int min_vertices, int max_vertices,
                                              int limit) {
  if (min_vertices < 1 || min_vertices > max_vertices) {
    throw std::invalid_argument("need 1 <= min_vertices <= max_vertices");
  }
  check_limit(max_vertices, limit);
  std::vector<Graph> out;
  for (int k = min_vertices; k <= max_vertices; ++k) {
    for (Graph& g : enumerate_graphs(k, limit)) {
      if (is_connected(g)) out.push_back(std::move(g));
    }
  }
  return out;
}

}  // namespace homspasm
