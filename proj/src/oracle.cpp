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

#include "homspasm/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "homspasm/errors.hpp"

namespace homspasm::oracle {
namespace {

using Matrix = std::vector<std::vector<char>>;

Matrix adjacency_matrix(const Graph& g) {
  Matrix m(g.num_vertices(), std::vector<char>(g.num_vertices(), 0));
  for (const Edge& e : g.edges()) m[e.u][e.v] = m[e.v][e.u] = 1;
  return m;
}

void check_size(const Graph& f, const Graph& h) {
  if (f.num_vertices() > kMaxPatternVertices) {
    throw LimitError("oracle pattern has more than " +
                     std::to_string(kMaxPatternVertices) + " vertices");
  }
  std::uint64_t maps = 1;
  for (int i = 0; i < f.num_vertices(); ++i) {
    maps *= static_cast<std::uint64_t>(h.num_vertices());
    if (maps > kMaxMaps) throw LimitError("oracle instance too large");
  }
}

bool preserves_edges(const Graph& f, const Matrix& h, const std::vector<int>& map) {
  return std::all_of(f.edges().begin(), f.edges().end(),
                     [&](const Edge& e) { return h[map[e.u]][map[e.v]] != 0; });
}

// Calls fn for every map V(f) -> V(h), optionally only injective ones.
void for_each_map(int nf, int nh, bool injective,
                  const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> map(nf, 0);
  std::vector<char> used(nh, 0);
  std::function<void(int)> place = [&](int i) {
    if (i == nf) {
      fn(map);
      return;
    }
    for (int x = 0; x < nh; ++x) {
      if (injective && used[x]) continue;
      map[i] = x;
      used[x] = 1;
      place(i + 1);
      used[x] = 0;
    }
  };
  place(0);
}

using Image = std::pair<std::vector<int>, std::vector<std::pair<int, int>>>;

Image image_of(const Graph& f, const std::vector<int>& map) {
  Image img;
  img.first = map;
  std::sort(img.first.begin(), img.first.end());
  for (const Edge& e : f.edges()) {
    img.second.push_back(std::minmax(map[e.u], map[e.v]));
  }
  std::sort(img.second.begin(), img.second.end());
  return img;
}

std::uint64_t count_permutations(const Graph& f, int fixed_vertex) {
  const int n = f.num_vertices();
  Matrix adj = adjacency_matrix(f);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    if (fixed_vertex >= 0 && perm[fixed_vertex] != fixed_vertex) continue;
    if (preserves_edges(f, adj, perm)) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace

std::uint64_t brute_hom(const Graph& f, const Graph& h) {
  check_size(f, h);
  Matrix adj = adjacency_matrix(h);
  std::uint64_t count = 0;
  for_each_map(f.num_vertices(), h.num_vertices(), false, [&](const auto& map) {
    if (preserves_edges(f, adj, map)) ++count;
  });
  return count;
}

std::vector<std::uint64_t> brute_hom_node(const AnchoredGraph& f, const Graph& h) {
  check_size(f.graph, h);
  Matrix adj = adjacency_matrix(h);
  std::vector<std::uint64_t> counts(h.num_vertices(), 0);
  for_each_map(f.graph.num_vertices(), h.num_vertices(), false, [&](const auto& map) {
    if (preserves_edges(f.graph, adj, map)) ++counts[map[f.anchor]];
  });
  return counts;
}

std::uint64_t brute_inj(const Graph& f, const Graph& h) {
  check_size(f, h);
  Matrix adj = adjacency_matrix(h);
  std::uint64_t count = 0;
  for_each_map(f.num_vertices(), h.num_vertices(), true, [&](const auto& map) {
    if (preserves_edges(f, adj, map)) ++count;
  });
  return count;
}

std::vector<std::uint64_t> brute_inj_node(const AnchoredGraph& f, const Graph& h) {
  check_size(f.graph, h);
  Matrix adj = adjacency_matrix(h);
  std::vector<std::uint64_t> counts(h.num_vertices(), 0);
  for_each_map(f.graph.num_vertices(), h.num_vertices(), true, [&](const auto& map) {
    if (preserves_edges(f.graph, adj, map)) ++counts[map[f.anchor]];
  });
  return counts;
}

std::uint64_t brute_sub(const Graph& f, const Graph& h) {
  check_size(f, h);
  Matrix adj = adjacency_matrix(h);
  std::set<Image> copies;
  std::uint64_t injective = 0;
  for_each_map(f.num_vertices(), h.num_vertices(), true, [&](const auto& map) {
    if (!preserves_edges(f, adj, map)) return;
    ++injective;
    copies.insert(image_of(f, map));
  });
  if (injective != brute_aut(f) * copies.size()) {
    throw std::logic_error("oracle: Inj != Aut * Sub");
  }
  return copies.size();
}

std::vector<std::uint64_t> brute_sub_node(const AnchoredGraph& f, const Graph& h) {
  check_size(f.graph, h);
  Matrix adj = adjacency_matrix(h);
  std::vector<std::set<Image>> copies(h.num_vertices());
  std::vector<std::uint64_t> injective(h.num_vertices(), 0);
  for_each_map(f.graph.num_vertices(), h.num_vertices(), true, [&](const auto& map) {
    if (!preserves_edges(f.graph, adj, map)) return;
    ++injective[map[f.anchor]];
    copies[map[f.anchor]].insert(image_of(f.graph, map));
  });
  const std::uint64_t aut = brute_aut_anchored(f);
  std::vector<std::uint64_t> out(h.num_vertices());
  for (int v = 0; v < h.num_vertices(); ++v) {
    out[v] = copies[v].size();
    if (injective[v] != aut * out[v]) {
      throw std::logic_error("oracle: anchored Inj != Aut * Sub");
    }
  }
  return out;
}

std::uint64_t brute_indsub(const Graph& f, const Graph& h) {
  check_size(f, h);
  const int k = f.num_vertices();
  const int n = h.num_vertices();
  if (k > n) return 0;
  std::uint64_t count = 0;
  std::vector<char> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + k, 1);
  // prev_permutation over a sorted-descending mask visits every k-subset.
  do {
    std::vector<int> subset;
    for (int v = 0; v < n; ++v) {
      if (pick[v]) subset.push_back(v);
    }
    if (brute_isomorphic(f, h.induced(subset))) ++count;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return count;
}

std::uint64_t brute_aut(const Graph& f) { return count_permutations(f, -1); }

std::uint64_t brute_aut_anchored(const AnchoredGraph& f) {
  return count_permutations(f.graph, f.anchor);
}

bool brute_isomorphic(const Graph& a, const Graph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  Matrix adj = adjacency_matrix(b);
  std::vector<int> perm(a.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (preserves_edges(a, adj, perm)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace homspasm::oracle
