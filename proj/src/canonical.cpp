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

#include "homspasm/canonical.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "homspasm/errors.hpp"
#include "homspasm/graph6.hpp"

namespace homspasm {
namespace {

using Code = std::vector<std::uint64_t>;

struct BitGraph {
  int n = 0;
  std::vector<std::uint64_t> rows;

  explicit BitGraph(const Graph& g) : n(g.num_vertices()), rows(n, 0) {
    if (n > 64) throw LimitError("canonical labeling supports at most 64 vertices");
    for (const Edge& e : g.edges()) {
      rows[e.u] |= std::uint64_t{1} << e.v;
      rows[e.v] |= std::uint64_t{1} << e.u;
    }
  }
  bool adjacent(int u, int v) const { return (rows[u] >> v) & 1; }
};

// Colors are 0..k-1 and ordered; refinement keeps the old color as the
// primary sort key so the order of cells is preserved.
int refine(const BitGraph& g, std::vector<int>& color) {
  const int n = g.n;
  int k = n == 0 ? 0 : *std::max_element(color.begin(), color.end()) + 1;
  std::vector<int> order(n);
  std::vector<int> counts;
  while (true) {
    counts.assign(static_cast<std::size_t>(n) * k, 0);
    for (int v = 0; v < n; ++v) {
      std::uint64_t row = g.rows[v];
      while (row) {
        int w = std::countr_zero(row);
        row &= row - 1;
        ++counts[static_cast<std::size_t>(v) * k + color[w]];
      }
    }
    auto less = [&](int a, int b) {
      if (color[a] != color[b]) return color[a] < color[b];
      return std::lexicographical_compare(
          counts.begin() + static_cast<std::ptrdiff_t>(a) * k,
          counts.begin() + static_cast<std::ptrdiff_t>(a + 1) * k,
          counts.begin() + static_cast<std::ptrdiff_t>(b) * k,
          counts.begin() + static_cast<std::ptrdiff_t>(b + 1) * k);
    };
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), less);
    std::vector<int> next(n);
    int fresh = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && less(order[i - 1], order[i])) ++fresh;
      next[order[i]] = fresh;
    }
    int new_k = n == 0 ? 0 : fresh + 1;
    color.swap(next);
    if (new_k == k) return k;
    k = new_k;
  }
}

std::vector<int> individualize(const std::vector<int>& color, int w) {
  const int c = color[w];
  std::vector<int> out(color.size());
  for (std::size_t v = 0; v < color.size(); ++v) {
    if (color[v] < c) {
      out[v] = color[v];
    } else if (static_cast<int>(v) == w) {
      out[v] = c;
    } else {
      out[v] = color[v] + 1;
    }
  }
  return out;
}

// Column-order upper-triangle bits, most significant first.
Code leaf_code(const BitGraph& g, const std::vector<int>& order) {
  const int n = g.n;
  const std::size_t bits = static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2;
  Code code((bits + 63) / 64, 0);
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      if (g.adjacent(order[i], order[j])) {
        code[k / 64] |= std::uint64_t{1} << (63 - k % 64);
      }
    }
  }
  return code;
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

// Backtracking search over individualization-refinement, keeping the
// lexicographically largest leaf code. Automorphisms found at equal leaves
// prune sibling branches (orbit pruning) and whole subtrees (jump back to
// the branching point with the first leaf).
class CanonicalSearch {
 public:
  explicit CanonicalSearch(const BitGraph& g) : g_(g) {}

  void run(std::vector<int> color) {
    sequence_.clear();
    search(std::move(color));
  }

  const Code& best_code() const { return best_code_; }
  const std::vector<int>& best_order() const { return best_order_; }

 private:
  // Returns the depth to resume at, or -1 to continue normally.
  int search(std::vector<int> color) {
    const int n = g_.n;
    const int k = refine(g_, color);
    const int depth = static_cast<int>(sequence_.size());
    if (k == n) return leaf(color);

    std::vector<int> size(k, 0);
    for (int v = 0; v < n; ++v) ++size[color[v]];
    int target = 0;
    while (size[target] == 1) ++target;

    std::vector<int> explored;
    for (int w = 0; w < n; ++w) {
      if (color[w] != target) continue;
      if (!explored.empty() && in_explored_orbit(w, explored)) continue;
      explored.push_back(w);
      sequence_.push_back(w);
      int resume = search(individualize(color, w));
      sequence_.pop_back();
      if (resume >= 0 && resume < depth) return resume;
    }
    return -1;
  }

  int leaf(const std::vector<int>& color) {
    std::vector<int> order(g_.n);
    for (int v = 0; v < g_.n; ++v) order[color[v]] = v;
    Code code = leaf_code(g_, order);
    if (first_order_.empty()) {
      first_order_ = order;
      first_code_ = code;
      first_sequence_ = sequence_;
      best_order_ = order;
      best_code_ = std::move(code);
      return -1;
    }
    if (code == first_code_) {
      add_automorphism(first_order_, order);
      std::size_t d = 0;
      while (d < sequence_.size() && d < first_sequence_.size() &&
             sequence_[d] == first_sequence_[d]) {
        ++d;
      }
      return static_cast<int>(d);
    }
    if (code == best_code_) {
      add_automorphism(best_order_, order);
      return -1;
    }
    if (code > best_code_) {
      best_code_ = std::move(code);
      best_order_ = std::move(order);
    }
    return -1;
  }

  void add_automorphism(const std::vector<int>& from, const std::vector<int>& to) {
    std::vector<int> gamma(g_.n);
    for (int i = 0; i < g_.n; ++i) gamma[from[i]] = to[i];
    generators_.push_back(std::move(gamma));
  }

  // Orbits of the group generated by stored automorphisms that fix the
  // current individualization sequence pointwise.
  bool in_explored_orbit(int w, const std::vector<int>& explored) {
    std::vector<int> parent(g_.n);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& gamma : generators_) {
      bool fixes = std::all_of(sequence_.begin(), sequence_.end(),
                               [&](int v) { return gamma[v] == v; });
      if (!fixes) continue;
      for (int v = 0; v < g_.n; ++v) {
        int a = find_root(parent, v);
        int b = find_root(parent, gamma[v]);
        if (a != b) parent[a] = b;
      }
    }
    int root = find_root(parent, w);
    return std::any_of(explored.begin(), explored.end(),
                       [&](int e) { return find_root(parent, e) == root; });
  }

  const BitGraph& g_;
  std::vector<int> sequence_;
  std::vector<int> first_sequence_;
  std::vector<int> first_order_;
  Code first_code_;
  std::vector<int> best_order_;
  Code best_code_;
  std::vector<std::vector<int>> generators_;
};

std::vector<int> normalize_colors(const std::vector<int>& color) {
  std::vector<int> sorted = color;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> out(color.size());
  for (std::size_t v = 0; v < color.size(); ++v) {
    out[v] = static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), color[v]) - sorted.begin());
  }
  return out;
}

CanonicalForm canonical_with_colors(const Graph& g, const std::vector<int>& color) {
  BitGraph bits(g);
  CanonicalForm form;
  form.labeling.assign(g.num_vertices(), 0);
  if (g.num_vertices() > 0) {
    CanonicalSearch search(bits);
    search.run(normalize_colors(color));
    const auto& order = search.best_order();
    for (int i = 0; i < g.num_vertices(); ++i) form.labeling[order[i]] = i;
  }
  form.graph = g.relabeled(form.labeling);
  form.key = format_graph6(form.graph);
  return form;
}

Code colored_code(const BitGraph& g, std::vector<int> color) {
  CanonicalSearch search(g);
  search.run(std::move(color));
  return search.best_code();
}

std::uint64_t count_automorphisms(const BitGraph& g, std::vector<int> color) {
  const int n = g.n;
  const int k = refine(g, color);
  if (k == n) return 1;
  std::vector<int> size(k, 0);
  for (int v = 0; v < n; ++v) ++size[color[v]];
  int target = 0;
  while (size[target] == 1) ++target;
  int first = -1;
  Code first_code;
  std::uint64_t orbit = 0;
  for (int w = 0; w < n; ++w) {
    if (color[w] != target) continue;
    Code code = colored_code(g, individualize(color, w));
    if (first < 0) {
      first = w;
      first_code = std::move(code);
      orbit = 1;
    } else if (code == first_code) {
      ++orbit;
    }
  }
  std::uint64_t rest = count_automorphisms(g, individualize(color, first));
  std::uint64_t total = 0;
  if (__builtin_mul_overflow(orbit, rest, &total)) {
    throw LimitError("automorphism count exceeds 64 bits");
  }
  return total;
}

std::vector<int> anchor_coloring(const AnchoredGraph& g) {
  std::vector<int> color(g.graph.num_vertices(), 1);
  color[g.anchor] = 0;
  return color;
}

}  // namespace

CanonicalForm canonical_form(const Graph& g) {
  return canonical_with_colors(g, std::vector<int>(g.num_vertices(), 0));
}

CanonicalForm canonical_form(const AnchoredGraph& g) {
  CanonicalForm form = canonical_with_colors(g.graph, anchor_coloring(g));
  form.anchor = form.labeling[g.anchor];
  form.key += ":" + std::to_string(form.anchor);
  return form;
}

std::string canonical_key(const Graph& g) { return canonical_form(g).key; }
std::string canonical_key(const AnchoredGraph& g) { return canonical_form(g).key; }

std::string colored_canonical_key(const Graph& g, const std::vector<int>& color) {
  if (static_cast<int>(color.size()) != g.num_vertices()) {
    throw std::invalid_argument("coloring size mismatch");
  }
  CanonicalForm form = canonical_with_colors(g, color);
  std::vector<int> normalized = normalize_colors(color);
  std::string key = form.key + ":";
  std::vector<int> by_position(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) by_position[form.labeling[v]] = normalized[v];
  for (int c : by_position) key += std::to_string(c) + ",";
  return key;
}

bool is_isomorphic(const Graph& g, const Graph& h) {
  if (g.num_vertices() != h.num_vertices() || g.num_edges() != h.num_edges()) {
    return false;
  }
  return canonical_key(g) == canonical_key(h);
}

bool is_isomorphic(const AnchoredGraph& g, const AnchoredGraph& h) {
  if (g.graph.num_vertices() != h.graph.num_vertices() ||
      g.graph.num_edges() != h.graph.num_edges()) {
    return false;
  }
  return canonical_key(g) == canonical_key(h);
}

std::uint64_t automorphism_count(const Graph& g) {
  BitGraph bits(g);
  return count_automorphisms(bits, std::vector<int>(g.num_vertices(), 0));
}

std::uint64_t anchored_automorphism_count(const AnchoredGraph& g) {
  BitGraph bits(g.graph);
  return count_automorphisms(bits, anchor_coloring(g));
}

}  // namespace homspasm
