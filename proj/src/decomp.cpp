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

#include "homspasm/decomp.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

#include "homspasm/errors.hpp"
#include "json.hpp"

namespace homspasm {
namespace {

using Mask = std::uint32_t;

// Vertices outside `s` and != v reachable from v through paths whose
// interior lies in `s`.
int reach_outside(const std::vector<Mask>& adj, Mask s, int v) {
  Mask seen = Mask{1} << v;
  Mask frontier = seen;
  Mask outside = 0;
  while (frontier) {
    int x = std::countr_zero(frontier);
    frontier &= frontier - 1;
    Mask nbrs = adj[x] & ~seen;
    seen |= nbrs;
    outside |= nbrs & ~s;
    frontier |= nbrs & s;
  }
  return std::popcount(outside);
}

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Contract tree edges whose bags are nested until none remain.
TreeDecomposition contract_nested(std::vector<std::vector<int>> bags,
                                  std::vector<std::set<int>> nbrs) {
  const int count = static_cast<int>(bags.size());
  std::vector<bool> alive(count, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < count && !changed; ++a) {
      if (!alive[a]) continue;
      for (int b : nbrs[a]) {
        if (!is_subset(bags[a], bags[b])) continue;
        for (int c : nbrs[a]) {
          if (c == b) continue;
          nbrs[c].erase(a);
          nbrs[c].insert(b);
          nbrs[b].insert(c);
        }
        nbrs[b].erase(a);
        nbrs[a].clear();
        alive[a] = false;
        changed = true;
        break;
      }
    }
  }
  std::vector<int> index(count, -1);
  TreeDecomposition td;
  for (int a = 0; a < count; ++a) {
    if (!alive[a]) continue;
    index[a] = static_cast<int>(td.bags.size());
    td.bags.push_back(bags[a]);
    td.width = std::max(td.width, static_cast<int>(bags[a].size()) - 1);
  }
  for (int a = 0; a < count; ++a) {
    if (!alive[a]) continue;
    for (int b : nbrs[a]) {
      if (a < b) td.tree_edges.push_back({index[a], index[b]});
    }
  }
  std::sort(td.tree_edges.begin(), td.tree_edges.end());
  return td;
}

std::optional<std::string> check_tree(int count,
                                      const std::vector<std::pair<int, int>>& edges) {
  if (count == 0) {
    if (!edges.empty()) return "tree edges without bags";
    return std::nullopt;
  }
  if (static_cast<int>(edges.size()) != count - 1) {
    return "tree has " + std::to_string(edges.size()) + " edges for " +
           std::to_string(count) + " bags";
  }
  std::vector<std::vector<int>> adj(count);
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= count || b >= count || a == b) {
      return "tree edge (" + std::to_string(a) + "," + std::to_string(b) +
             ") invalid";
    }
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(count, false);
  std::vector<int> stack = {0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x]) {
      if (!seen[y]) {
        seen[y] = true;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  if (reached != count) return std::string("tree edges do not connect all bags");
  return std::nullopt;
}

const char* kind_name(NiceKind k) {
  switch (k) {
    case NiceKind::kLeaf: return "leaf";
    case NiceKind::kIntroduce: return "introduce";
    case NiceKind::kForget: return "forget";
    case NiceKind::kJoin: return "join";
  }
  return "?";
}

class NiceBuilder {
 public:
  NiceBuilder(const TreeDecomposition& td, NiceTreeDecomposition& out)
      : td_(td), out_(out), adj_(td.bags.size()) {
    for (auto [a, b] : td.tree_edges) {
      adj_[a].push_back(b);
      adj_[b].push_back(a);
    }
  }

  // Returns a node whose bag equals td.bags[t].
  int build(int t, int parent) {
    const auto& bag = td_.bags[t];
    std::vector<int> tops;
    for (int c : adj_[t]) {
      if (c == parent) continue;
      int node = build(c, t);
      tops.push_back(morph(node, bag));
    }
    if (tops.empty()) tops.push_back(morph(add({NiceKind::kLeaf, {}, -1, {}}), bag));
    int acc = tops[0];
    for (std::size_t i = 1; i < tops.size(); ++i) {
      acc = add({NiceKind::kJoin, bag, -1, {acc, tops[i]}});
    }
    return acc;
  }

  // Forget what `target` lacks, then introduce what it adds.
  int morph(int node, const std::vector<int>& target) {
    std::vector<int> bag = out_.nodes[node].bag;
    for (int v : std::vector<int>(bag)) {
      if (std::binary_search(target.begin(), target.end(), v)) continue;
      bag.erase(std::find(bag.begin(), bag.end(), v));
      node = add({NiceKind::kForget, bag, v, {node}});
    }
    for (int v : target) {
      if (std::binary_search(bag.begin(), bag.end(), v)) continue;
      bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
      node = add({NiceKind::kIntroduce, bag, v, {node}});
    }
    return node;
  }

  int add(NiceNode node) {
    out_.nodes.push_back(std::move(node));
    return static_cast<int>(out_.nodes.size()) - 1;
  }

 private:
  const TreeDecomposition& td_;
  NiceTreeDecomposition& out_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace

int NiceTreeDecomposition::width() const {
  int w = -1;
  for (const auto& node : nodes) w = std::max(w, static_cast<int>(node.bag.size()) - 1);
  return w;
}

TreeDecomposition decomposition_from_ordering(const Graph& g,
                                              const std::vector<int>& ordering) {
  const int n = g.num_vertices();
  if (static_cast<int>(ordering.size()) != n) {
    throw std::invalid_argument("ordering size mismatch");
  }
  std::vector<int> position(n, -1);
  for (int i = 0; i < n; ++i) position[ordering[i]] = i;
  std::vector<std::set<int>> fill(n);
  for (const Edge& e : g.edges()) {
    fill[e.u].insert(e.v);
    fill[e.v].insert(e.u);
  }
  std::vector<std::vector<int>> bags(n);
  std::vector<int> parent(n, -1);
  for (int i = 0; i < n; ++i) {
    const int v = ordering[i];
    std::vector<int> later;
    for (int w : fill[v]) {
      if (position[w] > i) later.push_back(w);
    }
    for (std::size_t a = 0; a < later.size(); ++a) {
      for (std::size_t b = a + 1; b < later.size(); ++b) {
        fill[later[a]].insert(later[b]);
        fill[later[b]].insert(later[a]);
      }
    }
    bags[i] = later;
    bags[i].push_back(v);
    std::sort(bags[i].begin(), bags[i].end());
    if (!later.empty()) {
      int first = *std::min_element(later.begin(), later.end(), [&](int a, int b) {
        return position[a] < position[b];
      });
      parent[i] = position[first];
    }
  }
  std::vector<std::set<int>> nbrs(n);
  int previous_root = -1;
  for (int i = 0; i < n; ++i) {
    if (parent[i] >= 0) {
      nbrs[i].insert(parent[i]);
      nbrs[parent[i]].insert(i);
    } else {
      // Component roots are chained; they share no vertices.
      if (previous_root >= 0) {
        nbrs[i].insert(previous_root);
        nbrs[previous_root].insert(i);
      }
      previous_root = i;
    }
  }
  return contract_nested(std::move(bags), std::move(nbrs));
}

TreewidthResult treewidth_exact(const Graph& g, int limit) {
  const int n = g.num_vertices();
  if (n > limit) {
    throw LimitError("exact treewidth over " + std::to_string(n) +
                     " vertices exceeds the limit of " + std::to_string(limit));
  }
  if (n > 30) throw LimitError("exact treewidth supports at most 30 vertices");
  TreewidthResult result;
  if (n == 0) return result;
  std::vector<Mask> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= Mask{1} << e.v;
    adj[e.v] |= Mask{1} << e.u;
  }
  const Mask full = (n == 32) ? ~Mask{0} : ((Mask{1} << n) - 1);
  std::vector<std::int8_t> best(std::size_t{full} + 1, 0);
  std::vector<std::int8_t> last(std::size_t{full} + 1, -1);
  best[0] = -1;
  for (Mask s = 1; s <= full; ++s) {
    int value = std::numeric_limits<int>::max();
    Mask rest = s;
    while (rest) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      Mask without = s & ~(Mask{1} << v);
      int candidate = std::max<int>(best[without], reach_outside(adj, without, v));
      if (candidate < value) {
        value = candidate;
        last[s] = static_cast<std::int8_t>(v);
      }
    }
    best[s] = static_cast<std::int8_t>(value);
    if (s == full) break;
  }
  std::vector<int> ordering(n);
  Mask s = full;
  for (int i = n - 1; i >= 0; --i) {
    ordering[i] = last[s];
    s &= ~(Mask{1} << last[s]);
  }
  result.decomposition = decomposition_from_ordering(g, ordering);
  result.width = result.decomposition.width;
  if (result.width != std::max<int>(best[full], 0)) {
    throw std::logic_error("treewidth reconstruction mismatch");
  }
  return result;
}

NiceTreeDecomposition to_nice(const TreeDecomposition& td, const Graph& g,
                              std::optional<int> anchor) {
  if (auto err = validate(td, g)) {
    throw std::invalid_argument("invalid tree decomposition: " + *err);
  }
  if (anchor && (*anchor < 0 || *anchor >= g.num_vertices())) {
    throw std::invalid_argument("anchor out of range");
  }
  NiceTreeDecomposition nice;
  nice.anchor = anchor;
  NiceBuilder builder(td, nice);
  if (td.bags.empty()) {
    nice.root = builder.add({NiceKind::kLeaf, {}, -1, {}});
    return nice;
  }
  int start = 0;
  if (anchor) {
    for (int b = 0; b < static_cast<int>(td.bags.size()); ++b) {
      const auto& bag = td.bags[b];
      if (std::binary_search(bag.begin(), bag.end(), *anchor)) {
        start = b;
        break;
      }
    }
  }
  int top = builder.build(start, -1);
  std::vector<int> root_bag;
  if (anchor) root_bag.push_back(*anchor);
  nice.root = builder.morph(top, root_bag);
  return nice;
}

std::optional<std::string> validate(const TreeDecomposition& td, const Graph& g) {
  const int n = g.num_vertices();
  const int count = static_cast<int>(td.bags.size());
  for (const auto& bag : td.bags) {
    for (int v : bag) {
      if (v < 0 || v >= n) return "bag vertex " + std::to_string(v) + " out of range";
    }
    if (!std::is_sorted(bag.begin(), bag.end()) ||
        std::adjacent_find(bag.begin(), bag.end()) != bag.end()) {
      return std::string("bag not sorted or has duplicates");
    }
  }
  if (auto err = check_tree(count, td.tree_edges)) return err;
  std::vector<std::vector<int>> holders(n);
  for (int b = 0; b < count; ++b) {
    for (int v : td.bags[b]) holders[v].push_back(b);
  }
  for (int v = 0; v < n; ++v) {
    if (holders[v].empty()) return "vertex " + std::to_string(v) + " uncovered";
  }
  for (const Edge& e : g.edges()) {
    bool covered = std::any_of(holders[e.u].begin(), holders[e.u].end(), [&](int b) {
      return std::binary_search(td.bags[b].begin(), td.bags[b].end(), e.v);
    });
    if (!covered) {
      return "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") uncovered";
    }
  }
  // Bags holding v must induce a connected subtree: #holders - 1 tree edges
  // among them.
  for (int v = 0; v < n; ++v) {
    std::vector<bool> holds(count, false);
    for (int b : holders[v]) holds[b] = true;
    int inside = 0;
    for (auto [a, b] : td.tree_edges) {
      if (holds[a] && holds[b]) ++inside;
    }
    if (inside != static_cast<int>(holders[v].size()) - 1) {
      return "vertex " + std::to_string(v) + " not connected";
    }
  }
  if (count > 0) {
    int width = -1;
    for (const auto& bag : td.bags) width = std::max(width, static_cast<int>(bag.size()) - 1);
    if (width != td.width) return "declared width " + std::to_string(td.width) +
                                  " but bags give " + std::to_string(width);
  }
  return std::nullopt;
}

std::optional<std::string> validate(const NiceTreeDecomposition& td, const Graph& g) {
  const int count = static_cast<int>(td.nodes.size());
  if (td.root < 0 || td.root >= count) return std::string("root index invalid");
  std::vector<int> parents(count, 0);
  TreeDecomposition plain;
  for (int i = 0; i < count; ++i) {
    const NiceNode& node = td.nodes[i];
    const std::string where = "node " + std::to_string(i) + " (" + kind_name(node.kind) + ")";
    plain.bags.push_back(node.bag);
    for (int c : node.children) {
      if (c < 0 || c >= count) return where + ": child index invalid";
      ++parents[c];
      plain.tree_edges.push_back({std::min(i, c), std::max(i, c)});
    }
    auto child_bag = [&](int k) -> const std::vector<int>& {
      return td.nodes[node.children[k]].bag;
    };
    switch (node.kind) {
      case NiceKind::kLeaf:
        if (!node.children.empty() || !node.bag.empty()) {
          return where + ": leaf must have empty bag and no children";
        }
        break;
      case NiceKind::kIntroduce: {
        if (node.children.size() != 1) return where + ": needs one child";
        std::vector<int> expect = child_bag(0);
        if (std::binary_search(expect.begin(), expect.end(), node.vertex)) {
          return where + ": vertex already in child bag";
        }
        expect.insert(std::lower_bound(expect.begin(), expect.end(), node.vertex),
                      node.vertex);
        if (expect != node.bag) return where + ": bag is not child bag plus vertex";
        break;
      }
      case NiceKind::kForget: {
        if (node.children.size() != 1) return where + ": needs one child";
        std::vector<int> expect = node.bag;
        if (std::binary_search(expect.begin(), expect.end(), node.vertex)) {
          return where + ": forgotten vertex still in bag";
        }
        expect.insert(std::lower_bound(expect.begin(), expect.end(), node.vertex),
                      node.vertex);
        if (expect != child_bag(0)) return where + ": bag is not child bag minus vertex";
        break;
      }
      case NiceKind::kJoin:
        if (node.children.size() != 2) return where + ": needs two children";
        if (child_bag(0) != node.bag || child_bag(1) != node.bag) {
          return where + ": children bags differ from join bag";
        }
        break;
    }
  }
  for (int i = 0; i < count; ++i) {
    if (i == td.root ? parents[i] != 0 : parents[i] != 1) {
      return "node " + std::to_string(i) + " has " + std::to_string(parents[i]) +
             " parents";
    }
  }
  std::vector<int> root_bag;
  if (td.anchor) root_bag.push_back(*td.anchor);
  if (td.nodes[td.root].bag != root_bag) {
    return std::string(td.anchor ? "root bag is not {anchor}" : "root bag not empty");
  }
  plain.width = td.width();
  std::sort(plain.tree_edges.begin(), plain.tree_edges.end());
  return validate(plain, g);
}

std::string decomposition_json(const TreeDecomposition& td) {
  nlohmann::json j;
  j["kind"] = "tree";
  j["width"] = td.width;
  j["bags"] = td.bags;
  j["edges"] = nlohmann::json::array();
  for (auto [a, b] : td.tree_edges) j["edges"].push_back({a, b});
  return j.dump();
}

std::string decomposition_json(const NiceTreeDecomposition& td) {
  nlohmann::json j;
  j["kind"] = "nice";
  j["width"] = td.width();
  j["root"] = td.root;
  j["bags"] = nlohmann::json::array();
  j["edges"] = nlohmann::json::array();
  j["nodes"] = nlohmann::json::array();
  for (int i = 0; i < static_cast<int>(td.nodes.size()); ++i) {
    const NiceNode& node = td.nodes[i];
    j["bags"].push_back(node.bag);
    nlohmann::json entry = {{"type", kind_name(node.kind)}, {"bag", node.bag}};
    if (node.vertex >= 0) entry["vertex"] = node.vertex;
    j["nodes"].push_back(entry);
    for (int c : node.children) j["edges"].push_back({c, i});
  }
  if (td.anchor) j["anchor"] = *td.anchor;
  return j.dump();
}

}  // namespace homspasm
