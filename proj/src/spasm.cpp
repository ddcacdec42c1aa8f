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

#include "homspasm/spasm.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "homspasm/canonical.hpp"
#include "homspasm/catalog.hpp"
#include "homspasm/decomp.hpp"
#include "homspasm/errors.hpp"
#include "homspasm/graph6.hpp"
#include "json.hpp"

namespace homspasm {
namespace {

// Sum of Moebius weights per quotient class, keyed by canonical key.
struct ClassSum {
  BasisTerm term;  // coefficient unused while accumulating
  long long weight = 0;
};

template <typename Pattern>
std::map<std::string, ClassSum> moebius_classes(const Pattern& pattern, int limit) {
  std::map<std::string, ClassSum> classes;
  const Graph* graph;
  if constexpr (std::is_same_v<Pattern, AnchoredGraph>) {
    graph = &pattern.graph;
  } else {
    graph = &pattern;
  }
  for_each_loop_free_partition(
      *graph,
      [&](const Partition& p) {
        auto q = quotient(pattern, p);
        BasisTerm term = make_term(q.graph, Rational(0));
        auto [it, inserted] = classes.try_emplace(term.key);
        if (inserted) it->second.term = std::move(term);
        it->second.weight += p.moebius_weight();
      },
      limit);
  return classes;
}

LinearCombination from_classes(std::map<std::string, ClassSum> classes,
                               const Rational& divisor, Level level) {
  LinearCombination c;
  c.basis = BasisKind::kHom;
  c.level = level;
  for (auto& [key, cls] : classes) {
    if (cls.weight == 0) continue;
    cls.term.coefficient = Rational(cls.weight) / divisor;
    c.terms.push_back(std::move(cls.term));
  }
  std::sort(c.terms.begin(), c.terms.end(), term_order);
  return c;
}

std::string pattern_name(const Graph& g) { return format_graph6(g); }
std::string pattern_name(const AnchoredGraph& g) {
  return format_graph6(g.graph) + "@" + std::to_string(g.anchor);
}

// Maps labeled graphs on a fixed vertex count, given as edge bitmasks, to
// canonical classes; memoized because the same masks recur across patterns.
class ClassIndex {
 public:
  explicit ClassIndex(int n) : n_(n) {
    for (int j = 1; j < n; ++j) {
      for (int i = 0; i < j; ++i) pairs_.push_back({i, j});
    }
    if (pairs_.size() <= 22) dense_.assign(std::size_t{1} << pairs_.size(), -1);
  }

  int num_pairs() const { return static_cast<int>(pairs_.size()); }
  const Edge& pair(int index) const { return pairs_[index]; }

  std::uint64_t mask_of(const Graph& g) const {
    std::uint64_t mask = 0;
    for (int k = 0; k < num_pairs(); ++k) {
      if (g.has_edge(pairs_[k].u, pairs_[k].v)) mask |= std::uint64_t{1} << k;
    }
    return mask;
  }

  int class_of(std::uint64_t mask) {
    if (!dense_.empty() && dense_[mask] >= 0) return dense_[mask];
    if (dense_.empty()) {
      auto it = sparse_.find(mask);
      if (it != sparse_.end()) return it->second;
    }
    std::vector<Edge> edges;
    for (int k = 0; k < num_pairs(); ++k) {
      if (mask >> k & 1) edges.push_back(pairs_[k]);
    }
    BasisTerm term = make_term(Graph(n_, std::move(edges)), Rational(0));
    auto [it, inserted] = by_key_.try_emplace(term.key, static_cast<int>(classes_.size()));
    if (inserted) classes_.push_back(std::move(term));
    if (!dense_.empty()) {
      dense_[mask] = it->second;
    } else {
      sparse_[mask] = it->second;
    }
    return it->second;
  }

  const BasisTerm& term(int cls) const { return classes_[cls]; }

 private:
  int n_;
  std::vector<Edge> pairs_;
  std::vector<int> dense_;
  std::unordered_map<std::uint64_t, int> sparse_;
  std::map<std::string, int> by_key_;
  std::vector<BasisTerm> classes_;
};

// Adds (1/Aut(pattern)) * sum_S (-1)^|S| Inj(pattern + S) into `inj`,
// keyed by class id.
void accumulate_indsub(const Graph& pattern, ClassIndex& index,
                       std::map<int, Rational>& inj) {
  const std::uint64_t base = index.mask_of(pattern);
  std::vector<int> free_pairs;
  for (int k = 0; k < index.num_pairs(); ++k) {
    if (!(base >> k & 1)) free_pairs.push_back(k);
  }
  if (static_cast<int>(free_pairs.size()) > kIndSubNonEdgeLimit) {
    throw LimitError("induced-subgraph expansion over " +
                     std::to_string(free_pairs.size()) + " non-edges exceeds the limit of " +
                     std::to_string(kIndSubNonEdgeLimit));
  }
  std::map<int, long long> signed_counts;
  const std::uint64_t subsets = std::uint64_t{1} << free_pairs.size();
  for (std::uint64_t s = 0; s < subsets; ++s) {
    std::uint64_t mask = base;
    for (std::size_t b = 0; b < free_pairs.size(); ++b) {
      if (s >> b & 1) mask |= std::uint64_t{1} << free_pairs[b];
    }
    signed_counts[index.class_of(mask)] += (std::popcount(s) % 2 == 0) ? 1 : -1;
  }
  const Rational aut(automorphism_count(pattern));
  for (auto [cls, count] : signed_counts) {
    if (count != 0) inj[cls] += Rational(count) / aut;
  }
}

LinearCombination expand_inj_classes(const std::map<int, Rational>& inj,
                                     const ClassIndex& index) {
  LinearCombination total;
  for (const auto& [cls, coeff] : inj) {
    if (coeff == 0) continue;
    total = combine(total, scale(inj_expansion(index.term(cls).graph), coeff));
  }
  return total;
}

}  // namespace

bool term_order(const BasisTerm& a, const BasisTerm& b) {
  if (a.graph.num_vertices() != b.graph.num_vertices()) {
    return a.graph.num_vertices() < b.graph.num_vertices();
  }
  if (a.graph.num_edges() != b.graph.num_edges()) {
    return a.graph.num_edges() < b.graph.num_edges();
  }
  return a.key < b.key;
}

std::string_view to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::kHom: return "hom";
    case BasisKind::kInj: return "inj";
    case BasisKind::kSub: return "sub";
    case BasisKind::kIndSub: return "indsub";
  }
  return "?";
}

std::string_view to_string(Level level) {
  return level == Level::kGraph ? "graph" : "node";
}

BasisKind parse_basis_kind(std::string_view text) {
  for (BasisKind k : {BasisKind::kHom, BasisKind::kInj, BasisKind::kSub, BasisKind::kIndSub}) {
    if (text == to_string(k)) return k;
  }
  throw ParseError("unknown basis kind '" + std::string(text) + "'");
}

Level parse_level(std::string_view text) {
  if (text == "graph") return Level::kGraph;
  if (text == "node") return Level::kNode;
  throw ParseError("unknown level '" + std::string(text) + "'");
}

BasisTerm make_term(const Graph& g, Rational coefficient) {
  CanonicalForm form = canonical_form(g);
  return {std::move(form.graph), std::nullopt, std::move(form.key), std::move(coefficient)};
}

BasisTerm make_term(const AnchoredGraph& g, Rational coefficient) {
  CanonicalForm form = canonical_form(g);
  return {std::move(form.graph), form.anchor, std::move(form.key), std::move(coefficient)};
}

const BasisTerm* LinearCombination::find(std::string_view key) const {
  for (const auto& t : terms) {
    if (t.key == key) return &t;
  }
  return nullptr;
}

LinearCombination spasm_of(const Graph& pattern, int limit) {
  auto c = from_classes(moebius_classes(pattern, limit),
                        Rational(automorphism_count(pattern)), Level::kGraph);
  c.label = "Sub(" + pattern_name(pattern) + ")";
  return c;
}

LinearCombination anchored_spasm_of(const AnchoredGraph& pattern, int limit) {
  auto c = from_classes(moebius_classes(pattern, limit),
                        Rational(anchored_automorphism_count(pattern)), Level::kNode);
  c.label = "Sub(" + pattern_name(pattern) + ")";
  return c;
}

LinearCombination inj_expansion(const Graph& pattern, int limit) {
  auto c = from_classes(moebius_classes(pattern, limit), Rational(1), Level::kGraph);
  c.label = "Inj(" + pattern_name(pattern) + ")";
  return c;
}

LinearCombination inj_expansion(const AnchoredGraph& pattern, int limit) {
  auto c = from_classes(moebius_classes(pattern, limit), Rational(1), Level::kNode);
  c.label = "Inj(" + pattern_name(pattern) + ")";
  return c;
}

LinearCombination indsub_expansion(const Graph& pattern) {
  if (pattern.num_vertices() > kIndSubVertexLimit) {
    throw LimitError("induced-subgraph expansion supports at most " +
                     std::to_string(kIndSubVertexLimit) + " vertices");
  }
  ClassIndex index(pattern.num_vertices());
  std::map<int, Rational> inj;
  accumulate_indsub(pattern, index, inj);
  auto c = expand_inj_classes(inj, index);
  c.label = "IndSub(" + pattern_name(pattern) + ")";
  return c;
}

LinearCombination indsub_property_param(int k, const GraphPredicate& property) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (k > kPropertyParamLimit) {
    throw LimitError("IndSub property parameter supports k <= " +
                     std::to_string(kPropertyParamLimit));
  }
  ClassIndex index(k);
  std::map<int, Rational> inj;
  for (const Graph& g : enumerate_graphs(k, kPropertyParamLimit)) {
    if (property(g)) accumulate_indsub(g, index, inj);
  }
  auto c = expand_inj_classes(inj, index);
  c.label = "IndSub_" + std::to_string(k) + "[property]";
  return c;
}

namespace predicates {
GraphPredicate always_true() {
  return [](const Graph&) { return true; };
}
GraphPredicate connected() {
  return [](const Graph& g) { return is_connected(g); };
}
GraphPredicate isomorphic_to(const Graph& target) {
  return [key = canonical_key(target), n = target.num_vertices(),
          m = target.num_edges()](const Graph& g) {
    return g.num_vertices() == n && g.num_edges() == m && canonical_key(g) == key;
  };
}
}  // namespace predicates

LinearCombination to_hom_basis(const LinearCombination& c) {
  if (c.basis == BasisKind::kHom) return simplify(c);
  LinearCombination out;
  out.level = c.level;
  for (const BasisTerm& t : c.terms) {
    LinearCombination part;
    const bool anchored = t.anchor.has_value();
    switch (c.basis) {
      case BasisKind::kInj:
        part = anchored ? inj_expansion(AnchoredGraph(t.graph, *t.anchor))
                        : inj_expansion(t.graph);
        break;
      case BasisKind::kSub:
        part = anchored ? anchored_spasm_of(AnchoredGraph(t.graph, *t.anchor))
                        : spasm_of(t.graph);
        break;
      case BasisKind::kIndSub:
        if (anchored) {
          throw std::invalid_argument("node-level induced-subgraph counts are not supported");
        }
        part = indsub_expansion(t.graph);
        break;
      case BasisKind::kHom:
        break;
    }
    out = combine(out, scale(part, t.coefficient));
  }
  out.label = c.label;
  return out;
}

LinearCombination simplify(const LinearCombination& c) {
  std::map<std::string, BasisTerm> merged;
  for (const BasisTerm& t : c.terms) {
    auto [it, inserted] = merged.try_emplace(t.key, t);
    if (!inserted) it->second.coefficient += t.coefficient;
  }
  LinearCombination out;
  out.basis = c.basis;
  out.level = c.level;
  out.label = c.label;
  for (auto& [key, term] : merged) {
    if (term.coefficient != 0) out.terms.push_back(std::move(term));
  }
  std::sort(out.terms.begin(), out.terms.end(), term_order);
  return out;
}

LinearCombination combine(const LinearCombination& a, const LinearCombination& b) {
  if (a.terms.empty()) {
    LinearCombination out = simplify(b);
    return out;
  }
  if (b.terms.empty()) return simplify(a);
  if (a.basis != b.basis || a.level != b.level) {
    throw std::invalid_argument("cannot combine different bases or levels");
  }
  LinearCombination joined = a;
  joined.terms.insert(joined.terms.end(), b.terms.begin(), b.terms.end());
  return simplify(joined);
}

LinearCombination scale(const LinearCombination& c, const Rational& factor) {
  LinearCombination out = c;
  for (BasisTerm& t : out.terms) t.coefficient *= factor;
  return simplify(out);
}

LinearCombination filter_min_treewidth(const LinearCombination& c, int k) {
  LinearCombination out = c;
  out.terms.clear();
  for (const BasisTerm& t : c.terms) {
    if (treewidth_exact(t.graph).width > k) out.terms.push_back(t);
  }
  return out;
}

std::vector<Graph> connected_component_support(const std::vector<Graph>& graphs) {
  std::map<std::string, BasisTerm> seen;
  for (const Graph& g : graphs) {
    for (const Graph& comp : connected_components(g)) {
      BasisTerm t = make_term(comp, Rational(1));
      seen.try_emplace(t.key, std::move(t));
    }
  }
  std::vector<BasisTerm> terms;
  for (auto& [key, t] : seen) terms.push_back(std::move(t));
  std::sort(terms.begin(), terms.end(), term_order);
  std::vector<Graph> out;
  for (auto& t : terms) out.push_back(std::move(t.graph));
  return out;
}

std::string to_json(const LinearCombination& c) {
  nlohmann::ordered_json j;
  j["basis_kind"] = std::string(to_string(c.basis));
  j["level"] = std::string(to_string(c.level));
  j["label"] = c.label;
  j["terms"] = nlohmann::ordered_json::array();
  for (const BasisTerm& t : c.terms) {
    nlohmann::ordered_json term;
    term["graph6"] = format_graph6(t.graph);
    if (t.anchor) term["anchor"] = *t.anchor;
    term["num"] = numerator_of(t.coefficient).str();
    term["den"] = denominator_of(t.coefficient).str();
    j["terms"].push_back(std::move(term));
  }
  return j.dump();
}

LinearCombination combination_from_json(std::string_view text) {
  LinearCombination c;
  try {
    auto j = nlohmann::json::parse(text);
    c.basis = parse_basis_kind(j.at("basis_kind").get<std::string>());
    c.level = parse_level(j.at("level").get<std::string>());
    c.label = j.value("label", "");
    for (const auto& term : j.at("terms")) {
      Graph g = parse_graph6(term.at("graph6").get<std::string>());
      Rational coeff = parse_rational(term.at("num").get<std::string>() + "/" +
                                      term.at("den").get<std::string>());
      if (term.contains("anchor")) {
        c.terms.push_back(make_term(AnchoredGraph(g, term.at("anchor").get<int>()), coeff));
      } else {
        c.terms.push_back(make_term(g, coeff));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("basis json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("basis json: ") + e.what());
  }
  for (const auto& t : c.terms) {
    if (t.anchor.has_value() != (c.level == Level::kNode)) {
      throw ParseError("basis json: term anchoring does not match level");
    }
  }
  return simplify(c);
}

}  // namespace homspasm
