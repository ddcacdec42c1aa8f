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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// if any hard criterion fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "homspasm/canonical.hpp"
#include "homspasm/catalog.hpp"
#include "homspasm/decomp.hpp"
#include "homspasm/features.hpp"
#include "homspasm/graph6.hpp"
#include "homspasm/homcount.hpp"
#include "homspasm/oracle.hpp"
#include "homspasm/spasm.hpp"
#include "test_util.hpp"

namespace homspasm {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::set<std::string> support(const LinearCombination& c) {
  std::set<std::string> keys;
  for (const auto& t : c.terms) keys.insert(t.key);
  return keys;
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2fs", s);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome basis_sizes() {
  const auto start = Clock::now();
  std::vector<std::pair<std::string, std::size_t>> got = {
      {"C7", spasm_of(cycle_graph(7)).size()},    {"C8", spasm_of(cycle_graph(8)).size()},
      {"P4", spasm_of(path_graph(4)).size()},     {"P5", spasm_of(path_graph(5)).size()},
      {"P6", spasm_of(path_graph(6)).size()},     {"K3", spasm_of(complete_graph(3)).size()},
      {"K4", spasm_of(complete_graph(4)).size()}, {"K5", spasm_of(complete_graph(5)).size()},
  };
  auto anchored = support(anchored_spasm_of(AnchoredGraph(cycle_graph(7), 0)));
  for (const auto& k : support(anchored_spasm_of(AnchoredGraph(cycle_graph(8), 0)))) {
    anchored.insert(k);
  }
  got.emplace_back("C7*+C8*", anchored.size());
  got.emplace_back("omega-con-2..5", enumerate_connected_graphs(2, 5).size());
  const std::map<std::string, std::size_t> expected = {
      {"C7", 12}, {"C8", 35}, {"P4", 4},         {"P5", 8},
      {"P6", 15}, {"K3", 1},  {"K4", 1},         {"K5", 1},
      {"C7*+C8*", 118},       {"omega-con-2..5", 30}};
  Outcome o{true, ""};
  for (const auto& [name, size] : got) {
    o.detail += name + "=" + std::to_string(size) + " ";
    if (expected.at(name) != size) o.pass = false;
  }
  const double t = seconds_since(start);
  o.detail += "in " + fmt_seconds(t);
  if (t >= 60) o.pass = false;
  return o;
}

Outcome five_cycle_coefficients() {
  LinearCombination c = spasm_of(cycle_graph(5));
  Graph paw(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  auto coef = [&](const Graph& g) {
    const BasisTerm* t = c.find(canonical_key(g));
    return t ? t->coefficient : Rational(0);
  };
  const Rational c5 = coef(cycle_graph(5));
  const Rational pw = coef(paw);
  const Rational k3 = coef(complete_graph(3));
  return {c.size() == 3 && c5 == Rational(1, 10) && pw == Rational(-1, 2) && k3 == Rational(1, 2),
          "C5=" + to_string(c5) + " paw=" + to_string(pw) + " K3=" + to_string(k3)};
}

Outcome anchored_four_cycle() {
  auto keys = support(anchored_spasm_of(AnchoredGraph(cycle_graph(4), 0)));
  const bool end = keys.count(canonical_key(AnchoredGraph(path_graph(3), 0))) > 0;
  const bool middle = keys.count(canonical_key(AnchoredGraph(path_graph(3), 1))) > 0;
  return {keys.size() == 4 && end && middle,
          std::to_string(keys.size()) + " terms; P3 end-anchored " + (end ? "yes" : "no") +
              ", middle-anchored " + (middle ? "yes" : "no")};
}

Outcome long_cycle_treewidth() {
  const auto start = Clock::now();
  std::size_t checked = 0;
  bool all_two = true;
  std::string detail;
  for (int k : {7, 8}) {
    std::map<int, int> hist;
    for (const auto& t : spasm_of(cycle_graph(k)).terms) {
      ++checked;
      const int w = treewidth_exact(t.graph).width;
      ++hist[w];
      if (w != 2) all_two = false;
    }
    detail += "C" + std::to_string(k) + " widths {";
    for (auto it = hist.begin(); it != hist.end(); ++it) {
      if (it != hist.begin()) detail += ", ";
      detail += std::to_string(it->first) + ": " + std::to_string(it->second);
    }
    detail += "}; ";
  }
  const double s = seconds_since(start);
  return {all_two && checked == 47 && s < 60,
          std::to_string(checked) + " graphs, all width 2: " + (all_two ? "yes" : "no") + " (" +
              detail + fmt_seconds(s) + ")"};
}

// Engine vs brute force for one (pattern, host) pair; returns the number of
// mismatching quantities and appends a description of the first one.
class OracleSuite {
 public:
  int compare(const Graph& f, const Graph& h, std::string& first) {
    // Keyed by the exact labeling: anchored expansions are indexed by vertex.
    const std::string key = format_graph6(f);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, Expansions(f)).first;
    const Expansions& e = it->second;
    HostGraph host(h);
    int bad = 0;
    auto note = [&](const std::string& what) {
      ++bad;
      if (first.empty()) first = what + " pattern=" + format_graph6(f) + " host=" + format_graph6(h);
    };
    ++comparisons_;
    if (hom_count(f, host) != oracle::brute_hom(f, h)) note("hom");
    ++comparisons_;
    if (evaluate(e.sub, host) != Rational(oracle::brute_sub(f, h))) note("sub");
    ++comparisons_;
    if (evaluate(e.indsub, host) != Rational(oracle::brute_indsub(f, h))) note("indsub");
    for (int a = 0; a < f.num_vertices(); ++a) {
      AnchoredGraph fa(f, a);
      auto hom = hom_count_node(fa, host).counts;
      auto hom_expected = oracle::brute_hom_node(fa, h);
      auto sub = evaluate_node(e.anchored_sub[a], host);
      auto sub_expected = oracle::brute_sub_node(fa, h);
      ++comparisons_;
      for (int v = 0; v < h.num_vertices(); ++v) {
        if (hom[v] != hom_expected[v]) {
          note("hom-node@" + std::to_string(a));
          break;
        }
      }
      ++comparisons_;
      for (int v = 0; v < h.num_vertices(); ++v) {
        if (sub[v] != Rational(sub_expected[v])) {
          note("sub-node@" + std::to_string(a));
          break;
        }
      }
    }
    return bad;
  }

  long long comparisons() const { return comparisons_; }

 private:
  struct Expansions {
    explicit Expansions(const Graph& f) : sub(spasm_of(f)), indsub(indsub_expansion(f)) {
      for (int a = 0; a < f.num_vertices(); ++a) {
        anchored_sub.push_back(anchored_spasm_of(AnchoredGraph(f, a)));
      }
    }
    LinearCombination sub;
    LinearCombination indsub;
    std::vector<LinearCombination> anchored_sub;
  };
  std::map<std::string, Expansions> cache_;
  long long comparisons_ = 0;
};

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  OracleSuite suite;
  std::vector<Graph> patterns;
  for (int n = 1; n <= 5; ++n) {
    for (const Graph& g : enumerate_graphs(n)) patterns.push_back(g);
  }
  std::vector<Graph> hosts;
  for (int n = 0; n <= 4; ++n) {
    for (const Graph& g : enumerate_graphs(n)) hosts.push_back(g);
  }
  long long mismatches = 0;
  std::string first;
  for (const Graph& f : patterns) {
    for (const Graph& h : hosts) mismatches += suite.compare(f, h, first);
  }
  const std::size_t exhaustive_pairs = patterns.size() * hosts.size();
  std::mt19937_64 rng(20240601);
  const int random_pairs = 600;
  for (int i = 0; i < random_pairs; ++i) {
    const int nf = 1 + static_cast<int>(rng() % 5);
    const int nh = 1 + static_cast<int>(rng() % 6);
    const double pf = 0.2 + 0.6 * static_cast<double>(rng() % 1000) / 1000.0;
    const double ph = 0.2 + 0.6 * static_cast<double>(rng() % 1000) / 1000.0;
    Graph f = testing::random_graph(rng, nf, pf);
    Graph h = testing::random_graph(rng, nh, ph);
    mismatches += suite.compare(f, h, first);
  }
  const double s = seconds_since(start);
  std::string detail = std::to_string(patterns.size()) + " patterns x " +
                       std::to_string(hosts.size()) + " hosts (" +
                       std::to_string(exhaustive_pairs) + " pairs) + " +
                       std::to_string(random_pairs) + " random pairs, " +
                       std::to_string(suite.comparisons()) + " comparisons, " +
                       std::to_string(mismatches) + " mismatches, " + fmt_seconds(s);
  if (!first.empty()) detail += "; first: " + first;
  return {mismatches == 0 && s < 600, detail};
}

Graph random_connected(std::mt19937_64& rng, int max_n) {
  for (;;) {
    const int n = 1 + static_cast<int>(rng() % max_n);
    Graph g = testing::random_graph(rng, n, 0.5);
    if (is_connected(g)) return g;
  }
}

Outcome lovasz_identities() {
  std::mt19937_64 rng(777);
  int failures = 0;
  const int triples = 200;
  for (int i = 0; i < triples; ++i) {
    Graph f = random_connected(rng, 5);
    Graph g = testing::random_graph(rng, 1 + static_cast<int>(rng() % 5), 0.5);
    Graph h = testing::random_graph(rng, 1 + static_cast<int>(rng() % 5), 0.5);
    HostGraph hg(g);
    HostGraph hh(h);
    const Count fg = hom_count(f, hg);
    const Count fh = hom_count(f, hh);
    if (hom_count(f, HostGraph(disjoint_union(g, h))) != fg + fh) ++failures;
    if (hom_count(f, HostGraph(categorical_product(g, h))) != fg * fh) ++failures;
    if (hom_count(disjoint_union(f, g), hh) != fh * hom_count(g, hh)) ++failures;
  }
  return {failures == 0, std::to_string(triples) + " triples, " + std::to_string(failures) +
                             " identity failures"};
}

Outcome node_graph_sums() {
  std::vector<LinearCombination> bases = {
      anchored_spasm_of(AnchoredGraph(cycle_graph(7), 0)),
      anchored_spasm_of(AnchoredGraph(cycle_graph(8), 0))};
  std::map<std::string, BasisTerm> terms;
  for (const auto& b : bases) {
    for (const auto& t : b.terms) terms.emplace(t.key, t);
  }
  std::mt19937_64 rng(4242);
  int failures = 0;
  long long checks = 0;
  for (int i = 0; i < 50; ++i) {
    HostGraph host(testing::random_graph(rng, 20, 0.25));
    for (const auto& [key, t] : terms) {
      auto counts = hom_count_node(AnchoredGraph(t.graph, *t.anchor), host).counts;
      Count sum = 0;
      for (const Count& c : counts) sum += c;
      ++checks;
      if (sum != hom_count(t.graph, host)) ++failures;
    }
  }
  return {failures == 0 && terms.size() == 118,
          std::to_string(terms.size()) + " anchored terms x 50 hosts, " + std::to_string(checks) +
              " sums, " + std::to_string(failures) + " failures"};
}

Outcome star_counterexample() {
  HostGraph star(star_graph(9));
  const Count middle = hom_count_node(AnchoredGraph(path_graph(3), 1), star).counts[0];
  const Count end = hom_count_node(AnchoredGraph(path_graph(3), 0), star).counts[0];
  return {middle == 81 && end == 9,
          "center: middle-anchored " + to_string(middle) + ", end-anchored " + to_string(end)};
}

Outcome spasm_closure() {
  std::size_t graphs = 0;
  std::size_t violations = 0;
  std::map<std::string, std::set<std::string>> memo;
  auto support_of = [&](const Graph& g) -> const std::set<std::string>& {
    const std::string key = canonical_key(g);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, support(spasm_of(g))).first;
    return it->second;
  };
  for (int n = 1; n <= 6; ++n) {
    for (const Graph& g : enumerate_graphs(n)) {
      ++graphs;
      const auto outer = support_of(g);
      for (const auto& t : spasm_of(g).terms) {
        for (const auto& k : support_of(t.graph)) {
          if (!outer.count(k)) ++violations;
        }
      }
    }
  }
  return {violations == 0 && graphs == 1 + 2 + 4 + 11 + 34 + 156,
          std::to_string(graphs) + " graphs, " + std::to_string(violations) + " violations"};
}

std::string feature_csv(const Dataset& ds, const std::vector<LinearCombination>& params,
                        Level level, int jobs) {
  FeatureOptions options;
  options.level = level;
  options.include_derived_counts = true;
  options.auto_anchor = true;
  options.batch.jobs = jobs;
  options.batch.chunk_size = 16;
  FeatureRun run(params, options);
  std::ostringstream out;
  std::vector<std::string> names;
  for (const auto& c : run.columns()) names.push_back(c.name);
  TableWriter writer(out, ExportFormat::kCsv, names);
  run.run(
      ds,
      [&](const std::string& id, std::vector<Rational>&& row) {
        std::vector<std::string> cells;
        for (const auto& x : row) cells.push_back(format_value(x));
        writer.write_row(id, cells);
      },
      [&](const std::string& id, const std::string& message) {
        out << "#failed " << id << " " << message << '\n';
      });
  return out.str();
}

Outcome determinism() {
  std::mt19937_64 rng(1000);
  Dataset ds;
  for (int i = 0; i < 1000; ++i) {
    const int n = 5 + static_cast<int>(rng() % 16);
    ds.ids.push_back("g" + std::to_string(i));
    ds.hosts.emplace_back(testing::random_graph(rng, n, 0.3));
  }
  std::vector<LinearCombination> params = {spasm_of(cycle_graph(6)), spasm_of(path_graph(5)),
                                           indsub_expansion(path_graph(4))};
  bool identical = true;
  std::size_t bytes = 0;
  for (Level level : {Level::kGraph, Level::kNode}) {
    const std::string reference = feature_csv(ds, params, level, 1);
    bytes += reference.size();
    for (int jobs : {4, 8}) {
      if (feature_csv(ds, params, level, jobs) != reference) identical = false;
    }
  }
  return {identical, "1000 graphs, graph and node level, jobs 1/4/8 byte-identical: " +
                         std::string(identical ? "yes" : "no") + " (" + std::to_string(bytes) +
                         " bytes per run)"};
}

Outcome performance() {
  const unsigned cores = std::max(1u, std::thread::hardware_concurrency());
  const int jobs = static_cast<int>(std::min(cores, 8u));
  std::mt19937_64 rng(12000);
  Dataset ds;
  for (int i = 0; i < 12000; ++i) {
    ds.ids.push_back("h" + std::to_string(i));
    ds.hosts.emplace_back(testing::random_graph_m(rng, 23, 50));
  }
  auto timed = [&](const std::vector<LinearCombination>& params, Level level, bool auto_anchor) {
    FeatureOptions options;
    options.level = level;
    options.auto_anchor = auto_anchor;
    options.batch.jobs = jobs;
    FeatureRun run(params, options);
    std::size_t rows = 0;
    std::size_t failures = 0;
    const auto start = Clock::now();
    run.run(
        ds, [&](const std::string&, std::vector<Rational>&&) { ++rows; },
        [&](const std::string&, const std::string&) { ++failures; });
    return std::make_tuple(seconds_since(start), rows, failures, run.columns().size());
  };
  auto [node_s, node_rows, node_fail, node_cols] =
      timed({anchored_spasm_of(AnchoredGraph(cycle_graph(8), 0))}, Level::kNode, false);
  std::vector<LinearCombination> omega;
  for (const Graph& g : enumerate_connected_graphs(2, 5)) {
    LinearCombination c;
    c.terms.push_back(make_term(g, Rational(1)));
    omega.push_back(std::move(c));
  }
  auto [graph_s, graph_rows, graph_fail, graph_cols] = timed(omega, Level::kGraph, false);
  const double budget = 30 * 60;
  const bool ok = node_s <= budget && graph_s <= budget && node_fail == 0 && graph_fail == 0 &&
                  node_rows == 12000u * 23u && graph_rows == 12000u;
  return {ok, "12000 hosts (23 vertices, 50 edges) on " + std::to_string(jobs) +
                  " worker(s) of " + std::to_string(cores) + " core(s): node-level C8 anchored basis (" +
                  std::to_string(node_cols) + " columns) " + fmt_seconds(node_s) +
                  ", graph-level connected graphs on 2..5 vertices (" +
                  std::to_string(graph_cols) + " columns) " + fmt_seconds(graph_s) +
                  "; budget 1800s each"};
}

}  // namespace
}  // namespace homspasm

int main() {
  using homspasm::Outcome;
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "basis sizes", homspasm::basis_sizes},
      {2, "C5 coefficients", homspasm::five_cycle_coefficients},
      {3, "anchored C4 basis", homspasm::anchored_four_cycle},
      {4, "treewidth of C7/C8 bases", homspasm::long_cycle_treewidth},
      {5, "oracle equivalence", homspasm::oracle_equivalence},
      {6, "Lovasz identities", homspasm::lovasz_identities},
      {7, "node/graph sum identity", homspasm::node_graph_sums},
      {8, "star counterexample", homspasm::star_counterexample},
      {9, "basis closure", homspasm::spasm_closure},
      {10, "determinism across jobs", homspasm::determinism},
      {11, "performance (soft)", homspasm::performance},
  };
  // Criteria whose statement is false as written. Their lines still print FAIL;
  // they do not affect the exit status. C8 is bipartite, so K2 and other trees
  // are quotients of it, and a closed 8-walk covers K4: Spasm(C8) holds graphs
  // of width 1 and 3. Only the C7 half of criterion 4 can hold.
  const std::set<int> unattainable = {4};
  int failed = 0;
  int unexpected = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) {
      ++failed;
      if (!unattainable.count(c.id)) ++unexpected;
    }
    std::cout << "criterion " << c.id << " [" << c.name << "]: " << (o.pass ? "PASS" : "FAIL")
              << " - " << o.detail << std::endl;
  }
  std::cout << "criterion 12 [model training results]: NOT REPRODUCIBLE - learning "
               "experiments are out of scope; only the preprocessing layer is tested"
            << std::endl;
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << " (" << unexpected << " unexpected)" << std::endl;
  return unexpected == 0 ? 0 : 1;
}
