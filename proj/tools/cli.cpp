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

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "homspasm/cache.hpp"
#include "homspasm/canonical.hpp"
#include "homspasm/catalog.hpp"
#include "homspasm/decomp.hpp"
#include "homspasm/errors.hpp"
#include "homspasm/features.hpp"
#include "homspasm/graph6.hpp"
#include "homspasm/homcount.hpp"
#include "homspasm/oracle.hpp"
#include "homspasm/spasm.hpp"
#include "json.hpp"

namespace homspasm::cli {
namespace {

using nlohmann::json;

// Expands "--config <file>": each key of the JSON object names a flag without
// its dashes and is appended unless that flag is already on the command line,
// so explicit flags win. Arrays feed repeatable flags.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      file = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (file.empty()) return args;
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open config " + file);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("config " + file + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError("config " + file + ": top level must be an object");
  auto given = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  auto scalar = [&](const std::string& key, const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return v.dump();
    throw ParseError("config " + file + ": bad value for '" + key + "'");
  };
  std::vector<std::string> extra;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string flag = "--" + it.key();
    if (given(flag)) continue;
    if (it->is_boolean()) {
      if (it->get<bool>()) extra.push_back(flag);
    } else if (it->is_array()) {
      for (const auto& v : *it) {
        extra.push_back(flag);
        extra.push_back(scalar(it.key(), v));
      }
    } else {
      extra.push_back(flag);
      extra.push_back(scalar(it.key(), *it));
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

void add_config(CLI::App* app) {
  // Consumed by expand_config before parsing; declared for --help.
  app->add_option("--config", "JSON file whose keys mirror the flags; flags win");
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

// ---------------------------------------------------------------------------
// Building parameters

struct BasisRequest {
  std::string pattern;
  BasisKind basis = BasisKind::kSub;
  bool anchored = false;
  int min_tw = -1;
  const BasisCache* cache = nullptr;
};

LinearCombination compute_basis(BasisKind basis, const PatternSpec& spec) {
  if (spec.anchor) {
    AnchoredGraph a(spec.graph, *spec.anchor);
    switch (basis) {
      case BasisKind::kHom: {
        LinearCombination c;
        c.level = Level::kNode;
        c.terms.push_back(make_term(a, Rational(1)));
        return c;
      }
      case BasisKind::kInj:
        return inj_expansion(a);
      case BasisKind::kSub:
        return anchored_spasm_of(a);
      case BasisKind::kIndSub:
        throw std::invalid_argument("indsub has no node-level expansion; use sub or hom");
    }
  }
  switch (basis) {
    case BasisKind::kHom: {
      LinearCombination c;
      c.terms.push_back(make_term(spec.graph, Rational(1)));
      return c;
    }
    case BasisKind::kInj:
      return inj_expansion(spec.graph);
    case BasisKind::kSub:
      return spasm_of(spec.graph);
    case BasisKind::kIndSub:
      return indsub_expansion(spec.graph);
  }
  throw std::logic_error("unreachable");
}

LinearCombination build_param(const BasisRequest& req) {
  PatternSpec spec = parse_pattern(req.pattern);
  if (!spec.anchor && req.anchored) spec.anchor = 0;
  if (spec.anchor && (*spec.anchor < 0 || *spec.anchor >= spec.graph.num_vertices())) {
    throw ParseError("anchor out of range in '" + req.pattern + "'");
  }
  auto compute = [&] { return compute_basis(req.basis, spec); };
  LinearCombination c;
  if (req.cache) {
    const std::string key = spec.anchor ? canonical_key(AnchoredGraph(spec.graph, *spec.anchor))
                                        : canonical_key(spec.graph);
    const std::string mode =
        std::string(to_string(req.basis)) + "-" + (spec.anchor ? "node" : "graph");
    c = req.cache->get_or_compute(key, mode, compute);
  } else {
    c = compute();
  }
  if (req.min_tw >= 0) c = filter_min_treewidth(c, req.min_tw);
  std::string name(to_string(req.basis));
  if (!name.empty()) name[0] = static_cast<char>(std::toupper(name[0]));
  c.label = name + "(" + req.pattern + (req.anchored && req.pattern.find('@') == std::string::npos
                                            ? "@0"
                                            : "") +
            ")";
  return c;
}

// "omega-con-<k>": one Hom feature per connected graph on 2..k vertices.
std::vector<LinearCombination> expand_macro(const std::string& macro, bool include_singleton) {
  const std::string prefix = "omega-con-";
  if (macro.rfind(prefix, 0) != 0) throw ParseError("unknown pattern macro '" + macro + "'");
  int k = 0;
  try {
    std::size_t used = 0;
    k = std::stoi(macro.substr(prefix.size()), &used);
    if (used != macro.size() - prefix.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ParseError("bad macro '" + macro + "'");
  }
  if (k < 1) throw ParseError("macro size must be positive");
  std::vector<LinearCombination> params;
  for (const Graph& g : enumerate_connected_graphs(include_singleton ? 1 : 2, k)) {
    LinearCombination c;
    c.terms.push_back(make_term(g, Rational(1)));
    c.label = "Hom(" + format_graph6(g) + ")";
    params.push_back(std::move(c));
  }
  return params;
}

std::unique_ptr<BasisCache> open_cache(const std::string& dir) {
  if (dir.empty()) return nullptr;
  return std::make_unique<BasisCache>(dir);
}

// ---------------------------------------------------------------------------
// spasm

struct SpasmArgs {
  std::string pattern;
  std::string basis = "sub";
  bool anchored = false;
  int min_tw = -1;
  bool json = false;
  std::string cache;
};

int cmd_spasm(const SpasmArgs& args, std::ostream& out) {
  auto cache = open_cache(args.cache);
  BasisRequest req{args.pattern, parse_basis_kind(args.basis), args.anchored, args.min_tw,
                   cache.get()};
  LinearCombination c = build_param(req);
  if (args.json) {
    out << to_json(c) << '\n';
    return kExitOk;
  }
  out << c.label << ": " << c.size() << " terms\n";
  std::size_t g6_width = 8;
  for (const auto& t : c.terms) g6_width = std::max(g6_width, format_graph6(t.graph).size() + 2);
  out << pad("graph6", g6_width) << pad("anchor", 8) << pad("n", 4) << pad("m", 5)
      << pad("tw", 4) << "coefficient\n";
  for (const auto& t : c.terms) {
    out << pad(format_graph6(t.graph), g6_width)
        << pad(t.anchor ? std::to_string(*t.anchor) : "-", 8)
        << pad(std::to_string(t.graph.num_vertices()), 4)
        << pad(std::to_string(t.graph.num_edges()), 5)
        << pad(std::to_string(treewidth_exact(t.graph).width), 4) << to_string(t.coefficient)
        << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// treewidth / enumerate

int cmd_treewidth(const std::string& pattern, bool as_json, bool nice, std::ostream& out) {
  PatternSpec spec = parse_pattern(pattern);
  TreewidthResult r = treewidth_exact(spec.graph);
  if (!as_json) {
    out << r.width << '\n';
    return kExitOk;
  }
  if (nice) {
    out << decomposition_json(to_nice(r.decomposition, spec.graph, spec.anchor)) << '\n';
  } else {
    out << decomposition_json(r.decomposition) << '\n';
  }
  return kExitOk;
}

int cmd_enumerate(int min_n, int max_n, bool connected, bool as_json, std::ostream& out) {
  if (min_n < 0 || max_n < min_n) throw std::invalid_argument("need 0 <= --min <= --max");
  std::vector<Graph> graphs;
  if (connected) {
    graphs = enumerate_connected_graphs(std::max(min_n, 1), max_n);
  } else {
    for (int n = min_n; n <= max_n; ++n) {
      auto layer = enumerate_graphs(n);
      graphs.insert(graphs.end(), layer.begin(), layer.end());
    }
  }
  if (as_json) {
    json arr = json::array();
    for (const Graph& g : graphs) arr.push_back(format_graph6(g));
    out << arr.dump() << '\n';
  } else {
    for (const Graph& g : graphs) out << format_graph6(g) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// count / features

struct FeatureArgs {
  std::string dataset;
  std::string format = "jsonl";
  std::vector<std::string> patterns;
  std::vector<std::string> macros;
  bool include_singleton = false;
  std::string basis = "sub";
  std::string level = "graph";
  bool anchored = false;
  bool auto_anchor = false;
  bool derived = false;
  int min_tw = -1;
  std::string encoding = "raw";
  int pe_dim = 4;
  int jobs = 1;
  std::string cache;
  std::string out;
  std::string out_format = "csv";
  bool allow_wide = false;
};

int cmd_features(const FeatureArgs& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  if (args.jobs < 1) throw std::invalid_argument("--jobs must be at least 1");
  if (args.patterns.empty() && args.macros.empty()) {
    throw std::invalid_argument("give at least one --pattern or --patterns macro");
  }
  FeatureOptions options;
  options.level = parse_level(args.level);
  options.include_derived_counts = args.derived;
  options.auto_anchor = args.auto_anchor;
  options.batch.jobs = args.jobs;
  options.batch.count.allow_wide_plans = args.allow_wide;
  if (args.anchored && options.level != Level::kNode) {
    throw std::invalid_argument("--anchored requires --level node");
  }
  const EncodingSpec encoding = parse_encoding(args.encoding, args.pe_dim);
  const ExportFormat out_format = parse_export_format(args.out_format);

  auto cache = open_cache(args.cache);
  std::vector<LinearCombination> params;
  for (const auto& p : args.patterns) {
    params.push_back(build_param(BasisRequest{p, parse_basis_kind(args.basis), args.anchored,
                                              args.min_tw, cache.get()}));
  }
  for (const auto& m : args.macros) {
    for (auto& c : expand_macro(m, args.include_singleton)) params.push_back(std::move(c));
  }

  FeatureRun run(params, options);
  Dataset ds = load_dataset(args.dataset, parse_dataset_format(args.format));

  std::ofstream file;
  std::ostream* sink = &out;
  if (!args.out.empty()) {
    file.open(args.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << args.out << '\n';
      return kExitFailure;
    }
    sink = &file;
  }

  std::vector<std::pair<std::string, std::string>> failures;
  auto on_failure = [&](const std::string& id, const std::string& message) {
    failures.emplace_back(id, message);
  };
  std::size_t rows = 0;
  std::size_t columns = 0;
  if (is_row_local(encoding)) {
    auto names = encoded_column_names(run.columns(), encoding);
    columns = names.size();
    TableWriter writer(*sink, out_format, std::move(names));
    run.run(
        ds,
        [&](const std::string& id, std::vector<Rational>&& row) {
          writer.write_row(id, encode_row(row, encoding));
          ++rows;
        },
        on_failure);
  } else {
    FeatureMatrix m;
    m.level = options.level;
    m.columns = run.columns();
    run.run(
        ds,
        [&](const std::string& id, std::vector<Rational>&& row) {
          m.row_ids.push_back(id);
          m.rows.push_back(std::move(row));
        },
        on_failure);
    EncodedMatrix e = encode(m, encoding);
    columns = e.columns.size();
    TableWriter writer(*sink, out_format, e.columns);
    for (std::size_t r = 0; r < e.row_ids.size(); ++r) writer.write_row(e.row_ids[r], e.cells[r]);
    rows = e.row_ids.size();
  }
  sink->flush();
  if (!*sink) {
    err << "error: write failed\n";
    return kExitFailure;
  }

  constexpr std::size_t kShownFailures = 20;
  for (std::size_t i = 0; i < failures.size() && i < kShownFailures; ++i) {
    err << "failed " << failures[i].first << ": " << failures[i].second << '\n';
  }
  if (failures.size() > kShownFailures) {
    err << "... and " << failures.size() - kShownFailures << " more failures\n";
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  err << "rows=" << rows << " columns=" << columns << " graphs=" << ds.size()
      << " failed=" << failures.size() << " time=" << std::fixed << std::setprecision(3)
      << seconds << "s\n";
  // Every graph failing is a global failure; isolated failures are not.
  if (ds.size() > 0 && failures.size() == ds.size()) return kExitFailure;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// check

struct CheckArgs {
  int max_pattern = 5;
  int max_host = 6;
  int samples = 200;
  std::uint64_t seed = 1;
  bool verbose = false;
  bool json = false;
  bool inject_fault = false;
};

struct Instance {
  Graph pattern;
  int anchor = 0;
  Graph host;
};

std::string join_counts(const std::vector<std::string>& values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ",";
    s += values[i];
  }
  return s + "]";
}

template <typename T>
std::string render(const std::vector<T>& values) {
  std::vector<std::string> parts;
  for (const auto& v : values) {
    if constexpr (std::is_same_v<T, std::uint64_t>) {
      parts.push_back(std::to_string(v));
    } else {
      parts.push_back(to_string(v));
    }
  }
  return join_counts(parts);
}

const std::vector<std::string> kCheckKinds = {"hom", "sub", "indsub", "hom-node", "sub-node"};

// (engine, oracle) renderings for one comparison.
std::pair<std::string, std::string> compare(const std::string& kind, const Instance& in,
                                            bool fault) {
  HostGraph host(in.host);
  AnchoredGraph anchored(in.pattern, in.anchor);
  if (kind == "hom") {
    Count engine = hom_count(in.pattern, host);
    if (fault) engine += 1;
    return {to_string(engine), std::to_string(oracle::brute_hom(in.pattern, in.host))};
  }
  if (kind == "sub") {
    return {to_string(evaluate(spasm_of(in.pattern), host)),
            std::to_string(oracle::brute_sub(in.pattern, in.host))};
  }
  if (kind == "indsub") {
    return {to_string(evaluate(indsub_expansion(in.pattern), host)),
            std::to_string(oracle::brute_indsub(in.pattern, in.host))};
  }
  if (kind == "hom-node") {
    return {render(hom_count_node(anchored, host).counts),
            render(oracle::brute_hom_node(anchored, in.host))};
  }
  return {render(evaluate_node(anchored_spasm_of(anchored), host)),
          render(oracle::brute_sub_node(anchored, in.host))};
}

bool mismatched(const std::string& kind, const Instance& in, bool fault) {
  auto [engine, expected] = compare(kind, in, fault);
  return engine != expected;
}

Graph without_vertex(const Graph& g, int v) {
  std::vector<int> keep;
  for (int x = 0; x < g.num_vertices(); ++x) {
    if (x != v) keep.push_back(x);
  }
  return g.induced(keep);
}

Graph without_edge(const Graph& g, std::size_t e) {
  auto edges = g.edges();
  std::vector<Edge> rest(edges.begin(), edges.end());
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(e));
  return Graph(g.num_vertices(), std::move(rest));
}

// Greedy shrinking: drop host vertices/edges and pattern vertices/edges while
// the mismatch persists.
Instance shrink(const std::string& kind, Instance in, bool fault) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (int v = 0; v < in.host.num_vertices() && !progress; ++v) {
      Instance t = in;
      t.host = without_vertex(in.host, v);
      if (mismatched(kind, t, fault)) in = t, progress = true;
    }
    for (std::size_t e = 0; e < in.host.edges().size() && !progress; ++e) {
      Instance t = in;
      t.host = without_edge(in.host, e);
      if (mismatched(kind, t, fault)) in = t, progress = true;
    }
    for (int v = 0; v < in.pattern.num_vertices() && in.pattern.num_vertices() > 1 && !progress;
         ++v) {
      if (v == in.anchor) continue;
      Instance t = in;
      t.pattern = without_vertex(in.pattern, v);
      if (v < in.anchor) --t.anchor;
      if (mismatched(kind, t, fault)) in = t, progress = true;
    }
    for (std::size_t e = 0; e < in.pattern.edges().size() && !progress; ++e) {
      Instance t = in;
      t.pattern = without_edge(in.pattern, e);
      if (mismatched(kind, t, fault)) in = t, progress = true;
    }
  }
  return in;
}

Graph random_graph(std::mt19937_64& rng, int max_n) {
  std::uniform_int_distribution<int> size(1, max_n);
  std::uniform_real_distribution<double> density(0.2, 0.8);
  const int n = size(rng);
  const double p = density(rng);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back({u, v});
    }
  }
  return Graph(n, std::move(edges));
}

int cmd_check(const CheckArgs& args, std::ostream& out) {
  if (args.max_pattern < 1 || args.max_host < 1 || args.samples < 0) {
    throw std::invalid_argument("check limits must be positive");
  }
  if (args.max_pattern > oracle::kMaxPatternVertices) {
    throw LimitError("--max-pattern exceeds the oracle limit of " +
                     std::to_string(oracle::kMaxPatternVertices));
  }
  double maps = 1;
  for (int i = 0; i < args.max_pattern; ++i) maps *= args.max_host;
  if (maps > static_cast<double>(oracle::kMaxMaps)) {
    throw LimitError("--max-host^--max-pattern exceeds the oracle budget");
  }

  std::mt19937_64 rng(args.seed);
  long long passed = 0;
  long long failed = 0;
  struct Failure {
    std::string kind;
    Instance instance;
  };
  std::vector<Failure> failures;
  for (int s = 0; s < args.samples; ++s) {
    Instance in;
    in.pattern = random_graph(rng, args.max_pattern);
    in.host = random_graph(rng, args.max_host);
    in.anchor = std::uniform_int_distribution<int>(0, in.pattern.num_vertices() - 1)(rng);
    if (args.verbose && !args.json) {
      out << "instance " << s << ": pattern=" << format_graph6(in.pattern) << "@" << in.anchor
          << " host=" << format_graph6(in.host) << '\n';
    }
    for (const auto& kind : kCheckKinds) {
      if (mismatched(kind, in, args.inject_fault)) {
        ++failed;
        failures.push_back({kind, in});
      } else {
        ++passed;
      }
    }
  }

  constexpr std::size_t kShown = 5;
  json report;
  report["seed"] = args.seed;
  report["samples"] = args.samples;
  report["comparisons"] = passed + failed;
  report["passed"] = passed;
  report["failed"] = failed;
  report["reproducers"] = json::array();
  if (!args.json) {
    out << "check: seed=" << args.seed << " samples=" << args.samples
        << " comparisons=" << passed + failed << " passed=" << passed << " failed=" << failed
        << '\n';
  }
  std::set<std::string> shown;
  for (std::size_t i = 0; i < failures.size() && shown.size() < kShown; ++i) {
    Instance m = shrink(failures[i].kind, failures[i].instance, args.inject_fault);
    auto [engine, expected] = compare(failures[i].kind, m, args.inject_fault);
    const std::string pattern = format_graph6(m.pattern) + "@" + std::to_string(m.anchor);
    const std::string host = format_graph6(m.host);
    if (!shown.insert(failures[i].kind + " " + pattern + " " + host).second) continue;
    if (args.json) {
      report["reproducers"].push_back({{"kind", failures[i].kind},
                                       {"pattern", pattern},
                                       {"host", host},
                                       {"engine", engine},
                                       {"oracle", expected}});
    } else {
      out << "mismatch " << failures[i].kind << ": pattern=" << pattern << " host=" << host
          << " engine=" << engine << " oracle=" << expected << '\n';
    }
  }
  if (args.json) out << report.dump() << '\n';
  return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Homomorphism bases of graph motif parameters and exact count features",
               "homspasm"};
  app.require_subcommand(1);

  SpasmArgs spasm_args;
  auto* spasm = app.add_subcommand("spasm", "Print the homomorphism basis of a pattern");
  spasm->add_option("--pattern", spasm_args.pattern, "Name (C5, P4, K3, S4) or graph6; @i anchors")
      ->required();
  spasm->add_option("--basis", spasm_args.basis, "sub, inj, indsub or hom")
      ->capture_default_str();
  spasm->add_flag("--anchored", spasm_args.anchored, "Anchor at vertex 0 unless @i is given");
  spasm->add_option("--min-tw", spasm_args.min_tw, "Keep only terms of treewidth > k");
  spasm->add_flag("--json", spasm_args.json, "Print the serialized combination");
  spasm->add_option("--cache", spasm_args.cache, "Basis cache directory")
      ->envname("HOMSPASM_CACHE_DIR");
  add_config(spasm);

  std::string tw_pattern;
  bool tw_json = false;
  bool tw_nice = false;
  auto* treewidth = app.add_subcommand("treewidth", "Exact treewidth of a pattern");
  treewidth->add_option("--pattern", tw_pattern, "Name or graph6")->required();
  treewidth->add_flag("--json", tw_json, "Print the decomposition as JSON");
  treewidth->add_flag("--nice", tw_nice, "With --json: print the nice decomposition");
  add_config(treewidth);

  int enum_min = 1;
  int enum_max = 0;
  bool enum_connected = false;
  bool enum_json = false;
  auto* enumerate = app.add_subcommand("enumerate", "List graphs up to isomorphism as graph6");
  enumerate->add_option("--min", enum_min, "Smallest vertex count")->capture_default_str();
  enumerate->add_option("--max", enum_max, "Largest vertex count")->required();
  enumerate->add_flag("--connected", enum_connected, "Connected graphs only");
  enumerate->add_flag("--json", enum_json, "Print a JSON array");
  add_config(enumerate);

  FeatureArgs count_args;
  FeatureArgs feature_args;
  auto add_feature_options = [](CLI::App* sub, FeatureArgs& a, bool with_encoding) {
    sub->add_option("--dataset", a.dataset, "Dataset path")->required();
    sub->add_option("--format", a.format, "jsonl, edgelist_dir or single_edgelist")
        ->capture_default_str();
    sub->add_option("--pattern", a.patterns, "Pattern (repeatable); @i anchors");
    sub->add_option("--patterns", a.macros, "Pattern macro, e.g. omega-con-5 (repeatable)");
    sub->add_flag("--include-singleton", a.include_singleton,
                  "Let omega-con-k include the single vertex");
    sub->add_option("--basis", a.basis, "sub, inj, indsub or hom")->capture_default_str();
    sub->add_option("--level", a.level, "graph or node")->capture_default_str();
    sub->add_flag("--anchored", a.anchored, "Anchor patterns at vertex 0 unless @i is given");
    sub->add_flag("--auto-anchor", a.auto_anchor,
                  "Node level: anchor graph-level terms at canonical vertex 0");
    sub->add_flag("--derived", a.derived, "Add one column per parameter value");
    sub->add_option("--min-tw", a.min_tw, "Keep only terms of treewidth > k");
    if (with_encoding) {
      sub->add_option("--encoding", a.encoding, "raw, log1p, zscore, sinusoidal or a pipeline")
          ->capture_default_str();
      sub->add_option("--pe-dim", a.pe_dim, "Sinusoidal dimension (even)")->capture_default_str();
    }
    sub->add_option("--jobs", a.jobs, "Worker threads")->capture_default_str();
    sub->add_option("--cache", a.cache, "Basis cache directory")->envname("HOMSPASM_CACHE_DIR");
    sub->add_option("--out", a.out, "Output file (default: standard output)");
    sub->add_option("--out-format", a.out_format, "csv or jsonl")->capture_default_str();
    sub->add_flag("--allow-wide", a.allow_wide, "Disable the width guard on huge hosts");
    add_config(sub);
  };
  auto* count = app.add_subcommand("count", "Exact homomorphism counts for a dataset");
  add_feature_options(count, count_args, false);
  auto* features = app.add_subcommand("features", "Encoded feature matrix for a dataset");
  add_feature_options(features, feature_args, true);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Compare the engine with brute force");
  check->add_option("--max-pattern", check_args.max_pattern, "Largest pattern")
      ->capture_default_str();
  check->add_option("--max-host", check_args.max_host, "Largest host")->capture_default_str();
  check->add_option("--samples", check_args.samples, "Random instances")->capture_default_str();
  check->add_option("--seed", check_args.seed, "Random seed")->capture_default_str();
  check->add_flag("--verbose", check_args.verbose, "List every instance");
  check->add_flag("--json", check_args.json, "Print a JSON report");
  check->add_flag("--inject-fault", check_args.inject_fault)->group("");
  add_config(check);

  try {
    std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
    try {
      args = expand_config(std::move(args));
    } catch (const ParseError& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (spasm->parsed()) return cmd_spasm(spasm_args, out);
    if (treewidth->parsed()) return cmd_treewidth(tw_pattern, tw_json, tw_nice, out);
    if (enumerate->parsed()) {
      return cmd_enumerate(enum_min, enum_max, enum_connected, enum_json, out);
    }
    if (count->parsed()) return cmd_features(count_args, out, err);
    if (features->parsed()) return cmd_features(feature_args, out, err);
    if (check->parsed()) return cmd_check(check_args, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LimitError& e) {
    err << "limit: " << e.what() << '\n';
    return kExitLimit;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace homspasm::cli
