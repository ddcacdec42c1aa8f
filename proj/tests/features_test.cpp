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

#include "homspasm/features.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "homspasm/cache.hpp"
#include "homspasm/canonical.hpp"
#include "homspasm/errors.hpp"
#include "test_util.hpp"

namespace homspasm {
namespace {

Dataset dataset_of(const std::vector<Graph>& graphs) {
  Dataset ds;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    ds.ids.push_back("g" + std::to_string(i));
    ds.hosts.emplace_back(graphs[i]);
  }
  return ds;
}

std::size_t column_of(const FeatureMatrix& m, const std::string& key) {
  for (std::size_t c = 0; c < m.columns.size(); ++c) {
    if (m.columns[c].key == key) return c;
  }
  ADD_FAILURE() << "no column " << key;
  return 0;
}

// ---------------------------------------------------------------------------
// Ingestion

TEST(DatasetTest, JsonlLine) {
  std::istringstream in(R"({"id":"g0","num_nodes":3,"edges":[[0,1],[1,2]]})"
                        "\n\n"
                        R"({"id":"g1","num_nodes":2,"edges":[]})");
  Dataset ds = parse_jsonl_dataset(in, "mem");
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.ids, (std::vector<std::string>{"g0", "g1"}));
  EXPECT_EQ(ds.hosts[0].num_vertices(), 3);
  EXPECT_EQ(ds.hosts[0].num_edges(), 2);
  EXPECT_TRUE(ds.hosts[0].has_edge(2, 1));
  EXPECT_EQ(ds.hosts[1].num_edges(), 0);
}

void expect_parse_error(const std::string& text, const std::string& needle) {
  std::istringstream in(text);
  try {
    parse_jsonl_dataset(in, "data.jsonl");
    ADD_FAILURE() << "no error for " << text;
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

TEST(DatasetTest, JsonlErrorsNameTheLine) {
  const std::string ok = R"({"id":"a","num_nodes":2,"edges":[[0,1]]})";
  expect_parse_error(ok + "\n" + R"({"id":"b","num_nodes":2,"edges":[[0,2]]})", "data.jsonl:2");
  expect_parse_error(ok + "\n" + ok, "duplicate id");
  expect_parse_error(R"({"id":"a","num_nodes":2,"edges":[[0,1],[1,0]]})", "data.jsonl:1");
  expect_parse_error(R"({"id":"a","num_nodes":2,"edges":[[1,1]]})", "data.jsonl:1");
  expect_parse_error(R"({"id":"a","num_nodes":2,"edges":[[0]]})", "data.jsonl:1");
  expect_parse_error(R"({"id":"a","edges":[]})", "data.jsonl:1");
  expect_parse_error("{not json", "data.jsonl:1");
}

TEST(DatasetTest, Edgelist) {
  std::istringstream in("# triangle\n0 1\n1 2\n\n2 0\n");
  HostGraph h = parse_edgelist(in, "tri.edges");
  EXPECT_EQ(h.num_vertices(), 3);
  EXPECT_EQ(h.num_edges(), 3);
  std::istringstream empty("");
  EXPECT_EQ(parse_edgelist(empty, "e").num_vertices(), 0);
}

TEST(DatasetTest, EdgelistErrors) {
  std::istringstream three("0 1\n1 2 3\n");
  EXPECT_THROW(parse_edgelist(three, "x"), ParseError);
  std::istringstream loop("0 1\n2 2\n");
  try {
    parse_edgelist(loop, "x");
    ADD_FAILURE();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("x:2"), std::string::npos);
  }
  std::istringstream dup("0 1\n1 0\n");
  EXPECT_THROW(parse_edgelist(dup, "x"), ParseError);
  std::istringstream neg("0 -1\n");
  EXPECT_THROW(parse_edgelist(neg, "x"), ParseError);
}

TEST(DatasetTest, LoadsFilesAndDirectories) {
  testing::TempDir dir;
  std::ofstream(dir.path() / "b.edges") << "0 1\n";
  std::ofstream(dir.path() / "a.edges") << "0 1\n1 2\n2 0\n";
  std::ofstream(dir.path() / "notes.txt") << "ignored";
  Dataset ds = load_dataset(dir.path(), DatasetFormat::kEdgelistDir);
  EXPECT_EQ(ds.ids, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(ds.hosts[0].num_edges(), 3);

  Dataset single = load_dataset(dir.path() / "a.edges", DatasetFormat::kSingleEdgelist);
  EXPECT_EQ(single.ids, std::vector<std::string>{"a"});

  std::ofstream(dir.path() / "d.jsonl") << R"({"id":"x","num_nodes":1,"edges":[]})" << "\n";
  EXPECT_EQ(load_dataset(dir.path() / "d.jsonl", DatasetFormat::kJsonl).size(), 1u);
  EXPECT_THROW(load_dataset(dir.path() / "missing.jsonl", DatasetFormat::kJsonl), ParseError);
  EXPECT_EQ(parse_dataset_format("edgelist_dir"), DatasetFormat::kEdgelistDir);
  EXPECT_THROW(parse_dataset_format("xml"), ParseError);
}

// ---------------------------------------------------------------------------
// Feature computation

TEST(FeaturesTest, CycleHost) {
  FeatureOptions options;
  options.include_derived_counts = true;
  auto m = compute_features(dataset_of({cycle_graph(5)}), {spasm_of(cycle_graph(5))}, options);
  ASSERT_EQ(m.rows.size(), 1u);
  ASSERT_EQ(m.columns.size(), 4u);
  Graph paw(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  EXPECT_EQ(m.rows[0][column_of(m, canonical_key(cycle_graph(5)))], 10);
  EXPECT_EQ(m.rows[0][column_of(m, canonical_key(paw))], 0);
  EXPECT_EQ(m.rows[0][column_of(m, canonical_key(complete_graph(3)))], 0);
  EXPECT_EQ(m.columns[3].kind, ColumnDescriptor::Kind::kDerived);
  EXPECT_EQ(m.rows[0][3], 1);
  EXPECT_NE(m.columns[0].provenance.find("=1/2"), std::string::npos);
}

TEST(FeaturesTest, CliqueDerivedColumn) {
  FeatureOptions options;
  options.include_derived_counts = true;
  auto m = compute_features(dataset_of({complete_graph(5)}), {spasm_of(complete_graph(4))}, options);
  ASSERT_EQ(m.columns.size(), 2u);
  EXPECT_EQ(m.rows[0][1], 5);
}

TEST(FeaturesTest, NodeLevelAnchoredCycle) {
  FeatureOptions options;
  options.level = Level::kNode;
  options.include_derived_counts = true;
  auto m = compute_features(dataset_of({cycle_graph(4)}),
                            {anchored_spasm_of(AnchoredGraph(cycle_graph(4), 0))}, options);
  ASSERT_EQ(m.rows.size(), 4u);
  EXPECT_EQ(m.row_ids[2], "g0:2");
  for (const auto& row : m.rows) EXPECT_EQ(row.back(), 1);
}

TEST(FeaturesTest, LevelMismatchNeedsAutoAnchor) {
  FeatureOptions options;
  options.level = Level::kNode;
  EXPECT_THROW(FeatureRun({spasm_of(cycle_graph(5))}, options), std::invalid_argument);
  options.auto_anchor = true;
  FeatureRun run({spasm_of(cycle_graph(5))}, options);
  EXPECT_EQ(run.columns().size(), 3u);
  for (const auto& c : run.columns()) EXPECT_EQ(c.anchor, 0);
}

// Summing auto-anchored per-vertex columns recovers the graph-level columns.
TEST(FeaturesTest, NodeSumsMatchGraphLevel) {
  std::mt19937_64 rng(4);
  std::vector<Graph> graphs;
  for (int i = 0; i < 10; ++i) graphs.push_back(testing::random_graph(rng, 9, 0.4));
  Dataset ds = dataset_of(graphs);
  std::vector<LinearCombination> params = {spasm_of(path_graph(5)), spasm_of(cycle_graph(6))};
  FeatureOptions graph_options;
  FeatureOptions node_options;
  node_options.level = Level::kNode;
  node_options.auto_anchor = true;
  auto g = compute_features(ds, params, graph_options);
  auto n = compute_features(ds, params, node_options);
  ASSERT_EQ(g.columns.size(), n.columns.size());
  for (std::size_t r = 0; r < g.rows.size(); ++r) {
    for (std::size_t c = 0; c < g.columns.size(); ++c) {
      Rational sum = 0;
      for (int v = 0; v < 9; ++v) sum += n.rows[r * 9 + v][c];
      EXPECT_EQ(sum, g.rows[r][c]);
    }
  }
}

TEST(FeaturesTest, DeterministicAcrossJobs) {
  std::mt19937_64 rng(5);
  std::vector<Graph> graphs;
  for (int i = 0; i < 60; ++i) graphs.push_back(testing::random_graph(rng, 5 + i % 6, 0.4));
  Dataset ds = dataset_of(graphs);
  testing::TempDir dir;
  std::vector<std::string> contents;
  for (int jobs : {1, 2, 5}) {
    FeatureOptions options;
    options.include_derived_counts = true;
    options.batch.jobs = jobs;
    options.batch.chunk_size = 8;
    auto m = compute_features(ds, {spasm_of(cycle_graph(6))}, options);
    auto path = dir.path() / ("out" + std::to_string(jobs) + ".csv");
    export_matrix(m, path, ExportFormat::kCsv);
    std::ifstream in(path);
    contents.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  EXPECT_EQ(contents[0], contents[1]);
  EXPECT_EQ(contents[0], contents[2]);
}

// ---------------------------------------------------------------------------
// Encodings

FeatureMatrix column_matrix(const std::vector<long long>& values) {
  FeatureMatrix m;
  ColumnDescriptor c;
  c.name = "x";
  m.columns.push_back(c);
  for (std::size_t i = 0; i < values.size(); ++i) {
    m.row_ids.push_back("r" + std::to_string(i));
    m.rows.push_back({Rational(values[i])});
  }
  return m;
}

TEST(EncodingTest, SinusoidalOfZero) {
  auto e = encode(column_matrix({0, 5}), parse_encoding("sinusoidal", 4));
  ASSERT_EQ(e.columns.size(), 4u);
  EXPECT_EQ(e.cells[0], (std::vector<std::string>{"0", "1", "0", "1"}));
  EXPECT_DOUBLE_EQ(e.value(1, 0), std::sin(5.0));
  EXPECT_DOUBLE_EQ(e.value(1, 2), std::sin(5.0 / 100.0));  // 10000^(2/4)
  EXPECT_DOUBLE_EQ(e.value(1, 3), std::cos(5.0 / 100.0));
}

TEST(EncodingTest, SinusoidalIsBounded) {
  auto e = encode(column_matrix({0, 1, 123456789, 99999999999LL}), parse_encoding("pe", 8));
  for (std::size_t r = 0; r < e.cells.size(); ++r) {
    for (std::size_t c = 0; c < e.columns.size(); ++c) {
      EXPECT_LE(std::abs(e.value(r, c)), 1.0);
    }
  }
}

TEST(EncodingTest, Log1p) {
  auto e = encode(column_matrix({0, 1}), parse_encoding("log1p", 4));
  EXPECT_EQ(e.cells[0][0], "0");
  EXPECT_DOUBLE_EQ(e.value(1, 0), std::log(2.0));
}

// Population standard deviation of (1,2,3) is sqrt(2/3).
TEST(EncodingTest, ZscoreUsesPopulationStd) {
  auto e = encode(column_matrix({1, 2, 3}), parse_encoding("zscore", 4));
  const double z = 1.0 / std::sqrt(2.0 / 3.0);
  EXPECT_DOUBLE_EQ(e.value(0, 0), -z);
  EXPECT_DOUBLE_EQ(e.value(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(e.value(2, 0), z);
  auto constant = encode(column_matrix({7, 7}), parse_encoding("zscore", 4));
  EXPECT_DOUBLE_EQ(constant.value(0, 0), 0.0);
  EXPECT_THROW(encode(column_matrix({1}), parse_encoding("zscore", 4)), std::invalid_argument);
}

TEST(EncodingTest, Pipelines) {
  auto spec = parse_encoding("log1p,sinusoidal", 2);
  EXPECT_EQ(spec.stages.size(), 2u);
  EXPECT_TRUE(is_row_local(spec));
  EXPECT_FALSE(is_row_local(parse_encoding("log1p,zscore", 2)));
  auto e = encode(column_matrix({0, 3}), spec);
  EXPECT_DOUBLE_EQ(e.value(1, 0), std::sin(std::log1p(3.0)));
  EXPECT_THROW(parse_encoding("raw,log1p", 4), ParseError);
  EXPECT_THROW(parse_encoding("sinusoidal", 3), ParseError);
  EXPECT_THROW(parse_encoding("sinusoidal", 0), ParseError);
  EXPECT_THROW(parse_encoding("cube", 4), ParseError);
}

TEST(EncodingTest, RawIsExact) {
  FeatureMatrix m = column_matrix({0});
  m.rows[0][0] = Rational(Count("123456789012345678901234567890"));
  auto e = encode(m, EncodingSpec{});
  EXPECT_EQ(e.cells[0][0], "123456789012345678901234567890");
  EXPECT_EQ(encode_row({Rational(1, 3)}, EncodingSpec{})[0], "1/3");
}

// ---------------------------------------------------------------------------
// Export

TEST(ExportTest, CsvEscaping) {
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(parse_csv_line("x,\"a,b\",\"q\"\"\""), (std::vector<std::string>{"x", "a,b", "q\""}));
  EXPECT_EQ(parse_csv_line(""), std::vector<std::string>{""});
  EXPECT_THROW(parse_csv_line("\"open"), ParseError);
}

TEST(ExportTest, RoundTrip) {
  FeatureMatrix m;
  for (const char* name : {"hom:Bw", "a,b", "Sub(C5)"}) {
    ColumnDescriptor c;
    c.name = name;
    m.columns.push_back(c);
  }
  m.row_ids = {"g0", "g,1", "g2"};
  m.rows = {{Rational(1), Rational(0), Rational(-5, 2)},
            {Rational(Count("98765432109876543210")), Rational(3), Rational(7)},
            {Rational(0), Rational(0), Rational(1, 3)}};
  testing::TempDir dir;
  for (ExportFormat format : {ExportFormat::kCsv, ExportFormat::kJsonl}) {
    auto path = dir.path() / "m.out";
    export_matrix(m, path, format);
    LoadedTable t = load_table(path, format);
    EXPECT_EQ(t.row_ids, m.row_ids);
    ASSERT_EQ(t.columns.size(), 3u);
    EXPECT_EQ(t.columns[1], "a,b");
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 3; ++c) {
        EXPECT_EQ(parse_rational(t.cells[r][c]), m.rows[r][c]);
      }
    }
  }
  std::ifstream in(dir.path() / "m.out");
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first.rfind("{\"row_id\":\"g0\"", 0), 0u);
}

TEST(ExportTest, UnwritablePath) {
  EXPECT_THROW(export_matrix(column_matrix({1}), "/nonexistent-dir/x.csv", ExportFormat::kCsv),
               std::runtime_error);
}

// ---------------------------------------------------------------------------
// Cache

TEST(CacheTest, Sha256) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(CacheTest, PutThenGet) {
  testing::TempDir dir;
  BasisCache cache(dir.path());
  const std::string key = canonical_key(cycle_graph(8));
  EXPECT_FALSE(cache.get(key, "sub-graph").has_value());
  auto c8 = spasm_of(cycle_graph(8));
  cache.put(key, "sub-graph", c8);
  EXPECT_TRUE(std::filesystem::exists(cache.path_for(key, "sub-graph")));
  auto hit = cache.get(key, "sub-graph");
  ASSERT_TRUE(hit.has_value());
  ASSERT_EQ(hit->size(), 35u);
  for (std::size_t i = 0; i < 35; ++i) {
    EXPECT_EQ(hit->terms[i].key, c8.terms[i].key);
    EXPECT_EQ(hit->terms[i].coefficient, c8.terms[i].coefficient);
  }
  EXPECT_FALSE(cache.get(key, "inj-graph").has_value());
}

TEST(CacheTest, AnchoredKeysMapToFiles) {
  testing::TempDir dir;
  BasisCache cache(dir.path());
  AnchoredGraph c4(cycle_graph(4), 0);
  cache.put(canonical_key(c4), "sub-node", anchored_spasm_of(c4));
  auto hit = cache.get(canonical_key(c4), "sub-node");
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(hit->size(), 4u);
  EXPECT_EQ(hit->level, Level::kNode);
}

TEST(CacheTest, CorruptionIsAMiss) {
  testing::TempDir dir;
  BasisCache cache(dir.path());
  const std::string key = canonical_key(cycle_graph(5));
  cache.put(key, "sub-graph", spasm_of(cycle_graph(5)));
  const auto path = cache.path_for(key, "sub-graph");
  std::string text;
  {
    std::ifstream in(path);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  // Change a coefficient without updating the checksum.
  auto pos = text.find("\"10\"");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 4, "\"11\"");
  std::ofstream(path) << text;
  EXPECT_FALSE(cache.get(key, "sub-graph").has_value());
  std::ofstream(path) << "garbage";
  EXPECT_FALSE(cache.get(key, "sub-graph").has_value());

  int computed = 0;
  auto c = cache.get_or_compute(key, "sub-graph", [&] {
    ++computed;
    return spasm_of(cycle_graph(5));
  });
  EXPECT_EQ(computed, 1);
  EXPECT_EQ(c.size(), 3u);
  cache.get_or_compute(key, "sub-graph", [&] {
    ++computed;
    return spasm_of(cycle_graph(5));
  });
  EXPECT_EQ(computed, 1);
}

}  // namespace
}  // namespace homspasm
