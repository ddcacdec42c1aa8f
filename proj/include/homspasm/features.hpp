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

#ifndef HOMSPASM_FEATURES_HPP_
#define HOMSPASM_FEATURES_HPP_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "homspasm/homcount.hpp"
#include "homspasm/rational.hpp"
#include "homspasm/spasm.hpp"

namespace homspasm {

// ---------------------------------------------------------------------------
// Datasets

enum class DatasetFormat { kJsonl, kEdgelistDir, kSingleEdgelist };
DatasetFormat parse_dataset_format(std::string_view text);

struct Dataset {
  std::vector<std::string> ids;  // unique, in source order
  std::vector<HostGraph> hosts;
  std::string source;

  std::size_t size() const { return hosts.size(); }
};

// jsonl: one {"id", "num_nodes", "edges": [[u,v],...]} object per line.
// edgelist: "u v" per line, '#' comments; vertex count is max id + 1.
// Directory mode reads every <id>.edges file in file-name order.
// Malformed input throws ParseError naming the file and line.
Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format);
Dataset parse_jsonl_dataset(std::istream& in, const std::string& source);
HostGraph parse_edgelist(std::istream& in, const std::string& source);

// ---------------------------------------------------------------------------
// Feature matrices

struct ColumnDescriptor {
  enum class Kind { kHom, kDerived };
  Kind kind = Kind::kHom;
  std::string name;        // CSV header entry
  std::string key;         // canonical key (hom) or parameter label (derived)
  std::optional<int> anchor;
  std::string provenance;  // "label=coefficient;..." for hom columns
};

struct FeatureOptions {
  Level level = Level::kGraph;
  bool include_derived_counts = false;
  // Node level only: anchor graph-level parameters' terms at canonical
  // vertex 0, so per-vertex values sum to the graph-level value.
  bool auto_anchor = false;
  BatchOptions batch;
};

// Exact counts. Rows are graph ids (graph level) or "<id>:<vertex>" (node
// level); hom columns come first in term order, then derived columns in
// parameter order.
struct FeatureMatrix {
  Level level = Level::kGraph;
  std::vector<std::string> row_ids;
  std::vector<ColumnDescriptor> columns;
  std::vector<std::vector<Rational>> rows;
  std::vector<std::pair<std::string, std::string>> failures;  // (graph id, message)
};

// Anchors every term at canonical vertex 0, turning a graph-level Hom
// combination into a node-level one.
LinearCombination anchor_terms(const LinearCombination& c);

// Streams rows in dataset order; used directly for datasets too large to
// hold as a matrix.
class FeatureRun {
 public:
  // Parameters are converted to the Hom basis first.
  FeatureRun(const std::vector<LinearCombination>& params, const FeatureOptions& options);

  const std::vector<ColumnDescriptor>& columns() const { return columns_; }
  const BatchEvaluator& evaluator() const { return evaluator_; }

  using RowSink = std::function<void(const std::string& row_id, std::vector<Rational>&& row)>;
  using FailureSink = std::function<void(const std::string& id, const std::string& message)>;
  void run(const Dataset& ds, const RowSink& rows, const FailureSink& failures) const;

 private:
  FeatureOptions options_;
  BatchEvaluator evaluator_;
  std::vector<ColumnDescriptor> columns_;
};

FeatureMatrix compute_features(const Dataset& ds, const std::vector<LinearCombination>& params,
                               const FeatureOptions& options);

// ---------------------------------------------------------------------------
// Encodings

enum class EncodingKind { kRaw, kLog1p, kZscore, kSinusoidal };

// Stages apply left to right, e.g. {log1p, sinusoidal}. raw may only appear
// alone. pe_dim must be even and positive.
struct EncodingSpec {
  std::vector<EncodingKind> stages = {EncodingKind::kRaw};
  int pe_dim = 4;
};
// "raw", "log1p", "zscore", "sinusoidal" or a comma-separated pipeline.
EncodingSpec parse_encoding(std::string_view text, int pe_dim);

// Cells are exact decimal strings for raw, otherwise shortest round-trip
// renderings of doubles.
struct EncodedMatrix {
  std::vector<std::string> row_ids;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> cells;

  double value(std::size_t row, std::size_t col) const;
};

EncodedMatrix encode(const FeatureMatrix& m, const EncodingSpec& spec);

// Row-local stages (everything except zscore) on one row of exact values.
std::vector<std::string> encode_row(const std::vector<Rational>& row, const EncodingSpec& spec);
std::vector<std::string> encoded_column_names(const std::vector<ColumnDescriptor>& columns,
                                              const EncodingSpec& spec);
bool is_row_local(const EncodingSpec& spec);

std::string format_double(double x);
std::string format_value(const Rational& r);  // "p" or "p/q"

// ---------------------------------------------------------------------------
// Export

enum class ExportFormat { kCsv, kJsonl };
ExportFormat parse_export_format(std::string_view text);

// RFC 4180 field quoting.
std::string csv_escape(std::string_view field);
std::vector<std::string> parse_csv_line(std::string_view line);

// Incremental writer: header first, then rows. CSV header is
// "row_id,<column>,..."; JSONL writes one object per row.
class TableWriter {
 public:
  TableWriter(std::ostream& out, ExportFormat format, std::vector<std::string> columns);
  void write_row(const std::string& row_id, const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  ExportFormat format_;
  std::vector<std::string> columns_;
};

void export_matrix(const FeatureMatrix& m, const std::filesystem::path& path, ExportFormat format);
void export_matrix(const EncodedMatrix& m, const std::filesystem::path& path, ExportFormat format);

// Reads an export back; cells stay as written.
struct LoadedTable {
  std::vector<std::string> columns;
  std::vector<std::string> row_ids;
  std::vector<std::vector<std::string>> cells;
};
LoadedTable load_table(const std::filesystem::path& path, ExportFormat format);

}  // namespace homspasm

#endif  // HOMSPASM_FEATURES_HPP_
