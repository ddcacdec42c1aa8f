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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "homspasm/errors.hpp"
#include "homspasm/graph6.hpp"
#include "json.hpp"

namespace homspasm {
namespace {

std::string where(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

HostGraph build_host(int n, std::vector<Edge> edges, const std::string& prefix) {
  try {
    return HostGraph(Graph(n, std::move(edges)));
  } catch (const std::invalid_argument& e) {
    throw ParseError(prefix + e.what());
  }
}

std::string term_column_name(const BasisTerm& t) {
  std::string name = "hom:" + format_graph6(t.graph);
  if (t.anchor) name += "@" + std::to_string(*t.anchor);
  return name;
}

std::vector<std::vector<double>> to_doubles(const FeatureMatrix& m) {
  std::vector<std::vector<double>> out;
  out.reserve(m.rows.size());
  for (const auto& row : m.rows) {
    auto& r = out.emplace_back();
    r.reserve(row.size());
    for (const Rational& x : row) r.push_back(to_double(x));
  }
  return out;
}

void apply_log1p(std::vector<double>& row) {
  for (double& x : row) x = std::log1p(x);
}

std::vector<double> apply_sinusoidal(const std::vector<double>& row, int pe_dim) {
  std::vector<double> out;
  out.reserve(row.size() * pe_dim);
  for (double x : row) {
    for (int i = 0; i < pe_dim / 2; ++i) {
      const double scaled = x / std::pow(10000.0, 2.0 * i / pe_dim);
      out.push_back(std::sin(scaled));
      out.push_back(std::cos(scaled));
    }
  }
  return out;
}

// Population standard deviation; constant columns are only centered.
void apply_zscore(std::vector<std::vector<double>>& rows) {
  if (rows.size() < 2) throw std::invalid_argument("zscore needs at least 2 rows");
  const std::size_t cols = rows.front().size();
  const double count = static_cast<double>(rows.size());
  for (std::size_t c = 0; c < cols; ++c) {
    double mean = 0;
    for (const auto& r : rows) mean += r[c];
    mean /= count;
    double var = 0;
    for (const auto& r : rows) var += (r[c] - mean) * (r[c] - mean);
    double sd = std::sqrt(var / count);
    if (sd == 0) sd = 1;
    for (auto& r : rows) r[c] = (r[c] - mean) / sd;
  }
}

void validate_spec(const EncodingSpec& spec) {
  if (spec.stages.empty()) throw std::invalid_argument("empty encoding pipeline");
  const bool has_raw = std::count(spec.stages.begin(), spec.stages.end(), EncodingKind::kRaw) > 0;
  if (has_raw && spec.stages.size() > 1) {
    throw std::invalid_argument("raw encoding cannot be combined with other stages");
  }
  if (std::count(spec.stages.begin(), spec.stages.end(), EncodingKind::kSinusoidal) > 0 &&
      (spec.pe_dim <= 0 || spec.pe_dim % 2 != 0)) {
    throw std::invalid_argument("pe_dim must be a positive even number");
  }
}

std::vector<std::string> format_doubles(const std::vector<double>& row) {
  std::vector<std::string> out;
  out.reserve(row.size());
  for (double x : row) out.push_back(format_double(x));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Datasets

DatasetFormat parse_dataset_format(std::string_view text) {
  if (text == "jsonl") return DatasetFormat::kJsonl;
  if (text == "edgelist_dir") return DatasetFormat::kEdgelistDir;
  if (text == "single_edgelist" || text == "edgelist") return DatasetFormat::kSingleEdgelist;
  throw ParseError("unknown dataset format '" + std::string(text) + "'");
}

Dataset parse_jsonl_dataset(std::istream& in, const std::string& source) {
  Dataset ds;
  ds.source = source;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string prefix = where(source, lineno);
    std::string id;
    int n = 0;
    std::vector<Edge> edges;
    try {
      auto j = nlohmann::json::parse(line);
      id = j.at("id").get<std::string>();
      n = j.at("num_nodes").get<int>();
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw ParseError(prefix + "edge must be [u, v]");
        edges.push_back({e[0].get<int>(), e[1].get<int>()});
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(prefix + e.what());
    }
    if (n < 0) throw ParseError(prefix + "negative num_nodes");
    if (!seen.insert(id).second) throw ParseError(prefix + "duplicate id '" + id + "'");
    ds.hosts.push_back(build_host(n, std::move(edges), prefix));
    ds.ids.push_back(std::move(id));
  }
  return ds;
}

HostGraph parse_edgelist(std::istream& in, const std::string& source) {
  std::vector<Edge> edges;
  int max_vertex = -1;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long u = -1;
    long long v = -1;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra)) {
      throw ParseError(where(source, lineno) + "expected two vertex ids");
    }
    if (u < 0 || v < 0 || u > 2'000'000'000 || v > 2'000'000'000) {
      throw ParseError(where(source, lineno) + "vertex id out of range");
    }
    if (u == v) throw ParseError(where(source, lineno) + "self-loop at vertex " + std::to_string(u));
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
    max_vertex = std::max<int>(max_vertex, static_cast<int>(std::max(u, v)));
  }
  // Report duplicates with the line of the repeat.
  std::map<std::pair<int, int>, std::size_t> first_seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto key = std::minmax(edges[i].u, edges[i].v);
    if (!first_seen.emplace(key, i).second) {
      throw ParseError(source + ": duplicate edge (" + std::to_string(key.first) + "," +
                       std::to_string(key.second) + ")");
    }
  }
  return build_host(max_vertex + 1, std::move(edges), source + ": ");
}

Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format) {
  Dataset ds;
  ds.source = path.string();
  switch (format) {
    case DatasetFormat::kJsonl: {
      std::ifstream in(path);
      if (!in) throw ParseError("cannot open " + path.string());
      return parse_jsonl_dataset(in, path.string());
    }
    case DatasetFormat::kSingleEdgelist: {
      std::ifstream in(path);
      if (!in) throw ParseError("cannot open " + path.string());
      ds.ids.push_back(path.stem().string());
      ds.hosts.push_back(parse_edgelist(in, path.string()));
      return ds;
    }
    case DatasetFormat::kEdgelistDir: {
      if (!std::filesystem::is_directory(path)) {
        throw ParseError(path.string() + " is not a directory");
      }
      std::vector<std::filesystem::path> files;
      for (const auto& entry : std::filesystem::directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".edges") {
          files.push_back(entry.path());
        }
      }
      std::sort(files.begin(), files.end());
      for (const auto& file : files) {
        std::ifstream in(file);
        if (!in) throw ParseError("cannot open " + file.string());
        ds.ids.push_back(file.stem().string());
        ds.hosts.push_back(parse_edgelist(in, file.string()));
      }
      return ds;
    }
  }
  return ds;
}

// ---------------------------------------------------------------------------
// Feature computation

LinearCombination anchor_terms(const LinearCombination& c) {
  if (c.basis != BasisKind::kHom) throw std::invalid_argument("anchor_terms needs the Hom basis");
  if (c.level == Level::kNode) return c;
  LinearCombination out;
  out.basis = BasisKind::kHom;
  out.level = Level::kNode;
  out.label = c.label;
  for (const BasisTerm& t : c.terms) {
    out.terms.push_back(make_term(AnchoredGraph(t.graph, 0), t.coefficient));
  }
  return simplify(out);
}

namespace {

std::vector<LinearCombination> prepare_params(const std::vector<LinearCombination>& params,
                                              const FeatureOptions& options) {
  std::vector<LinearCombination> out;
  for (const auto& p : params) {
    LinearCombination hom = to_hom_basis(p);
    if (hom.level != options.level) {
      if (options.level == Level::kNode && options.auto_anchor) {
        hom = anchor_terms(hom);
      } else {
        throw std::invalid_argument("parameter '" + p.label + "' is " +
                                    std::string(to_string(p.level)) + "-level but features are " +
                                    std::string(to_string(options.level)) + "-level");
      }
    }
    out.push_back(std::move(hom));
  }
  return out;
}

}  // namespace

FeatureRun::FeatureRun(const std::vector<LinearCombination>& params,
                       const FeatureOptions& options)
    : options_(options), evaluator_(prepare_params(params, options), options.level) {
  for (const BasisTerm& t : evaluator_.terms()) {
    ColumnDescriptor col;
    col.kind = ColumnDescriptor::Kind::kHom;
    col.name = term_column_name(t);
    col.key = t.key;
    col.anchor = t.anchor;
    for (const auto& p : evaluator_.params()) {
      if (const BasisTerm* use = p.find(t.key)) {
        if (!col.provenance.empty()) col.provenance += ";";
        col.provenance += p.label + "=" + format_value(use->coefficient);
      }
    }
    columns_.push_back(std::move(col));
  }
  if (options_.include_derived_counts) {
    std::map<std::string, int> seen;
    for (const auto& p : evaluator_.params()) {
      ColumnDescriptor col;
      col.kind = ColumnDescriptor::Kind::kDerived;
      col.key = p.label;
      col.name = p.label.empty() ? "param" : p.label;
      if (int dup = seen[col.name]++; dup > 0) col.name += "#" + std::to_string(dup);
      columns_.push_back(std::move(col));
    }
  }
}

void FeatureRun::run(const Dataset& ds, const RowSink& rows, const FailureSink& failures) const {
  evaluator_.run(ds.hosts, options_.batch, [&](BatchRow&& row) {
    const std::string& id = ds.ids[row.host_index];
    if (row.error) {
      failures(id, *row.error);
      return;
    }
    if (options_.level == Level::kGraph) {
      std::vector<Rational> cells;
      cells.reserve(columns_.size());
      for (Count& c : row.hom) cells.emplace_back(std::move(c));
      if (options_.include_derived_counts) {
        for (Rational& d : row.derived) cells.push_back(std::move(d));
      }
      rows(id, std::move(cells));
      return;
    }
    const int n = ds.hosts[row.host_index].num_vertices();
    for (int v = 0; v < n; ++v) {
      std::vector<Rational> cells;
      cells.reserve(columns_.size());
      for (auto& col : row.node_hom) cells.emplace_back(std::move(col[v]));
      if (options_.include_derived_counts) {
        for (auto& col : row.node_derived) cells.push_back(std::move(col[v]));
      }
      rows(id + ":" + std::to_string(v), std::move(cells));
    }
  });
}

FeatureMatrix compute_features(const Dataset& ds, const std::vector<LinearCombination>& params,
                               const FeatureOptions& options) {
  FeatureRun run(params, options);
  FeatureMatrix m;
  m.level = options.level;
  m.columns = run.columns();
  run.run(
      ds,
      [&](const std::string& id, std::vector<Rational>&& row) {
        m.row_ids.push_back(id);
        m.rows.push_back(std::move(row));
      },
      [&](const std::string& id, const std::string& message) {
        m.failures.emplace_back(id, message);
      });
  return m;
}

// ---------------------------------------------------------------------------
// Encodings

EncodingSpec parse_encoding(std::string_view text, int pe_dim) {
  EncodingSpec spec;
  spec.stages.clear();
  spec.pe_dim = pe_dim;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    std::string_view stage = text.substr(start, comma == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : comma - start);
    if (stage == "raw") {
      spec.stages.push_back(EncodingKind::kRaw);
    } else if (stage == "log1p") {
      spec.stages.push_back(EncodingKind::kLog1p);
    } else if (stage == "zscore") {
      spec.stages.push_back(EncodingKind::kZscore);
    } else if (stage == "sinusoidal" || stage == "pe") {
      spec.stages.push_back(EncodingKind::kSinusoidal);
    } else {
      throw ParseError("unknown encoding '" + std::string(stage) + "'");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  try {
    validate_spec(spec);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return spec;
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

std::string format_value(const Rational& r) { return to_string(r); }

double EncodedMatrix::value(std::size_t row, std::size_t col) const {
  return std::stod(cells.at(row).at(col));
}

bool is_row_local(const EncodingSpec& spec) {
  return std::find(spec.stages.begin(), spec.stages.end(), EncodingKind::kZscore) ==
         spec.stages.end();
}

std::vector<std::string> encoded_column_names(const std::vector<ColumnDescriptor>& columns,
                                              const EncodingSpec& spec) {
  validate_spec(spec);
  std::vector<std::string> names;
  for (const auto& c : columns) names.push_back(c.name);
  for (EncodingKind stage : spec.stages) {
    if (stage != EncodingKind::kSinusoidal) continue;
    std::vector<std::string> expanded;
    for (const auto& name : names) {
      for (int i = 0; i < spec.pe_dim / 2; ++i) {
        expanded.push_back(name + "#sin" + std::to_string(i));
        expanded.push_back(name + "#cos" + std::to_string(i));
      }
    }
    names = std::move(expanded);
  }
  return names;
}

std::vector<std::string> encode_row(const std::vector<Rational>& row, const EncodingSpec& spec) {
  validate_spec(spec);
  if (!is_row_local(spec)) throw std::invalid_argument("zscore is not a row-local encoding");
  if (spec.stages.front() == EncodingKind::kRaw) {
    std::vector<std::string> out;
    for (const Rational& x : row) out.push_back(format_value(x));
    return out;
  }
  std::vector<double> values;
  for (const Rational& x : row) values.push_back(to_double(x));
  for (EncodingKind stage : spec.stages) {
    if (stage == EncodingKind::kLog1p) apply_log1p(values);
    if (stage == EncodingKind::kSinusoidal) values = apply_sinusoidal(values, spec.pe_dim);
  }
  return format_doubles(values);
}

EncodedMatrix encode(const FeatureMatrix& m, const EncodingSpec& spec) {
  validate_spec(spec);
  EncodedMatrix out;
  out.row_ids = m.row_ids;
  out.columns = encoded_column_names(m.columns, spec);
  if (spec.stages.front() == EncodingKind::kRaw) {
    for (const auto& row : m.rows) out.cells.push_back(encode_row(row, spec));
    return out;
  }
  auto values = to_doubles(m);
  for (EncodingKind stage : spec.stages) {
    switch (stage) {
      case EncodingKind::kLog1p:
        for (auto& row : values) apply_log1p(row);
        break;
      case EncodingKind::kZscore:
        apply_zscore(values);
        break;
      case EncodingKind::kSinusoidal:
        for (auto& row : values) row = apply_sinusoidal(row, spec.pe_dim);
        break;
      case EncodingKind::kRaw:
        break;
    }
  }
  for (const auto& row : values) out.cells.push_back(format_doubles(row));
  return out;
}

// ---------------------------------------------------------------------------
// Export

ExportFormat parse_export_format(std::string_view text) {
  if (text == "csv") return ExportFormat::kCsv;
  if (text == "jsonl") return ExportFormat::kJsonl;
  throw ParseError("unknown export format '" + std::string(text) + "'");
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> parse_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted) throw ParseError("csv: unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

TableWriter::TableWriter(std::ostream& out, ExportFormat format, std::vector<std::string> columns)
    : out_(out), format_(format), columns_(std::move(columns)) {
  if (format_ == ExportFormat::kCsv) {
    out_ << "row_id";
    for (const auto& c : columns_) out_ << ',' << csv_escape(c);
    out_ << '\n';
  }
}

void TableWriter::write_row(const std::string& row_id, const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) throw std::invalid_argument("row width mismatch");
  if (format_ == ExportFormat::kCsv) {
    out_ << csv_escape(row_id);
    for (const auto& c : cells) out_ << ',' << csv_escape(c);
    out_ << '\n';
    return;
  }
  nlohmann::ordered_json j;
  j["row_id"] = row_id;
  for (std::size_t i = 0; i < cells.size(); ++i) j[columns_[i]] = cells[i];
  out_ << j.dump() << '\n';
}

namespace {

void write_table(const std::filesystem::path& path, ExportFormat format,
                 const std::vector<std::string>& columns,
                 const std::vector<std::string>& row_ids,
                 const std::function<std::vector<std::string>(std::size_t)>& row) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  TableWriter writer(out, format, columns);
  for (std::size_t r = 0; r < row_ids.size(); ++r) writer.write_row(row_ids[r], row(r));
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

void export_matrix(const FeatureMatrix& m, const std::filesystem::path& path, ExportFormat format) {
  std::vector<std::string> names;
  for (const auto& c : m.columns) names.push_back(c.name);
  write_table(path, format, names, m.row_ids, [&](std::size_t r) {
    std::vector<std::string> cells;
    for (const Rational& x : m.rows[r]) cells.push_back(format_value(x));
    return cells;
  });
}

void export_matrix(const EncodedMatrix& m, const std::filesystem::path& path, ExportFormat format) {
  write_table(path, format, m.columns, m.row_ids, [&](std::size_t r) { return m.cells[r]; });
}

LoadedTable load_table(const std::filesystem::path& path, ExportFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  LoadedTable t;
  std::string line;
  if (format == ExportFormat::kCsv) {
    if (!std::getline(in, line)) throw ParseError(path.string() + ": missing header");
    auto header = parse_csv_line(line);
    if (header.empty() || header.front() != "row_id") {
      throw ParseError(path.string() + ": header must start with row_id");
    }
    t.columns.assign(header.begin() + 1, header.end());
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto fields = parse_csv_line(line);
      if (fields.size() != header.size()) throw ParseError(path.string() + ": ragged row");
      t.row_ids.push_back(fields.front());
      t.cells.emplace_back(fields.begin() + 1, fields.end());
    }
    return t;
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::ordered_json::parse(line);
    std::vector<std::string> cells;
    std::vector<std::string> cols;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "row_id") continue;
      cols.push_back(it.key());
      cells.push_back(it.value().get<std::string>());
    }
    if (t.row_ids.empty()) t.columns = cols;
    if (cols != t.columns) throw ParseError(path.string() + ": inconsistent columns");
    t.row_ids.push_back(j.at("row_id").get<std::string>());
    t.cells.push_back(std::move(cells));
  }
  return t;
}

}  // namespace homspasm
