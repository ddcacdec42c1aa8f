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

#include "homspasm/graph6.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "homspasm/errors.hpp"

namespace homspasm {
namespace {

constexpr int kBias = 63;

void append_size(std::string& out, std::uint64_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) {
      out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
    }
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) {
      out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
    }
  }
}

int decode_char(char c) {
  int v = static_cast<unsigned char>(c) - kBias;
  if (v < 0 || v > 63) {
    throw ParseError(std::string("graph6: invalid character '") + c + "'");
  }
  return v;
}

std::optional<int> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

std::string format_graph6(const Graph& g) {
  const int n = g.num_vertices();
  std::string out;
  append_size(out, static_cast<std::uint64_t>(n));
  int acc = 0;
  int nbits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(acc + kBias));
        acc = 0;
        nbits = 0;
      }
    }
  }
  if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + kBias));
  return out;
}

Graph parse_graph6(std::string_view text) {
  if (!text.empty() && text.front() == '>') {
    // Optional ">>graph6<<" header.
    if (text.substr(0, 10) != ">>graph6<<") throw ParseError("graph6: bad header");
    text.remove_prefix(10);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  if (text.empty()) throw ParseError("graph6: empty input");
  std::size_t pos = 0;
  std::uint64_t n = 0;
  auto take = [&](int count) {
    std::uint64_t v = 0;
    for (int k = 0; k < count; ++k) {
      if (pos >= text.size()) throw ParseError("graph6: truncated size header");
      v = (v << 6) | static_cast<std::uint64_t>(decode_char(text[pos++]));
    }
    return v;
  };
  if (text[0] != 126) {
    n = take(1);
  } else if (text.size() > 1 && text[1] != 126) {
    pos = 1;
    n = take(3);
  } else {
    pos = 2;
    n = take(6);
  }
  if (n > 1'000'000) throw ParseError("graph6: vertex count too large");
  const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::uint64_t expected_bytes = (bits + 5) / 6;
  if (text.size() - pos != expected_bytes) {
    throw ParseError("graph6: expected " + std::to_string(expected_bytes) +
                     " data bytes, found " + std::to_string(text.size() - pos));
  }
  std::vector<Edge> edges;
  std::uint64_t k = 0;
  const int nn = static_cast<int>(n);
  for (int j = 1; j < nn; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      int byte = decode_char(text[pos + k / 6]);
      if ((byte >> (5 - k % 6)) & 1) edges.push_back({i, j});
    }
  }
  if (bits % 6 != 0) {
    int last = decode_char(text.back());
    if (last & ((1 << (6 - bits % 6)) - 1)) {
      throw ParseError("graph6: nonzero padding bits");
    }
  }
  return Graph(nn, std::move(edges));
}

Graph named_pattern(std::string_view name) {
  if (name.size() >= 2) {
    auto n = parse_int(name.substr(1));
    if (n) {
      try {
        switch (name[0]) {
          case 'C': return cycle_graph(*n);
          case 'P': return path_graph(*n);
          case 'K': return complete_graph(*n);
          case 'S': return star_graph(*n);
          default: break;
        }
      } catch (const std::invalid_argument& e) {
        throw ParseError("pattern '" + std::string(name) + "': " + e.what());
      }
    }
  }
  throw ParseError("unknown pattern name '" + std::string(name) + "'");
}

PatternSpec parse_pattern(std::string_view text) {
  PatternSpec spec;
  // Digits never occur in graph6, so "@<digits>" at the end is unambiguous.
  auto at = text.rfind('@');
  if (at != std::string_view::npos) {
    if (auto idx = parse_int(text.substr(at + 1))) {
      spec.anchor = *idx;
      text = text.substr(0, at);
    }
  }
  bool named = text.size() >= 2 && std::string_view("CPKS").find(text[0]) !=
                                       std::string_view::npos &&
               parse_int(text.substr(1)).has_value();
  spec.graph = named ? named_pattern(text) : parse_graph6(text);
  if (spec.anchor &&
      (*spec.anchor < 0 || *spec.anchor >= spec.graph.num_vertices())) {
    throw ParseError("anchor " + std::to_string(*spec.anchor) +
                     " out of range for pattern '" + std::string(text) + "'");
  }
  return spec;
}

}  // namespace homspasm
