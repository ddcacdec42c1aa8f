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

#include "homspasm/cache.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "homspasm/errors.hpp"
#include "json.hpp"

namespace homspasm {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

BasisCache::BasisCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path BasisCache::path_for(std::string_view key, std::string_view mode) const {
  // Anchored keys contain ':'; keep file names portable.
  std::string file(key);
  for (char& c : file) {
    if (c == ':' || c == '/' || c == '\\') c = '_';
  }
  return dir_ / std::string(mode) / (file + ".json");
}

std::optional<LinearCombination> BasisCache::get(std::string_view key,
                                                 std::string_view mode) const {
  std::lock_guard lock(mutex_);
  std::ifstream in(path_for(key, mode));
  if (!in) return std::nullopt;
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    auto j = nlohmann::ordered_json::parse(buffer.str());
    if (j.at("key").get<std::string>() != key || j.at("mode").get<std::string>() != mode) {
      return std::nullopt;
    }
    const std::string basis = j.at("basis").dump();
    if (sha256_hex(basis) != j.at("sha256").get<std::string>()) return std::nullopt;
    return combination_from_json(basis);
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

void BasisCache::put(std::string_view key, std::string_view mode,
                     const LinearCombination& c) const {
  static std::atomic<unsigned long> counter{0};
  const std::string basis = to_json(c);
  nlohmann::ordered_json j;
  j["key"] = std::string(key);
  j["mode"] = std::string(mode);
  j["sha256"] = sha256_hex(basis);
  j["basis"] = nlohmann::ordered_json::parse(basis);

  std::lock_guard lock(mutex_);
  const auto path = path_for(key, mode);
  std::filesystem::create_directories(path.parent_path());
  // Write-then-rename so concurrent readers never see a partial file.
  auto tmp = path;
  tmp += ".tmp" + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary);
    out << j.dump(1) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

LinearCombination BasisCache::get_or_compute(
    std::string_view key, std::string_view mode,
    const std::function<LinearCombination()>& compute) const {
  if (auto hit = get(key, mode)) return *hit;
  LinearCombination c = compute();
  put(key, mode, c);
  return c;
}

}  // namespace homspasm
