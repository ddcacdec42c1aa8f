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

#ifndef HOMSPASM_CACHE_HPP_
#define HOMSPASM_CACHE_HPP_

#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "homspasm/spasm.hpp"

namespace homspasm {

// On-disk store of computed bases: <dir>/<mode>/<canonical-key>.json, each
// file carrying a SHA-256 of its serialized basis. Unreadable or mismatching
// files count as misses.
class BasisCache {
 public:
  explicit BasisCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  std::optional<LinearCombination> get(std::string_view key, std::string_view mode) const;
  // Throws std::runtime_error when the file cannot be written.
  void put(std::string_view key, std::string_view mode, const LinearCombination& c) const;
  LinearCombination get_or_compute(std::string_view key, std::string_view mode,
                                   const std::function<LinearCombination()>& compute) const;

  std::filesystem::path path_for(std::string_view key, std::string_view mode) const;

 private:
  std::filesystem::path dir_;
  mutable std::mutex mutex_;
};

std::string sha256_hex(std::string_view data);

}  // namespace homspasm

#endif  // HOMSPASM_CACHE_HPP_
