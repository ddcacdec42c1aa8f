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

#ifndef HOMSPASM_ERRORS_HPP_
#define HOMSPASM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace homspasm {

// Malformed textual input (graph6, pattern names, datasets, configs).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured size or resource limit would be exceeded.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace homspasm

#endif  // HOMSPASM_ERRORS_HPP_
