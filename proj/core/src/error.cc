// Copyright 2026 The attdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "attdist/error.h"

#include <utility>

namespace attdist {

ParseError::ParseError(std::string where, const std::string& what)
    : Error(where + ": " + what), where_(std::move(where)) {}

ParseError::ParseError(std::string path, std::size_t line,
                       const std::string& what)
    : ParseError(std::move(path) + ":" + std::to_string(line), what) {}

}  // namespace attdist
