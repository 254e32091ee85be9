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

#ifndef ATTDIST_ERROR_H_
#define ATTDIST_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace attdist {

// Base for every error the library reports. Anything else escaping the
// public API is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `where()` is "path" or "path:line".
class ParseError : public Error {
 public:
  ParseError(std::string where, const std::string& what);
  ParseError(std::string path, std::size_t line, const std::string& what);
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Well-formed input that violates a structural invariant (dangling edge,
// duplicate definition, negative score, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Caller violated an operation's precondition (empty input, budget 0, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace attdist

#endif  // ATTDIST_ERROR_H_
