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

#ifndef ATTDIST_GRAPH_H_
#define ATTDIST_GRAPH_H_

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace attdist {

// Relative, forward-slash form: "./src\\a.c" -> "src/a.c". Score files and
// CFG dumps may come from different machines, so every path is compared in
// this form.
std::string normalize_path(std::string_view path);

struct SourceLoc {
  std::string file;  // normalized
  std::uint32_t line = 1;

  auto operator<=>(const SourceLoc&) const = default;
};

std::string to_string(const SourceLoc& loc);

// (function, block id): the identity of a block across the program.
struct BlockRef {
  std::string function;
  std::string block;

  auto operator<=>(const BlockRef&) const = default;
};

std::string to_string(const BlockRef& ref);

struct BasicBlock {
  std::string id;
  std::vector<SourceLoc> lines;  // ordered, no duplicates, may be empty
  std::set<std::string> callees;

  bool operator==(const BasicBlock&) const = default;
};

using Edge = std::pair<std::string, std::string>;

struct Cfg {
  std::string function;
  std::string entry;
  std::map<std::string, BasicBlock> blocks;  // keyed by BasicBlock::id
  std::set<Edge> edges;

  bool operator==(const Cfg&) const = default;

  // Successor ids of `block`, ascending.
  std::vector<std::string> successors(const std::string& block) const;
};

struct CallGraph {
  std::set<std::string> nodes;
  std::set<Edge> edges;  // (caller, callee)

  bool operator==(const CallGraph&) const = default;
};

// Call graph plus one CFG per defined function. Immutable once built by
// the loader; safe to share between threads.
struct ProgramGraphs {
  CallGraph callgraph;
  std::map<std::string, Cfg> cfgs;  // keyed by Cfg::function

  bool operator==(const ProgramGraphs&) const = default;

  const BasicBlock* find_block(const BlockRef& ref) const;
};

// Throws ValidationError naming the first broken invariant.
void validate(const ProgramGraphs& graphs);

// Output identity of a block: "file:line" of its first source line, or
// "function:block" for line-less (compiler-generated) blocks.
std::string block_key(const ProgramGraphs& graphs, const BlockRef& ref);
std::string block_key(const std::string& function, const BasicBlock& block);

}  // namespace attdist

#endif  // ATTDIST_GRAPH_H_
