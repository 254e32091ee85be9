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

#ifndef ATTDIST_TARGETS_H_
#define ATTDIST_TARGETS_H_

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "attdist/graph.h"

namespace attdist {

struct TargetSpec {
  std::set<SourceLoc> locations;
  std::set<std::string> target_functions;  // functions owning a target block
  std::set<BlockRef> target_blocks;        // blocks whose lines hit a location

  bool is_target(const BlockRef& ref) const {
    return target_blocks.contains(ref);
  }
};

// Matches every location against every block's lines; a line shared by
// several blocks (inlining) makes all of them targets. Throws
// PreconditionError on an empty set and ValidationError when nothing
// resolves.
TargetSpec resolve_targets(const ProgramGraphs& graphs,
                           const std::set<SourceLoc>& locations);

// Targets file: one `path/file.c:LINE` per line, no spaces. Blank lines and
// lines starting with '#' are skipped.
std::set<SourceLoc> parse_targets(std::string_view text,
                                  const std::string& origin);
std::set<SourceLoc> load_targets(const std::filesystem::path& path);

}  // namespace attdist

#endif  // ATTDIST_TARGETS_H_
