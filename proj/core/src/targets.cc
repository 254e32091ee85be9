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

#include "attdist/targets.h"

#include <charconv>

#include "attdist/error.h"
#include "attdist/graph_io.h"

namespace attdist {

TargetSpec resolve_targets(const ProgramGraphs& graphs,
                           const std::set<SourceLoc>& locations) {
  if (locations.empty()) {
    throw PreconditionError("resolve_targets: no target locations given");
  }
  TargetSpec spec;
  spec.locations = locations;
  for (const auto& [name, cfg] : graphs.cfgs) {
    for (const auto& [id, block] : cfg.blocks) {
      for (const auto& loc : block.lines) {
        if (locations.contains(loc)) {
          spec.target_blocks.insert({name, id});
          spec.target_functions.insert(name);
          break;
        }
      }
    }
  }
  if (spec.target_blocks.empty()) {
    std::string listed;
    for (const auto& loc : locations) {
      if (!listed.empty()) listed += ", ";
      listed += to_string(loc);
    }
    throw ValidationError("no target resolved: none of [" + listed +
                          "] appears in any basic block");
  }
  return spec;
}

std::set<SourceLoc> parse_targets(std::string_view text,
                                  const std::string& origin) {
  std::set<SourceLoc> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view()
                                         : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (line.find_first_of(" \t") != std::string_view::npos) {
      throw ParseError(origin, line_no, "whitespace in target '" +
                                            std::string(line) + "'");
    }
    std::size_t colon = line.rfind(':');
    if (colon == std::string_view::npos || colon == 0) {
      throw ParseError(origin, line_no,
                       "expected FILE:LINE, got '" + std::string(line) + "'");
    }
    std::string_view number = line.substr(colon + 1);
    std::uint32_t value = 0;
    auto [ptr, ec] =
        std::from_chars(number.data(), number.data() + number.size(), value);
    if (number.empty() || ec != std::errc() ||
        ptr != number.data() + number.size() || value < 1) {
      throw ParseError(origin, line_no,
                       "invalid line number '" + std::string(number) + "'");
    }
    std::string file = normalize_path(line.substr(0, colon));
    if (file.empty()) {
      throw ParseError(origin, line_no, "empty file path");
    }
    out.insert({std::move(file), value});
  }
  return out;
}

std::set<SourceLoc> load_targets(const std::filesystem::path& path) {
  return parse_targets(read_file(path), path.string());
}

}  // namespace attdist
