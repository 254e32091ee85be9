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

#include "attdist/graph.h"

#include <algorithm>
#include <filesystem>

#include "attdist/error.h"

namespace attdist {

std::string normalize_path(std::string_view path) {
  std::string slashed(path);
  std::replace(slashed.begin(), slashed.end(), '\\', '/');
  std::string normal =
      std::filesystem::path(slashed).lexically_normal().generic_string();
  std::size_t start = normal.find_first_not_of('/');
  if (start == std::string::npos) return {};
  normal.erase(0, start);
  while (normal.size() > 1 && normal.back() == '/') normal.pop_back();
  if (normal == ".") return {};
  return normal;
}

std::string to_string(const SourceLoc& loc) {
  return loc.file + ":" + std::to_string(loc.line);
}

std::string to_string(const BlockRef& ref) {
  return ref.function + ":" + ref.block;
}

std::vector<std::string> Cfg::successors(const std::string& block) const {
  std::vector<std::string> out;
  for (auto it = edges.lower_bound({block, std::string()});
       it != edges.end() && it->first == block; ++it) {
    out.push_back(it->second);
  }
  return out;
}

const BasicBlock* ProgramGraphs::find_block(const BlockRef& ref) const {
  auto cfg = cfgs.find(ref.function);
  if (cfg == cfgs.end()) return nullptr;
  auto block = cfg->second.blocks.find(ref.block);
  return block == cfg->second.blocks.end() ? nullptr : &block->second;
}

void validate(const ProgramGraphs& graphs) {
  const auto& nodes = graphs.callgraph.nodes;
  for (const auto& [caller, callee] : graphs.callgraph.edges) {
    if (!nodes.contains(caller)) {
      throw ValidationError("call graph edge references unknown function '" +
                            caller + "'");
    }
    if (!nodes.contains(callee)) {
      throw ValidationError("call graph edge references unknown function '" +
                            callee + "'");
    }
  }
  for (const auto& [name, cfg] : graphs.cfgs) {
    if (name != cfg.function) {
      throw ValidationError("CFG registered as '" + name +
                            "' describes function '" + cfg.function + "'");
    }
    if (!nodes.contains(name)) {
      throw ValidationError("CFG for '" + name +
                            "' has no call graph node");
    }
    if (!cfg.blocks.contains(cfg.entry)) {
      throw ValidationError("function '" + name + "': entry block '" +
                            cfg.entry + "' is not defined");
    }
    for (const auto& [id, block] : cfg.blocks) {
      if (id != block.id) {
        throw ValidationError("function '" + name + "': block keyed '" + id +
                              "' has id '" + block.id + "'");
      }
      std::set<SourceLoc> seen;
      for (const auto& loc : block.lines) {
        if (loc.line < 1 || loc.file.empty()) {
          throw ValidationError("function '" + name + "', block '" + id +
                                "': invalid source location '" +
                                to_string(loc) + "'");
        }
        if (!seen.insert(loc).second) {
          throw ValidationError("function '" + name + "', block '" + id +
                                "': duplicate line '" + to_string(loc) + "'");
        }
      }
      for (const auto& callee : block.callees) {
        if (!nodes.contains(callee)) {
          throw ValidationError("function '" + name + "', block '" + id +
                                "': dangling callee '" + callee + "'");
        }
      }
    }
    for (const auto& [from, to] : cfg.edges) {
      for (const auto* end : {&from, &to}) {
        if (!cfg.blocks.contains(*end)) {
          throw ValidationError("function '" + name +
                                "': edge references unknown block '" + *end +
                                "'");
        }
      }
    }
  }
}

std::string block_key(const std::string& function, const BasicBlock& block) {
  if (!block.lines.empty()) return to_string(block.lines.front());
  return function + ":" + block.id;
}

std::string block_key(const ProgramGraphs& graphs, const BlockRef& ref) {
  const BasicBlock* block = graphs.find_block(ref);
  if (block == nullptr) return to_string(ref);
  return block_key(ref.function, *block);
}

}  // namespace attdist
