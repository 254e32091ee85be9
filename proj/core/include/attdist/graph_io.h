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

#ifndef ATTDIST_GRAPH_IO_H_
#define ATTDIST_GRAPH_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "attdist/graph.h"

namespace attdist {

// On-disk layout written by the instrumentation pass:
//
//   callgraph.json  {"nodes": ["fn", ...], "edges": [["caller","callee"], ...]}
//   cfgs/<any>.json {"function": "f", "entry": "bb0",
//                    "blocks": [{"id": "bb0",
//                                "lines": [{"file": "a.c", "line": 12}],
//                                "callees": ["g"]}],
//                    "edges": [["bb0", "bb1"]]}
//
// Every *.json file in the CFG directory is one function. Errors are
// ParseError (with file/line) or ValidationError (naming the identifier).
ProgramGraphs load_program(const std::filesystem::path& callgraph_path,
                           const std::filesystem::path& cfg_dir);

// `origin` is only used in error messages.
CallGraph parse_callgraph(std::string_view text, const std::string& origin);
Cfg parse_cfg(std::string_view text, const std::string& origin);

std::string callgraph_to_json(const CallGraph& callgraph);
std::string cfg_to_json(const Cfg& cfg);

// Writes `callgraph_path` and one `cfg_NNNNN.json` per CFG into `cfg_dir`
// (created if missing).
void save_program(const ProgramGraphs& graphs,
                  const std::filesystem::path& callgraph_path,
                  const std::filesystem::path& cfg_dir);

std::string read_file(const std::filesystem::path& path);

}  // namespace attdist

#endif  // ATTDIST_GRAPH_IO_H_
