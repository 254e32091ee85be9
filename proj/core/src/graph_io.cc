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

#include "attdist/graph_io.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "attdist/error.h"
#include "json.hpp"

namespace attdist {
namespace {

using json = nlohmann::json;

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + offset, '\n'));
}

json parse_json(std::string_view text, const std::string& origin) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports a 1-based byte index just past the failure.
    std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError(origin, line_of_offset(text, byte),
                     "malformed JSON (" + std::string(e.what()) + ")");
  }
}

const json& member(const json& object, const char* name,
                   const std::string& context, const std::string& origin) {
  if (!object.is_object()) {
    throw ParseError(origin, context + ": expected a JSON object");
  }
  auto it = object.find(name);
  if (it == object.end()) {
    throw ParseError(origin,
                     context + ": missing field '" + std::string(name) + "'");
  }
  return *it;
}

std::string as_string(const json& value, const std::string& context,
                      const std::string& origin) {
  if (!value.is_string()) {
    throw ParseError(origin, context + ": expected a string");
  }
  auto text = value.get<std::string>();
  if (text.empty()) throw ParseError(origin, context + ": empty string");
  return text;
}

const json& as_array(const json& value, const std::string& context,
                     const std::string& origin) {
  if (!value.is_array()) {
    throw ParseError(origin, context + ": expected an array");
  }
  return value;
}

Edge as_edge(const json& value, const std::string& context,
             const std::string& origin) {
  if (!value.is_array() || value.size() != 2) {
    throw ParseError(origin, context + ": edge must be a 2-element array");
  }
  return {as_string(value[0], context, origin),
          as_string(value[1], context, origin)};
}

SourceLoc as_source_loc(const json& value, const std::string& context,
                        const std::string& origin) {
  std::string file = normalize_path(
      as_string(member(value, "file", context, origin), context + ".file",
                origin));
  if (file.empty()) throw ParseError(origin, context + ": empty file path");
  const json& line = member(value, "line", context, origin);
  if (!line.is_number_integer() || line.get<std::int64_t>() < 1 ||
      line.get<std::int64_t>() > std::numeric_limits<std::uint32_t>::max()) {
    throw ParseError(origin, context + ": 'line' must be a positive integer");
  }
  return {std::move(file), static_cast<std::uint32_t>(line.get<std::int64_t>())};
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw ParseError(path.string(), "read failure");
  return buffer.str();
}

CallGraph parse_callgraph(std::string_view text, const std::string& origin) {
  json doc = parse_json(text, origin);
  try {
    CallGraph graph;
    for (const auto& node :
         as_array(member(doc, "nodes", "call graph", origin), "nodes",
                  origin)) {
      std::string name = as_string(node, "nodes[]", origin);
      if (!graph.nodes.insert(name).second) {
        throw ValidationError(origin + ": duplicate function node '" + name +
                              "'");
      }
    }
    for (const auto& edge :
         as_array(member(doc, "edges", "call graph", origin), "edges",
                  origin)) {
      Edge e = as_edge(edge, "edges[]", origin);
      for (const auto* end : {&e.first, &e.second}) {
        if (!graph.nodes.contains(*end)) {
          throw ValidationError(origin +
                                ": call graph edge references unknown "
                                "function '" + *end + "'");
        }
      }
      graph.edges.insert(std::move(e));
    }
    return graph;
  } catch (const json::exception& e) {
    throw ParseError(origin, e.what());
  }
}

Cfg parse_cfg(std::string_view text, const std::string& origin) {
  json doc = parse_json(text, origin);
  try {
    Cfg cfg;
    cfg.function = as_string(member(doc, "function", "CFG", origin),
                             "function", origin);
    cfg.entry = as_string(member(doc, "entry", "CFG", origin), "entry", origin);
    std::string where = "function '" + cfg.function + "'";
    for (const auto& item :
         as_array(member(doc, "blocks", where, origin), "blocks", origin)) {
      BasicBlock block;
      block.id = as_string(member(item, "id", where + " block", origin),
                           where + " block id", origin);
      std::string ctx = where + ", block '" + block.id + "'";
      if (auto lines = item.find("lines"); lines != item.end()) {
        for (const auto& loc : as_array(*lines, ctx + " lines", origin)) {
          SourceLoc parsed = as_source_loc(loc, ctx + " line", origin);
          if (std::find(block.lines.begin(), block.lines.end(), parsed) !=
              block.lines.end()) {
            throw ValidationError(origin + ": " + ctx + ": duplicate line '" +
                                  to_string(parsed) + "'");
          }
          block.lines.push_back(std::move(parsed));
        }
      }
      if (auto callees = item.find("callees"); callees != item.end()) {
        for (const auto& callee :
             as_array(*callees, ctx + " callees", origin)) {
          block.callees.insert(as_string(callee, ctx + " callee", origin));
        }
      }
      std::string id = block.id;
      if (!cfg.blocks.emplace(id, std::move(block)).second) {
        throw ValidationError(origin + ": " + where +
                              ": duplicate block id '" + id + "'");
      }
    }
    if (!cfg.blocks.contains(cfg.entry)) {
      throw ValidationError(origin + ": " + where + ": entry block '" +
                            cfg.entry + "' is not defined");
    }
    for (const auto& edge :
         as_array(member(doc, "edges", where, origin), "edges", origin)) {
      Edge e = as_edge(edge, where + " edge", origin);
      for (const auto* end : {&e.first, &e.second}) {
        if (!cfg.blocks.contains(*end)) {
          throw ValidationError(origin + ": " + where +
                                ": edge references unknown block '" + *end +
                                "'");
        }
      }
      cfg.edges.insert(std::move(e));
    }
    return cfg;
  } catch (const json::exception& e) {
    throw ParseError(origin, e.what());
  }
}

ProgramGraphs load_program(const std::filesystem::path& callgraph_path,
                           const std::filesystem::path& cfg_dir) {
  ProgramGraphs graphs;
  graphs.callgraph =
      parse_callgraph(read_file(callgraph_path), callgraph_path.string());

  std::error_code ec;
  if (!std::filesystem::is_directory(cfg_dir, ec)) {
    throw ParseError(cfg_dir.string(), "not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(cfg_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::map<std::string, std::string> defined_in;
  for (const auto& file : files) {
    std::string origin = file.string();
    Cfg cfg = parse_cfg(read_file(file), origin);
    if (auto [it, fresh] = defined_in.emplace(cfg.function, origin); !fresh) {
      throw ValidationError(origin + ": duplicate definition of function '" +
                            cfg.function + "' (first defined in " +
                            it->second + ")");
    }
    if (!graphs.callgraph.nodes.contains(cfg.function)) {
      throw ValidationError(origin + ": function '" + cfg.function +
                            "' is not a call graph node");
    }
    for (const auto& [id, block] : cfg.blocks) {
      for (const auto& callee : block.callees) {
        if (!graphs.callgraph.nodes.contains(callee)) {
          throw ValidationError(origin + ": function '" + cfg.function +
                                "', block '" + id + "': dangling callee '" +
                                callee + "'");
        }
      }
    }
    std::string name = cfg.function;
    graphs.cfgs.emplace(std::move(name), std::move(cfg));
  }
  validate(graphs);
  return graphs;
}

std::string callgraph_to_json(const CallGraph& callgraph) {
  json doc;
  doc["nodes"] = json::array();
  for (const auto& node : callgraph.nodes) doc["nodes"].push_back(node);
  doc["edges"] = json::array();
  for (const auto& [caller, callee] : callgraph.edges) {
    doc["edges"].push_back({caller, callee});
  }
  return doc.dump(2) + "\n";
}

std::string cfg_to_json(const Cfg& cfg) {
  json doc;
  doc["function"] = cfg.function;
  doc["entry"] = cfg.entry;
  doc["blocks"] = json::array();
  for (const auto& [id, block] : cfg.blocks) {
    json item;
    item["id"] = id;
    item["lines"] = json::array();
    for (const auto& loc : block.lines) {
      item["lines"].push_back({{"file", loc.file}, {"line", loc.line}});
    }
    item["callees"] = json::array();
    for (const auto& callee : block.callees) item["callees"].push_back(callee);
    doc["blocks"].push_back(std::move(item));
  }
  doc["edges"] = json::array();
  for (const auto& [from, to] : cfg.edges) doc["edges"].push_back({from, to});
  return doc.dump(2) + "\n";
}

void save_program(const ProgramGraphs& graphs,
                  const std::filesystem::path& callgraph_path,
                  const std::filesystem::path& cfg_dir) {
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError(path.string(), "cannot open for writing");
    out << text;
  };
  std::filesystem::create_directories(cfg_dir);
  write(callgraph_path, callgraph_to_json(graphs.callgraph));
  // Function names are not necessarily valid file names.
  std::size_t index = 0;
  for (const auto& [name, cfg] : graphs.cfgs) {
    char file[32];
    std::snprintf(file, sizeof file, "cfg_%05zu.json", index++);
    write(cfg_dir / file, cfg_to_json(cfg));
  }
}

}  // namespace attdist
