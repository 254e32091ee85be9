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

#include "attdist/distance_io.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <tuple>

#include "attdist/error.h"
#include "attdist/graph_io.h"

namespace attdist {

std::vector<DistanceRow> distance_rows(const ProgramGraphs& graphs,
                                       const DistanceMap& distances) {
  struct Keyed {
    std::string key;
    const BlockRef* ref;
    const Rational* value;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(distances.values.size());
  for (const auto& [ref, value] : distances.values) {
    keyed.push_back({block_key(graphs, ref), &ref, &value});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.key, *a.ref) < std::tie(b.key, *b.ref);
  });
  std::vector<DistanceRow> rows;
  rows.reserve(keyed.size());
  for (auto& k : keyed) rows.push_back({std::move(k.key), *k.value});
  return rows;
}

std::string format_distance_csv(const std::vector<DistanceRow>& rows) {
  std::string out;
  for (const auto& row : rows) {
    out += row.key;
    out += ',';
    out += format_fixed2(row.value);
    out += '\n';
  }
  return out;
}

std::string format_distance_csv(const ProgramGraphs& graphs,
                                const DistanceMap& distances) {
  return format_distance_csv(distance_rows(graphs, distances));
}

std::vector<DistanceRow> parse_distance_csv(std::string_view text,
                                            const std::string& origin) {
  std::vector<DistanceRow> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view()
                                         : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::size_t comma = line.rfind(',');
    if (comma == std::string_view::npos || comma == 0) {
      throw ParseError(origin, line_no, "expected 'block_key,distance'");
    }
    auto value = parse_decimal(line.substr(comma + 1));
    if (!value) {
      throw ParseError(origin, line_no,
                       "invalid distance '" +
                           std::string(line.substr(comma + 1)) + "'");
    }
    rows.push_back({std::string(line.substr(0, comma)), std::move(*value)});
  }
  return rows;
}

std::vector<DistanceRow> load_distance_csv(const std::filesystem::path& path) {
  return parse_distance_csv(read_file(path), path.string());
}

DistanceMap bind_distance_rows(const ProgramGraphs& graphs,
                               const std::vector<DistanceRow>& rows,
                               MetricKind kind, const std::string& origin) {
  std::map<std::string, std::vector<BlockRef>> by_key;
  for (const auto& [name, cfg] : graphs.cfgs) {
    for (const auto& [id, block] : cfg.blocks) {
      by_key[block_key(name, block)].push_back({name, id});
    }
  }
  std::map<std::string, std::vector<const DistanceRow*>> grouped;
  for (const auto& row : rows) grouped[row.key].push_back(&row);

  DistanceMap out;
  out.kind = kind;
  for (const auto& [key, group] : grouped) {
    auto it = by_key.find(key);
    if (it == by_key.end()) {
      throw ValidationError(origin + ": block key '" + key +
                            "' does not match any block");
    }
    const auto& refs = it->second;  // already in (function, id) order
    if (group.size() != refs.size()) {
      throw ValidationError(origin + ": block key '" + key + "' appears " +
                            std::to_string(group.size()) +
                            " time(s) but names " +
                            std::to_string(refs.size()) +
                            " blocks; binding is ambiguous");
    }
    for (std::size_t i = 0; i < refs.size(); ++i) {
      out.values.emplace(refs[i], group[i]->value);
    }
  }
  return out;
}

void write_text_file(const std::filesystem::path& path,
                     std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError(path.string(), "cannot open for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw ParseError(path.string(), "write failure");
}

}  // namespace attdist
