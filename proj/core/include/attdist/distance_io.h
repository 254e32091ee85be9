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

#ifndef ATTDIST_DISTANCE_IO_H_
#define ATTDIST_DISTANCE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "attdist/graph.h"
#include "attdist/physical_distance.h"
#include "attdist/rational.h"

namespace attdist {

// Distance file: one "block_key,distance" per line, no header, distance
// with exactly two decimals, rows sorted by block_key (bytewise). Rows that
// share a key are ordered by (function, block id).
struct DistanceRow {
  std::string key;
  Rational value;
};

std::vector<DistanceRow> distance_rows(const ProgramGraphs& graphs,
                                       const DistanceMap& distances);
std::string format_distance_csv(const std::vector<DistanceRow>& rows);
std::string format_distance_csv(const ProgramGraphs& graphs,
                                const DistanceMap& distances);

std::vector<DistanceRow> parse_distance_csv(std::string_view text,
                                            const std::string& origin);
std::vector<DistanceRow> load_distance_csv(const std::filesystem::path& path);

// Maps rows back onto blocks. A key shared by several blocks binds in
// (function, block id) order and must then cover all of them; anything
// else is ambiguous and rejected.
DistanceMap bind_distance_rows(const ProgramGraphs& graphs,
                               const std::vector<DistanceRow>& rows,
                               MetricKind kind, const std::string& origin);

void write_text_file(const std::filesystem::path& path,
                     std::string_view text);

}  // namespace attdist

#endif  // ATTDIST_DISTANCE_IO_H_
