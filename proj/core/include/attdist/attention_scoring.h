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

#ifndef ATTDIST_ATTENTION_SCORING_H_
#define ATTDIST_ATTENTION_SCORING_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "attdist/graph.h"
#include "attdist/physical_distance.h"

namespace attdist {

// Per-line attention score, already summed over tokens and layers by the
// producer. Scores are finite and >= 0.
struct LineScoreTable {
  std::map<SourceLoc, double> entries;

  double score(const SourceLoc& loc) const {
    auto it = entries.find(loc);
    return it == entries.end() ? 0.0 : it->second;
  }
};

using RawBlockScores = std::map<BlockRef, double>;

struct BlockScoreTable {
  RawBlockScores raw;
  std::map<BlockRef, double> normalized;  // in [0, 1]
  double cap_threshold = 0.0;
  double w_min = 0.0;
  double w_max = 0.0;
};

inline constexpr double kDefaultCapFraction = 0.1;

// CSV with header `file,line,score`. Throws ParseError on malformed rows,
// ValidationError on negative scores or a repeated (file, line).
LineScoreTable parse_line_scores(std::string_view text,
                                 const std::string& origin);
LineScoreTable load_line_scores(const std::filesystem::path& path);

// Sum of line scores over each block's lines; unscored lines count 0.
// Covers every block of every CFG.
RawBlockScores block_raw_scores(const ProgramGraphs& graphs,
                                const LineScoreTable& scores);

// The normalization population: blocks with a defined physical distance.
// Blocks without raw scores enter with 0.
RawBlockScores restrict_to_population(const RawBlockScores& raw,
                                      const DistanceMap& physical);

// Soft cap then min-max normalization. With W the raw values sorted
// descending, the cap is W at 1-based rank ceil(cap_fraction * |W|); each
// score is clamped to it and mapped linearly onto [0, 1]. If all clamped
// values coincide every block gets 0.5.
BlockScoreTable normalize_scores(const RawBlockScores& raw,
                                 double cap_fraction = kDefaultCapFraction);

// 1-based descending rank that supplies the cap.
std::size_t cap_rank(std::size_t population, double cap_fraction);

}  // namespace attdist

#endif  // ATTDIST_ATTENTION_SCORING_H_
