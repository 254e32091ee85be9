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

#include "attdist/attention_scoring.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <vector>

#include "attdist/error.h"
#include "attdist/graph_io.h"

namespace attdist {

LineScoreTable parse_line_scores(std::string_view text,
                                 const std::string& origin) {
  LineScoreTable table;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    ++line_no;
    std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view()
                                         : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line != "file,line,score") {
        throw ParseError(origin, line_no,
                         "expected header 'file,line,score'");
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;

    std::size_t score_comma = line.rfind(',');
    std::size_t line_comma = score_comma == std::string_view::npos || score_comma == 0
                                 ? std::string_view::npos
                                 : line.rfind(',', score_comma - 1);
    if (line_comma == std::string_view::npos || line_comma == 0) {
      throw ParseError(origin, line_no, "expected 'file,line,score'");
    }
    std::string file = normalize_path(line.substr(0, line_comma));
    if (file.empty()) throw ParseError(origin, line_no, "empty file path");

    std::string_view number =
        line.substr(line_comma + 1, score_comma - line_comma - 1);
    std::uint32_t src_line = 0;
    auto [lp, lec] =
        std::from_chars(number.data(), number.data() + number.size(), src_line);
    if (number.empty() || lec != std::errc() ||
        lp != number.data() + number.size() || src_line < 1) {
      throw ParseError(origin, line_no,
                       "invalid line number '" + std::string(number) + "'");
    }

    std::string_view score_text = line.substr(score_comma + 1);
    double score = 0.0;
    auto [sp, sec] = std::from_chars(
        score_text.data(), score_text.data() + score_text.size(), score);
    if (score_text.empty() || sec != std::errc() ||
        sp != score_text.data() + score_text.size() || !std::isfinite(score)) {
      throw ParseError(origin, line_no,
                       "invalid score '" + std::string(score_text) + "'");
    }
    SourceLoc loc{std::move(file), src_line};
    if (score < 0.0) {
      throw ValidationError(origin + ":" + std::to_string(line_no) +
                            ": negative score for " + to_string(loc));
    }
    std::string where = to_string(loc);
    if (!table.entries.emplace(std::move(loc), score).second) {
      throw ValidationError(origin + ":" + std::to_string(line_no) +
                            ": duplicate score for " + where);
    }
  }
  if (!header_seen) {
    throw ParseError(origin, 1, "expected header 'file,line,score'");
  }
  return table;
}

LineScoreTable load_line_scores(const std::filesystem::path& path) {
  return parse_line_scores(read_file(path), path.string());
}

RawBlockScores block_raw_scores(const ProgramGraphs& graphs,
                                const LineScoreTable& scores) {
  RawBlockScores out;
  for (const auto& [name, cfg] : graphs.cfgs) {
    for (const auto& [id, block] : cfg.blocks) {
      double sum = 0.0;
      for (const auto& loc : block.lines) sum += scores.score(loc);
      out.emplace(BlockRef{name, id}, sum);
    }
  }
  return out;
}

RawBlockScores restrict_to_population(const RawBlockScores& raw,
                                      const DistanceMap& physical) {
  RawBlockScores out;
  for (const auto& [ref, distance] : physical.values) {
    auto it = raw.find(ref);
    out.emplace(ref, it == raw.end() ? 0.0 : it->second);
  }
  return out;
}

std::size_t cap_rank(std::size_t population, double cap_fraction) {
  // Guard against products like 0.1 * 30 = 3.0000000000000004.
  double scaled = cap_fraction * static_cast<double>(population);
  auto rank = static_cast<std::size_t>(std::max(0.0, std::ceil(scaled - 1e-9)));
  return std::clamp<std::size_t>(rank, 1, population);
}

BlockScoreTable normalize_scores(const RawBlockScores& raw,
                                 double cap_fraction) {
  if (raw.empty()) {
    throw PreconditionError("normalize_scores: no block scores to normalize");
  }
  if (!(cap_fraction > 0.0 && cap_fraction <= 1.0)) {
    throw PreconditionError("normalize_scores: cap fraction must be in (0, 1]");
  }
  std::vector<double> sorted;
  sorted.reserve(raw.size());
  for (const auto& [ref, value] : raw) sorted.push_back(value);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  BlockScoreTable table;
  table.raw = raw;
  table.cap_threshold = sorted[cap_rank(sorted.size(), cap_fraction) - 1];
  // Clamping is monotone, so the extremes of the clamped set are the clamped
  // extremes of the raw set.
  table.w_max = std::min(sorted.front(), table.cap_threshold);
  table.w_min = std::min(sorted.back(), table.cap_threshold);

  double span = table.w_max - table.w_min;
  for (const auto& [ref, value] : raw) {
    double w = 0.5;
    if (span > 0.0) {
      w = (std::min(value, table.cap_threshold) - table.w_min) / span;
      w = std::clamp(w, 0.0, 1.0);
    }
    table.normalized.emplace(ref, w);
  }
  return table;
}

}  // namespace attdist
