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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "attdist/error.h"
#include "attdist/graph_io.h"
#include "attdist/physical_distance.h"
#include "attdist/targets.h"
#include "test_support.h"

namespace attdist {
namespace {

using testing::fixture_path;

RawBlockScores raw_of(const std::vector<double>& values) {
  RawBlockScores raw;
  for (std::size_t i = 0; i < values.size(); ++i) {
    raw[{"f", "b" + std::to_string(1000 + i)}] = values[i];
  }
  return raw;
}

TEST(LineScores, SingleEntry) {
  auto t = parse_line_scores("file,line,score\na.c,12,3.5\n", "s.csv");
  ASSERT_EQ(t.entries.size(), 1u);
  EXPECT_EQ(t.score({"a.c", 12}), 3.5);
  EXPECT_EQ(t.score({"a.c", 13}), 0.0);
}

TEST(LineScores, PathsAreNormalized) {
  auto t = parse_line_scores("file,line,score\n./src\\a.c,4,1\r\n", "s.csv");
  EXPECT_EQ(t.score({"src/a.c", 4}), 1.0);
}

TEST(LineScores, CommaInFileName) {
  auto t = parse_line_scores("file,line,score\nodd,name.c,4,0.25\n", "s.csv");
  EXPECT_EQ(t.score({"odd,name.c", 4}), 0.25);
}

TEST(LineScores, Duplicate) {
  try {
    parse_line_scores("file,line,score\na.c,12,1\n./a.c,12,2\n", "s.csv");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("s.csv:3"), std::string::npos);
  }
}

TEST(LineScores, Negative) {
  try {
    parse_line_scores("file,line,score\na.c,12,-1.0\n", "s.csv");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("negative"), std::string::npos);
  }
}

TEST(LineScores, Malformed) {
  for (const char* bad : {"", "a.c,1,2\n", "file,line\n", "file,line,score\na.c,0,1\n",
                          "file,line,score\na.c,x,1\n", "file,line,score\na.c,1,\n",
                          "file,line,score\na.c,1,nan\n", "file,line,score\na.c,1,inf\n",
                          "file,line,score\n,1,2\n", "file,line,score\na.c 1 2\n"}) {
    EXPECT_THROW(parse_line_scores(bad, "s.csv"), ParseError) << bad;
  }
}

TEST(LineScores, ExporterFormatFixture) {
  auto t = load_line_scores(fixture_path("maze/scores.csv"));
  EXPECT_GT(t.entries.size(), 30u);
  for (const auto& [loc, score] : t.entries) {
    EXPECT_EQ(loc.file, "libiberty/cplus-dem.c");
    EXPECT_GE(score, 0.0);
  }
}

TEST(BlockRawScores, SumsLines) {
  ProgramGraphs g;
  g.callgraph.nodes = {"f"};
  Cfg f{"f", "a", {}, {}};
  f.blocks["a"] = {"a", {{"a.c", 1}, {"a.c", 2}}, {}};
  f.blocks["b"] = {"b", {}, {}};
  f.blocks["c"] = {"c", {{"a.c", 3}}, {}};
  g.cfgs["f"] = f;
  auto t = parse_line_scores("file,line,score\na.c,1,1.0\na.c,2,2.5\n", "s");
  auto raw = block_raw_scores(g, t);
  EXPECT_EQ(raw.at({"f", "a"}), 3.5);
  EXPECT_EQ(raw.at({"f", "b"}), 0.0);
  EXPECT_EQ(raw.at({"f", "c"}), 0.0);
}

TEST(Normalize, ConstantScoresGiveOneHalf) {
  auto table = normalize_scores(raw_of(std::vector<double>(13, 7.0)));
  for (const auto& [ref, w] : table.normalized) EXPECT_EQ(w, 0.5);
  EXPECT_EQ(table.w_min, table.w_max);
}

TEST(Normalize, OneToTenIsUncapped) {
  auto table = normalize_scores(raw_of({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}));
  EXPECT_EQ(table.cap_threshold, 10.0);
  EXPECT_EQ(table.w_min, 1.0);
  EXPECT_EQ(table.w_max, 10.0);
  std::vector<double> w;
  for (const auto& [ref, v] : table.normalized) w.push_back(v);
  for (std::size_t i = 0; i < w.size(); ++i) {
    EXPECT_DOUBLE_EQ(w[i], static_cast<double>(i) / 9.0);
  }
  EXPECT_EQ(w.front(), 0.0);
  EXPECT_EQ(w.back(), 1.0);
}

TEST(Normalize, OutlierIsCappedAway) {
  std::vector<double> v(19, 1.0);
  v.push_back(100.0);
  auto table = normalize_scores(raw_of(v));
  EXPECT_EQ(table.cap_threshold, 1.0);
  for (const auto& [ref, w] : table.normalized) EXPECT_EQ(w, 0.5);
}

TEST(Normalize, CapRank) {
  EXPECT_EQ(cap_rank(1, 0.1), 1u);
  EXPECT_EQ(cap_rank(9, 0.1), 1u);
  EXPECT_EQ(cap_rank(10, 0.1), 1u);
  EXPECT_EQ(cap_rank(11, 0.1), 2u);
  EXPECT_EQ(cap_rank(20, 0.1), 2u);
  EXPECT_EQ(cap_rank(30, 0.1), 3u);  // 0.1 * 30 is 3.0000000000000004
  EXPECT_EQ(cap_rank(31, 0.1), 4u);
  EXPECT_EQ(cap_rank(7, 1.0), 7u);
}

TEST(Normalize, TiesAtTheThresholdSurvive) {
  // Rank 2 of [9, 9, 9, 1, ...] is 9; every 9 stays at 9.
  std::vector<double> v = {9, 9, 9, 1, 2, 3, 4, 5, 6, 7, 8, 1, 2, 3, 4};
  auto table = normalize_scores(raw_of(v));
  EXPECT_EQ(table.cap_threshold, 9.0);
  int ones = 0;
  for (const auto& [ref, w] : table.normalized) ones += (w == 1.0);
  EXPECT_EQ(ones, 3);
}

TEST(Normalize, Preconditions) {
  EXPECT_THROW(normalize_scores({}), PreconditionError);
  EXPECT_THROW(normalize_scores(raw_of({1, 2}), 0.0), PreconditionError);
  EXPECT_THROW(normalize_scores(raw_of({1, 2}), 1.5), PreconditionError);
  EXPECT_THROW(normalize_scores(raw_of({1, 2}), std::nan("")),
               PreconditionError);
}

std::vector<double> random_scores(testing::Rng& rng) {
  std::size_t n = std::uniform_int_distribution<std::size_t>(1, 60)(rng);
  std::vector<double> v(n);
  int mode = static_cast<int>(rng() % 4);
  for (auto& x : v) {
    switch (mode) {
      case 0: x = std::uniform_real_distribution<double>(0, 10)(rng); break;
      case 1: x = static_cast<double>(rng() % 4); break;  // many ties
      case 2: x = std::exponential_distribution<double>(0.3)(rng); break;
      default: x = 2.5; break;
    }
  }
  return v;
}

TEST(NormalizeProperties, RangeScaleIdempotenceMonotonicity) {
  testing::Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    auto raw = raw_of(random_scores(rng));
    auto table = normalize_scores(raw);
    for (const auto& [ref, w] : table.normalized) {
      ASSERT_GE(w, 0.0);
      ASSERT_LE(w, 1.0);
    }
    if (table.w_min == table.w_max) {
      for (const auto& [ref, w] : table.normalized) ASSERT_EQ(w, 0.5);
    }

    for (double lambda : {0.001, 0.5, 3.0, 1e6}) {
      RawBlockScores scaled;
      for (const auto& [ref, v] : raw) scaled[ref] = v * lambda;
      auto other = normalize_scores(scaled);
      for (const auto& [ref, w] : table.normalized) {
        ASSERT_NEAR(other.normalized.at(ref), w, 1e-12);
      }
    }

    RawBlockScores capped;
    for (const auto& [ref, v] : raw) capped[ref] = std::min(v, table.cap_threshold);
    auto again = normalize_scores(capped);
    EXPECT_EQ(again.cap_threshold, table.cap_threshold);
    EXPECT_EQ(again.normalized, table.normalized);

    for (const auto& [a, wa] : raw) {
      for (const auto& [b, wb] : raw) {
        if (wa <= wb && wb <= table.cap_threshold) {
          ASSERT_LE(table.normalized.at(a), table.normalized.at(b));
        }
      }
    }
  }
}

TEST(Population, UnscoredPhysicalBlocksEnterAtZero) {
  RawBlockScores raw = {{{"f", "a"}, 4.0}, {{"f", "z"}, 9.0}};
  DistanceMap phys;
  phys.values = {{{"f", "a"}, 3}, {{"f", "b"}, 5}};
  auto pop = restrict_to_population(raw, phys);
  EXPECT_EQ(pop, (RawBlockScores{{{"f", "a"}, 4.0}, {{"f", "b"}, 0.0}}));
}

TEST(Maze, TruePathOutscoresEverySibling) {
  auto g = load_program(fixture_path("maze/callgraph.json"),
                        fixture_path("maze/cfgs"));
  auto raw = block_raw_scores(g, load_line_scores(fixture_path("maze/scores.csv")));
  double true_path = raw.at({"demangle_signature", "case_0"});
  int siblings = 0;
  for (const auto& id : g.cfgs.at("demangle_signature").successors("switch")) {
    if (id == "case_0") continue;
    EXPECT_GT(true_path, raw.at({"demangle_signature", id})) << id;
    ++siblings;
  }
  EXPECT_EQ(siblings, 22);
  // Deeper steps of the chain also beat every decoy.
  for (BlockRef ref : {BlockRef{"demangle_signature", "call_class"},
                       BlockRef{"demangle_class", "register"}}) {
    for (const auto& id : g.cfgs.at("demangle_signature").successors("switch")) {
      if (id != "case_0") {
        EXPECT_GT(raw.at(ref), raw.at({"demangle_signature", id}));
      }
    }
  }
}

}  // namespace
}  // namespace attdist
