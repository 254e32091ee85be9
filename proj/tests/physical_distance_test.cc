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


#include "attdist/physical_distance.h"

#include <gtest/gtest.h>

#include <cmath>

#include "attdist/distance_io.h"
#include "attdist/error.h"
#include "attdist/graph_io.h"
#include "attdist/rational.h"
#include "test_support.h"

namespace attdist {
namespace {

using testing::fixture_path;

CallGraph chain_graph() {
  // a -> b -> t1, a -> c -> d -> t2 (2 and 3 hops), plus noise.
  CallGraph cg;
  cg.nodes = {"a", "b", "c", "d", "t1", "t2", "lonely"};
  cg.edges = {{"a", "b"}, {"b", "t1"}, {"a", "c"}, {"c", "d"}, {"d", "t2"},
              {"a", "a"}, {"t1", "a"}};
  return cg;
}

TargetSpec function_targets(std::set<std::string> names) {
  TargetSpec spec;
  spec.target_functions = std::move(names);
  return spec;
}

TEST(FunctionDistances, HarmonicCombination) {
  ProgramGraphs g;
  g.callgraph.nodes = {"n", "x", "y", "t1", "z", "w", "t2"};
  // 2 hops to t1, 4 hops to t2.
  g.callgraph.edges = {{"n", "x"}, {"x", "t1"}, {"n", "y"}, {"y", "z"},
                       {"z", "w"}, {"w", "t2"}};
  auto fd = function_distances(g, function_targets({"t1", "t2"}));
  EXPECT_EQ(*fd.find("n"), Rational(4, 3));
  EXPECT_EQ(*fd.find("t1"), 0);
  EXPECT_EQ(*fd.find("t2"), 0);
  EXPECT_EQ(*fd.find("w"), 1);
}

TEST(FunctionDistances, UnreachableIsAbsent) {
  ProgramGraphs g;
  g.callgraph = chain_graph();
  auto fd = function_distances(g, function_targets({"t1", "t2"}));
  EXPECT_EQ(fd.find("lonely"), nullptr);
  EXPECT_EQ(*fd.find("a"), Rational(6, 5));  // (1/2 + 1/3)^-1
  // t1 -> a -> ... -> t2 is 4 hops, but t1 is itself a target.
  EXPECT_EQ(*fd.find("t1"), 0);
}

TEST(FunctionDistances, SelfLoopsContributeNothing) {
  ProgramGraphs g;
  g.callgraph.nodes = {"a", "t"};
  g.callgraph.edges = {{"a", "a"}, {"t", "t"}, {"a", "t"}};
  auto fd = function_distances(g, function_targets({"t"}));
  EXPECT_EQ(*fd.find("a"), 1);
  EXPECT_EQ(*fd.find("t"), 0);
}

TEST(FunctionDistances, RequiresTargets) {
  ProgramGraphs g;
  g.callgraph = chain_graph();
  EXPECT_THROW(function_distances(g, {}), PreconditionError);
}

TEST(FunctionDistances, MatchesFloydWarshallOracle) {
  testing::Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    auto inst = testing::random_callgraph(rng, 20);
    auto got = testing::as_doubles(function_distances(inst.graphs, inst.targets));
    auto want = testing::oracle_function_distances(
        inst.graphs.callgraph, inst.targets.target_functions);
    ASSERT_EQ(got.size(), want.size()) << "instance " << i;
    for (const auto& [name, value] : want) {
      ASSERT_TRUE(got.contains(name)) << name;
      ASSERT_NEAR(got.at(name), value, 1e-9) << name;
    }
  }
}

// main: b3 -> b0 -> {b1, b2}; b1 calls g (d_f = 2), b2 is the target.
struct Diamond {
  ProgramGraphs graphs;
  TargetSpec targets;
  FunctionDistanceMap fdist;
};

Diamond diamond() {
  Diamond d;
  d.graphs.callgraph.nodes = {"main", "g"};
  d.graphs.callgraph.edges = {{"main", "g"}};
  Cfg cfg{"main", "b3", {}, {{"b3", "b0"}, {"b0", "b1"}, {"b0", "b2"},
                             {"b0", "b0"}}};
  cfg.blocks["b0"] = {"b0", {}, {}};
  cfg.blocks["b1"] = {"b1", {}, {"g"}};
  cfg.blocks["b2"] = {"b2", {{"m.c", 9}}, {}};
  cfg.blocks["b3"] = {"b3", {}, {}};
  cfg.blocks["dead"] = {"dead", {}, {}};
  d.graphs.cfgs["main"] = cfg;
  d.targets.target_blocks = {{"main", "b2"}};
  d.targets.target_functions = {"main"};
  d.fdist.values = {{"g", 2}, {"main", 0}};
  return d;
}

TEST(BlockDistances, Cases) {
  auto d = diamond();
  auto bd = block_distances(d.graphs, d.targets, d.fdist);
  EXPECT_EQ(bd.kind, MetricKind::kPhysical);
  EXPECT_EQ(*bd.find({"main", "b2"}), 0);
  EXPECT_EQ(*bd.find({"main", "b1"}), 20);
  EXPECT_EQ(*bd.find({"main", "b0"}), Rational(21, 22));  // (1/21 + 1/1)^-1
  EXPECT_EQ(*bd.find({"main", "b3"}), Rational(11, 6));   // (1/22 + 1/2)^-1
  EXPECT_EQ(bd.find({"main", "dead"}), nullptr);
}

TEST(BlockDistances, CallWeightOverride) {
  auto d = diamond();
  auto bd = block_distances(d.graphs, d.targets, d.fdist, {Rational(5)});
  EXPECT_EQ(*bd.find({"main", "b1"}), 10);
  EXPECT_THROW(block_distances(d.graphs, d.targets, d.fdist, {Rational(0)}),
               PreconditionError);
}

TEST(BlockDistances, CallIntoTargetFunctionIsZero) {
  ProgramGraphs g;
  g.callgraph.nodes = {"main", "t"};
  g.callgraph.edges = {{"main", "t"}};
  Cfg main{"main", "a", {}, {{"a", "b"}}};
  main.blocks["a"] = {"a", {}, {}};
  main.blocks["b"] = {"b", {}, {"t"}};
  Cfg t{"t", "x", {}, {}};
  t.blocks["x"] = {"x", {{"t.c", 1}}, {}};
  g.cfgs = {{"main", main}, {"t", t}};
  auto spec = resolve_targets(g, {{"t.c", 1}});
  auto fd = function_distances(g, spec);
  auto bd = block_distances(g, spec, fd);
  EXPECT_EQ(*bd.find({"t", "x"}), 0);
  EXPECT_EQ(*bd.find({"main", "b"}), 0);
  EXPECT_EQ(*bd.find({"main", "a"}), 1);
}

TEST(BlockDistances, MatchesExhaustiveOracle) {
  testing::Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    auto inst = testing::random_block_instance(rng, 50);
    auto got = testing::as_doubles(
        block_distances(inst.graphs, inst.targets, inst.fdist,
                        {from_double(inst.call_weight)}));
    auto want = testing::oracle_block_distances(
        inst.graphs, inst.targets, testing::as_doubles(inst.fdist),
        inst.call_weight);
    ASSERT_EQ(got.size(), want.size()) << "instance " << i;
    for (const auto& [ref, value] : want) {
      ASSERT_TRUE(got.contains(ref)) << to_string(ref);
      ASSERT_NEAR(got.at(ref), value, 1e-9) << to_string(ref);
    }
  }
}

// Whole programs: function distances feed block distances.
TEST(BlockDistances, ProgramsMatchOracleAndInvariants) {
  testing::Rng rng(3);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    ProgramGraphs g = testing::random_program(rng, {8, 12, 2, 2});
    std::set<SourceLoc> locs;
    for (const auto& [name, cfg] : g.cfgs) {
      for (const auto& [id, block] : cfg.blocks) {
        if (!block.lines.empty() && rng() % 6 == 0) locs.insert(block.lines[0]);
      }
    }
    if (locs.empty()) continue;
    TargetSpec spec = resolve_targets(g, locs);
    auto fd = function_distances(g, spec);
    auto bd = block_distances(g, spec, fd);
    auto want = testing::oracle_block_distances(g, spec, testing::as_doubles(fd),
                                                10.0);
    auto got = testing::as_doubles(bd);
    ASSERT_EQ(got.size(), want.size());
    for (const auto& [ref, value] : want) {
      ASSERT_NEAR(got.at(ref), value, 1e-9);
    }
    for (const auto& [ref, value] : bd.values) {
      ASSERT_GE(value, 0);
      if (spec.is_target(ref)) ASSERT_EQ(value, 0);
      if (value == 0 && !spec.is_target(ref)) {
        // Only a call into a target function yields zero.
        bool calls_target = false;
        for (const auto& callee : g.find_block(ref)->callees) {
          calls_target |= spec.target_functions.contains(callee);
        }
        ASSERT_TRUE(calls_target) << to_string(ref);
      }
    }
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(BlockDistances, DeterministicSerialization) {
  auto g = load_program(fixture_path("maze/callgraph.json"),
                        fixture_path("maze/cfgs"));
  auto spec = resolve_targets(g, load_targets(fixture_path("maze/targets.txt")));
  auto once = format_distance_csv(g, block_distances(g, spec, function_distances(g, spec)));
  auto twice = format_distance_csv(g, block_distances(g, spec, function_distances(g, spec)));
  EXPECT_EQ(once, twice);
}

TEST(BlockDistances, MazeSiblingsShareTwenty) {
  auto g = load_program(fixture_path("maze/callgraph.json"),
                        fixture_path("maze/cfgs"));
  auto spec = resolve_targets(g, load_targets(fixture_path("maze/targets.txt")));
  auto fd = function_distances(g, spec);
  EXPECT_EQ(*fd.find("register_Btype"), 0);
  EXPECT_EQ(*fd.find("demangle_class"), 1);
  EXPECT_EQ(*fd.find("demangle_signature"), 2);
  EXPECT_EQ(*fd.find("internal_cplus_demangle"), 3);
  EXPECT_EQ(*fd.find("cplus_demangle"), 4);
  auto bd = block_distances(g, spec, fd);
  const Cfg& sig = g.cfgs.at("demangle_signature");
  int siblings = 0;
  for (const auto& id : sig.successors("switch")) {
    EXPECT_EQ(*bd.find({"demangle_signature", id}), 20) << id;
    ++siblings;
  }
  EXPECT_EQ(siblings, 23);
  EXPECT_EQ(*bd.find({"demangle_signature", "call_class"}), 10);
  EXPECT_EQ(*bd.find({"register_Btype", "store"}), 0);
}

}  // namespace
}  // namespace attdist
