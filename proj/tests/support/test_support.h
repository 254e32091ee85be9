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


#ifndef ATTDIST_TESTS_SUPPORT_TEST_SUPPORT_H_
#define ATTDIST_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <string_view>

#include "attdist/graph.h"
#include "attdist/physical_distance.h"
#include "attdist/targets.h"

namespace attdist::testing {

using Rng = std::mt19937_64;

std::filesystem::path fixture_path(std::string_view relative);

std::string slurp(const std::filesystem::path& path);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

struct ProgramShape {
  std::size_t max_functions = 6;
  std::size_t max_blocks = 8;
  std::size_t max_lines = 3;
  std::size_t external_functions = 2;  // call graph nodes without a CFG
};

// A valid ProgramGraphs with random topology, lines and callees.
ProgramGraphs random_program(Rng& rng, const ProgramShape& shape = {});

// Call graph only, nodes "f0".."f<n-1>", plus a random non-empty set of
// target functions.
struct CallGraphInstance {
  ProgramGraphs graphs;
  TargetSpec targets;
};
CallGraphInstance random_callgraph(Rng& rng, std::size_t max_nodes);

// One CFG "main" whose blocks may call leaf functions with synthetic
// function distances, and may be targets themselves.
struct BlockInstance {
  ProgramGraphs graphs;
  TargetSpec targets;
  FunctionDistanceMap fdist;
  double call_weight = 10.0;
};
BlockInstance random_block_instance(Rng& rng, std::size_t max_blocks);

// Floyd-Warshall over the call graph, then (sum 1 / d)^-1 over reachable
// targets.
std::map<std::string, double> oracle_function_distances(
    const CallGraph& callgraph, const std::set<std::string>& targets);

// Floyd-Warshall per CFG, then every (block, origin) pair enumerated.
std::map<BlockRef, double> oracle_block_distances(
    const ProgramGraphs& graphs, const TargetSpec& targets,
    const std::map<std::string, double>& fdist, double call_weight);

std::map<std::string, double> as_doubles(const FunctionDistanceMap& fdist);
std::map<BlockRef, double> as_doubles(const DistanceMap& distances);

}  // namespace attdist::testing

#endif  // ATTDIST_TESTS_SUPPORT_TEST_SUPPORT_H_
