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

#ifndef ATTDIST_PHYSICAL_DISTANCE_H_
#define ATTDIST_PHYSICAL_DISTANCE_H_

#include <map>
#include <string>
#include <string_view>

#include "attdist/graph.h"
#include "attdist/rational.h"
#include "attdist/targets.h"

namespace attdist {

enum class MetricKind { kPhysical, kAttention };

std::string_view to_string(MetricKind kind);

// Function-level target distance. A function with no call-graph path to
// any target function has no entry.
struct FunctionDistanceMap {
  std::map<std::string, Rational> values;

  const Rational* find(const std::string& function) const {
    auto it = values.find(function);
    return it == values.end() ? nullptr : &it->second;
  }
};

// Per-block target distance. Absent key = unreachable / undefined.
struct DistanceMap {
  MetricKind kind = MetricKind::kPhysical;
  std::map<BlockRef, Rational> values;

  bool operator==(const DistanceMap&) const = default;

  const Rational* find(const BlockRef& ref) const {
    auto it = values.find(ref);
    return it == values.end() ? nullptr : &it->second;
  }
};

struct DistanceConfig {
  // Multiplier applied to the callee's function distance at a call site.
  Rational call_weight = 10;
};

// d_f(n) = (sum over reachable targets t of 1 / shortest_path(n, t))^-1,
// with 0 for target functions themselves. Shortest paths count call graph
// edges. Throws PreconditionError when there are no target functions.
FunctionDistanceMap function_distances(const ProgramGraphs& graphs,
                                       const TargetSpec& targets);

// Block distance within each CFG:
//   target block                       -> 0
//   block calling n with defined d_f(n) -> c * min d_f(n)
//   otherwise -> (sum over reachable target/call-site blocks t of
//                  1 / (cfg_path(m, t) + distance(t)))^-1
// Blocks with no such t are absent. Throws PreconditionError if
// call_weight <= 0.
DistanceMap block_distances(const ProgramGraphs& graphs,
                            const TargetSpec& targets,
                            const FunctionDistanceMap& fdist,
                            const DistanceConfig& config = {});

}  // namespace attdist

#endif  // ATTDIST_PHYSICAL_DISTANCE_H_
