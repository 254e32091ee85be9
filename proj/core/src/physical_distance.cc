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

#include <deque>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "attdist/error.h"

namespace attdist {
namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

// Dense adjacency over an indexed node set, reversed so that one BFS from a
// destination yields the distance *to* it from every node.
class ReverseGraph {
 public:
  template <typename Names, typename Edges>
  ReverseGraph(const Names& names, const Edges& edges) {
    for (const auto& name : names) {
      index_.emplace(name, names_.size());
      names_.push_back(name);
    }
    preds_.resize(names_.size());
    for (const auto& [from, to] : edges) {
      if (from == to) continue;  // self-loops never shorten a path
      preds_[index_.at(to)].push_back(index_.at(from));
    }
  }

  std::size_t size() const { return names_.size(); }
  std::size_t index(const std::string& name) const { return index_.at(name); }
  const std::string& name(std::size_t i) const { return names_[i]; }

  std::vector<std::size_t> distances_to(std::size_t dest) const {
    std::vector<std::size_t> dist(size(), kUnreached);
    std::deque<std::size_t> frontier{dest};
    dist[dest] = 0;
    while (!frontier.empty()) {
      std::size_t node = frontier.front();
      frontier.pop_front();
      for (std::size_t pred : preds_[node]) {
        if (dist[pred] != kUnreached) continue;
        dist[pred] = dist[node] + 1;
        frontier.push_back(pred);
      }
    }
    return dist;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> preds_;
};

std::vector<std::string> block_ids(const Cfg& cfg) {
  std::vector<std::string> ids;
  ids.reserve(cfg.blocks.size());
  for (const auto& [id, block] : cfg.blocks) ids.push_back(id);
  return ids;
}

}  // namespace

std::string_view to_string(MetricKind kind) {
  return kind == MetricKind::kPhysical ? "physical" : "attention";
}

FunctionDistanceMap function_distances(const ProgramGraphs& graphs,
                                       const TargetSpec& targets) {
  if (targets.target_functions.empty()) {
    throw PreconditionError("function_distances: no target functions");
  }
  const CallGraph& cg = graphs.callgraph;
  ReverseGraph reverse(cg.nodes, cg.edges);

  std::vector<Rational> inverse_sum(reverse.size(), Rational(0));
  std::vector<bool> reaches(reverse.size(), false);
  for (const auto& target : targets.target_functions) {
    auto dist = reverse.distances_to(reverse.index(target));
    for (std::size_t n = 0; n < dist.size(); ++n) {
      if (dist[n] == kUnreached || dist[n] == 0) continue;
      inverse_sum[n] += Rational(1, dist[n]);
      reaches[n] = true;
    }
  }

  FunctionDistanceMap out;
  for (std::size_t n = 0; n < reverse.size(); ++n) {
    const std::string& name = reverse.name(n);
    if (targets.target_functions.contains(name)) {
      out.values.emplace(name, Rational(0));
    } else if (reaches[n]) {
      out.values.emplace(name, 1 / inverse_sum[n]);
    }
  }
  return out;
}

DistanceMap block_distances(const ProgramGraphs& graphs,
                            const TargetSpec& targets,
                            const FunctionDistanceMap& fdist,
                            const DistanceConfig& config) {
  if (config.call_weight <= 0) {
    throw PreconditionError("block_distances: call weight must be positive");
  }
  DistanceMap out;
  out.kind = MetricKind::kPhysical;

  for (const auto& [name, cfg] : graphs.cfgs) {
    // Origins: target blocks and call sites into functions with a defined
    // distance. Their values are fixed; everything else is derived from them.
    std::map<std::string, Rational> origins;
    for (const auto& [id, block] : cfg.blocks) {
      if (targets.is_target({name, id})) {
        origins.emplace(id, Rational(0));
        continue;
      }
      std::optional<Rational> nearest;
      for (const auto& callee : block.callees) {
        if (const Rational* d = fdist.find(callee)) {
          if (!nearest || *d < *nearest) nearest = *d;
        }
      }
      if (nearest) origins.emplace(id, config.call_weight * *nearest);
    }
    if (origins.empty()) continue;

    ReverseGraph reverse(block_ids(cfg), cfg.edges);
    std::vector<Rational> inverse_sum(reverse.size(), Rational(0));
    std::vector<bool> reaches(reverse.size(), false);
    for (const auto& [origin, value] : origins) {
      auto dist = reverse.distances_to(reverse.index(origin));
      for (std::size_t m = 0; m < dist.size(); ++m) {
        if (dist[m] == kUnreached || dist[m] == 0) continue;
        inverse_sum[m] += 1 / (Rational(dist[m]) + value);
        reaches[m] = true;
      }
    }
    for (std::size_t m = 0; m < reverse.size(); ++m) {
      const std::string& id = reverse.name(m);
      if (auto it = origins.find(id); it != origins.end()) {
        out.values.emplace(BlockRef{name, id}, it->second);
      } else if (reaches[m]) {
        out.values.emplace(BlockRef{name, id}, 1 / inverse_sum[m]);
      }
    }
  }
  return out;
}

}  // namespace attdist
