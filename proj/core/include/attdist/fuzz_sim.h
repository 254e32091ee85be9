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

#ifndef ATTDIST_FUZZ_SIM_H_
#define ATTDIST_FUZZ_SIM_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "attdist/graph.h"
#include "attdist/physical_distance.h"
#include "attdist/targets.h"

namespace attdist {

// A program for the simulated campaign. branch_bias(b) is the chance that a
// mutation which steers execution into b actually gets there; blocks not
// listed use default_bias.
struct SimProgram {
  ProgramGraphs graphs;
  TargetSpec targets;
  std::string entry_function;
  std::map<BlockRef, double> branch_bias;
  double default_bias = 1.0;

  double bias(const BlockRef& ref) const {
    auto it = branch_bias.find(ref);
    return it == branch_bias.end() ? default_bias : it->second;
  }
};

// The single function with a CFG that no other function calls. Throws
// ValidationError if there is none or more than one.
std::string default_entry_function(const ProgramGraphs& graphs);

// Checks the entry function and that every probability is in (0, 1].
void validate(const SimProgram& program);

// Fixed schedule constants. Energy of a queued seed is
//   2^(energy_exponent * (1 - d) * (1 - T)),  T = exp(-iteration / tau),
// with d its distance min-max normalized over the queue and
// tau = budget * cooling_fraction.
struct SimSettings {
  double energy_exponent = 10.0;
  double cooling_fraction = 0.2;
  std::size_t max_call_depth = 6;
  std::size_t max_path_blocks = 512;
};

struct SimSeed {
  std::vector<BlockRef> path;  // starts at the entry function's entry block
  double distance = 0.0;       // mean of the defined block distances on path
};

struct TraceEntry {
  std::uint64_t iteration = 0;
  std::size_t seed = 0;  // queue index of the mutated parent
  double energy = 0.0;   // its energy at selection time

  bool operator==(const TraceEntry&) const = default;
};

struct SimOutcome {
  MetricKind kind = MetricKind::kPhysical;
  std::optional<std::uint64_t> iterations_to_target;  // nullopt = timeout
  std::uint64_t budget = 0;
  std::uint64_t rng_seed = 0;
  std::vector<TraceEntry> trace;
  std::vector<SimSeed> queue;

  bool timed_out() const { return !iterations_to_target.has_value(); }
  // Timeouts count as the full budget.
  std::uint64_t iterations_or_budget() const {
    return iterations_to_target.value_or(budget);
  }
};

// One deterministic campaign. Iteration 1 executes the initial seed; each
// later iteration picks a queued seed by energy, flips one branch decision
// and re-executes. Stops at the first execution that reaches a target
// block. Throws PreconditionError if budget == 0 or the entry block has no
// distance.
SimOutcome run_campaign(const SimProgram& program,
                        const DistanceMap& distances, std::uint64_t budget,
                        std::uint64_t rng_seed,
                        const SimSettings& settings = {});

struct ArmSummary {
  double median = 0.0;
  double mean = 0.0;
  std::size_t timeouts = 0;
};

struct ExperimentResult {
  std::uint64_t budget = 0;
  std::uint64_t rng_base = 0;
  std::vector<SimOutcome> physical;   // run i uses rng_seed rng_base + i + 1
  std::vector<SimOutcome> attention;  // same seeds, paired with physical
  ArmSummary physical_summary;
  ArmSummary attention_summary;
};

ArmSummary summarize(const std::vector<SimOutcome>& outcomes);

// Paired design: both arms of run i share rng seed rng_base + i + 1. Runs
// execute in parallel; results do not depend on scheduling.
ExperimentResult run_experiment(const SimProgram& program,
                                const DistanceMap& physical,
                                const DistanceMap& attention,
                                std::size_t runs, std::uint64_t budget,
                                std::uint64_t rng_base = 0,
                                const SimSettings& settings = {});

// Experiment config file:
//   {"runs": 30, "budget": 10000, "rng_base": 0, "default_bias": 1.0,
//    "entry": "main", "branch_bias": {"fn": {"block": 0.05}}}
// Every field is optional.
struct ExperimentConfig {
  std::size_t runs = 30;
  std::uint64_t budget = 10000;
  std::uint64_t rng_base = 0;
  double default_bias = 1.0;
  std::optional<std::string> entry;
  std::map<BlockRef, double> branch_bias;
};

ExperimentConfig parse_experiment_config(std::string_view text,
                                         const std::string& origin);

// Builds and validates the SimProgram the config describes.
SimProgram make_sim_program(ProgramGraphs graphs, TargetSpec targets,
                            const ExperimentConfig& config);

std::string experiment_json(const ExperimentResult& result);
// "run,rng_seed,metric,iterations,timeout"
std::string experiment_runs_csv(const ExperimentResult& result);
// "iteration,seed,energy" for one campaign.
std::string trace_csv(const SimOutcome& outcome);

}  // namespace attdist

#endif  // ATTDIST_FUZZ_SIM_H_
