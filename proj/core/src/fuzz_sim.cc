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

#include "attdist/fuzz_sim.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "attdist/error.h"
#include "attdist/rng.h"
#include "json.hpp"

namespace attdist {
namespace {

using json = nlohmann::json;

// The program flattened to integer ids for the inner loop.
struct Compiled {
  struct Node {
    std::vector<std::size_t> successors;
    std::vector<std::size_t> callee_entries;
    bool target = false;
    double bias = 1.0;
    std::optional<double> distance;
  };
  std::vector<BlockRef> refs;
  std::vector<Node> nodes;
  std::size_t entry = 0;
};

Compiled compile(const SimProgram& program, const DistanceMap& distances) {
  Compiled c;
  std::map<BlockRef, std::size_t> index;
  for (const auto& [name, cfg] : program.graphs.cfgs) {
    for (const auto& [id, block] : cfg.blocks) {
      BlockRef ref{name, id};
      index.emplace(ref, c.refs.size());
      c.refs.push_back(std::move(ref));
    }
  }
  c.nodes.resize(c.refs.size());
  for (std::size_t i = 0; i < c.refs.size(); ++i) {
    const BlockRef& ref = c.refs[i];
    const Cfg& cfg = program.graphs.cfgs.at(ref.function);
    auto& node = c.nodes[i];
    for (const auto& succ : cfg.successors(ref.block)) {
      node.successors.push_back(index.at({ref.function, succ}));
    }
    for (const auto& callee : cfg.blocks.at(ref.block).callees) {
      auto callee_cfg = program.graphs.cfgs.find(callee);
      if (callee_cfg == program.graphs.cfgs.end()) continue;  // external
      node.callee_entries.push_back(
          index.at({callee, callee_cfg->second.entry}));
    }
    node.target = program.targets.is_target(ref);
    node.bias = program.bias(ref);
    if (const Rational* d = distances.find(ref)) node.distance = to_double(*d);
  }
  const Cfg& entry_cfg = program.graphs.cfgs.at(program.entry_function);
  c.entry = index.at({program.entry_function, entry_cfg.entry});
  return c;
}

struct Decision {
  std::size_t at = 0;
  std::size_t chosen = 0;
};

struct Execution {
  std::vector<std::size_t> path;
  std::vector<Decision> decisions;
  bool hit = false;
};

// Executes the program once. Decision k is taken from `replay` when the
// replayed decision was made at the same block, otherwise drawn fresh with
// probability proportional to each successor's bias.
class Walker {
 public:
  Walker(const Compiled& program, const SimSettings& settings,
         SplitMix64& rng, const std::vector<Decision>* replay)
      : program_(program), settings_(settings), rng_(rng), replay_(replay) {}

  Execution run() {
    walk(program_.entry, 0);
    return std::move(exec_);
  }

 private:
  void walk(std::size_t node, std::size_t depth) {
    for (;;) {
      if (exec_.path.size() >= settings_.max_path_blocks) {
        stop_ = true;
        return;
      }
      exec_.path.push_back(node);
      const auto& info = program_.nodes[node];
      if (info.target) {
        exec_.hit = true;
        stop_ = true;
        return;
      }
      if (depth + 1 < settings_.max_call_depth) {
        for (std::size_t callee : info.callee_entries) {
          walk(callee, depth + 1);
          if (stop_) return;
        }
      }
      if (info.successors.empty()) return;
      node = info.successors.size() == 1 ? info.successors.front()
                                         : decide(node);
    }
  }

  std::size_t decide(std::size_t at) {
    std::size_t ordinal = exec_.decisions.size();
    std::size_t chosen;
    if (replay_ != nullptr && ordinal < replay_->size() &&
        (*replay_)[ordinal].at == at) {
      chosen = (*replay_)[ordinal].chosen;
    } else {
      chosen = fresh(at);
    }
    exec_.decisions.push_back({at, chosen});
    return chosen;
  }

  std::size_t fresh(std::size_t at) {
    const auto& succ = program_.nodes[at].successors;
    double total = 0.0;
    for (std::size_t s : succ) total += program_.nodes[s].bias;
    double pick = rng_.uniform() * total;
    for (std::size_t s : succ) {
      pick -= program_.nodes[s].bias;
      if (pick < 0.0) return s;
    }
    return succ.back();
  }

  const Compiled& program_;
  const SimSettings& settings_;
  SplitMix64& rng_;
  const std::vector<Decision>* replay_;
  Execution exec_;
  bool stop_ = false;
};

struct QueuedSeed {
  Execution exec;
  double distance = 0.0;
};

double seed_distance(const Compiled& program, const Execution& exec) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t node : exec.path) {
    if (const auto& d = program.nodes[node].distance) {
      sum += *d;
      ++n;
    }
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

// Returns true if the path covers an edge not seen before.
bool record_coverage(const Execution& exec,
                     std::unordered_set<std::uint64_t>& seen) {
  bool fresh = false;
  for (std::size_t i = 0; i + 1 < exec.path.size(); ++i) {
    std::uint64_t edge = (static_cast<std::uint64_t>(exec.path[i]) << 32) |
                         static_cast<std::uint64_t>(exec.path[i + 1]);
    fresh |= seen.insert(edge).second;
  }
  if (exec.path.size() == 1) {
    fresh |= seen.insert(static_cast<std::uint64_t>(exec.path[0])).second;
  }
  return fresh;
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2;
}

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

}  // namespace

std::string default_entry_function(const ProgramGraphs& graphs) {
  std::set<std::string> called;
  for (const auto& [caller, callee] : graphs.callgraph.edges) {
    if (caller != callee) called.insert(callee);
  }
  std::vector<std::string> roots;
  for (const auto& [name, cfg] : graphs.cfgs) {
    if (!called.contains(name)) roots.push_back(name);
  }
  if (roots.size() != 1) {
    throw ValidationError("cannot infer the entry function: " +
                          std::to_string(roots.size()) +
                          " uncalled functions with a CFG; name one "
                          "explicitly");
  }
  return roots.front();
}

void validate(const SimProgram& program) {
  if (!program.graphs.cfgs.contains(program.entry_function)) {
    throw ValidationError("entry function '" + program.entry_function +
                          "' has no CFG");
  }
  auto check = [](double p, const std::string& what) {
    if (!(p > 0.0 && p <= 1.0)) {
      throw ValidationError("branch bias for " + what +
                            " must be in (0, 1], got " + std::to_string(p));
    }
  };
  check(program.default_bias, "default");
  for (const auto& [ref, p] : program.branch_bias) {
    if (program.graphs.find_block(ref) == nullptr) {
      throw ValidationError("branch bias names unknown block " +
                            to_string(ref));
    }
    check(p, to_string(ref));
  }
}

SimOutcome run_campaign(const SimProgram& program,
                        const DistanceMap& distances, std::uint64_t budget,
                        std::uint64_t rng_seed, const SimSettings& settings) {
  if (budget == 0) {
    throw PreconditionError("run_campaign: budget must be at least 1");
  }
  validate(program);
  Compiled compiled = compile(program, distances);
  if (!compiled.nodes[compiled.entry].distance) {
    throw PreconditionError("run_campaign: entry block " +
                            to_string(compiled.refs[compiled.entry]) +
                            " has no distance");
  }

  SimOutcome outcome;
  outcome.kind = distances.kind;
  outcome.budget = budget;
  outcome.rng_seed = rng_seed;

  SplitMix64 rng(rng_seed);
  std::unordered_set<std::uint64_t> coverage;
  std::vector<QueuedSeed> queue;

  auto finish = [&]() {
    for (const auto& seed : queue) {
      SimSeed out;
      out.distance = seed.distance;
      for (std::size_t node : seed.exec.path) {
        out.path.push_back(compiled.refs[node]);
      }
      outcome.queue.push_back(std::move(out));
    }
    return outcome;
  };

  Execution initial = Walker(compiled, settings, rng, nullptr).run();
  record_coverage(initial, coverage);
  bool initial_hit = initial.hit;
  queue.push_back({std::move(initial), 0.0});
  queue.back().distance = seed_distance(compiled, queue.back().exec);
  if (initial_hit) {
    outcome.iterations_to_target = 1;
    return finish();
  }

  const double tau = static_cast<double>(budget) * settings.cooling_fraction;
  std::vector<double> energy;
  for (std::uint64_t iteration = 2; iteration <= budget; ++iteration) {
    double temperature = std::exp(-static_cast<double>(iteration) / tau);
    double lo = queue.front().distance;
    double hi = lo;
    for (const auto& seed : queue) {
      lo = std::min(lo, seed.distance);
      hi = std::max(hi, seed.distance);
    }
    energy.resize(queue.size());
    double total = 0.0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      double normalized = hi > lo ? (queue[i].distance - lo) / (hi - lo) : 0.0;
      energy[i] = std::exp2(settings.energy_exponent * (1.0 - normalized) *
                            (1.0 - temperature));
      total += energy[i];
    }
    double pick = rng.uniform() * total;
    std::size_t parent = queue.size() - 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      pick -= energy[i];
      if (pick < 0.0) {
        parent = i;
        break;
      }
    }
    outcome.trace.push_back({iteration, parent, energy[parent]});

    // Copy: pushing to the queue below may reallocate.
    std::vector<Decision> replay = queue[parent].exec.decisions;
    if (!replay.empty()) {
      std::size_t pos = rng.below(replay.size());
      const auto& succ = compiled.nodes[replay[pos].at].successors;
      std::vector<std::size_t> alternatives;
      for (std::size_t s : succ) {
        if (s != replay[pos].chosen) alternatives.push_back(s);
      }
      std::size_t alt = alternatives[rng.below(alternatives.size())];
      if (rng.uniform() < compiled.nodes[alt].bias) replay[pos].chosen = alt;
    }
    Execution mutant = Walker(compiled, settings, rng, &replay).run();
    if (mutant.hit) {
      outcome.iterations_to_target = iteration;
      return finish();
    }
    if (record_coverage(mutant, coverage)) {
      double d = seed_distance(compiled, mutant);
      queue.push_back({std::move(mutant), d});
    }
  }
  return finish();
}

ArmSummary summarize(const std::vector<SimOutcome>& outcomes) {
  ArmSummary summary;
  std::vector<double> values;
  double sum = 0.0;
  for (const auto& o : outcomes) {
    auto v = static_cast<double>(o.iterations_or_budget());
    values.push_back(v);
    sum += v;
    if (o.timed_out()) ++summary.timeouts;
  }
  summary.median = median_of(values);
  summary.mean = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
  return summary;
}

ExperimentResult run_experiment(const SimProgram& program,
                                const DistanceMap& physical,
                                const DistanceMap& attention,
                                std::size_t runs, std::uint64_t budget,
                                std::uint64_t rng_base,
                                const SimSettings& settings) {
  if (runs == 0) throw PreconditionError("run_experiment: runs must be >= 1");
  if (budget == 0) {
    throw PreconditionError("run_experiment: budget must be at least 1");
  }
  ExperimentResult result;
  result.budget = budget;
  result.rng_base = rng_base;
  result.physical.resize(runs);
  result.attention.resize(runs);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&]() {
    for (std::size_t job; (job = next.fetch_add(1)) < 2 * runs;) {
      std::size_t run = job / 2;
      std::uint64_t seed = rng_base + run + 1;
      try {
        if (job % 2 == 0) {
          result.physical[run] =
              run_campaign(program, physical, budget, seed, settings);
        } else {
          result.attention[run] =
              run_campaign(program, attention, budget, seed, settings);
        }
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::size_t threads = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, 2 * runs);
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  result.physical_summary = summarize(result.physical);
  result.attention_summary = summarize(result.attention);
  return result;
}

ExperimentConfig parse_experiment_config(std::string_view text,
                                         const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(origin, std::string("malformed JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) throw ParseError(origin, "expected a JSON object");
  ExperimentConfig config;
  try {
    auto count = [&](const char* name, auto& field) {
      if (auto it = doc.find(name); it != doc.end()) {
        if (!it->is_number_unsigned()) {
          throw ParseError(origin, std::string("'") + name +
                                       "' must be a non-negative integer");
        }
        field = it->get<std::remove_reference_t<decltype(field)>>();
      }
    };
    count("runs", config.runs);
    count("budget", config.budget);
    count("rng_base", config.rng_base);
    if (auto it = doc.find("default_bias"); it != doc.end()) {
      if (!it->is_number()) {
        throw ParseError(origin, "'default_bias' must be a number");
      }
      config.default_bias = it->get<double>();
    }
    if (auto it = doc.find("entry"); it != doc.end()) {
      if (!it->is_string()) throw ParseError(origin, "'entry' must be a string");
      config.entry = it->get<std::string>();
    }
    if (auto it = doc.find("branch_bias"); it != doc.end()) {
      if (!it->is_object()) {
        throw ParseError(origin, "'branch_bias' must be an object");
      }
      for (const auto& [function, blocks] : it->items()) {
        if (!blocks.is_object()) {
          throw ParseError(origin, "branch_bias['" + function +
                                       "'] must be an object");
        }
        for (const auto& [block, p] : blocks.items()) {
          if (!p.is_number()) {
            throw ParseError(origin, "branch_bias['" + function + "']['" +
                                         block + "'] must be a number");
          }
          config.branch_bias[{function, block}] = p.get<double>();
        }
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(origin, e.what());
  }
  if (config.runs == 0) throw ValidationError(origin + ": 'runs' must be >= 1");
  if (config.budget == 0) {
    throw ValidationError(origin + ": 'budget' must be >= 1");
  }
  return config;
}

SimProgram make_sim_program(ProgramGraphs graphs, TargetSpec targets,
                            const ExperimentConfig& config) {
  SimProgram program;
  program.entry_function =
      config.entry ? *config.entry : default_entry_function(graphs);
  program.graphs = std::move(graphs);
  program.targets = std::move(targets);
  program.branch_bias = config.branch_bias;
  program.default_bias = config.default_bias;
  validate(program);
  return program;
}

std::string experiment_json(const ExperimentResult& result) {
  auto arm = [](const ArmSummary& s) {
    return json{{"median", s.median}, {"mean", s.mean},
                {"timeouts", s.timeouts}};
  };
  json doc{{"runs", result.physical.size()},
           {"budget", result.budget},
           {"rng_base", result.rng_base},
           {"physical", arm(result.physical_summary)},
           {"attention", arm(result.attention_summary)}};
  if (result.attention_summary.median > 0) {
    doc["median_ratio"] =
        result.physical_summary.median / result.attention_summary.median;
  }
  if (result.attention_summary.mean > 0) {
    doc["mean_ratio"] =
        result.physical_summary.mean / result.attention_summary.mean;
  }
  return doc.dump(2) + "\n";
}

std::string experiment_runs_csv(const ExperimentResult& result) {
  std::string out = "run,rng_seed,metric,iterations,timeout\n";
  for (std::size_t i = 0; i < result.physical.size(); ++i) {
    for (const auto* o : {&result.physical[i], &result.attention[i]}) {
      out += std::to_string(i + 1) + "," + std::to_string(o->rng_seed) + "," +
             std::string(to_string(o->kind)) + "," +
             std::to_string(o->iterations_or_budget()) + "," +
             (o->timed_out() ? "1" : "0") + "\n";
    }
  }
  return out;
}

std::string trace_csv(const SimOutcome& outcome) {
  std::string out = "iteration,seed,energy\n";
  for (const auto& t : outcome.trace) {
    out += std::to_string(t.iteration) + "," + std::to_string(t.seed) + "," +
           fixed(t.energy, 6) + "\n";
  }
  return out;
}

}  // namespace attdist
