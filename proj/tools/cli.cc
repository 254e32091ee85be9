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

#include "cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <string>
#include <utility>

#include "attdist/attention_distance.h"
#include "attdist/attention_scoring.h"
#include "attdist/distance_io.h"
#include "attdist/distribution.h"
#include "attdist/error.h"
#include "attdist/fuzz_sim.h"
#include "attdist/graph_io.h"
#include "attdist/physical_distance.h"
#include "attdist/rational.h"
#include "attdist/targets.h"

namespace attdist::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string callgraph;
  std::string cfg_dir;
  std::string targets;
  std::string scores;
  std::string out;
  std::string phys_out;
  std::string dist;
  std::string phys;
  std::string att;
  std::string config;
  std::string freq_out;
  std::string runs_csv;
  double c = 10.0;
  double sa = 1.5;
  double cap = kDefaultCapFraction;
  bool json = false;
};

// Errors raised after a file was read may not mention it; tag them.
template <typename Fn>
auto in_file(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw ValidationError(path + ": " + what);
  } catch (const PreconditionError& e) {
    std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw ValidationError(path + ": " + what);
  }
}

void check_flags(const Options& o) {
  if (!(o.c > 0.0)) throw UsageError("--c must be > 0");
  if (!(o.sa > 1.0)) throw UsageError("--sa must be > 1");
  if (!(o.cap > 0.0 && o.cap <= 1.0)) throw UsageError("--cap must be in (0, 1]");
}

struct Loaded {
  ProgramGraphs graphs;
  TargetSpec targets;
};

Loaded load_inputs(const Options& o) {
  Loaded in;
  in.graphs = load_program(o.callgraph, o.cfg_dir);
  auto locations = load_targets(o.targets);
  in.targets = in_file(o.targets,
                       [&] { return resolve_targets(in.graphs, locations); });
  return in;
}

DistanceMap physical_map(const Loaded& in, const Options& o) {
  auto fdist = function_distances(in.graphs, in.targets);
  DistanceConfig config;
  config.call_weight = from_double(o.c);
  return block_distances(in.graphs, in.targets, fdist, config);
}

int cmd_phys(const Options& o, std::ostream&) {
  check_flags(o);
  auto in = load_inputs(o);
  write_text_file(o.out, format_distance_csv(in.graphs, physical_map(in, o)));
  return kExitOk;
}

int cmd_att(const Options& o, std::ostream&) {
  check_flags(o);
  auto in = load_inputs(o);
  auto lines = load_line_scores(o.scores);
  auto physical = physical_map(in, o);
  auto attention = in_file(o.scores, [&] {
    auto raw = restrict_to_population(block_raw_scores(in.graphs, lines),
                                      physical);
    return attention_distances(physical, normalize_scores(raw, o.cap),
                               AttentionConfig{o.sa});
  });
  if (!o.phys_out.empty()) {
    write_text_file(o.phys_out, format_distance_csv(in.graphs, physical));
  }
  write_text_file(o.out, format_distance_csv(in.graphs, attention));
  return kExitOk;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  auto rows = load_distance_csv(o.dist);
  auto report = in_file(o.dist, [&] { return analyze(rows); });
  std::string text = o.json ? report_json(report) : report_table(report);
  if (o.out.empty()) {
    out << text;
  } else {
    write_text_file(o.out, text);
  }
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  auto physical = load_distance_csv(o.phys);
  auto attention = load_distance_csv(o.att);
  auto report = in_file(o.att, [&] { return compare(physical, attention); });
  std::string text = o.json ? comparison_json(report)
                            : comparison_table(report);
  if (o.out.empty()) {
    out << text;
  } else {
    write_text_file(o.out, text);
  }
  if (!o.freq_out.empty()) write_text_file(o.freq_out, frequency_csv(report));
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  auto in = load_inputs(o);
  auto config = parse_experiment_config(read_file(o.config), o.config);
  auto program = in_file(o.config, [&] {
    return make_sim_program(in.graphs, in.targets, config);
  });
  auto physical = bind_distance_rows(in.graphs, load_distance_csv(o.phys),
                                     MetricKind::kPhysical, o.phys);
  auto attention = bind_distance_rows(in.graphs, load_distance_csv(o.att),
                                      MetricKind::kAttention, o.att);
  auto result = in_file(o.phys, [&] {
    return run_experiment(program, physical, attention, config.runs,
                          config.budget, config.rng_base);
  });
  std::string summary = experiment_json(result);
  if (o.out.empty()) {
    out << summary;
  } else {
    write_text_file(o.out, summary);
  }
  if (!o.runs_csv.empty()) {
    write_text_file(o.runs_csv, experiment_runs_csv(result));
  }
  return kExitOk;
}

void add_program_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--callgraph", o.callgraph, "call graph JSON")->required();
  cmd->add_option("--cfg-dir", o.cfg_dir, "directory of CFG JSON files")
      ->required();
  cmd->add_option("--targets", o.targets, "targets file")->required();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Physical and attention distance toolkit for directed fuzzing",
               "attdist"};
  app.require_subcommand(1);

  auto* phys = app.add_subcommand("phys", "write physical block distances");
  add_program_flags(phys, o);
  phys->add_option("--out", o.out, "distance CSV to write")->required();
  phys->add_option("--c", o.c, "transition block weight")
      ->capture_default_str();

  auto* att = app.add_subcommand("att", "write attention block distances");
  add_program_flags(att, o);
  att->add_option("--scores", o.scores, "line score CSV")->required();
  att->add_option("--out", o.out, "distance CSV to write")->required();
  att->add_option("--phys-out", o.phys_out,
                  "also write the physical distances here");
  att->add_option("--c", o.c, "transition block weight")
      ->capture_default_str();
  att->add_option("--sa", o.sa, "attention scale, > 1")->capture_default_str();
  att->add_option("--cap", o.cap, "soft cap fraction in (0, 1]")
      ->capture_default_str();

  auto* ana = app.add_subcommand("analyze", "report a distance distribution");
  ana->add_option("--dist", o.dist, "distance CSV")->required();
  ana->add_flag("--json", o.json, "emit JSON instead of a table");
  ana->add_option("--out", o.out, "write the report here instead of stdout");

  auto* cmp = app.add_subcommand("compare", "compare physical and attention");
  cmp->add_option("--phys", o.phys, "physical distance CSV")->required();
  cmp->add_option("--att", o.att, "attention distance CSV")->required();
  cmp->add_flag("--json", o.json, "emit JSON instead of a table");
  cmp->add_option("--out", o.out, "write the report here instead of stdout");
  cmp->add_option("--freq-out", o.freq_out, "per-value frequency CSV");

  auto* sim = app.add_subcommand("simulate", "paired fuzzing simulation");
  add_program_flags(sim, o);
  sim->add_option("--phys", o.phys, "physical distance CSV")->required();
  sim->add_option("--att", o.att, "attention distance CSV")->required();
  sim->add_option("--config", o.config, "experiment JSON")->required();
  sim->add_option("--out", o.out, "summary JSON, stdout if omitted");
  sim->add_option("--runs-csv", o.runs_csv, "per-run CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "attdist: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (phys->parsed()) return cmd_phys(o, out);
    if (att->parsed()) return cmd_att(o, out);
    if (ana->parsed()) return cmd_analyze(o, out);
    if (cmp->parsed()) return cmd_compare(o, out);
    return cmd_simulate(o, out);
  } catch (const UsageError& e) {
    err << "attdist: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "attdist: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "attdist: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace attdist::cli
