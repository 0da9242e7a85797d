// Copyright 2026 The contractlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// contractlab <validate|solve|lin|learn|hardness> [options]

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "contractlab/experiment.h"
#include "contractlab/instance_io.h"

namespace {

using contractlab::ExperimentConfig;

void AddCommon(CLI::App* sub, ExperimentConfig& c) {
  sub->add_option("-o,--output", c.output, "output file or directory");
}

void AddLearnerFlags(CLI::App* sub, ExperimentConfig& c) {
  sub->add_option("--eps", c.eps, "target additive error");
  sub->add_option("--delta", c.delta, "failure probability");
  sub->add_option("--seeds", c.seeds, "explicit seed list")->delimiter(',');
  sub->add_option("--num-seeds", c.num_seeds, "use seeds 0..N-1");
  sub->add_option("--seed", c.seed, "single seed");
  sub->add_option("-C,--sample-constant", c.sample_constant);
  sub->add_option("--samples-per-action", c.samples_per_action);
  sub->add_option("--refinement-samples", c.refinement_samples);
  sub->add_option("--max-iterations", c.max_refinement_iterations);
  sub->add_option("--init-accuracy", c.init_accuracy);
  sub->add_option("--oracle-accuracy", c.oracle_accuracy);
  sub->add_option("--oracle-delta", c.oracle_delta);
  sub->add_option("--hoeffding-k", c.hoeffding_k);
  sub->add_option("-j,--jobs", c.jobs, "worker threads");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"contract design experiments"};
  app.require_subcommand(1);
  ExperimentConfig c;
  std::string config_path;
  std::string write_config;
  app.add_option("--config", config_path, "load options from a JSON config");
  app.add_option("--write-config", write_config,
                 "write the effective config to a file and exit");

  CLI::App* validate = app.add_subcommand("validate", "check an instance");
  validate->add_option("instance", c.instance_path)->required();
  validate->add_flag("--insert-null", c.insert_null);

  CLI::App* solve = app.add_subcommand("solve", "optimal contract");
  solve->add_option("instance", c.instance_path)->required();
  solve->add_option("-H,--bound", c.H, "payment bound");
  solve->add_flag("--general", c.general, "use the bound 1/eta");
  solve->add_flag("--insert-null", c.insert_null);
  AddCommon(solve, c);

  CLI::App* lin = app.add_subcommand("lin", "optimal linear contract");
  lin->add_option("instance", c.instance_path)->required();
  lin->add_flag("--insert-null", c.insert_null);

  CLI::App* learn = app.add_subcommand("learn", "query learners");
  learn->add_option("mode", c.which, "action or contract")
      ->required()
      ->check(CLI::IsMember({"action", "contract"}));
  learn->add_option("instance", c.instance_path)->required();
  learn->add_option("-H,--bound", c.H, "payment bound");
  learn->add_flag("--insert-null", c.insert_null);
  AddLearnerFlags(learn, c);
  AddCommon(learn, c);

  CLI::App* hardness = app.add_subcommand("hardness", "gap constructions");
  hardness->add_option("family", c.which, "mult, add or mixed")
      ->required()
      ->check(CLI::IsMember({"mult", "add", "mixed"}));
  hardness->add_option("--eps", c.eps);
  hardness->add_option("-H,--bound", c.H);
  hardness->add_option("-n,--actions", c.n);
  hardness->add_option("--trials", c.trials);
  hardness->add_option("--seed", c.seed);
  AddCommon(hardness, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) {
      ExperimentConfig base =
          ExperimentConfig::FromJson(contractlab::ReadFile(config_path));
      // Command-line values win over the file for options actually given.
      CLI::App* sub = app.get_subcommands().front();
      auto given = [&](const char* name) {
        const CLI::Option* opt = sub->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
      };
      ExperimentConfig merged = base;
      merged.command = sub->get_name();
      if (given("instance")) merged.instance_path = c.instance_path;
      if (given("mode") || given("family")) merged.which = c.which;
      if (given("--bound")) merged.H = c.H;
      if (given("--eps")) merged.eps = c.eps;
      if (given("--delta")) merged.delta = c.delta;
      if (given("--seeds")) merged.seeds = c.seeds;
      if (given("--num-seeds")) merged.num_seeds = c.num_seeds;
      if (given("--seed")) merged.seed = c.seed;
      if (given("--sample-constant")) merged.sample_constant = c.sample_constant;
      if (given("--samples-per-action")) {
        merged.samples_per_action = c.samples_per_action;
      }
      if (given("--refinement-samples")) {
        merged.refinement_samples = c.refinement_samples;
      }
      if (given("--max-iterations")) {
        merged.max_refinement_iterations = c.max_refinement_iterations;
      }
      if (given("--init-accuracy")) merged.init_accuracy = c.init_accuracy;
      if (given("--oracle-accuracy")) merged.oracle_accuracy = c.oracle_accuracy;
      if (given("--oracle-delta")) merged.oracle_delta = c.oracle_delta;
      if (given("--hoeffding-k")) merged.hoeffding_k = c.hoeffding_k;
      if (given("--actions")) merged.n = c.n;
      if (given("--trials")) merged.trials = c.trials;
      if (given("--general")) merged.general = c.general;
      if (given("--insert-null")) merged.insert_null = c.insert_null;
      if (given("--jobs")) merged.jobs = c.jobs;
      if (given("--output")) merged.output = c.output;
      c = merged;
    } else {
      c.command = app.get_subcommands().front()->get_name();
    }
    if (!write_config.empty()) {
      contractlab::WriteFile(write_config, c.ToJson());
      return 0;
    }
    return contractlab::RunCommand(c, std::cout, std::cerr);
  } catch (const contractlab::InstanceFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
