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


#ifndef CONTRACTLAB_EXPERIMENT_H_
#define CONTRACTLAB_EXPERIMENT_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "contractlab/learners.h"

namespace contractlab {

inline constexpr char kLearnSchema[] = "contractlab.learn.v1";
inline constexpr char kGapSchema[] = "contractlab.hardness.gap.v1";
inline constexpr char kMixedSchema[] = "contractlab.hardness.mixed.v1";
inline constexpr char kMixedSummarySchema[] =
    "contractlab.hardness.mixed_summary.v1";

// Environment variable naming the default output directory.
inline constexpr char kOutputDirEnv[] = "CONTRACTLAB_OUT_DIR";

// Parameters of one CLI invocation. Every run is determined by the config
// and its seeds.
struct ExperimentConfig {
  std::string command;        // validate | solve | lin | learn | hardness
  std::string instance_path;
  std::string which;          // learn: action | contract; hardness: mult | add | mixed
  double H = 1;
  double eps = 0.1;
  double delta = 0.1;
  std::vector<uint64_t> seeds;
  int num_seeds = 0;
  uint64_t seed = 0;
  double sample_constant = 1;
  int64_t samples_per_action = 0;
  int64_t refinement_samples = 0;
  int64_t max_refinement_iterations = 0;
  double init_accuracy = 0;
  double oracle_accuracy = 0;
  double oracle_delta = 0;
  double hoeffding_k = 2;
  int n = 200;
  int trials = 100;
  bool general = false;
  bool insert_null = false;
  int jobs = 1;
  std::string output;

  std::string ToJson() const;
  // Strict: unknown keys raise std::invalid_argument.
  static ExperimentConfig FromJson(std::string_view text);

  // Explicit seeds, else 0..num_seeds-1, else {seed}.
  std::vector<uint64_t> SeedList() const;
  LearnerConfig ToLearnerConfig(uint64_t trial_seed) const;
};

// $CONTRACTLAB_OUT_DIR or ".".
std::string DefaultOutputDir();

// Runs one command. Returns the process exit status: 0 on success, 1 when
// the input is invalid or violates the command's assumptions.
int RunCommand(const ExperimentConfig& config, std::ostream& out,
               std::ostream& err);

}  // namespace contractlab

#endif  // CONTRACTLAB_EXPERIMENT_H_
