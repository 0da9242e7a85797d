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


#ifndef CONTRACTLAB_LEARNERS_H_
#define CONTRACTLAB_LEARNERS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "contractlab/agent.h"
#include "contractlab/instance.h"
#include "contractlab/oracle.h"
#include "contractlab/piecewise_linear.h"

namespace contractlab {

// Zero-valued overrides select the formula defaults.
struct LearnerConfig {
  double eps = 0.1;
  double delta = 0.1;
  double H = 1;
  double sample_constant = 1;
  int64_t max_refinement_iterations = 0;
  uint64_t seed = 0;

  // Action-query samples per action.
  int64_t samples_per_action = 0;
  // Target accuracy of each learned CCDF (default eps^2 / (288 m H)).
  double init_accuracy = 0;
  // Accuracy of each subgradient query (default init_accuracy^4 / 64).
  double oracle_accuracy = 0;
  // Failure probability of each subgradient query (default: delta split
  // evenly over all queries of the initialization).
  double oracle_delta = 0;
  // Contract queries per refinement iteration.
  int64_t refinement_samples = 0;
  double hoeffding_k = kDefaultHoeffdingK;

  // Throws std::invalid_argument on out-of-range fields.
  void Validate() const;
};

// Learned instance: CCDF curves on [min_cost, 1] plus explicit cost-0
// actions. zero_cost_actions[0] is the initialization action F~(.|min_cost).
struct EmpiricalInstance {
  OutcomeSpace outcomes;
  std::vector<PiecewiseLinearFn> ccdf;
  double min_cost = 0;
  std::vector<Distribution> zero_cost_actions;

  int num_outcomes() const { return outcomes.size(); }
  // Zero-cost actions first, then one candidate per breakpoint cost.
  ActionMenu Menu() const;
};

struct IterationDiagnostics {
  int iteration = 0;
  double empirical_opt = 0;
  double estimated_utility = 0;
  int64_t samples = 0;
  Contract contract;
  bool accepted = false;
};

struct LearnerReport {
  Contract contract;
  double estimated_utility = 0;
  std::optional<double> true_utility;
  int64_t query_count = 0;
  int64_t init_queries = 0;
  // Samples per action (action mode) or per refinement iteration.
  int64_t samples_per_unit = 0;
  int iterations = 0;
  int64_t iteration_cap = 0;
  bool bound_exceeded = false;
  std::vector<IterationDiagnostics> diagnostics;
  std::vector<Distribution> appended;
};

// ceil(C H^2 (m + ln(n/delta)) / eps^4) unless overridden.
int64_t ActionQuerySamples(const LearnerConfig& config, int m, int n);

LearnerReport LearnActionQuery(OracleSession& session,
                               std::span<const double> costs,
                               const LearnerConfig& config);

struct InitializationPlan {
  double accuracy = 0;
  double oracle_accuracy = 0;
  double oracle_delta = 0;
  int64_t slopes_per_curve = 0;
  int64_t queries_per_slope = 0;
  int64_t total_queries = 0;
};
InitializationPlan PlanInitialization(const LearnerConfig& config, int m);

// Refuses plans above this many queries.
inline constexpr int64_t kMaxPlannedQueries = 2'000'000'000;

EmpiricalInstance InitializeContractQuery(OracleSession& session,
                                          const LearnerConfig& config);

// ceil(C m^3 H^2 ln(mH/(delta eps)) / eps^4) unless overridden.
int64_t RefinementSamples(const LearnerConfig& config, int m);
// min(config cap, ceil(576 m^2 H / eps^2)).
int64_t RefinementIterationCap(const LearnerConfig& config, int m);

LearnerReport RefineContractQuery(OracleSession& session,
                                  EmpiricalInstance& empirical,
                                  const LearnerConfig& config);

LearnerReport LearnContractQuery(OracleSession& session,
                                 const LearnerConfig& config);

}  // namespace contractlab

#endif  // CONTRACTLAB_LEARNERS_H_
