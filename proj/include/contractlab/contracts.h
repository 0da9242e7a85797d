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


#ifndef CONTRACTLAB_CONTRACTS_H_
#define CONTRACTLAB_CONTRACTS_H_

#include <optional>
#include <span>
#include <vector>

#include "contractlab/agent.h"
#include "contractlab/instance.h"

namespace contractlab {

struct OptimalContractResult {
  Contract contract;
  // Index into the instance's actions or the candidate menu.
  int incentivized_action = 0;
  double cost = 0;
  double principal_utility = 0;
  double bound = 0;
  // Per action: best utility when the action is implemented, or nullopt if no
  // contract within the bound implements it.
  std::vector<std::optional<double>> per_action_utilities;
};

// One LP per action minimizing expected payment subject to incentive
// compatibility and 0 <= p <= H. Ties go to the smallest total payment.
OptimalContractResult OptimalBoundedContract(const FiniteInstance& instance,
                                             double H);

// Smallest positive pmf entry across all actions, or nullopt.
std::optional<double> SmallestPositiveProbability(
    const FiniteInstance& instance);

// Unbounded optimum via H = 1/eta.
OptimalContractResult OptimalGeneralContract(const FiniteInstance& instance);

// Increment-variable LP over every candidate of the menu. Payments are
// recovered by prefix sums; prefix-sum rows keep them in [0, H].
OptimalContractResult OptimalBoundedContractMenu(const ActionMenu& menu,
                                                 double H);
OptimalContractResult OptimalBoundedContractCcdf(const CcdfInstance& instance,
                                                 double H);

// p + (eps/2)(v - p). Throws for eps outside (0, 1/2].
Contract Robustify(const Contract& contract, const OutcomeSpace& outcomes,
                   double eps);

struct LinearContractResult {
  double rho = 0;
  double utility = 0;
  int action = 0;
};
LinearContractResult OptimalLinearContract(const FiniteInstance& instance);

enum class DistanceMetric { kTotalVariation, kKolmogorov };

struct EpsApproximation {
  bool exists = false;
  std::vector<double> weights;
  double cost_gap = 0;
  double distance = 0;
};

// Searches for a mixture of pool actions within eps^2/16 in cost and
// eps^2/(32H) in tv (eps^2/(32mH) in Kolmogorov distance) of the target.
EpsApproximation CheckEpsApproximation(double target_cost,
                                       const Distribution& target,
                                       const ActionMenu& pool, double eps,
                                       double H, DistanceMetric metric);
EpsApproximation CheckEpsApproximation(double target_cost,
                                       const Distribution& target,
                                       const FiniteInstance& pool, double eps,
                                       double H, DistanceMetric metric);

}  // namespace contractlab

#endif  // CONTRACTLAB_CONTRACTS_H_
