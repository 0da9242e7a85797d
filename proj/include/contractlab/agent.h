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


#ifndef CONTRACTLAB_AGENT_H_
#define CONTRACTLAB_AGENT_H_

#include <span>
#include <vector>

#include "contractlab/instance.h"

namespace contractlab {

// A finite list of candidate actions in both pmf and CCDF form. Finite
// instances map one-to-one; CCDF instances contribute one candidate per
// breakpoint cost (plus 0 and cost_max), which suffices for every contract.
class ActionMenu {
 public:
  ActionMenu(std::vector<double> values, int capacity = 0);

  static ActionMenu FromFinite(const FiniteInstance& instance);
  static ActionMenu FromCcdf(const CcdfInstance& instance);

  // ccdf holds (F(0), ..., F(m-1)) with F(0) = 1.
  void AddFromCcdf(double cost, std::span<const double> ccdf);
  void AddFromPmf(double cost, std::span<const double> pmf);

  int size() const { return static_cast<int>(costs_.size()); }
  int num_outcomes() const { return static_cast<int>(values_.size()); }
  std::span<const double> values() const { return values_; }
  double cost(int a) const { return costs_[a]; }
  std::span<const double> pmf(int a) const {
    return {pmf_.data() + static_cast<size_t>(a) * values_.size(),
            values_.size()};
  }
  std::span<const double> ccdf(int a) const {
    return {ccdf_.data() + static_cast<size_t>(a) * values_.size(),
            values_.size()};
  }
  double expected_value(int a) const { return expected_value_[a]; }

 private:
  std::vector<double> values_;
  std::vector<double> costs_;
  std::vector<double> pmf_;
  std::vector<double> ccdf_;
  std::vector<double> expected_value_;
};

struct BestResponse {
  // Index into the action list (finite) or candidate menu (CCDF).
  int action = -1;
  double cost = 0;
  double agent_utility = 0;
  double principal_utility = 0;
  std::vector<int> tied_set;
};

// Maximizes expected payment minus cost; within kTieTolerance of the max,
// prefers higher principal utility, then the lower index.
BestResponse BestResponseOver(const ActionMenu& menu,
                              std::span<const double> payments);
// Index-only variant of BestResponseOver for hot loops.
int BestResponseIndex(const ActionMenu& menu, std::span<const double> payments);

BestResponse BestResponseFinite(const FiniteInstance& instance,
                                const Contract& contract);
BestResponse BestResponseCcdf(const CcdfInstance& instance,
                              const Contract& contract);

double PrincipalUtility(const FiniteInstance& instance,
                        const Contract& contract);
double PrincipalUtility(const CcdfInstance& instance, const Contract& contract);

}  // namespace contractlab

#endif  // CONTRACTLAB_AGENT_H_
