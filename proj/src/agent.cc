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


#include "contractlab/agent.h"

#include <stdexcept>
#include <string>
#include <utility>

#include "contractlab/numeric.h"

namespace contractlab {
namespace {

void CheckSize(const ActionMenu& menu, std::span<const double> payments) {
  if (static_cast<int>(payments.size()) != menu.num_outcomes()) {
    throw std::invalid_argument(
        "contract has " + std::to_string(payments.size()) +
        " payments, instance has " + std::to_string(menu.num_outcomes()) +
        " outcomes");
  }
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

ActionMenu::ActionMenu(std::vector<double> values, int capacity)
    : values_(std::move(values)) {
  costs_.reserve(capacity);
  pmf_.reserve(static_cast<size_t>(capacity) * values_.size());
  ccdf_.reserve(static_cast<size_t>(capacity) * values_.size());
  expected_value_.reserve(capacity);
}

ActionMenu ActionMenu::FromFinite(const FiniteInstance& instance) {
  ActionMenu menu(instance.outcomes.values, instance.num_actions());
  for (const Action& a : instance.actions) {
    if (static_cast<int>(a.pmf.size()) != instance.num_outcomes()) {
      throw std::invalid_argument("pmf size mismatch");
    }
    menu.AddFromPmf(a.cost, a.pmf);
  }
  return menu;
}

ActionMenu ActionMenu::FromCcdf(const CcdfInstance& instance) {
  std::vector<double> costs = instance.CandidateCosts();
  ActionMenu menu(instance.outcomes.values, static_cast<int>(costs.size()));
  for (double c : costs) menu.AddFromCcdf(c, instance.CcdfVector(c));
  return menu;
}

void ActionMenu::AddFromCcdf(double cost, std::span<const double> ccdf) {
  std::vector<double> pmf = CcdfToPmf(ccdf);
  costs_.push_back(cost);
  pmf_.insert(pmf_.end(), pmf.begin(), pmf.end());
  ccdf_.insert(ccdf_.end(), ccdf.begin(), ccdf.end());
  expected_value_.push_back(Dot(pmf, values_));
}

void ActionMenu::AddFromPmf(double cost, std::span<const double> pmf) {
  std::vector<double> ccdf = PmfToCcdf(pmf);
  costs_.push_back(cost);
  pmf_.insert(pmf_.end(), pmf.begin(), pmf.end());
  ccdf_.insert(ccdf_.end(), ccdf.begin(), ccdf.end());
  expected_value_.push_back(Dot(pmf, values_));
}

int BestResponseIndex(const ActionMenu& menu,
                      std::span<const double> payments) {
  CheckSize(menu, payments);
  const int n = menu.size();
  if (n == 0) throw std::invalid_argument("empty action menu");
  double best = -1e300;
  for (int a = 0; a < n; ++a) {
    best = std::max(best, Dot(menu.pmf(a), payments) - menu.cost(a));
  }
  int chosen = -1;
  double chosen_principal = -1e300;
  for (int a = 0; a < n; ++a) {
    double pay = Dot(menu.pmf(a), payments);
    if (pay - menu.cost(a) < best - kTieTolerance) continue;
    double principal = menu.expected_value(a) - pay;
    if (chosen < 0 || principal > chosen_principal) {
      chosen = a;
      chosen_principal = principal;
    }
  }
  return chosen;
}

BestResponse BestResponseOver(const ActionMenu& menu,
                              std::span<const double> payments) {
  CheckSize(menu, payments);
  BestResponse out;
  out.action = BestResponseIndex(menu, payments);
  double best = -1e300;
  for (int a = 0; a < menu.size(); ++a) {
    best = std::max(best, Dot(menu.pmf(a), payments) - menu.cost(a));
  }
  for (int a = 0; a < menu.size(); ++a) {
    if (Dot(menu.pmf(a), payments) - menu.cost(a) >= best - kTieTolerance) {
      out.tied_set.push_back(a);
    }
  }
  double pay = Dot(menu.pmf(out.action), payments);
  out.cost = menu.cost(out.action);
  out.agent_utility = pay - out.cost;
  out.principal_utility = menu.expected_value(out.action) - pay;
  return out;
}

BestResponse BestResponseFinite(const FiniteInstance& instance,
                                const Contract& contract) {
  return BestResponseOver(ActionMenu::FromFinite(instance), contract.payments);
}

BestResponse BestResponseCcdf(const CcdfInstance& instance,
                              const Contract& contract) {
  return BestResponseOver(ActionMenu::FromCcdf(instance), contract.payments);
}

double PrincipalUtility(const FiniteInstance& instance,
                        const Contract& contract) {
  return BestResponseFinite(instance, contract).principal_utility;
}

double PrincipalUtility(const CcdfInstance& instance,
                        const Contract& contract) {
  return BestResponseCcdf(instance, contract).principal_utility;
}

}  // namespace contractlab
