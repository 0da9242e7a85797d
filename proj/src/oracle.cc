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


#include "contractlab/oracle.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace contractlab {

OracleSession::OracleSession(const FiniteInstance& instance, QueryMode mode,
                             uint64_t seed)
    : outcomes_(instance.outcomes),
      menu_(ActionMenu::FromFinite(instance)),
      mode_(mode),
      rng_(seed) {}

OracleSession::OracleSession(const CcdfInstance& instance, uint64_t seed)
    : outcomes_(instance.outcomes),
      menu_(ActionMenu::FromCcdf(instance)),
      mode_(QueryMode::kContract),
      rng_(seed) {}

void OracleSession::set_trace(std::ostream* trace) {
  trace_ = trace;
  if (trace_ != nullptr) *trace_ << "query_index,mode,descriptor,outcome\n";
}

void OracleSession::Record(const char* kind,
                           const std::vector<double>* payments, int action,
                           int outcome) {
  if (trace_ == nullptr) return;
  *trace_ << query_count_ << ',' << kind << ',';
  if (payments == nullptr) {
    *trace_ << "a=" << action;
  } else {
    *trace_ << "p=";
    char buf[32];
    for (size_t w = 0; w < payments->size(); ++w) {
      std::snprintf(buf, sizeof(buf), "%.17g", (*payments)[w]);
      *trace_ << (w ? ";" : "") << buf;
    }
  }
  *trace_ << ',' << outcome << '\n';
}

int OracleSession::QueryAction(int action) {
  if (mode_ != QueryMode::kAction) {
    throw std::logic_error("QueryAction on a contract-query session");
  }
  if (action < 0 || action >= menu_.size()) {
    throw std::out_of_range("unknown action " + std::to_string(action));
  }
  int outcome = rng_.Sample(menu_.pmf(action));
  ++query_count_;
  Record("action", nullptr, action, outcome);
  return outcome;
}

int OracleSession::QueryContract(const Contract& contract) {
  if (mode_ != QueryMode::kContract) {
    throw std::logic_error("QueryContract on an action-query session");
  }
  int action = BestResponseIndex(menu_, contract.payments);
  int outcome = rng_.Sample(menu_.pmf(action));
  ++query_count_;
  Record("contract", &contract.payments, action, outcome);
  return outcome;
}

std::vector<int> OracleSession::QueryContractCounts(const Contract& contract,
                                                    int64_t n) {
  if (mode_ != QueryMode::kContract) {
    throw std::logic_error("QueryContract on an action-query session");
  }
  std::vector<int> counts(num_outcomes(), 0);
  int action = BestResponseIndex(menu_, contract.payments);
  std::span<const double> pmf = menu_.pmf(action);
  for (int64_t i = 0; i < n; ++i) {
    int outcome = rng_.Sample(pmf);
    ++query_count_;
    Record("contract", &contract.payments, action, outcome);
    ++counts[outcome];
  }
  return counts;
}

int64_t OracleSession::SubgradientQueryCount(double eps, double delta) const {
  return static_cast<int64_t>(
      std::ceil(hoeffding_k_ * std::log(1 / delta) / (eps * eps)));
}

double OracleSession::SubgradientQuery(int omega, double r, double eps,
                                       double delta) {
  if (!(r > 0)) throw std::invalid_argument("threshold payment must be > 0");
  if (!(eps > 0) || !(delta > 0 && delta < 1)) {
    throw std::invalid_argument("subgradient query needs eps > 0, delta in (0,1)");
  }
  Contract contract = ThresholdContract{omega, r}.ToContract(num_outcomes());
  int64_t n = SubgradientQueryCount(eps, delta);
  std::vector<int> counts = QueryContractCounts(contract, n);
  int64_t hits = 0;
  for (int w = omega; w < num_outcomes(); ++w) hits += counts[w];
  return static_cast<double>(hits) / static_cast<double>(n) + eps / 2;
}

}  // namespace contractlab
