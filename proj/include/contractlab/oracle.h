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


#ifndef CONTRACTLAB_ORACLE_H_
#define CONTRACTLAB_ORACLE_H_

#include <cstdint>
#include <ostream>
#include <vector>

#include "contractlab/agent.h"
#include "contractlab/instance.h"
#include "contractlab/rng.h"

namespace contractlab {

enum class QueryMode { kAction, kContract };

// Default constant K in the threshold-query count K * ln(1/delta) / eps^2.
inline constexpr double kDefaultHoeffdingK = 2.0;

// Sampling front end over a hidden instance. Single owner; not thread-safe.
class OracleSession {
 public:
  OracleSession(const FiniteInstance& instance, QueryMode mode, uint64_t seed);
  // Contract-query mode only.
  OracleSession(const CcdfInstance& instance, uint64_t seed);

  // One draw from the given action's distribution.
  int QueryAction(int action);
  // One draw from the distribution of the agent's best response.
  int QueryContract(const Contract& contract);
  // Outcome counts of n identical contract queries.
  std::vector<int> QueryContractCounts(const Contract& contract, int64_t n);

  // Number of threshold queries SubgradientQuery issues for (eps, delta).
  int64_t SubgradientQueryCount(double eps, double delta) const;
  // Fraction of outcomes >= omega over repeated (omega, r)-threshold queries,
  // plus eps/2. Not clipped to [0, 1].
  double SubgradientQuery(int omega, double r, double eps, double delta);

  int64_t query_count() const { return query_count_; }
  QueryMode mode() const { return mode_; }
  int num_outcomes() const { return menu_.num_outcomes(); }
  int num_actions() const { return menu_.size(); }
  const OutcomeSpace& outcomes() const { return outcomes_; }

  double hoeffding_k() const { return hoeffding_k_; }
  void set_hoeffding_k(double k) { hoeffding_k_ = k; }

  // CSV trace rows: query_index,mode,descriptor,outcome. Null disables.
  void set_trace(std::ostream* trace);

 private:
  void Record(const char* descriptor_kind, const std::vector<double>* payments,
              int action, int outcome);

  OutcomeSpace outcomes_;
  ActionMenu menu_;
  QueryMode mode_;
  Rng rng_;
  int64_t query_count_ = 0;
  double hoeffding_k_ = kDefaultHoeffdingK;
  std::ostream* trace_ = nullptr;
};

}  // namespace contractlab

#endif  // CONTRACTLAB_ORACLE_H_
