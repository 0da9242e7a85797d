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


#ifndef CONTRACTLAB_INSTANCE_H_
#define CONTRACTLAB_INSTANCE_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "contractlab/piecewise_linear.h"

namespace contractlab {

struct OutcomeSpace {
  std::vector<double> values;
  int size() const { return static_cast<int>(values.size()); }
};

struct Action {
  double cost = 0;
  std::vector<double> pmf;
};

// Table form: every action has an explicit cost and outcome pmf.
struct FiniteInstance {
  OutcomeSpace outcomes;
  std::vector<Action> actions;

  int num_outcomes() const { return outcomes.size(); }
  int num_actions() const { return static_cast<int>(actions.size()); }
};

// Complementary-CDF form. ccdf[w - 1] is F(w|.) on [0, cost_max] for
// w = 1..m-1; evaluation beyond cost_max uses the value at cost_max.
struct CcdfInstance {
  OutcomeSpace outcomes;
  std::vector<PiecewiseLinearFn> ccdf;
  double cost_max = 1;

  int num_outcomes() const { return outcomes.size(); }
  // F(omega|cost); F(0|.) = 1.
  double Ccdf(int omega, double cost) const;
  // (F(0|c), ..., F(m-1|c)).
  std::vector<double> CcdfVector(double cost) const;
  // Sorted union of breakpoint costs of all F(w|.), plus 0 and cost_max.
  std::vector<double> CandidateCosts() const;
};

// Outcome distribution with validated pmf.
class Distribution {
 public:
  static Distribution FromPmf(std::vector<double> pmf);
  // Accepts (F(0), ..., F(m-1)) with F(0) = 1, nonincreasing.
  static Distribution FromCcdf(std::span<const double> ccdf);
  static Distribution PointMass(int m, int omega);

  std::span<const double> pmf() const { return pmf_; }
  double pmf(int omega) const { return pmf_[omega]; }
  std::vector<double> Ccdf() const;
  int size() const { return static_cast<int>(pmf_.size()); }
  double Expectation(std::span<const double> h) const;

 private:
  explicit Distribution(std::vector<double> pmf) : pmf_(std::move(pmf)) {}
  std::vector<double> pmf_;
};

struct Contract {
  std::vector<double> payments;

  static Contract Null(int m) { return {std::vector<double>(m, 0.0)}; }
  int size() const { return static_cast<int>(payments.size()); }
};

// Pays r for every outcome >= omega.
struct ThresholdContract {
  int omega = 1;
  double r = 0;
  Contract ToContract(int m) const;
};

struct Violation {
  std::string kind;
  int index = -1;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string ToString() const;
};

ValidationReport ValidateFinite(const FiniteInstance& instance);
ValidationReport ValidateCcdf(const CcdfInstance& instance);

// (F(0|a), ..., F(m-1|a)) for a pmf.
std::vector<double> PmfToCcdf(std::span<const double> pmf);
std::vector<double> CcdfToPmf(std::span<const double> ccdf);

struct FosdResult {
  bool holds = true;
  // Violating pair: first has cost >= second but does not dominate it.
  int first = -1;
  int second = -1;
  int omega = -1;
};
FosdResult CheckFosd(const FiniteInstance& instance);

struct CdfpResult {
  bool holds = true;
  int omega = -1;
  // (left hull action, offending action, right hull action).
  int left = -1;
  int middle = -1;
  int right = -1;
};
// Requires FOSD.
CdfpResult CheckCdfp(const FiniteInstance& instance);

// Merges actions with equal cost and equal distribution.
FiniteInstance DeduplicateActions(const FiniteInstance& instance);

// Piecewise-linear interpolation of the CCDF points. Throws
// std::invalid_argument if FOSD or CDFP fails or the null action is missing.
CcdfInstance ToCcdfInstance(const FiniteInstance& instance);

double TvDistance(const Distribution& a, const Distribution& b);
double KolDistance(const Distribution& a, const Distribution& b);

Distribution EmpiricalDistribution(std::span<const int> samples, int m);

// Returns the index of the null action, if any.
std::optional<int> FindNullAction(const FiniteInstance& instance);

}  // namespace contractlab

#endif  // CONTRACTLAB_INSTANCE_H_
