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


#ifndef CONTRACTLAB_LP_H_
#define CONTRACTLAB_LP_H_

#include <limits>
#include <string>
#include <vector>

namespace contractlab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class LpDirection { kMinimize, kMaximize };

// lo <= coeffs . x <= hi; either side may be infinite.
struct LpRow {
  std::vector<double> coeffs;
  double lo = -kInfinity;
  double hi = kInfinity;

  static LpRow LessEqual(std::vector<double> coeffs, double rhs) {
    return {std::move(coeffs), -kInfinity, rhs};
  }
  static LpRow GreaterEqual(std::vector<double> coeffs, double rhs) {
    return {std::move(coeffs), rhs, kInfinity};
  }
  static LpRow Equal(std::vector<double> coeffs, double rhs) {
    return {std::move(coeffs), rhs, rhs};
  }
  static LpRow Range(std::vector<double> coeffs, double lo, double hi) {
    return {std::move(coeffs), lo, hi};
  }
};

struct LpProblem {
  LpDirection direction = LpDirection::kMinimize;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<LpRow> rows;

  // Adds a variable with the given bounds and objective coefficient.
  int AddVariable(double lo, double hi, double cost);
  int num_vars() const { return static_cast<int>(objective.size()); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string ToString(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0;
  int iterations = 0;
};

struct LpOptions {
  double primal_tolerance = 1e-9;
  double dual_tolerance = 1e-9;
  double pivot_tolerance = 1e-11;
  int max_iterations = 0;  // 0 selects a size-based default.
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_streak = 30;
  // Dumps per-iteration tableau state to stderr.
  bool trace = false;
};

// Bounded-variable primal simplex. Throws std::invalid_argument on
// malformed input (size mismatch, lower > upper).
LpSolution SolveLp(const LpProblem& problem, const LpOptions& options = {});

}  // namespace contractlab

#endif  // CONTRACTLAB_LP_H_
