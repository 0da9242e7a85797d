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


#include "contractlab/lp.h"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "testing/reference_simplex.h"

namespace contractlab {
namespace {

bool Feasible(const LpProblem& lp, const std::vector<double>& x, double tol) {
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (x[j] < lp.lower[j] - tol || x[j] > lp.upper[j] + tol) return false;
  }
  for (const LpRow& r : lp.rows) {
    double s = 0;
    for (int j = 0; j < lp.num_vars(); ++j) s += r.coeffs[j] * x[j];
    if (s < r.lo - tol || s > r.hi + tol) return false;
  }
  return true;
}

LpProblem RandomLp(std::mt19937_64& gen, bool degenerate) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> size(1, 6);
  LpProblem lp;
  lp.direction = gen() % 2 ? LpDirection::kMaximize : LpDirection::kMinimize;
  int n = size(gen), rows = size(gen);
  for (int j = 0; j < n; ++j) {
    double lo, hi;
    switch (gen() % 4) {
      case 0: lo = 0; hi = kInfinity; break;
      case 1: lo = -2; hi = 3; break;
      case 2: lo = -kInfinity; hi = 1; break;
      default: lo = -kInfinity; hi = kInfinity; break;
    }
    double c = degenerate ? std::round(u(gen) * 2) : u(gen);
    lp.AddVariable(lo, hi, c);
  }
  for (int i = 0; i < rows; ++i) {
    std::vector<double> a(n);
    for (double& v : a) v = degenerate ? std::round(u(gen) * 2) : u(gen);
    double b = degenerate ? std::round(u(gen) * 2) : u(gen) * 3;
    switch (gen() % 4) {
      case 0: lp.rows.push_back(LpRow::LessEqual(a, b)); break;
      case 1: lp.rows.push_back(LpRow::GreaterEqual(a, b)); break;
      case 2: lp.rows.push_back(LpRow::Equal(a, b)); break;
      default: lp.rows.push_back(LpRow::Range(a, b - 1, b + 0.5)); break;
    }
  }
  return lp;
}

TEST(LpTest, SmallKnownProblem) {
  // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3.
  LpProblem lp;
  lp.direction = LpDirection::kMaximize;
  lp.AddVariable(0, 3, 3);
  lp.AddVariable(0, kInfinity, 2);
  lp.rows.push_back(LpRow::LessEqual({1, 1}, 4));
  lp.rows.push_back(LpRow::LessEqual({1, 3}, 6));
  LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, 11, 1e-9);
  EXPECT_NEAR(s.x[0], 3, 1e-9);
  EXPECT_NEAR(s.x[1], 1, 1e-9);
}

TEST(LpTest, DetectsInfeasibleAndUnbounded) {
  LpProblem inf;
  inf.AddVariable(0, kInfinity, 1);
  inf.rows.push_back(LpRow::LessEqual({1}, -1));
  EXPECT_EQ(SolveLp(inf).status, LpStatus::kInfeasible);
  LpProblem unb;
  unb.direction = LpDirection::kMaximize;
  unb.AddVariable(0, kInfinity, 1);
  unb.AddVariable(0, kInfinity, 0);
  unb.rows.push_back(LpRow::LessEqual({1, -1}, 1));
  EXPECT_EQ(SolveLp(unb).status, LpStatus::kUnbounded);
}

TEST(LpTest, RejectsMalformedInput) {
  LpProblem lp;
  lp.AddVariable(1, 0, 1);
  EXPECT_THROW(SolveLp(lp), std::invalid_argument);
  LpProblem mismatch;
  mismatch.AddVariable(0, 1, 1);
  mismatch.rows.push_back(LpRow::LessEqual({1, 1}, 1));
  EXPECT_THROW(SolveLp(mismatch), std::invalid_argument);
}

TEST(LpTest, MatchesReferenceOnRandomProblems) {
  std::mt19937_64 gen(2024);
  int counts[3] = {0, 0, 0};
  for (int trial = 0; trial < 200; ++trial) {
    LpProblem lp = RandomLp(gen, trial % 2 == 1);
    testing::ReferenceResult ref = testing::SolveReference(lp);
    LpSolution got = SolveLp(lp);
    ASSERT_EQ(got.status, ref.status) << "trial " << trial;
    ++counts[static_cast<int>(ref.status)];
    if (ref.status != LpStatus::kOptimal) continue;
    EXPECT_NEAR(got.objective, ref.objective, 1e-7 * (1 + std::fabs(ref.objective)))
        << "trial " << trial;
    EXPECT_TRUE(Feasible(lp, got.x, 1e-7)) << "trial " << trial;
  }
  // All three outcomes occur in the sample.
  EXPECT_GT(counts[0], 20);
  EXPECT_GT(counts[1], 5);
  EXPECT_GT(counts[2], 5);
}

TEST(LpTest, DegenerateCycleExample) {
  // Beale's example cycles under the textbook Dantzig rule.
  LpProblem lp;
  lp.AddVariable(0, kInfinity, -0.75);
  lp.AddVariable(0, kInfinity, 150);
  lp.AddVariable(0, kInfinity, -0.02);
  lp.AddVariable(0, kInfinity, 6);
  lp.rows.push_back(LpRow::LessEqual({0.25, -60, -0.04, 9}, 0));
  lp.rows.push_back(LpRow::LessEqual({0.5, -90, -0.02, 3}, 0));
  lp.rows.push_back(LpRow::LessEqual({0, 0, 1, 0}, 1));
  LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -0.05, 1e-9);
}

TEST(LpTest, TrivialExamples) {
  LpProblem bounded;
  bounded.direction = LpDirection::kMaximize;
  bounded.AddVariable(0, kInfinity, 1);
  bounded.rows.push_back(LpRow::LessEqual({1}, 3));
  LpSolution s = SolveLp(bounded);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x[0], 3, 1e-12);
  LpProblem open;
  open.direction = LpDirection::kMaximize;
  open.AddVariable(0, kInfinity, 1);
  EXPECT_EQ(SolveLp(open).status, LpStatus::kUnbounded);
}

}  // namespace
}  // namespace contractlab
