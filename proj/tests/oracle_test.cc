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
#include <sstream>
#include <vector>

#include "contractlab/agent.h"
#include "contractlab/hardness.h"
#include "contractlab/rng.h"
#include "gtest/gtest.h"

namespace contractlab {
namespace {

TEST(RngTest, MatchesSplitMix64Reference) {
  // Reference outputs of SplitMix64 started from state 0.
  Rng rng(0);
  EXPECT_EQ(rng.NextU64(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.NextU64(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.NextU64(), 0x06c45d188009454fULL);
}

TEST(RngTest, DeterministicAndChildStreamsDiffer) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.NextU64(), b.NextU64());
  EXPECT_NE(Rng::ChildSeed(42, "x"), Rng::ChildSeed(42, "y"));
  EXPECT_NE(Rng::ChildSeed(42, "x"), Rng::ChildSeed(43, "x"));
  EXPECT_EQ(Rng(42).Child("x").seed(), Rng::ChildSeed(42, "x"));
}

TEST(RngTest, UniformAndSampleFrequencies) {
  Rng rng(7);
  const int n = 200000;
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    double u = rng.Uniform();
    ASSERT_GE(u, 0);
    ASSERT_LT(u, 1);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.005);
  std::vector<double> pmf = {0.2, 0, 0.5, 0.3, 0};
  std::vector<int> counts(5, 0);
  for (int i = 0; i < n; ++i) ++counts[rng.Sample(pmf)];
  EXPECT_EQ(counts[1], 0);
  EXPECT_EQ(counts[4], 0);
  // 5 sigma bands.
  for (int w : {0, 2, 3}) {
    double sd = std::sqrt(pmf[w] * (1 - pmf[w]) / n);
    EXPECT_NEAR(double(counts[w]) / n, pmf[w], 5 * sd);
  }
}

TEST(OracleTest, ActionQueriesFollowPmf) {
  FiniteInstance fig = FigureTableInstance();
  OracleSession s(fig, QueryMode::kAction, 3);
  std::vector<int> counts(4, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[s.QueryAction(4)];
  EXPECT_EQ(s.query_count(), n);
  for (int w = 0; w < 4; ++w) {
    double p = fig.actions[4].pmf[w];
    EXPECT_NEAR(double(counts[w]) / n, p, 5 * std::sqrt(p * (1 - p) / n));
  }
  EXPECT_THROW(s.QueryContract(Contract::Null(4)), std::logic_error);
  EXPECT_THROW(s.QueryAction(9), std::out_of_range);
}

TEST(OracleTest, ContractQueriesUseBestResponse) {
  FiniteInstance inst = GenAdditiveHardness({0.01, 1, 0});
  OracleSession s(inst, QueryMode::kContract, 1);
  // (0, 0, 25) incentivizes the 1/4-cost action with F(2) = 0.01.
  Contract p{{0, 0, 25}};
  ASSERT_EQ(BestResponseFinite(inst, p).action, 2);
  std::vector<int> counts = s.QueryContractCounts(p, 50000);
  EXPECT_EQ(counts[0], 0);
  EXPECT_NEAR(counts[2] / 50000.0, 0.01, 0.003);
  EXPECT_THROW(s.QueryAction(0), std::logic_error);
}

TEST(OracleTest, SubgradientQueryIsShiftedFrequency) {
  CcdfInstance inst = ToCcdfInstance(FigureTableInstance());
  OracleSession s(inst, 9);
  const double eps = 0.02, delta = 0.01;
  EXPECT_EQ(s.SubgradientQueryCount(eps, delta),
            static_cast<int64_t>(std::ceil(2 * std::log(100.0) / (eps * eps))));
  for (double r : {0.5, 2.0, 5.0}) {
    Contract t = ThresholdContract{1, r}.ToContract(4);
    BestResponse br = BestResponseCcdf(inst, t);
    double truth = inst.Ccdf(1, br.cost);
    double x = s.SubgradientQuery(1, r, eps, delta);
    // Hoeffding at this count puts the frequency within eps/2 w.h.p.
    EXPECT_GE(x, truth - 1e-12);
    EXPECT_LE(x, truth + eps);
  }
  EXPECT_THROW(s.SubgradientQuery(1, 0, eps, delta), std::invalid_argument);
}

TEST(OracleTest, TraceFormat) {
  FiniteInstance fig = FigureTableInstance();
  OracleSession s(fig, QueryMode::kAction, 0);
  std::ostringstream trace;
  s.set_trace(&trace);
  int w = s.QueryAction(2);
  EXPECT_EQ(trace.str(), "query_index,mode,descriptor,outcome\n1,action,a=2," +
                             std::to_string(w) + "\n");
}

TEST(OracleTest, SameSeedSameStream) {
  FiniteInstance fig = FigureTableInstance();
  OracleSession a(fig, QueryMode::kAction, 5), b(fig, QueryMode::kAction, 5);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(a.QueryAction(3), b.QueryAction(3));
}

TEST(OracleTest, EmpiricalTvConcentration) {
  // 40000 draws from the cost-0.2 action: tv <= 0.02 in at least 99 of 100
  // independent runs.
  FiniteInstance fig = FigureTableInstance();
  int within = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    OracleSession s(fig, QueryMode::kAction, seed);
    std::vector<int> samples;
    for (int i = 0; i < 40000; ++i) samples.push_back(s.QueryAction(1));
    Distribution e = EmpiricalDistribution(samples, 4);
    within += TvDistance(e, Distribution::FromPmf(fig.actions[1].pmf)) <= 0.02;
  }
  EXPECT_GE(within, 99);
}

TEST(OracleTest, ActionExamples) {
  FiniteInstance fig = FigureTableInstance();
  OracleSession s(fig, QueryMode::kAction, 1);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(s.QueryAction(0), 0);
  int hits = 0;
  for (int i = 0; i < 100000; ++i) hits += s.QueryAction(4) == 2;
  EXPECT_NEAR(hits / 1e5, 0.15, 0.01);
}

TEST(OracleTest, ContractExamples) {
  FiniteInstance inst = GenAdditiveHardness({0.01, 1, 0});
  OracleSession s(inst, QueryMode::kContract, 2);
  Contract p{{0, 0, 25}};
  int twos = 0;
  for (int i = 0; i < 10000; ++i) {
    int w = s.QueryContract(p);
    ASSERT_NE(w, 0);
    twos += w == 2;
  }
  EXPECT_NEAR(twos / 1e4, 0.01, 0.004);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(s.QueryContract(Contract::Null(3)), 0);
}

TEST(OracleTest, SubgradientOnSqrtCurve) {
  // F(1|c) = sqrt(c) on a fine grid: threshold r = 1 makes the agent pick
  // c = r^2/4 = 0.25, where F = 0.5.
  std::vector<Breakpoint> pts;
  for (int i = 0; i <= 400; ++i) pts.push_back({i / 400.0, std::sqrt(i / 400.0)});
  CcdfInstance inst;
  inst.outcomes.values = {0, 1};
  inst.ccdf = {PiecewiseLinearFn(pts)};
  inst.cost_max = 1;
  BestResponse br = BestResponseCcdf(inst, ThresholdContract{1, 1}.ToContract(2));
  EXPECT_NEAR(br.cost, 0.25, 1.0 / 400);
  OracleSession s(inst, 4);
  double x = s.SubgradientQuery(1, 1, 0.1, 0.01);
  EXPECT_GE(x, 0.5);
  EXPECT_LE(x, 0.6);
  // Saturation and the r -> 0 limit.
  double high = s.SubgradientQuery(1, 1e6, 0.1, 0.01);
  EXPECT_NEAR(high, 1 + 0.05, 1e-12);
  double low = s.SubgradientQuery(1, 1e-6, 0.1, 0.01);
  EXPECT_NEAR(low, 0.05, 1e-12);
}

}  // namespace
}  // namespace contractlab
