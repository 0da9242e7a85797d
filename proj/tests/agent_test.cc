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

#include <random>
#include <vector>

#include "contractlab/hardness.h"
#include "gtest/gtest.h"

namespace contractlab {
namespace {

TEST(AgentTest, TieBreaksForPrincipal) {
  FiniteInstance inst;
  inst.outcomes.values = {0, 1};
  // Under p = (0, 0.5) actions 1 and 2 both give the agent 0.
  inst.actions = {{0, {1, 0}}, {0.25, {0.5, 0.5}}, {0.5, {0, 1}}};
  BestResponse br = BestResponseFinite(inst, {{0, 0.5}});
  EXPECT_EQ(br.action, 2);
  EXPECT_EQ(br.tied_set, (std::vector<int>{0, 1, 2}));
  EXPECT_NEAR(br.principal_utility, 0.5, 1e-15);
}

TEST(AgentTest, ExactTieOnEqualPrincipalUtilityPicksLowestIndex) {
  FiniteInstance inst;
  inst.outcomes.values = {0, 1};
  inst.actions = {{0, {1, 0}}, {0, {1, 0}}};
  EXPECT_EQ(BestResponseFinite(inst, Contract::Null(2)).action, 0);
}

TEST(AgentTest, MatchesBruteForceOnRandomContracts) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (uint64_t seed = 0; seed < 40; ++seed) {
    FiniteInstance inst = GenRandomUnstructured(2 + seed % 4, 2 + seed % 7, seed);
    for (int k = 0; k < 25; ++k) {
      Contract p = Contract::Null(inst.num_outcomes());
      for (double& x : p.payments) x = u(gen) * 2;
      double best = -1e18;
      for (const Action& a : inst.actions) {
        double t = -a.cost;
        for (int w = 0; w < inst.num_outcomes(); ++w) t += a.pmf[w] * p.payments[w];
        best = std::max(best, t);
      }
      double best_principal = -1e18;
      for (const Action& a : inst.actions) {
        double t = -a.cost, q = 0;
        for (int w = 0; w < inst.num_outcomes(); ++w) {
          t += a.pmf[w] * p.payments[w];
          q += a.pmf[w] * (inst.outcomes.values[w] - p.payments[w]);
        }
        if (t >= best - 1e-7) best_principal = std::max(best_principal, q);
      }
      BestResponse br = BestResponseFinite(inst, p);
      EXPECT_NEAR(br.agent_utility, best, 1e-12);
      EXPECT_NEAR(br.principal_utility, best_principal, 1e-12);
      EXPECT_NEAR(PrincipalUtility(inst, p), best_principal, 1e-12);
    }
  }
}

TEST(AgentTest, CcdfBestResponseMatchesFineGrid) {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (uint64_t seed = 0; seed < 30; ++seed) {
    CcdfInstance inst = GenRandomFosdCdfp(3, 1 + seed % 4, seed);
    Contract p = Contract::Null(3);
    p.payments = {0, u(gen), u(gen) * 2};
    // The agent's utility is piecewise linear in cost, so a fine grid over
    // [0, cost_max] finds the max up to grid resolution.
    double best = -1e18;
    for (int i = 0; i <= 20000; ++i) {
      double c = inst.cost_max * i / 20000.0;
      std::vector<double> f = inst.CcdfVector(c);
      double t = -c + p.payments[0];
      for (int w = 1; w < 3; ++w) t += f[w] * (p.payments[w] - p.payments[w - 1]);
      best = std::max(best, t);
    }
    BestResponse br = BestResponseCcdf(inst, p);
    EXPECT_GE(br.agent_utility, best - 1e-12);
    EXPECT_LE(br.agent_utility, best + 1e-3);
  }
}

TEST(AgentTest, MenuFromCcdfUsesBreakpoints) {
  CcdfInstance inst = ToCcdfInstance(FigureTableInstance());
  ActionMenu menu = ActionMenu::FromCcdf(inst);
  EXPECT_EQ(menu.size(), 5);
  EXPECT_NEAR(menu.ccdf(3)[2], 0.26, 1e-12);
  EXPECT_NEAR(menu.pmf(1)[3], 0.05, 1e-12);
}

TEST(AgentTest, AdditiveExamples) {
  FiniteInstance inst = GenAdditiveHardness({0.01, 1, 0});
  BestResponse br = BestResponseFinite(inst, {{0, 0, 25}});
  EXPECT_EQ(br.action, 2);
  EXPECT_EQ(br.tied_set.size(), 3u);
  EXPECT_NEAR(br.agent_utility, 0, 1e-12);
  EXPECT_NEAR(br.principal_utility, 0.75, 1e-12);
  BestResponse low = BestResponseFinite(inst, {{0, 0.02, 0.02}});
  EXPECT_EQ(low.action, 1);
  EXPECT_NEAR(low.principal_utility, 0.49, 1e-12);
}

TEST(AgentTest, NullContract) {
  FiniteInstance fig = FigureTableInstance();
  fig.outcomes.values[0] = 0.1;
  BestResponse br = BestResponseFinite(fig, Contract::Null(4));
  EXPECT_EQ(br.cost, 0);
  EXPECT_DOUBLE_EQ(br.principal_utility, 0.1);
  EXPECT_GE(br.agent_utility, 0);
  CcdfInstance c = ToCcdfInstance(FigureTableInstance());
  EXPECT_EQ(BestResponseCcdf(c, Contract::Null(4)).cost, 0);
}

TEST(AgentTest, FigureCcdfFlatContract) {
  CcdfInstance c = ToCcdfInstance(FigureTableInstance());
  Contract p{{0, 1, 1, 1}};
  double best = -1;
  for (int i = 0; i <= 10000; ++i) {
    double cost = 0.8 * i / 10000;
    best = std::max(best, c.Ccdf(1, cost) - cost);
  }
  BestResponse br = BestResponseCcdf(c, p);
  EXPECT_NEAR(c.Ccdf(1, br.cost) - br.cost, best, 1e-12);
}

TEST(AgentTest, ReportedActionMaximizesPrincipalAmongTies) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(0, 1);
  for (uint64_t seed = 0; seed < 30; ++seed) {
    FiniteInstance inst = GenRandomFinite(3, 6, seed);
    Contract p{{0, std::round(u(gen) * 4) / 4, std::round(u(gen) * 4) / 4}};
    BestResponse br = BestResponseFinite(inst, p);
    EXPECT_GE(br.agent_utility, -1e-12);
    ActionMenu menu = ActionMenu::FromFinite(inst);
    for (int a : br.tied_set) {
      double q = 0;
      for (int w = 0; w < 3; ++w) q += menu.pmf(a)[w] * (inst.outcomes.values[w] - p.payments[w]);
      EXPECT_LE(q, br.principal_utility + 1e-12);
    }
  }
}

}  // namespace
}  // namespace contractlab
