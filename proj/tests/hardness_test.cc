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


#include "contractlab/hardness.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "contractlab/agent.h"
#include "contractlab/contracts.h"
#include "gtest/gtest.h"

namespace contractlab {
namespace {

TEST(HardnessTest, AdditiveGap) {
  FiniteInstance inst = GenAdditiveHardness({0.01, 1, 0});
  EXPECT_TRUE(ValidateFinite(inst).ok());
  GapReport gap = VerifyGap(inst, 1);
  EXPECT_NEAR(gap.opt, 0.75, 1e-6);
  EXPECT_GE(gap.opt_h, 0.49);
  EXPECT_LE(gap.opt_h, 0.5292);
  EXPECT_GE(gap.gap, 0.22);
  EXPECT_THROW(GenAdditiveHardness({0.2, 1, 0}), std::invalid_argument);
}

TEST(HardnessTest, MultiplicativeClosedForms) {
  const double eps = 0.01, H = 1;
  MultiplicativeHardness h = GenMultiplicativeHardness({eps, H, 200});
  ASSERT_TRUE(ValidateFinite(h.finite).ok());
  EXPECT_TRUE(CheckFosd(h.finite).holds);
  EXPECT_TRUE(CheckCdfp(h.finite).holds);
  ASSERT_EQ(h.finite.num_actions(), 200);
  // Last grid point: a = ln(1/eps), F(1) = 1.
  const Action& last = h.finite.actions.back();
  double a = std::log(1 / eps);
  double c = eps * (std::exp(a) - 1 - a);
  EXPECT_NEAR(last.cost, c, 1e-12);
  EXPECT_NEAR(last.pmf[0], 0, 1e-12);
  EXPECT_NEAR(last.pmf[2], eps * c / (2 * H), 1e-12);
  EXPECT_NEAR(h.certificate_utility, eps * (1 + a), 1e-12);
  EXPECT_NEAR(PrincipalUtility(h.finite, h.certificate), h.certificate_utility, 1e-9);
}

TEST(HardnessTest, MultiplicativeGap) {
  MultiplicativeHardness h = GenMultiplicativeHardness({0.01, 1, 200});
  GapReport gap = VerifyGap(h.finite, 1, h.certificate);
  EXPECT_GE(gap.opt, 0.054);
  EXPECT_LE(gap.opt_h, 0.030);
  EXPECT_GE(gap.ratio, 1.8);
}

TEST(HardnessTest, MixedApproxOnFamilies) {
  std::vector<double> grid = {1.0 / 8, 1.0 / 32};
  for (const MixedApproxRow& row :
       VerifyMixedApprox(GenAdditiveHardness({0.01, 1, 0}), grid)) {
    EXPECT_TRUE(row.holds) << row.form;
  }
  MultiplicativeHardness h = GenMultiplicativeHardness({0.01, 1, 200});
  auto rows = VerifyMixedApprox(h.finite, grid, h.certificate_utility);
  // L = 0 because of the null action, so the L/4 form is skipped.
  ASSERT_EQ(rows.size(), 3u);
  for (const MixedApproxRow& row : rows) {
    EXPECT_TRUE(row.holds) << row.form;
    EXPECT_NEAR(row.bound, 2 * (std::log2(1 / row.eps) * row.lin + row.eps), 1e-12);
  }
}

TEST(HardnessTest, SpecificValues) {
  FiniteInstance add = GenAdditiveHardness({0.01, 1, 0});
  EXPECT_NEAR(add.actions[1].pmf[0], 0.5, 1e-15);
  EXPECT_NEAR(add.actions[1].pmf[1], 0.4996, 1e-15);
  EXPECT_NEAR(add.actions[1].pmf[2], 0.0004, 1e-15);
  MultiplicativeHardness h = GenMultiplicativeHardness({0.01, 1, 200});
  EXPECT_NEAR(h.finite.actions.back().cost, 1 - 0.01 - 0.01 * std::log(100.0), 1e-12);
  EXPECT_NEAR(h.finite.actions.back().cost, 0.9439, 1e-4);
}

TEST(HardnessTest, MultiplicativeLpAloneMatchesClosedForm) {
  for (double eps : {0.01, std::exp(-6.0)}) {
    MultiplicativeHardness h = GenMultiplicativeHardness({eps, 1, 400});
    GapReport gap = VerifyGap(h.finite, 1);
    double spacing = std::log(1 / eps) / 399;
    EXPECT_NEAR(gap.opt, eps * (1 + std::log(1 / eps)), 2 * spacing * eps);
    EXPECT_LE(gap.opt_h, 3 * eps);
  }
}

TEST(HardnessTest, OptOverLinGrowsLikeLogOneOverOpt) {
  std::vector<double> normalized;
  double previous = 0;
  for (double k : {4.0, 6.0, 8.0}) {
    MultiplicativeHardness h = GenMultiplicativeHardness({std::exp(-k), 1, 200});
    double lin = OptimalLinearContract(h.finite).utility;
    double ratio = h.certificate_utility / lin;
    EXPECT_GT(ratio, previous);
    previous = ratio;
    normalized.push_back(ratio / std::log(1 / h.certificate_utility));
  }
  double lo = *std::min_element(normalized.begin(), normalized.end());
  double hi = *std::max_element(normalized.begin(), normalized.end());
  EXPECT_LE(hi / lo, 2);
}

TEST(HardnessTest, NullOnlyGap) {
  FiniteInstance inst;
  inst.outcomes.values = {0, 0.5, 1};
  inst.actions = {{0, {1, 0, 0}}};
  GapReport gap = VerifyGap(inst, 1);
  EXPECT_EQ(gap.ratio, 1);
  EXPECT_EQ(gap.gap, 0);
}

TEST(HardnessTest, SingleSegmentCurve) {
  CcdfInstance c = GenRandomFosdCdfp(2, 1, 3);
  EXPECT_EQ(c.ccdf[0].num_segments(), 1);
  EXPECT_TRUE(ValidateCcdf(c).ok());
}

TEST(HardnessTest, GeneratorsAreDeterministic) {
  FiniteInstance a = GenRandomFinite(4, 7, 99), b = GenRandomFinite(4, 7, 99);
  ASSERT_EQ(a.num_actions(), b.num_actions());
  for (int i = 0; i < a.num_actions(); ++i) {
    EXPECT_EQ(a.actions[i].cost, b.actions[i].cost);
    EXPECT_EQ(a.actions[i].pmf, b.actions[i].pmf);
  }
}

TEST(HardnessTest, FigureTable) {
  FiniteInstance fig = FigureTableInstance();
  ASSERT_EQ(fig.num_actions(), 5);
  EXPECT_DOUBLE_EQ(fig.actions[3].pmf[3], 0.15);
  EXPECT_DOUBLE_EQ(fig.actions[4].cost, 0.8);
}

}  // namespace
}  // namespace contractlab
