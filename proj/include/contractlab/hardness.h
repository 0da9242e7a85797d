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


#ifndef CONTRACTLAB_HARDNESS_H_
#define CONTRACTLAB_HARDNESS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "contractlab/instance.h"

namespace contractlab {

struct HardnessParams {
  double eps = 0.01;
  double H = 1;
  int n = 200;
};

struct MultiplicativeHardness {
  FiniteInstance finite;
  CcdfInstance ccdf;
  // (0, 0, 2H/eps): every action gives the agent zero utility.
  Contract certificate;
  // eps (1 + ln(1/eps)).
  double certificate_utility = 0;
};

// Actions on the uniform grid a_i = i ln(1/eps)/(n-1), i = 0..n-1, with
// c_a = eps(e^a - 1 - a), F(1) = eps e^a, F(2) = eps c_a / (2H). The a = 0
// point is replaced by the null action.
MultiplicativeHardness GenMultiplicativeHardness(const HardnessParams& params);

// Null action plus (eps; F = 1/2, 4eps^2/H) and (1/4; F = 1, eps/H).
FiniteInstance GenAdditiveHardness(const HardnessParams& params);

struct GapReport {
  double opt = 0;
  double opt_h = 0;
  double ratio = 1;
  double gap = 0;
  double general_bound = 1;
  // True when a supplied certificate beat the large-bound LP.
  bool certified = false;
};

// OPT via the H = 1/eta LP, evaluated by best response; a certificate
// contract, when given, lower-bounds OPT too.
GapReport VerifyGap(const FiniteInstance& instance, double H,
                    const std::optional<Contract>& certificate = std::nullopt);

struct MixedApproxRow {
  std::string form;  // "grid", "opt/4" or "L/4"
  double eps = 0;
  double opt = 0;
  double lin = 0;
  double bound = 0;
  bool holds = true;
};

// Checks OPT <= 2(log2(1/eps) LIN + eps) per grid entry, then the eps = OPT/4
// and eps = L/4 forms (skipped when the parameter is 0).
std::vector<MixedApproxRow> VerifyMixedApprox(
    const FiniteInstance& instance, std::span<const double> eps_grid,
    std::optional<double> opt_override = std::nullopt);

// Random CCDF instance: m-1 layers, each a concave nondecreasing curve with k
// segments on a shared cost grid; F(w) sums layers w..m-1 so curves nest.
CcdfInstance GenRandomFosdCdfp(int m, int k, uint64_t seed);

// FOSD+CDFP finite instance: the null action plus n-1 random costs of a
// random CCDF instance.
FiniteInstance GenRandomFinite(int m, int n, uint64_t seed);

// Unstructured finite instance: null action plus n-1 random pmfs and costs.
FiniteInstance GenRandomUnstructured(int m, int n, uint64_t seed);

// Instance with values (0, 1/3, 2/3, 1), the null action and four actions at
// costs 0.2/0.4/0.6/0.8 with the illustrative tabulated pmfs.
FiniteInstance FigureTableInstance();

}  // namespace contractlab

#endif  // CONTRACTLAB_HARDNESS_H_
