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
#include <limits>
#include <stdexcept>
#include <utility>

#include "contractlab/agent.h"
#include "contractlab/contracts.h"
#include "contractlab/numeric.h"
#include "contractlab/rng.h"

namespace contractlab {
namespace {

Action NullAction(int m) {
  Action a;
  a.pmf.assign(m, 0.0);
  a.pmf[0] = 1;
  return a;
}

std::vector<double> RandomValues(Rng& rng, int m) {
  std::vector<double> v(m);
  for (double& x : v) x = rng.Uniform();
  std::sort(v.begin(), v.end());
  if (rng.Uniform() < 0.5) v.front() = 0;
  if (rng.Uniform() < 0.5) v.back() = 1;
  return v;
}

}  // namespace

MultiplicativeHardness GenMultiplicativeHardness(const HardnessParams& params) {
  const double eps = params.eps;
  const double H = params.H;
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must be in (0,1)");
  if (!(H >= 1)) throw std::invalid_argument("H must be >= 1");
  if (params.n < 2) throw std::invalid_argument("n must be >= 2");
  const double top = std::log(1 / eps);
  MultiplicativeHardness out;
  out.finite.outcomes.values = {0, 1, 1};
  out.finite.actions.push_back(NullAction(3));
  for (int i = 1; i < params.n; ++i) {
    double a = i == params.n - 1 ? top : top * i / (params.n - 1);
    double cost = eps * (std::expm1(a) - a);
    double f1 = i == params.n - 1 ? 1.0 : eps * std::exp(a);
    double f2 = eps * cost / (2 * H);
    if (f1 > 1 + kTolerance || cost > 1 || f2 > f1) {
      throw std::invalid_argument("probability overflow for eps");
    }
    out.finite.actions.push_back({cost, {1 - f1, f1 - f2, f2}});
  }
  out.ccdf = ToCcdfInstance(out.finite);
  out.certificate = {{0, 0, 2 * H / eps}};
  out.certificate_utility = eps * (1 + top);
  return out;
}

FiniteInstance GenAdditiveHardness(const HardnessParams& params) {
  const double eps = params.eps;
  const double H = params.H;
  if (!(eps > 0 && eps < 0.125)) throw std::invalid_argument("eps must be in (0,1/8)");
  if (!(H >= 1)) throw std::invalid_argument("H must be >= 1");
  FiniteInstance out;
  out.outcomes.values = {0, 1, 1};
  out.actions.push_back(NullAction(3));
  double f2 = 4 * eps * eps / H;
  out.actions.push_back({eps, {0.5, 0.5 - f2, f2}});
  out.actions.push_back({0.25, {0, 1 - eps / H, eps / H}});
  return out;
}

GapReport VerifyGap(const FiniteInstance& instance, double H,
                    const std::optional<Contract>& certificate) {
  GapReport report;
  OptimalContractResult bounded = OptimalBoundedContract(instance, H);
  report.opt_h = bounded.principal_utility;
  std::optional<double> eta = SmallestPositiveProbability(instance);
  report.general_bound = eta ? std::max(1.0, 1 / *eta) : 1.0;
  OptimalContractResult general =
      OptimalBoundedContract(instance, report.general_bound);
  // Score the large-bound contract by the agent's actual response so that
  // ill-conditioned solves can only understate OPT.
  report.opt = std::max(PrincipalUtility(instance, general.contract),
                        report.opt_h);
  if (certificate) {
    double u = PrincipalUtility(instance, *certificate);
    if (u > report.opt) {
      report.opt = u;
      report.certified = true;
    }
  }
  report.gap = report.opt - report.opt_h;
  if (report.opt_h > 0) {
    report.ratio = report.opt / report.opt_h;
  } else {
    report.ratio = report.opt > 0 ? std::numeric_limits<double>::infinity() : 1;
  }
  return report;
}

std::vector<MixedApproxRow> VerifyMixedApprox(
    const FiniteInstance& instance, std::span<const double> eps_grid,
    std::optional<double> opt_override) {
  double opt = opt_override ? *opt_override
                            : OptimalGeneralContract(instance).principal_utility;
  double lin = OptimalLinearContract(instance).utility;
  std::vector<MixedApproxRow> rows;
  auto check = [&](const std::string& form, double eps) {
    MixedApproxRow row;
    row.form = form;
    row.eps = eps;
    row.opt = opt;
    row.lin = lin;
    row.bound = 2 * (std::log2(1 / eps) * lin + eps);
    row.holds = opt <= row.bound + 1e-9;
    rows.push_back(row);
  };
  for (double eps : eps_grid) check("grid", eps);
  if (opt > 0) check("opt/4", opt / 4);
  ActionMenu menu = ActionMenu::FromFinite(instance);
  double low = 1;
  for (int a = 0; a < menu.size(); ++a) low = std::min(low, menu.expected_value(a));
  if (low > 0) check("L/4", low / 4);
  return rows;
}

CcdfInstance GenRandomFosdCdfp(int m, int k, uint64_t seed) {
  if (m < 2) throw std::invalid_argument("m must be >= 2");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  Rng rng(seed);
  CcdfInstance out;
  out.outcomes.values = RandomValues(rng, m);
  out.cost_max = 0.3 + 0.7 * rng.Uniform();
  std::vector<double> xs = {0.0, out.cost_max};
  while (static_cast<int>(xs.size()) < k + 1) {
    double x = out.cost_max * (0.02 + 0.96 * rng.Uniform());
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  // layers[j][i]: layer j at breakpoint i.
  std::vector<std::vector<double>> layers(m - 1, std::vector<double>(k + 1, 0));
  for (int j = 0; j < m - 1; ++j) {
    std::vector<double> slopes(k);
    double weight = 0.1 + rng.Uniform();
    for (double& s : slopes) {
      double u = rng.Uniform();
      s = rng.Uniform() < 0.15 ? 0.0 : weight * u * u;
    }
    std::sort(slopes.rbegin(), slopes.rend());
    for (int i = 1; i <= k; ++i) {
      layers[j][i] = layers[j][i - 1] + slopes[i - 1] * (xs[i] - xs[i - 1]);
    }
  }
  double total = 0;
  for (const auto& layer : layers) total += layer.back();
  if (total <= 0) {
    for (int i = 1; i <= k; ++i) layers[0][i] = xs[i] / out.cost_max;
    total = 1;
  }
  double scale = (0.2 + 0.8 * rng.Uniform()) / total;
  for (int w = 1; w < m; ++w) {
    std::vector<Breakpoint> points;
    for (int i = 0; i <= k; ++i) {
      double f = 0;
      for (int j = w - 1; j < m - 1; ++j) f += layers[j][i];
      points.push_back({xs[i], std::min(1.0, f * scale)});
    }
    out.ccdf.emplace_back(std::move(points));
  }
  return out;
}

FiniteInstance GenRandomFinite(int m, int n, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  Rng rng(seed);
  int k = 1 + static_cast<int>(rng.Uniform() * 5);
  CcdfInstance curves = GenRandomFosdCdfp(m, k, Rng::ChildSeed(seed, "ccdf"));
  FiniteInstance out;
  out.outcomes = curves.outcomes;
  out.actions.push_back(NullAction(m));
  for (int a = 1; a < n; ++a) {
    double cost = curves.cost_max * (0.01 + 0.99 * rng.Uniform());
    std::vector<double> pmf = CcdfToPmf(curves.CcdfVector(cost));
    for (double& p : pmf) p = std::max(p, 0.0);
    out.actions.push_back({cost, std::move(pmf)});
  }
  return out;
}

FiniteInstance GenRandomUnstructured(int m, int n, uint64_t seed) {
  if (m < 2 || n < 1) throw std::invalid_argument("need m >= 2, n >= 1");
  Rng rng(seed);
  FiniteInstance out;
  out.outcomes.values = RandomValues(rng, m);
  out.actions.push_back(NullAction(m));
  for (int a = 1; a < n; ++a) {
    std::vector<double> pmf(m);
    double sum = 0;
    for (double& p : pmf) {
      p = rng.Uniform() < 0.25 ? 0.0 : -std::log(1 - rng.Uniform());
      sum += p;
    }
    if (sum == 0) {
      pmf[m - 1] = 1;
      sum = 1;
    }
    for (double& p : pmf) p /= sum;
    double u = rng.Uniform();
    out.actions.push_back({0.5 * u * u, std::move(pmf)});
  }
  return out;
}

FiniteInstance FigureTableInstance() {
  FiniteInstance out;
  out.outcomes.values = {0, 1.0 / 3, 2.0 / 3, 1};
  out.actions = {
      {0.0, {1, 0, 0, 0}},
      {0.2, {0.8, 0.1, 0.05, 0.05}},
      {0.4, {0.65, 0.15, 0.1, 0.1}},
      {0.6, {0.55, 0.19, 0.11, 0.15}},
      {0.8, {0.5, 0.18, 0.15, 0.17}},
  };
  return out;
}

}  // namespace contractlab
