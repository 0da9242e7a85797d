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


#include "contractlab/contracts.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "contractlab/lp.h"
#include "contractlab/numeric.h"

namespace contractlab {
namespace {

// Picks the best implementable action from per-action (utility, payments).
void Finalize(OptimalContractResult& result, const ActionMenu& menu,
              const std::vector<std::vector<double>>& payments) {
  int best = -1;
  for (int a = 0; a < menu.size(); ++a) {
    if (!result.per_action_utilities[a]) continue;
    if (best < 0 || *result.per_action_utilities[a] >
                        *result.per_action_utilities[best] + 1e-12) {
      best = a;
    }
  }
  if (best < 0) throw std::runtime_error("no implementable action");
  result.incentivized_action = best;
  result.cost = menu.cost(best);
  result.contract.payments = payments[best];
  result.principal_utility = *result.per_action_utilities[best];
}

// Among optimal solutions, returns one minimizing secondary . x. Falls back to
// the first-stage solution unless the second keeps the primary objective.
LpSolution SolveWithTieBreak(LpProblem lp, std::vector<double> secondary) {
  LpSolution first = SolveLp(lp);
  if (first.status != LpStatus::kOptimal) return first;
  double slack = kTolerance * (1 + std::fabs(first.objective));
  lp.rows.push_back(LpRow::LessEqual(lp.objective, first.objective + slack));
  std::vector<double> primary = std::exchange(lp.objective, std::move(secondary));
  LpSolution second = SolveLp(lp);
  if (second.status != LpStatus::kOptimal) return first;
  double value = 0;
  for (size_t j = 0; j < primary.size(); ++j) value += primary[j] * second.x[j];
  if (value > first.objective + 1e-13 * (1 + std::fabs(first.objective))) {
    return first;
  }
  second.objective = value;
  return second;
}

double ExpectedPayment(std::span<const double> pmf,
                       std::span<const double> payments) {
  double s = 0;
  for (size_t w = 0; w < pmf.size(); ++w) s += pmf[w] * payments[w];
  return s;
}

OptimalContractResult SolvePaymentLps(const ActionMenu& menu, double H) {
  if (!(H >= 1)) throw std::invalid_argument("H must be >= 1");
  const int n = menu.size();
  const int m = menu.num_outcomes();
  OptimalContractResult result;
  result.bound = H;
  result.per_action_utilities.assign(n, std::nullopt);
  std::vector<std::vector<double>> payments(n);
  for (int a = 0; a < n; ++a) {
    LpProblem lp;
    lp.objective.assign(menu.pmf(a).begin(), menu.pmf(a).end());
    lp.lower.assign(m, 0.0);
    lp.upper.assign(m, H);
    bool trivially_infeasible = false;
    for (int b = 0; b < n; ++b) {
      if (b == a) continue;
      std::vector<double> row(m);
      bool zero = true;
      for (int w = 0; w < m; ++w) {
        row[w] = menu.pmf(a)[w] - menu.pmf(b)[w];
        if (row[w] != 0) zero = false;
      }
      double rhs = menu.cost(a) - menu.cost(b);
      if (zero) {
        if (rhs > 0) trivially_infeasible = true;
        continue;
      }
      lp.rows.push_back(LpRow::GreaterEqual(std::move(row), rhs));
    }
    if (trivially_infeasible) continue;
    LpSolution sol = SolveWithTieBreak(std::move(lp), std::vector<double>(m, 1.0));
    if (sol.status != LpStatus::kOptimal) continue;
    for (double& p : sol.x) p = std::clamp(p, 0.0, H);
    result.per_action_utilities[a] =
        menu.expected_value(a) - ExpectedPayment(menu.pmf(a), sol.x);
    payments[a] = std::move(sol.x);
  }
  Finalize(result, menu, payments);
  return result;
}

}  // namespace

OptimalContractResult OptimalBoundedContract(const FiniteInstance& instance,
                                             double H) {
  ValidationReport report = ValidateFinite(instance);
  if (!report.ok()) {
    throw std::invalid_argument("invalid instance: " + report.ToString());
  }
  return SolvePaymentLps(ActionMenu::FromFinite(instance), H);
}

std::optional<double> SmallestPositiveProbability(
    const FiniteInstance& instance) {
  std::optional<double> eta;
  for (const Action& a : instance.actions) {
    for (double p : a.pmf) {
      if (p > 0 && (!eta || p < *eta)) eta = p;
    }
  }
  return eta;
}

OptimalContractResult OptimalGeneralContract(const FiniteInstance& instance) {
  std::optional<double> eta = SmallestPositiveProbability(instance);
  double H = eta ? std::max(1.0, 1.0 / *eta) : 1.0;
  return OptimalBoundedContract(instance, H);
}

OptimalContractResult OptimalBoundedContractMenu(const ActionMenu& menu,
                                                 double H) {
  if (!(H >= 1)) throw std::invalid_argument("H must be >= 1");
  const int n = menu.size();
  const int m = menu.num_outcomes();
  OptimalContractResult result;
  result.bound = H;
  result.per_action_utilities.assign(n, std::nullopt);
  std::vector<std::vector<double>> payments(n);
  for (int i = 0; i < n; ++i) {
    LpProblem lp;
    lp.objective.assign(menu.ccdf(i).begin(), menu.ccdf(i).end());
    lp.lower.assign(m, -H);
    lp.upper.assign(m, H);
    lp.lower[0] = 0;
    bool trivially_infeasible = false;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<double> row(m, 0.0);
      bool zero = true;
      for (int w = 1; w < m; ++w) {
        row[w] = menu.ccdf(i)[w] - menu.ccdf(j)[w];
        if (row[w] != 0) zero = false;
      }
      double rhs = menu.cost(i) - menu.cost(j);
      if (zero) {
        if (rhs > 0) trivially_infeasible = true;
        continue;
      }
      lp.rows.push_back(LpRow::GreaterEqual(std::move(row), rhs));
    }
    if (trivially_infeasible) continue;
    for (int w = 1; w < m; ++w) {
      std::vector<double> prefix(m, 0.0);
      for (int k = 0; k <= w; ++k) prefix[k] = 1;
      lp.rows.push_back(LpRow::Range(std::move(prefix), 0, H));
    }
    // Total payment sum_w p_w = sum_k (m - k) x_k.
    std::vector<double> total(m);
    for (int k = 0; k < m; ++k) total[k] = m - k;
    LpSolution sol = SolveWithTieBreak(std::move(lp), std::move(total));
    if (sol.status != LpStatus::kOptimal) continue;
    std::vector<double> p(m);
    double running = 0;
    for (int w = 0; w < m; ++w) {
      running += sol.x[w];
      p[w] = std::clamp(running, 0.0, H);
    }
    result.per_action_utilities[i] =
        menu.expected_value(i) - ExpectedPayment(menu.pmf(i), p);
    payments[i] = std::move(p);
  }
  Finalize(result, menu, payments);
  return result;
}

OptimalContractResult OptimalBoundedContractCcdf(const CcdfInstance& instance,
                                                 double H) {
  ValidationReport report = ValidateCcdf(instance);
  if (!report.ok()) {
    throw std::invalid_argument("invalid instance: " + report.ToString());
  }
  return OptimalBoundedContractMenu(ActionMenu::FromCcdf(instance), H);
}

Contract Robustify(const Contract& contract, const OutcomeSpace& outcomes,
                   double eps) {
  if (!(eps > 0 && eps <= 0.5)) {
    throw std::invalid_argument("robustify: eps must lie in (0, 1/2]");
  }
  if (contract.size() != outcomes.size()) {
    throw std::invalid_argument("robustify: size mismatch");
  }
  Contract out = contract;
  for (int w = 0; w < outcomes.size(); ++w) {
    out.payments[w] += eps / 2 * (outcomes.values[w] - contract.payments[w]);
  }
  return out;
}

LinearContractResult OptimalLinearContract(const FiniteInstance& instance) {
  ActionMenu menu = ActionMenu::FromFinite(instance);
  const int n = menu.size();
  // Upper envelope of rho * V_a - c_a: sort by slope, keep the cheapest line
  // per slope, then discard lines that never attain the maximum.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (menu.expected_value(a) != menu.expected_value(b)) {
      return menu.expected_value(a) < menu.expected_value(b);
    }
    return menu.cost(a) > menu.cost(b);
  });
  auto intersect = [&](int a, int b) {
    return (menu.cost(b) - menu.cost(a)) /
           (menu.expected_value(b) - menu.expected_value(a));
  };
  std::vector<int> hull;
  for (int a : order) {
    if (!hull.empty() &&
        menu.expected_value(hull.back()) == menu.expected_value(a)) {
      hull.pop_back();
    }
    while (hull.size() >= 2 &&
           intersect(hull[hull.size() - 2], hull.back()) >=
               intersect(hull.back(), a)) {
      hull.pop_back();
    }
    hull.push_back(a);
  }
  std::vector<double> candidates = {0.0, 1.0};
  for (size_t k = 0; k + 1 < hull.size(); ++k) {
    double rho = intersect(hull[k], hull[k + 1]);
    if (rho > 0 && rho < 1) candidates.push_back(rho);
  }
  std::sort(candidates.begin(), candidates.end());
  LinearContractResult best;
  bool have = false;
  std::vector<double> p(menu.num_outcomes());
  for (double base : candidates) {
    for (double rho : {base, base + 1e-9}) {
      if (rho > 1) continue;
      for (int w = 0; w < menu.num_outcomes(); ++w) {
        p[w] = rho * menu.values()[w];
      }
      int a = BestResponseIndex(menu, p);
      double u = (1 - rho) * menu.expected_value(a);
      if (!have || u > best.utility + 1e-15) {
        best = {rho, u, a};
        have = true;
      }
    }
  }
  return best;
}

EpsApproximation CheckEpsApproximation(double target_cost,
                                       const Distribution& target,
                                       const ActionMenu& pool, double eps,
                                       double H, DistanceMetric metric) {
  const int n = pool.size();
  const int m = pool.num_outcomes();
  if (target.size() != m) throw std::invalid_argument("support mismatch");
  EpsApproximation out;
  if (n == 0) return out;
  LpProblem lp;
  for (int a = 0; a < n; ++a) lp.AddVariable(0, kInfinity, 0);
  std::vector<double> ones(n, 1.0);
  lp.rows.push_back(LpRow::Equal(ones, 1.0));
  std::vector<double> costs(n);
  for (int a = 0; a < n; ++a) costs[a] = pool.cost(a);
  double cost_slack = eps * eps / 16;
  lp.rows.push_back(LpRow::Range(costs, target_cost - cost_slack,
                                 target_cost + cost_slack));
  double bound;
  if (metric == DistanceMetric::kTotalVariation) {
    bound = eps * eps / (32 * H);
    std::vector<int> t(m);
    for (int w = 0; w < m; ++w) t[w] = lp.AddVariable(0, kInfinity, 0.5);
    for (int w = 0; w < m; ++w) {
      // t_w >= |f_t(w) - sum_a lambda_a f_a(w)|
      std::vector<double> row(lp.num_vars(), 0.0);
      for (int a = 0; a < n; ++a) row[a] = pool.pmf(a)[w];
      row[t[w]] = 1;
      lp.rows.push_back(LpRow::GreaterEqual(row, target.pmf(w)));
      for (int a = 0; a < n; ++a) row[a] = -pool.pmf(a)[w];
      lp.rows.push_back(LpRow::GreaterEqual(row, -target.pmf(w)));
    }
  } else {
    bound = eps * eps / (32 * m * H);
    std::vector<double> target_ccdf = target.Ccdf();
    int d = lp.AddVariable(0, kInfinity, 1.0);
    for (int w = 1; w < m; ++w) {
      std::vector<double> row(lp.num_vars(), 0.0);
      for (int a = 0; a < n; ++a) row[a] = pool.ccdf(a)[w];
      row[d] = 1;
      lp.rows.push_back(LpRow::GreaterEqual(row, target_ccdf[w]));
      for (int a = 0; a < n; ++a) row[a] = -pool.ccdf(a)[w];
      lp.rows.push_back(LpRow::GreaterEqual(row, -target_ccdf[w]));
    }
  }
  LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) return out;
  std::vector<double> weights(sol.x.begin(), sol.x.begin() + n);
  double total = 0;
  for (double& w : weights) {
    w = std::max(w, 0.0);
    total += w;
  }
  for (double& w : weights) w /= total;
  std::vector<double> mix(m, 0.0);
  double mix_cost = 0;
  for (int a = 0; a < n; ++a) {
    mix_cost += weights[a] * pool.cost(a);
    for (int w = 0; w < m; ++w) mix[w] += weights[a] * pool.pmf(a)[w];
  }
  double sum = std::accumulate(mix.begin(), mix.end(), 0.0);
  for (double& f : mix) f /= sum;
  Distribution mixture = Distribution::FromPmf(mix);
  out.weights = std::move(weights);
  out.cost_gap = std::abs(target_cost - mix_cost);
  out.distance = metric == DistanceMetric::kTotalVariation
                     ? TvDistance(target, mixture)
                     : KolDistance(target, mixture);
  out.exists =
      out.distance <= bound + 1e-12 && out.cost_gap <= cost_slack + 1e-12;
  return out;
}

EpsApproximation CheckEpsApproximation(double target_cost,
                                       const Distribution& target,
                                       const FiniteInstance& pool, double eps,
                                       double H, DistanceMetric metric) {
  return CheckEpsApproximation(target_cost, target, ActionMenu::FromFinite(pool),
                               eps, H, metric);
}

}  // namespace contractlab
