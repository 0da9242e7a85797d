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


#include "contractlab/instance.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "contractlab/numeric.h"

namespace contractlab {
namespace {

void CheckValues(const OutcomeSpace& outcomes, ValidationReport& report) {
  if (outcomes.size() < 2) {
    report.violations.push_back({"outcome count", -1, "m must be >= 2"});
  }
  for (int w = 0; w < outcomes.size(); ++w) {
    double v = outcomes.values[w];
    if (!std::isfinite(v) || v < 0 || v > 1) {
      report.violations.push_back(
          {"value range", w, "value " + std::to_string(v) + " not in [0,1]"});
    }
    if (w > 0 && v < outcomes.values[w - 1]) {
      report.violations.push_back({"value order", w, "values not ascending"});
    }
  }
}

// Sorted action indices grouped by exactly equal cost.
std::vector<std::vector<int>> CostGroups(const FiniteInstance& instance) {
  std::vector<int> order(instance.num_actions());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return instance.actions[a].cost < instance.actions[b].cost;
  });
  std::vector<std::vector<int>> groups;
  for (int a : order) {
    if (groups.empty() ||
        instance.actions[groups.back().front()].cost != instance.actions[a].cost) {
      groups.emplace_back();
    }
    groups.back().push_back(a);
  }
  return groups;
}

}  // namespace

double CcdfInstance::Ccdf(int omega, double cost) const {
  if (omega == 0) return 1.0;
  if (cost < 0) throw std::out_of_range("negative cost");
  const PiecewiseLinearFn& f = ccdf.at(omega - 1);
  return f.Eval(std::min(cost, std::min(cost_max, f.x_max())));
}

std::vector<double> CcdfInstance::CcdfVector(double cost) const {
  std::vector<double> out(num_outcomes());
  for (int w = 0; w < num_outcomes(); ++w) out[w] = Ccdf(w, cost);
  return out;
}

std::vector<double> CcdfInstance::CandidateCosts() const {
  std::vector<double> costs = {0.0, cost_max};
  for (const PiecewiseLinearFn& f : ccdf) {
    for (const Breakpoint& p : f.breakpoints()) {
      if (p.x >= 0 && p.x <= cost_max) costs.push_back(p.x);
    }
  }
  std::sort(costs.begin(), costs.end());
  costs.erase(std::unique(costs.begin(), costs.end()), costs.end());
  return costs;
}

Distribution Distribution::FromPmf(std::vector<double> pmf) {
  if (pmf.empty()) throw std::invalid_argument("empty pmf");
  double sum = 0;
  for (double& p : pmf) {
    if (!std::isfinite(p) || p < -kTolerance) {
      throw std::invalid_argument("pmf entry negative or non-finite");
    }
    p = std::max(p, 0.0);
    sum += p;
  }
  if (std::abs(sum - 1) > kTolerance) {
    throw std::invalid_argument("pmf sums to " + std::to_string(sum));
  }
  return Distribution(std::move(pmf));
}

Distribution Distribution::FromCcdf(std::span<const double> ccdf) {
  if (ccdf.empty() || std::abs(ccdf[0] - 1) > kTolerance) {
    throw std::invalid_argument("ccdf must start at 1");
  }
  std::vector<double> pmf = CcdfToPmf(ccdf);
  for (double& p : pmf) {
    if (p < -kTolerance) throw std::invalid_argument("ccdf not nonincreasing");
    p = std::max(p, 0.0);
  }
  return Distribution(std::move(pmf));
}

Distribution Distribution::PointMass(int m, int omega) {
  std::vector<double> pmf(m, 0.0);
  pmf.at(omega) = 1.0;
  return Distribution(std::move(pmf));
}

std::vector<double> Distribution::Ccdf() const { return PmfToCcdf(pmf_); }

double Distribution::Expectation(std::span<const double> h) const {
  if (h.size() != pmf_.size()) throw std::invalid_argument("size mismatch");
  double e = 0;
  for (size_t w = 0; w < pmf_.size(); ++w) e += pmf_[w] * h[w];
  return e;
}

Contract ThresholdContract::ToContract(int m) const {
  if (omega < 1 || omega >= m) throw std::out_of_range("threshold omega");
  Contract c = Contract::Null(m);
  for (int w = omega; w < m; ++w) c.payments[w] = r;
  return c;
}

std::string ValidationReport::ToString() const {
  if (ok()) return "ok\n";
  std::ostringstream out;
  for (const Violation& v : violations) {
    out << v.kind;
    if (v.index >= 0) out << " at " << v.index;
    out << ": " << v.detail << "\n";
  }
  return out.str();
}

ValidationReport ValidateFinite(const FiniteInstance& instance) {
  ValidationReport report;
  CheckValues(instance.outcomes, report);
  const int m = instance.num_outcomes();
  for (int a = 0; a < instance.num_actions(); ++a) {
    const Action& action = instance.actions[a];
    if (!std::isfinite(action.cost) || action.cost < 0 || action.cost > 1) {
      report.violations.push_back(
          {"cost range", a, "cost " + std::to_string(action.cost) +
                                " not in [0,1]"});
    }
    if (static_cast<int>(action.pmf.size()) != m) {
      report.violations.push_back(
          {"pmf size", a, "pmf has " + std::to_string(action.pmf.size()) +
                              " entries, expected " + std::to_string(m)});
      continue;
    }
    double sum = 0;
    for (int w = 0; w < m; ++w) {
      if (!std::isfinite(action.pmf[w]) || action.pmf[w] < -kTolerance) {
        report.violations.push_back(
            {"pmf negative", a, "entry " + std::to_string(w) + " is " +
                                    std::to_string(action.pmf[w])});
      }
      sum += action.pmf[w];
    }
    if (std::abs(sum - 1) > kTolerance) {
      report.violations.push_back(
          {"pmf sum", a, "pmf sums to " + std::to_string(sum)});
    }
  }
  if (!FindNullAction(instance)) {
    report.violations.push_back(
        {"null action", -1, "no action with cost 0 and f(0)=1"});
  }
  return report;
}

ValidationReport ValidateCcdf(const CcdfInstance& instance) {
  ValidationReport report;
  CheckValues(instance.outcomes, report);
  const int m = instance.num_outcomes();
  if (!(instance.cost_max > 0 && instance.cost_max <= 1)) {
    report.violations.push_back({"cost range", -1, "cost_max not in (0,1]"});
    return report;
  }
  if (static_cast<int>(instance.ccdf.size()) != m - 1) {
    report.violations.push_back(
        {"ccdf count", -1, "expected " + std::to_string(m - 1) + " curves"});
    return report;
  }
  for (int w = 1; w < m; ++w) {
    const PiecewiseLinearFn& f = instance.ccdf[w - 1];
    if (f.empty()) {
      report.violations.push_back({"ccdf domain", w, "empty curve"});
      continue;
    }
    if (f.x_min() != 0 || f.x_max() < instance.cost_max - kTolerance) {
      report.violations.push_back(
          {"ccdf domain", w, "domain must cover [0, cost_max]"});
      continue;
    }
    if (std::abs(f.y_first()) > kTolerance) {
      report.violations.push_back({"null action", w, "F(w|0) != 0"});
    }
    for (const Breakpoint& p : f.breakpoints()) {
      if (p.y < -kTolerance || p.y > 1 + kTolerance) {
        report.violations.push_back({"ccdf range", w, "value outside [0,1]"});
        break;
      }
      if (p.x > instance.cost_max &&
          std::abs(p.y - f.Eval(instance.cost_max)) > kTolerance) {
        report.violations.push_back(
            {"ccdf tail", w, "not constant beyond cost_max"});
        break;
      }
    }
    if (!f.IsNondecreasing(kTolerance)) {
      report.violations.push_back({"fosd", w, "F(w|.) decreasing"});
    }
    if (!f.IsConcave(kTolerance)) {
      report.violations.push_back({"cdfp", w, "F(w|.) not concave"});
    }
  }
  if (!report.ok()) return report;
  std::vector<double> costs = instance.CandidateCosts();
  for (int w = 1; w + 1 < m; ++w) {
    for (double c : costs) {
      if (instance.Ccdf(w + 1, c) > instance.Ccdf(w, c) + kTolerance) {
        report.violations.push_back(
            {"nesting", w, "F(w+1|c) > F(w|c) at c=" + std::to_string(c)});
        break;
      }
    }
  }
  return report;
}

std::vector<double> PmfToCcdf(std::span<const double> pmf) {
  std::vector<double> ccdf(pmf.size());
  double tail = 0;
  for (size_t w = pmf.size(); w-- > 0;) {
    tail += pmf[w];
    ccdf[w] = tail;
  }
  if (!ccdf.empty()) ccdf[0] = 1.0;
  return ccdf;
}

std::vector<double> CcdfToPmf(std::span<const double> ccdf) {
  std::vector<double> pmf(ccdf.size());
  for (size_t w = 0; w < ccdf.size(); ++w) {
    pmf[w] = ccdf[w] - (w + 1 < ccdf.size() ? ccdf[w + 1] : 0.0);
  }
  return pmf;
}

FosdResult CheckFosd(const FiniteInstance& instance) {
  FosdResult result;
  const int m = instance.num_outcomes();
  std::vector<std::vector<double>> ccdf;
  for (const Action& a : instance.actions) ccdf.push_back(PmfToCcdf(a.pmf));
  std::vector<std::vector<int>> groups = CostGroups(instance);
  // For each omega, the action with the largest CCDF among cheaper groups.
  std::vector<int> prefix_max(m, -1);
  for (const std::vector<int>& group : groups) {
    for (int w = 1; w < m; ++w) {
      int lo = group.front();
      int hi = group.front();
      for (int a : group) {
        if (ccdf[a][w] < ccdf[lo][w]) lo = a;
        if (ccdf[a][w] > ccdf[hi][w]) hi = a;
      }
      if (ccdf[hi][w] - ccdf[lo][w] > kTolerance) {
        return {false, std::min(lo, hi), std::max(lo, hi), w};
      }
      int prev = prefix_max[w];
      if (prev >= 0 && ccdf[lo][w] < ccdf[prev][w] - kTolerance) {
        return {false, lo, prev, w};
      }
    }
    for (int w = 1; w < m; ++w) {
      for (int a : group) {
        if (prefix_max[w] < 0 || ccdf[a][w] > ccdf[prefix_max[w]][w]) {
          prefix_max[w] = a;
        }
      }
    }
  }
  return result;
}

CdfpResult CheckCdfp(const FiniteInstance& instance) {
  const int m = instance.num_outcomes();
  std::vector<int> reps;
  for (const std::vector<int>& group : CostGroups(instance)) {
    reps.push_back(group.front());
  }
  for (int w = 1; w < m; ++w) {
    auto x = [&](int a) { return instance.actions[a].cost; };
    auto y = [&](int a) { return PmfToCcdf(instance.actions[a].pmf)[w]; };
    std::vector<int> hull;
    for (int a : reps) {
      while (hull.size() >= 2) {
        int o = hull[hull.size() - 2];
        int b = hull.back();
        double cross =
            (x(b) - x(o)) * (y(a) - y(o)) - (y(b) - y(o)) * (x(a) - x(o));
        if (cross <= 0) break;
        hull.pop_back();
      }
      hull.push_back(a);
    }
    size_t h = 0;
    for (int a : reps) {
      while (h + 1 < hull.size() && x(hull[h + 1]) <= x(a)) ++h;
      if (hull[h] == a) continue;
      int left = hull[h];
      int right = hull[h + 1];
      double t = (x(a) - x(left)) / (x(right) - x(left));
      double chord = y(left) + t * (y(right) - y(left));
      if (chord - y(a) > kTolerance) return {false, w, left, a, right};
    }
  }
  return {};
}

FiniteInstance DeduplicateActions(const FiniteInstance& instance) {
  FiniteInstance out;
  out.outcomes = instance.outcomes;
  for (const Action& a : instance.actions) {
    bool duplicate = false;
    for (const Action& b : out.actions) {
      if (a.cost != b.cost || a.pmf.size() != b.pmf.size()) continue;
      bool same = true;
      for (size_t w = 0; w < a.pmf.size(); ++w) {
        if (std::abs(a.pmf[w] - b.pmf[w]) > kTolerance) same = false;
      }
      if (same) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.actions.push_back(a);
  }
  return out;
}

CcdfInstance ToCcdfInstance(const FiniteInstance& instance) {
  ValidationReport report = ValidateFinite(instance);
  if (!report.ok()) {
    throw std::invalid_argument("invalid instance: " + report.ToString());
  }
  FosdResult fosd = CheckFosd(instance);
  if (!fosd.holds) {
    throw std::invalid_argument("FOSD violated by actions " +
                                std::to_string(fosd.first) + ", " +
                                std::to_string(fosd.second));
  }
  CdfpResult cdfp = CheckCdfp(instance);
  if (!cdfp.holds) {
    throw std::invalid_argument(
        "CDFP violated at (" + std::to_string(cdfp.omega) + ", " +
        std::to_string(cdfp.left) + "/" + std::to_string(cdfp.middle) + "/" +
        std::to_string(cdfp.right) + ")");
  }
  const int m = instance.num_outcomes();
  std::vector<int> reps;
  for (const std::vector<int>& group : CostGroups(instance)) {
    reps.push_back(group.front());
  }
  CcdfInstance out;
  out.outcomes = instance.outcomes;
  if (reps.size() == 1) {
    out.cost_max = 1;
    for (int w = 1; w < m; ++w) {
      out.ccdf.push_back(PiecewiseLinearFn::Constant(0, 1, 0));
    }
    return out;
  }
  out.cost_max = instance.actions[reps.back()].cost;
  std::vector<std::vector<Breakpoint>> curves(m - 1);
  for (int a : reps) {
    std::vector<double> f = PmfToCcdf(instance.actions[a].pmf);
    for (int w = 1; w < m; ++w) {
      curves[w - 1].push_back({instance.actions[a].cost, f[w]});
    }
  }
  for (std::vector<Breakpoint>& curve : curves) {
    curve.front().y = 0;
    out.ccdf.emplace_back(std::move(curve));
  }
  return out;
}

double TvDistance(const Distribution& a, const Distribution& b) {
  if (a.size() != b.size()) throw std::invalid_argument("support mismatch");
  double sum = 0;
  for (int w = 0; w < a.size(); ++w) sum += std::abs(a.pmf(w) - b.pmf(w));
  return 0.5 * sum;
}

double KolDistance(const Distribution& a, const Distribution& b) {
  if (a.size() != b.size()) throw std::invalid_argument("support mismatch");
  std::vector<double> fa = a.Ccdf();
  std::vector<double> fb = b.Ccdf();
  double best = 0;
  for (int w = 0; w < a.size(); ++w) best = std::max(best, std::abs(fa[w] - fb[w]));
  return best;
}

Distribution EmpiricalDistribution(std::span<const int> samples, int m) {
  if (samples.empty()) throw std::invalid_argument("empty sample set");
  std::vector<double> counts(m, 0.0);
  for (int s : samples) {
    if (s < 0 || s >= m) throw std::out_of_range("sample index out of range");
    counts[s] += 1;
  }
  for (double& c : counts) c /= static_cast<double>(samples.size());
  return Distribution::FromPmf(std::move(counts));
}

std::optional<int> FindNullAction(const FiniteInstance& instance) {
  for (int a = 0; a < instance.num_actions(); ++a) {
    const Action& action = instance.actions[a];
    if (action.cost == 0 && !action.pmf.empty() &&
        std::abs(action.pmf[0] - 1) <= kTolerance) {
      return a;
    }
  }
  return std::nullopt;
}

}  // namespace contractlab
