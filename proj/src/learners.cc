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


#include "contractlab/learners.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "contractlab/contracts.h"
#include "contractlab/function_learning.h"

namespace contractlab {
namespace {

int64_t CheckedCount(double count, const char* what) {
  if (!(count <= static_cast<double>(kMaxPlannedQueries))) {
    throw std::invalid_argument(std::string(what) + " needs ~" +
                                std::to_string(count) +
                                " queries; lower the constants or set overrides");
  }
  return static_cast<int64_t>(std::ceil(count));
}

Distribution FromCounts(const std::vector<int>& counts, int64_t n) {
  std::vector<double> pmf(counts.size());
  for (size_t w = 0; w < counts.size(); ++w) {
    pmf[w] = static_cast<double>(counts[w]) / static_cast<double>(n);
  }
  return Distribution::FromPmf(std::move(pmf));
}

double PrincipalUtilityOf(const Distribution& d, const OutcomeSpace& outcomes,
                          const Contract& contract) {
  double u = 0;
  for (int w = 0; w < d.size(); ++w) {
    u += d.pmf(w) * (outcomes.values[w] - contract.payments[w]);
  }
  return u;
}

}  // namespace

void LearnerConfig::Validate() const {
  if (!(eps > 0 && eps < 0.5)) throw std::invalid_argument("eps must be in (0, 1/2)");
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("delta must be in (0, 1)");
  if (!(H >= 1)) throw std::invalid_argument("H must be >= 1");
  if (!(sample_constant > 0)) throw std::invalid_argument("C must be > 0");
  if (max_refinement_iterations < 0 || samples_per_action < 0 ||
      refinement_samples < 0 || init_accuracy < 0 || oracle_accuracy < 0 ||
      oracle_delta < 0 || oracle_delta >= 1 || !(hoeffding_k > 0)) {
    throw std::invalid_argument("invalid learner override");
  }
}

ActionMenu EmpiricalInstance::Menu() const {
  const int m = num_outcomes();
  std::vector<double> costs = {min_cost, 1.0};
  for (const PiecewiseLinearFn& f : ccdf) {
    for (const Breakpoint& p : f.breakpoints()) costs.push_back(p.x);
  }
  std::sort(costs.begin(), costs.end());
  costs.erase(std::unique(costs.begin(), costs.end()), costs.end());
  ActionMenu menu(outcomes.values,
                  static_cast<int>(costs.size() + zero_cost_actions.size()));
  for (const Distribution& d : zero_cost_actions) menu.AddFromPmf(0, d.pmf());
  std::vector<double> f(m, 1.0);
  for (double c : costs) {
    for (int w = 1; w < m; ++w) f[w] = ccdf[w - 1].Eval(c);
    menu.AddFromCcdf(c, f);
  }
  return menu;
}

int64_t ActionQuerySamples(const LearnerConfig& config, int m, int n) {
  if (config.samples_per_action > 0) return config.samples_per_action;
  double eps4 = std::pow(config.eps, 4);
  return CheckedCount(config.sample_constant * config.H * config.H *
                          (m + std::log(n / config.delta)) / eps4,
                      "action-query sampling");
}

LearnerReport LearnActionQuery(OracleSession& session,
                               std::span<const double> costs,
                               const LearnerConfig& config) {
  config.Validate();
  if (session.mode() != QueryMode::kAction) {
    throw std::invalid_argument("action-query learner needs an action session");
  }
  const int n = session.num_actions();
  const int m = session.num_outcomes();
  if (static_cast<int>(costs.size()) != n) {
    throw std::invalid_argument("cost list has " + std::to_string(costs.size()) +
                                " entries, instance has " + std::to_string(n) +
                                " actions");
  }
  const int64_t start = session.query_count();
  const int64_t samples = ActionQuerySamples(config, m, n);
  CheckedCount(static_cast<double>(samples) * n, "action-query sampling");
  FiniteInstance empirical;
  empirical.outcomes = session.outcomes();
  for (int a = 0; a < n; ++a) {
    std::vector<int> counts(m, 0);
    for (int64_t s = 0; s < samples; ++s) ++counts[session.QueryAction(a)];
    Distribution d = FromCounts(counts, samples);
    empirical.actions.push_back({costs[a], {d.pmf().begin(), d.pmf().end()}});
  }
  OptimalContractResult best = OptimalBoundedContract(empirical, config.H);
  LearnerReport report;
  report.contract = Robustify(best.contract, empirical.outcomes, config.eps);
  report.estimated_utility = PrincipalUtility(empirical, report.contract);
  report.samples_per_unit = samples;
  report.query_count = session.query_count() - start;
  return report;
}

InitializationPlan PlanInitialization(const LearnerConfig& config, int m) {
  InitializationPlan plan;
  plan.accuracy = config.init_accuracy > 0
                      ? config.init_accuracy
                      : config.eps * config.eps / (288.0 * m * config.H);
  plan.oracle_accuracy = config.oracle_accuracy > 0
                             ? config.oracle_accuracy
                             : std::pow(plan.accuracy, 4) / 64;
  double convex_eps = plan.accuracy * plan.accuracy / 2;
  double slopes = 2 * std::ceil(4 / convex_eps * std::log(4 / convex_eps)) + 1;
  plan.slopes_per_curve = CheckedCount(slopes, "initialization");
  plan.oracle_delta = config.oracle_delta > 0
                          ? config.oracle_delta
                          : config.delta / (2.0 * (m - 1) * slopes);
  double per_slope = std::ceil(config.hoeffding_k *
                               std::log(1 / plan.oracle_delta) /
                               (plan.oracle_accuracy * plan.oracle_accuracy));
  plan.queries_per_slope = CheckedCount(per_slope, "initialization");
  plan.total_queries =
      CheckedCount(per_slope * slopes * (m - 1), "initialization");
  return plan;
}

EmpiricalInstance InitializeContractQuery(OracleSession& session,
                                          const LearnerConfig& config) {
  config.Validate();
  if (session.mode() != QueryMode::kContract) {
    throw std::invalid_argument("contract-query learner needs a contract session");
  }
  const int m = session.num_outcomes();
  InitializationPlan plan = PlanInitialization(config, m);
  session.set_hoeffding_k(config.hoeffding_k);
  EmpiricalInstance out;
  out.outcomes = session.outcomes();
  out.min_cost = config.eps * config.eps / 144;
  std::vector<PiecewiseLinearFn> curves;
  for (int w = 1; w < m; ++w) {
    SubgradientOracle oracle = [&](double slope) {
      return session.SubgradientQuery(w, slope, plan.oracle_accuracy,
                                      plan.oracle_delta);
    };
    PiecewiseLinearFn f = LearnConcave(oracle, plan.accuracy);
    if (!curves.empty()) f = PointwiseMin(f, curves.back());
    curves.push_back(std::move(f));
  }
  std::vector<double> init(m, 1.0);
  for (int w = 1; w < m; ++w) {
    PiecewiseLinearFn f = curves[w - 1].Restrict(out.min_cost, 1.0);
    out.ccdf.push_back(f.Simplified(1e-13));
    init[w] = out.ccdf.back().Eval(out.min_cost);
  }
  out.zero_cost_actions.push_back(Distribution::FromCcdf(init));
  return out;
}

int64_t RefinementSamples(const LearnerConfig& config, int m) {
  if (config.refinement_samples > 0) return config.refinement_samples;
  double mh = m * config.H;
  return CheckedCount(config.sample_constant * m * mh * mh *
                          std::log(mh / (config.delta * config.eps)) /
                          std::pow(config.eps, 4),
                      "refinement");
}

int64_t RefinementIterationCap(const LearnerConfig& config, int m) {
  double bound = std::ceil(576.0 * m * m * config.H / (config.eps * config.eps));
  int64_t cap = static_cast<int64_t>(bound);
  if (config.max_refinement_iterations > 0) {
    cap = std::min(cap, config.max_refinement_iterations);
  }
  return cap;
}

LearnerReport RefineContractQuery(OracleSession& session,
                                  EmpiricalInstance& empirical,
                                  const LearnerConfig& config) {
  config.Validate();
  const int m = empirical.num_outcomes();
  const int64_t start = session.query_count();
  LearnerReport report;
  report.samples_per_unit = RefinementSamples(config, m);
  report.iteration_cap = RefinementIterationCap(config, m);
  bool have_best = false;
  for (int64_t it = 1; it <= report.iteration_cap; ++it) {
    OptimalContractResult target =
        OptimalBoundedContractMenu(empirical.Menu(), config.H);
    Contract p = Robustify(target.contract, empirical.outcomes, config.eps);
    std::vector<int> counts =
        session.QueryContractCounts(p, report.samples_per_unit);
    Distribution observed = FromCounts(counts, report.samples_per_unit);
    double estimate = PrincipalUtilityOf(observed, empirical.outcomes, p);
    IterationDiagnostics diag;
    diag.iteration = static_cast<int>(it);
    diag.empirical_opt = target.principal_utility;
    diag.estimated_utility = estimate;
    diag.samples = report.samples_per_unit;
    diag.contract = p;
    diag.accepted = estimate >= target.principal_utility - config.eps / 2;
    report.diagnostics.push_back(diag);
    report.iterations = static_cast<int>(it);
    if (!have_best || estimate > report.estimated_utility) {
      report.contract = p;
      report.estimated_utility = estimate;
      have_best = true;
    }
    if (diag.accepted) {
      report.contract = p;
      report.estimated_utility = estimate;
      report.query_count = session.query_count() - start;
      return report;
    }
    empirical.zero_cost_actions.push_back(observed);
    report.appended.push_back(observed);
  }
  report.bound_exceeded = true;
  report.query_count = session.query_count() - start;
  return report;
}

LearnerReport LearnContractQuery(OracleSession& session,
                                 const LearnerConfig& config) {
  const int64_t start = session.query_count();
  EmpiricalInstance empirical = InitializeContractQuery(session, config);
  const int64_t init_queries = session.query_count() - start;
  LearnerReport report = RefineContractQuery(session, empirical, config);
  report.init_queries = init_queries;
  report.query_count = session.query_count() - start;
  return report;
}

}  // namespace contractlab
