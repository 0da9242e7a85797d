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


#include "contractlab/experiment.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>
#include <variant>

#include "contractlab/agent.h"
#include "contractlab/contracts.h"
#include "contractlab/hardness.h"
#include "contractlab/instance_io.h"
#include "contractlab/oracle.h"
#include "contractlab/rng.h"
#include "json.hpp"

namespace contractlab {
namespace {

using nlohmann::json;

std::string Fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string JoinPayments(const Contract& c, const char* sep) {
  std::string s;
  for (int w = 0; w < c.size(); ++w) {
    if (w) s += sep;
    s += Fmt(c.payments[w]);
  }
  return s;
}

std::string OutputDir(const ExperimentConfig& config) {
  std::string dir = config.output.empty() ? DefaultOutputDir() : config.output;
  std::filesystem::create_directories(dir);
  return dir;
}

std::string OutputFile(const ExperimentConfig& config,
                       const std::string& default_name) {
  if (!config.output.empty()) {
    std::filesystem::path p(config.output);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    return config.output;
  }
  std::string dir = DefaultOutputDir();
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / default_name).string();
}

// Finite view of a CCDF instance through its candidate menu.
FiniteInstance MenuToFinite(const CcdfInstance& instance) {
  ActionMenu menu = ActionMenu::FromCcdf(instance);
  FiniteInstance out;
  out.outcomes = instance.outcomes;
  for (int a = 0; a < menu.size(); ++a) {
    std::vector<double> pmf(menu.pmf(a).begin(), menu.pmf(a).end());
    for (double& p : pmf) p = std::max(p, 0.0);
    out.actions.push_back({menu.cost(a), std::move(pmf)});
  }
  return out;
}

AnyInstance Load(const ExperimentConfig& config) {
  if (config.instance_path.empty()) {
    throw std::invalid_argument("missing instance path");
  }
  LoadOptions options;
  options.insert_null_action = config.insert_null;
  return LoadInstance(config.instance_path, options);
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads.
template <typename Fn>
void ParallelFor(int count, int jobs, Fn fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  for (int t = 0; t < jobs; ++t) {
    workers.emplace_back([&, t] {
      try {
        for (int i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (std::thread& w : workers) w.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

int RunValidate(const ExperimentConfig& config, std::ostream& out) {
  AnyInstance instance = Load(config);
  if (const auto* finite = std::get_if<FiniteInstance>(&instance)) {
    ValidationReport report = ValidateFinite(*finite);
    out << "kind: finite\nm: " << finite->num_outcomes()
        << "\nactions: " << finite->num_actions() << "\n";
    out << "validation: " << report.ToString();
    if (!report.ok()) return 1;
    FosdResult fosd = CheckFosd(*finite);
    if (fosd.holds) {
      out << "fosd: holds\n";
      CdfpResult cdfp = CheckCdfp(*finite);
      if (cdfp.holds) {
        out << "cdfp: holds\n";
      } else {
        out << "cdfp: violated at (" << cdfp.omega << ", (" << cdfp.left
            << ", " << cdfp.middle << ", " << cdfp.right << "))\n";
      }
    } else {
      out << "fosd: violated by actions (" << fosd.first << ", "
          << fosd.second << ") at outcome " << fosd.omega << "\n";
      out << "cdfp: not checked\n";
    }
    return 0;
  }
  const CcdfInstance& ccdf = std::get<CcdfInstance>(instance);
  ValidationReport report = ValidateCcdf(ccdf);
  out << "kind: ccdf\nm: " << ccdf.num_outcomes()
      << "\ncost_max: " << Fmt(ccdf.cost_max) << "\n";
  out << "validation: " << report.ToString();
  return report.ok() ? 0 : 1;
}

int RunSolve(const ExperimentConfig& config, std::ostream& out,
             std::ostream& err) {
  AnyInstance instance = Load(config);
  OptimalContractResult result;
  if (const auto* finite = std::get_if<FiniteInstance>(&instance)) {
    ValidationReport report = ValidateFinite(*finite);
    if (!report.ok()) {
      err << "invalid instance:\n" << report.ToString();
      return 1;
    }
    result = config.general ? OptimalGeneralContract(*finite)
                            : OptimalBoundedContract(*finite, config.H);
  } else {
    const CcdfInstance& ccdf = std::get<CcdfInstance>(instance);
    ValidationReport report = ValidateCcdf(ccdf);
    if (!report.ok()) {
      err << "invalid instance:\n" << report.ToString();
      return 1;
    }
    if (config.general) {
      result = OptimalGeneralContract(MenuToFinite(ccdf));
    } else {
      result = OptimalBoundedContractCcdf(ccdf, config.H);
    }
  }
  out << "bound: " << Fmt(result.bound) << "\n";
  out << "action: " << result.incentivized_action << "\n";
  out << "cost: " << Fmt(result.cost) << "\n";
  out << "utility: " << Fmt(result.principal_utility) << "\n";
  out << "contract: " << JoinPayments(result.contract, " ") << "\n";
  if (!config.output.empty()) {
    json doc;
    doc["bound"] = result.bound;
    doc["action"] = result.incentivized_action;
    doc["cost"] = result.cost;
    doc["utility"] = result.principal_utility;
    doc["contract"] = result.contract.payments;
    json per_action = json::array();
    for (const auto& u : result.per_action_utilities) {
      per_action.push_back(u ? json(*u) : json(nullptr));
    }
    doc["per_action_utilities"] = per_action;
    WriteFile(OutputFile(config, "solve.json"), doc.dump(2) + "\n");
  }
  return 0;
}

int RunLin(const ExperimentConfig& config, std::ostream& out,
           std::ostream& err) {
  AnyInstance instance = Load(config);
  FiniteInstance finite;
  if (const auto* f = std::get_if<FiniteInstance>(&instance)) {
    finite = *f;
    ValidationReport report = ValidateFinite(finite);
    if (!report.ok()) {
      err << "invalid instance:\n" << report.ToString();
      return 1;
    }
  } else {
    const CcdfInstance& ccdf = std::get<CcdfInstance>(instance);
    ValidationReport report = ValidateCcdf(ccdf);
    if (!report.ok()) {
      err << "invalid instance:\n" << report.ToString();
      return 1;
    }
    finite = MenuToFinite(ccdf);
  }
  LinearContractResult lin = OptimalLinearContract(finite);
  out << "rho: " << Fmt(lin.rho) << "\n";
  out << "lin: " << Fmt(lin.utility) << "\n";
  out << "action: " << lin.action << "\n";
  return 0;
}

int RunLearn(const ExperimentConfig& config, std::ostream& out,
             std::ostream& err) {
  const bool action_mode = config.which == "action";
  if (!action_mode && config.which != "contract") {
    throw std::invalid_argument("learn mode must be action or contract");
  }
  AnyInstance instance = Load(config);
  FiniteInstance finite;
  CcdfInstance ccdf;
  double opt_h = 0;
  if (action_mode) {
    const auto* f = std::get_if<FiniteInstance>(&instance);
    if (f == nullptr) {
      err << "error: action mode needs a finite instance\n";
      return 1;
    }
    finite = *f;
    ValidationReport report = ValidateFinite(finite);
    if (!report.ok()) {
      err << "error: invalid instance:\n" << report.ToString();
      return 1;
    }
    opt_h = OptimalBoundedContract(finite, config.H).principal_utility;
  } else {
    if (const auto* f = std::get_if<FiniteInstance>(&instance)) {
      ValidationReport report = ValidateFinite(*f);
      if (!report.ok()) {
        err << "error: invalid instance:\n" << report.ToString();
        return 1;
      }
      FosdResult fosd = CheckFosd(*f);
      if (!fosd.holds) {
        err << "error: FOSD violated by actions (" << fosd.first << ", "
            << fosd.second << ") at outcome " << fosd.omega << "\n";
        return 1;
      }
      CdfpResult cdfp = CheckCdfp(*f);
      if (!cdfp.holds) {
        err << "error: CDFP violated at (" << cdfp.omega << ", (" << cdfp.left
            << ", " << cdfp.middle << ", " << cdfp.right << "))\n";
        return 1;
      }
      ccdf = ToCcdfInstance(*f);
    } else {
      ccdf = std::get<CcdfInstance>(instance);
      ValidationReport report = ValidateCcdf(ccdf);
      if (!report.ok()) {
        err << "error: invalid instance:\n" << report.ToString();
        return 1;
      }
    }
    opt_h = OptimalBoundedContractCcdf(ccdf, config.H).principal_utility;
  }
  std::vector<uint64_t> seeds = config.SeedList();
  std::sort(seeds.begin(), seeds.end());
  std::vector<std::string> rows(seeds.size());
  std::vector<int> meets(seeds.size(), 0);
  ParallelFor(static_cast<int>(seeds.size()), config.jobs, [&](int i) {
    LearnerConfig lc = config.ToLearnerConfig(seeds[i]);
    LearnerReport report;
    double truth;
    if (action_mode) {
      OracleSession session(finite, QueryMode::kAction, seeds[i]);
      std::vector<double> costs;
      for (const Action& a : finite.actions) costs.push_back(a.cost);
      report = LearnActionQuery(session, costs, lc);
      truth = PrincipalUtility(finite, report.contract);
    } else {
      OracleSession session(ccdf, seeds[i]);
      report = LearnContractQuery(session, lc);
      truth = PrincipalUtility(ccdf, report.contract);
    }
    meets[i] = truth >= opt_h - config.eps ? 1 : 0;
    std::ostringstream row;
    row << seeds[i] << ',' << config.which << ',' << Fmt(config.eps) << ','
        << Fmt(config.delta) << ',' << Fmt(config.H) << ','
        << Fmt(config.sample_constant) << ',' << report.query_count << ','
        << report.init_queries << ',' << report.iterations << ','
        << (report.bound_exceeded ? 1 : 0) << ','
        << Fmt(report.estimated_utility) << ',' << Fmt(truth) << ','
        << Fmt(opt_h) << ',' << meets[i] << ','
        << JoinPayments(report.contract, ";");
    rows[i] = row.str();
  });
  std::ostringstream csv;
  csv << "# schema: " << kLearnSchema << "\n";
  csv << "seed,mode,eps,delta,H,C,queries,init_queries,iterations,"
         "bound_exceeded,est_utility,true_utility,opt_h_truth,meets_target,"
         "contract\n";
  for (const std::string& row : rows) csv << row << "\n";
  std::string path = OutputFile(config, "learn_" + config.which + ".csv");
  WriteFile(path, csv.str());
  int total = 0;
  for (int x : meets) total += x;
  out << "rows: " << rows.size() << "\n";
  out << "meets_target: " << total << "\n";
  out << "opt_h_truth: " << Fmt(opt_h) << "\n";
  out << "csv: " << path << "\n";
  return 0;
}

std::string GapCsv(const std::string& which, const ExperimentConfig& config,
                   int n, const GapReport& gap, double lin) {
  std::ostringstream csv;
  csv << "# schema: " << kGapSchema << "\n";
  csv << "which,eps,H,n,opt,opt_h,ratio,gap,lin,certified\n";
  csv << which << ',' << Fmt(config.eps) << ',' << Fmt(config.H) << ',' << n
      << ',' << Fmt(gap.opt) << ',' << Fmt(gap.opt_h) << ',' << Fmt(gap.ratio)
      << ',' << Fmt(gap.gap) << ',' << Fmt(lin) << ','
      << (gap.certified ? 1 : 0) << "\n";
  return csv.str();
}

int RunHardness(const ExperimentConfig& config, std::ostream& out) {
  std::filesystem::path dir(OutputDir(config));
  HardnessParams params{config.eps, config.H, config.n};
  if (config.which == "add") {
    FiniteInstance instance = GenAdditiveHardness(params);
    std::string stem = "additive_eps" + Fmt(config.eps) + "_H" + Fmt(config.H);
    SaveInstance((dir / (stem + ".json")).string(), instance);
    GapReport gap = VerifyGap(instance, config.H);
    double lin = OptimalLinearContract(instance).utility;
    std::string csv = GapCsv("add", config, instance.num_actions(), gap, lin);
    WriteFile((dir / "hardness_add.csv").string(), csv);
    out << csv;
    return 0;
  }
  if (config.which == "mult") {
    MultiplicativeHardness h = GenMultiplicativeHardness(params);
    std::string stem = "multiplicative_eps" + Fmt(config.eps) + "_H" +
                       Fmt(config.H) + "_n" + std::to_string(config.n);
    SaveInstance((dir / (stem + ".json")).string(), h.finite);
    SaveInstance((dir / (stem + "_ccdf.json")).string(), h.ccdf);
    GapReport gap = VerifyGap(h.finite, config.H, h.certificate);
    double lin = OptimalLinearContract(h.finite).utility;
    std::string csv = GapCsv("mult", config, config.n, gap, lin);
    WriteFile((dir / "hardness_mult.csv").string(), csv);
    out << csv;
    return 0;
  }
  if (config.which == "mixed") {
    std::ostringstream rows;
    rows << "# schema: " << kMixedSchema << "\n";
    rows << "trial,seed,family,m,n,form,eps,opt,lin,bound,holds\n";
    int violations = 0;
    std::vector<double> grid = {config.eps};
    for (int t = 0; t < config.trials; ++t) {
      uint64_t seed = Rng::ChildSeed(config.seed, "mixed-" + std::to_string(t));
      Rng rng(seed);
      int m = 2 + static_cast<int>(rng.Uniform() * 4);
      int n = 2 + static_cast<int>(rng.Uniform() * 7);
      bool structured = t % 2 == 1;
      FiniteInstance instance =
          structured ? GenRandomFinite(m, n, Rng::ChildSeed(seed, "instance"))
                     : GenRandomUnstructured(m, n, Rng::ChildSeed(seed, "instance"));
      for (const MixedApproxRow& row : VerifyMixedApprox(instance, grid)) {
        if (!row.holds) ++violations;
        rows << t << ',' << seed << ',' << (structured ? "fosd_cdfp" : "general")
             << ',' << m << ',' << n << ',' << row.form << ',' << Fmt(row.eps)
             << ',' << Fmt(row.opt) << ',' << Fmt(row.lin) << ','
             << Fmt(row.bound) << ',' << (row.holds ? 1 : 0) << "\n";
      }
    }
    WriteFile((dir / "hardness_mixed.csv").string(), rows.str());
    std::ostringstream summary;
    summary << "# schema: " << kMixedSummarySchema << "\n";
    summary << "trials,eps,seed,violations\n";
    summary << config.trials << ',' << Fmt(config.eps) << ',' << config.seed
            << ',' << violations << "\n";
    WriteFile((dir / "hardness_mixed_summary.csv").string(), summary.str());
    out << summary.str();
    return violations == 0 ? 0 : 1;
  }
  throw std::invalid_argument("hardness family must be mult, add or mixed");
}

}  // namespace

std::string ExperimentConfig::ToJson() const {
  json doc;
  doc["command"] = command;
  doc["instance_path"] = instance_path;
  doc["which"] = which;
  doc["H"] = H;
  doc["eps"] = eps;
  doc["delta"] = delta;
  doc["seeds"] = seeds;
  doc["num_seeds"] = num_seeds;
  doc["seed"] = seed;
  doc["sample_constant"] = sample_constant;
  doc["samples_per_action"] = samples_per_action;
  doc["refinement_samples"] = refinement_samples;
  doc["max_refinement_iterations"] = max_refinement_iterations;
  doc["init_accuracy"] = init_accuracy;
  doc["oracle_accuracy"] = oracle_accuracy;
  doc["oracle_delta"] = oracle_delta;
  doc["hoeffding_k"] = hoeffding_k;
  doc["n"] = n;
  doc["trials"] = trials;
  doc["general"] = general;
  doc["insert_null"] = insert_null;
  doc["jobs"] = jobs;
  doc["output"] = output;
  return doc.dump(2) + "\n";
}

ExperimentConfig ExperimentConfig::FromJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config must be an object");
  ExperimentConfig c;
  static const std::set<std::string> kKeys = {
      "command", "instance_path", "which", "H", "eps", "delta", "seeds",
      "num_seeds", "seed", "sample_constant", "samples_per_action",
      "refinement_samples", "max_refinement_iterations", "init_accuracy",
      "oracle_accuracy", "oracle_delta", "hoeffding_k", "n", "trials",
      "general", "insert_null", "jobs", "output"};
  for (const auto& [key, value] : doc.items()) {
    if (!kKeys.count(key)) throw std::invalid_argument("unknown config key " + key);
  }
  try {
    auto get = [&](const char* key, auto& field) {
      if (doc.contains(key)) doc.at(key).get_to(field);
    };
    get("command", c.command);
    get("instance_path", c.instance_path);
    get("which", c.which);
    get("H", c.H);
    get("eps", c.eps);
    get("delta", c.delta);
    get("seeds", c.seeds);
    get("num_seeds", c.num_seeds);
    get("seed", c.seed);
    get("sample_constant", c.sample_constant);
    get("samples_per_action", c.samples_per_action);
    get("refinement_samples", c.refinement_samples);
    get("max_refinement_iterations", c.max_refinement_iterations);
    get("init_accuracy", c.init_accuracy);
    get("oracle_accuracy", c.oracle_accuracy);
    get("oracle_delta", c.oracle_delta);
    get("hoeffding_k", c.hoeffding_k);
    get("n", c.n);
    get("trials", c.trials);
    get("general", c.general);
    get("insert_null", c.insert_null);
    get("jobs", c.jobs);
    get("output", c.output);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config type error: ") + e.what());
  }
  return c;
}

std::vector<uint64_t> ExperimentConfig::SeedList() const {
  if (!seeds.empty()) return seeds;
  if (num_seeds > 0) {
    std::vector<uint64_t> out(num_seeds);
    for (int i = 0; i < num_seeds; ++i) out[i] = static_cast<uint64_t>(i);
    return out;
  }
  return {seed};
}

LearnerConfig ExperimentConfig::ToLearnerConfig(uint64_t trial_seed) const {
  LearnerConfig lc;
  lc.eps = eps;
  lc.delta = delta;
  lc.H = H;
  lc.sample_constant = sample_constant;
  lc.max_refinement_iterations = max_refinement_iterations;
  lc.seed = trial_seed;
  lc.samples_per_action = samples_per_action;
  lc.init_accuracy = init_accuracy;
  lc.oracle_accuracy = oracle_accuracy;
  lc.oracle_delta = oracle_delta;
  lc.refinement_samples = refinement_samples;
  lc.hoeffding_k = hoeffding_k;
  return lc;
}

std::string DefaultOutputDir() {
  const char* dir = std::getenv(kOutputDirEnv);
  return dir != nullptr && *dir != '\0' ? dir : ".";
}

int RunCommand(const ExperimentConfig& config, std::ostream& out,
               std::ostream& err) {
  if (config.command == "validate") return RunValidate(config, out);
  if (config.command == "solve") return RunSolve(config, out, err);
  if (config.command == "lin") return RunLin(config, out, err);
  if (config.command == "learn") return RunLearn(config, out, err);
  if (config.command == "hardness") return RunHardness(config, out);
  throw std::invalid_argument("unknown command " + config.command);
}

}  // namespace contractlab
