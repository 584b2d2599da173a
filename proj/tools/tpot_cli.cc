// Copyright 2026 The tpot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: instance generation, solvers and the two benchmark
// tables. Exit status 0 on success, 2 when the instance has no feasible
// solution, 1 on usage or internal errors.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tpot/capacity.h"
#include "tpot/harness.h"
#include "tpot/ot.h"
#include "tpot/pipeline.h"
#include "tpot/sparse.h"

namespace {

using Json = nlohmann::ordered_json;
using namespace tpot;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct GlobalFlags {
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::string output;
  std::optional<int> repeats;
  std::string backend = "simplex";

  SolverConfig Lp() const {
    SolverConfig config;
    if (tol) {
      config.feas_tol = *tol;
      config.opt_tol = *tol;
    }
    config.backend = MakeBackend(backend);
    return config;
  }
  bool Csv(bool csv_by_default) const {
    return output.empty() ? csv_by_default : output == "csv";
  }
};

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string MatrixCsv(const std::string& label, const Matrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += label + "," + std::to_string(r);
    for (double v : m.row(r)) out += "," + Num(v);
    out += "\n";
  }
  return out;
}

// Every emitted cost must be reproducible from the emitted plan.
void CrossCheck(const std::vector<Matrix>& costs,
                const std::vector<Matrix>& plans, double cost) {
  double recomputed = 0.0;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    recomputed += FrobeniusInner(costs[i % costs.size()], plans[i]);
  }
  if (std::abs(recomputed - cost) > 1e-9 * std::max(1.0, std::abs(cost))) {
    throw Error("emitted cost " + Num(cost) +
                " does not match the plan's cost " + Num(recomputed));
  }
}

const CostMatrix& SingleCost(const InstanceFile& file) {
  for (const Matrix& c : file.costs) {
    if (!(c == file.costs.front())) {
      throw InvalidArgument("costs: this command needs a single cost matrix");
    }
  }
  return file.costs.front();
}

void Emit(const GlobalFlags& g, const Json& json, const std::string& csv) {
  if (g.Csv(false)) {
    std::cout << csv;
  } else {
    std::cout << json.dump(2) << "\n";
  }
}

int RunGen(const GlobalFlags& g, std::size_t n, std::size_t m,
           std::size_t steps, const std::string& kind, int sparsity,
           const std::string& out) {
  const InstanceFile file =
      GenerateInstance(n, m, steps, ParseInstanceKind(kind), g.seed, sparsity);
  if (out.empty() || out == "-") {
    std::cout << SerializeInstance(file);
  } else {
    WriteInstanceFile(out, file);
  }
  return kExitOk;
}

int RunSolveOt(const GlobalFlags& g, const std::string& path) {
  const InstanceFile file = ReadInstanceFile(path);
  const CostMatrix& cost = SingleCost(file);
  const OtResult result = SolveKantorovich(file.a, file.b, cost, g.Lp());
  CrossCheck({cost}, {result.plan}, result.cost);
  Json json = Json::object();
  json["status"] = "optimal";
  json["cost"] = result.cost;
  json["plan"] = MatrixToJson(result.plan);
  json["iterations"] = result.iterations;
  Emit(g, json, "cost," + Num(result.cost) + "\n" + MatrixCsv("plan", result.plan));
  return kExitOk;
}

int RunWasserstein(const GlobalFlags& g, const std::string& path, double p,
                   const std::string& metric_name) {
  const InstanceFile file = ReadInstanceFile(path);
  Metric metric;
  if (metric_name == "euclidean") {
    metric = Metric::kEuclidean;
  } else if (metric_name == "manhattan") {
    metric = Metric::kManhattan;
  } else {
    throw InvalidArgument("unknown metric '" + metric_name + "'");
  }
  const double w = WassersteinDistance(file.a, file.b, p, metric, g.Lp());
  Json json = Json::object();
  json["p"] = p;
  json["metric"] = metric_name;
  json["distance"] = w;
  Emit(g, json, "distance," + Num(w) + "\n");
  return kExitOk;
}

int RunSolveCapacity(const GlobalFlags& g, const std::string& path, bool fast,
                     bool general) {
  if (fast && general) throw InvalidArgument("--fast and --general conflict");
  const InstanceFile file = ReadInstanceFile(path);
  const CapacityInstance inst = file.ToCapacityInstance();
  const bool use_fast = fast || (!general && inst.IsStationary());
  const TimeExpandedPlan plan =
      use_fast ? SolveUniformFast(inst, g.Lp()) : SolveGeneral(inst, g.Lp());
  const std::vector<std::string> issues = CheckPlan(inst, plan);
  if (!issues.empty()) throw Error("plan check failed: " + issues.front());
  CrossCheck(inst.costs, plan.gammas, plan.cost);

  Json json = Json::object();
  json["status"] = "optimal";
  json["method"] = use_fast ? "fast" : "general";
  json["cost"] = plan.cost;
  json["aggregate"] = MatrixToJson(plan.aggregate);
  Json steps = Json::array();
  for (const Matrix& gamma : plan.gammas) steps.push_back(MatrixToJson(gamma));
  json["steps"] = std::move(steps);
  json["iterations"] = plan.iterations;
  std::string csv = "cost," + Num(plan.cost) + "\n" +
                    MatrixCsv("aggregate", plan.aggregate);
  for (std::size_t i = 0; i < plan.gammas.size(); ++i) {
    csv += MatrixCsv("step" + std::to_string(i), plan.gammas[i]);
  }
  Emit(g, json, csv);
  return kExitOk;
}

int RunSolveSparse(const GlobalFlags& g, const std::string& path,
                   int surrogate, double lambda, bool oracle, int baseline,
                   int attempt_cap) {
  const InstanceFile file = ReadInstanceFile(path);
  const SparsityInstance inst = file.ToSparsityInstance();
  const SolverConfig lp = g.Lp();
  SparseResult result;
  if (oracle) {
    OracleOptions options;
    options.lp = lp;
    result = OracleSolve(inst, options);
  } else {
    HeuristicOptions options;
    options.attempt_cap = attempt_cap;
    options.lp = lp;
    result = HeuristicSolve(
        inst, Importance(inst.a, inst.b, inst.cost, surrogate, lambda, lp),
        options);
  }
  CrossCheck({inst.cost}, {result.plan}, result.cost);

  Json json = Json::object();
  json["status"] = "optimal";
  json["method"] = oracle ? "oracle" : "heuristic";
  if (!oracle) json["surrogate"] = surrogate;
  json["cost"] = result.cost;
  json["plan"] = MatrixToJson(result.plan);
  json["lp_solves"] = result.lp_solves;
  std::string csv = "cost," + Num(result.cost) + "\n" +
                    MatrixCsv("plan", result.plan);
  if (baseline > 0) {
    const std::vector<BaselineSample> samples =
        RandomBaseline(inst, baseline, g.seed, lp);
    Json costs = Json::array();
    int feasible = 0;
    int beaten = 0;
    for (const BaselineSample& s : samples) {
      costs.push_back(s.cost ? Json(*s.cost) : Json(nullptr));
      if (!s.cost) continue;
      ++feasible;
      if (*s.cost > result.cost) ++beaten;
    }
    json["baseline"] = {{"samples", baseline},
                        {"feasible", feasible},
                        {"solutions_beat_pct",
                         feasible ? Json(100.0 * beaten / feasible)
                                  : Json(nullptr)},
                        {"costs", std::move(costs)}};
    csv += "baseline_feasible," + std::to_string(feasible) + "\n";
    csv += "solutions_beat_pct," +
           (feasible ? Num(100.0 * beaten / feasible) : std::string("NA")) +
           "\n";
  }
  Emit(g, json, csv);
  return kExitOk;
}

int RunPipeline(const GlobalFlags& g, const std::string& path, int surrogate,
                double lambda, bool no_capacity, int attempt_cap) {
  const InstanceFile file = ReadInstanceFile(path);
  const CapacityInstance inst = file.ToCapacityInstance();
  std::vector<std::vector<int>> budgets =
      file.sparsity ? *file.sparsity
                    : std::vector<std::vector<int>>{
                          std::vector<int>(inst.a.size(),
                                           static_cast<int>(inst.b.size()))};
  PipelineConfig config;
  config.surrogate = surrogate;
  config.lambda = lambda;
  config.attempt_cap = attempt_cap;
  config.enforce_capacity_in_sparse_step = !no_capacity;
  config.lp = g.Lp();
  const PipelineResult result = SolveCombined(inst, budgets, config);
  CrossCheck(inst.costs, result.plan.gammas, result.plan.cost);

  Json json = Json::object();
  json["status"] = "optimal";
  json["cost"] = result.plan.cost;
  json["capacity_cost"] = result.capacity_plan.cost;
  json["used_fast_path"] = result.used_fast_path;
  json["aggregate"] = MatrixToJson(result.plan.aggregate);
  Json steps = Json::array();
  for (const Matrix& gamma : result.plan.gammas) {
    steps.push_back(MatrixToJson(gamma));
  }
  json["steps"] = std::move(steps);
  json["attempts"] = result.attempts;
  std::string csv = "cost," + Num(result.plan.cost) + "\n" +
                    MatrixCsv("aggregate", result.plan.aggregate);
  for (std::size_t i = 0; i < result.plan.gammas.size(); ++i) {
    csv += MatrixCsv("step" + std::to_string(i), result.plan.gammas[i]);
  }
  Emit(g, json, csv);
  return kExitOk;
}

int RunBenchTable1(const GlobalFlags& g, CapacityBenchOptions options,
                   bool summary) {
  options.seed = g.seed;
  if (g.repeats) options.repeats = *g.repeats;
  options.lp = g.Lp();
  const BenchReport report = BenchCapacity(options);
  if (g.Csv(true)) {
    std::cout << ToCsv(report);
  } else {
    std::cout << ToJson(report).dump(2) << "\n";
  }
  if (summary) std::cerr << Table1Summary(report);
  for (const std::string& w : report.warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  return kExitOk;
}

int RunBenchTable2(const GlobalFlags& g, SparseBenchOptions options,
                   bool timing) {
  options.seed = g.seed;
  options.lp = g.Lp();
  const SparseBenchReport report = BenchSparse(options);
  if (g.Csv(true)) {
    std::cout << Table2Csv(report, timing);
  } else {
    Json json = ToJson(report);
    if (!timing) {
      for (Json& s : json["surrogates"]) s.erase("time_saved_pct");
    }
    std::cout << json.dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-parameterized optimal transport under capacity and "
               "sparsity constraints"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags g;
  app.add_option("--seed", g.seed, "Seed for generated instances and sampling");
  app.add_option("--tol", g.tol, "LP feasibility and optimality tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", g.output, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--repeats", g.repeats, "Timing repeats per setting")
      ->check(CLI::PositiveNumber);
  app.add_option("--backend", g.backend, "LP backend")
      ->check(CLI::IsMember(AvailableBackends()));

  std::function<int()> run;

  std::size_t gen_n = 4, gen_m = 4, gen_steps = 1;
  std::string gen_kind = "capacity", gen_out;
  int gen_sparsity = 0;
  CLI::App* gen = app.add_subcommand("gen", "Write a random instance file");
  gen->add_option("--n", gen_n, "Sources")->check(CLI::PositiveNumber);
  gen->add_option("--m", gen_m, "Sinks")->check(CLI::PositiveNumber);
  gen->add_option("--steps", gen_steps, "Time steps")->check(CLI::PositiveNumber);
  gen->add_option("--kind", gen_kind, "capacity, sparse or combined")
      ->check(CLI::IsMember({"capacity", "sparse", "combined"}));
  gen->add_option("--sparsity", gen_sparsity, "Per-row budget (0: ceil(m/2))")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("-o,--out", gen_out, "Output file (default stdout)");
  gen->callback([&] {
    run = [&] {
      return RunGen(g, gen_n, gen_m, gen_steps, gen_kind, gen_sparsity, gen_out);
    };
  });

  std::string path;
  CLI::App* solve_ot =
      app.add_subcommand("solve-ot", "Unconstrained Kantorovich problem");
  solve_ot->add_option("instance", path)->required();
  solve_ot->callback([&] { run = [&] { return RunSolveOt(g, path); }; });

  double p = 2.0;
  std::string metric = "euclidean";
  CLI::App* wass = app.add_subcommand(
      "wasserstein", "p-Wasserstein distance between measures with points");
  wass->add_option("instance", path)->required();
  wass->add_option("--p", p, "Exponent >= 1");
  wass->add_option("--metric", metric, "euclidean or manhattan");
  wass->callback([&] { run = [&] { return RunWasserstein(g, path, p, metric); }; });

  bool fast = false, general = false;
  CLI::App* cap = app.add_subcommand(
      "solve-capacity", "Capacity-constrained time-expanded problem");
  cap->add_option("instance", path)->required();
  cap->add_flag("--fast", fast, "Uniform reformulation (stationary instances)");
  cap->add_flag("--general", general, "Full time-expanded LP");
  cap->callback([&] {
    run = [&] { return RunSolveCapacity(g, path, fast, general); };
  });

  int surrogate = 4, baseline = 0, attempt_cap = 1000;
  double lambda = kDefaultBlend;
  bool oracle = false;
  CLI::App* sparse =
      app.add_subcommand("solve-sparse", "Row-sparse transport problem");
  sparse->add_option("instance", path)->required();
  sparse->add_option("--surrogate", surrogate, "Importance score 1-4")
      ->check(CLI::Range(1, 4));
  sparse->add_option("--lambda", lambda, "Blend weight of surrogate 4")
      ->check(CLI::Range(0.0, 1.0));
  sparse->add_flag("--oracle", oracle, "Exhaustive search instead");
  sparse->add_option("--baseline", baseline, "Random patterns to compare with")
      ->check(CLI::NonNegativeNumber);
  sparse->add_option("--attempt-cap", attempt_cap, "Patterns tried at most")
      ->check(CLI::PositiveNumber);
  sparse->callback([&] {
    run = [&] {
      return RunSolveSparse(g, path, surrogate, lambda, oracle, baseline,
                            attempt_cap);
    };
  });

  bool no_capacity = false;
  CLI::App* pipe = app.add_subcommand(
      "pipeline", "Capacity split followed by per-step sparsification");
  pipe->add_option("instance", path)->required();
  pipe->add_option("--surrogate", surrogate, "Importance score 1-4")
      ->check(CLI::Range(1, 4));
  pipe->add_option("--lambda", lambda, "Blend weight of surrogate 4")
      ->check(CLI::Range(0.0, 1.0));
  pipe->add_option("--attempt-cap", attempt_cap, "Patterns tried per step")
      ->check(CLI::PositiveNumber);
  pipe->add_flag("--no-capacity-in-sparse-step", no_capacity,
                 "Drop capacities while sparsifying");
  pipe->callback([&] {
    run = [&] {
      return RunPipeline(g, path, surrogate, lambda, no_capacity, attempt_cap);
    };
  });

  CapacityBenchOptions t1;
  bool t1_summary = false;
  CLI::App* bench1 = app.add_subcommand(
      "bench-table1", "Time the general LP against the uniform reformulation");
  bench1->add_option("--sizes", t1.sizes, "n = m values")->delimiter(',');
  bench1->add_option("--steps", t1.step_counts, "N values")->delimiter(',');
  bench1->add_option("--backends", t1.backends, "LP backends")
      ->delimiter(',')
      ->check(CLI::IsMember(AvailableBackends()));
  bench1->add_option("--fast-threshold", t1.fast_threshold_s,
                     "Mean seconds below which a setting is re-averaged");
  bench1->add_option("--fast-repeats", t1.fast_repeats,
                     "Runs used for re-averaging");
  bench1->add_flag("--summary", t1_summary, "Print the mean-time table to stderr");
  bench1->callback([&] { run = [&] { return RunBenchTable1(g, t1, t1_summary); }; });

  SparseBenchOptions t2;
  bool no_timing = false;
  CLI::App* bench2 = app.add_subcommand(
      "bench-table2", "Heuristic against oracle and random patterns");
  bench2->add_option("--n", t2.n)->check(CLI::PositiveNumber);
  bench2->add_option("--m", t2.m)->check(CLI::PositiveNumber);
  bench2->add_option("--s", t2.s, "Per-row budget")->check(CLI::PositiveNumber);
  bench2->add_option("--instances", t2.instances)->check(CLI::PositiveNumber);
  bench2->add_option("--surrogate", t2.surrogates, "Surrogates to run")
      ->delimiter(',')
      ->check(CLI::Range(1, 4));
  bench2->add_option("--baseline", t2.baseline_samples, "Random patterns")
      ->check(CLI::NonNegativeNumber);
  bench2->add_option("--lambda", t2.lambda)->check(CLI::Range(0.0, 1.0));
  bench2->add_option("--attempt-cap", t2.attempt_cap)->check(CLI::PositiveNumber);
  bench2->add_flag("--no-timing", no_timing,
                   "Drop the wall-clock row so output depends on the seed only");
  bench2->callback([&] {
    run = [&] { return RunBenchTable2(g, t2, !no_timing); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    return run();
  } catch (const InfeasibleInstanceError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    const FeasibilityReport& r = e.report();
    for (std::size_t j : r.capacity_shortfall.sources) {
      std::cerr << "  source " << j << " cannot ship its mass\n";
    }
    for (std::size_t k : r.capacity_shortfall.sinks) {
      std::cerr << "  sink " << k << " cannot receive its demand\n";
    }
    return kExitInfeasible;
  } catch (const HeuristicExhaustedError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const PipelineStepError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
