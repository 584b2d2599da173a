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

#ifndef TPOT_HARNESS_H_
#define TPOT_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tpot/capacity.h"
#include "tpot/errors.h"
#include "tpot/lp.h"
#include "tpot/sparse.h"

namespace tpot {

// Malformed instance document. The message starts with the offending field
// path, e.g. "costs[1][0]: expected 3 entries, got 2".
class InstanceFormatError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// In-memory form of the instance JSON document
//
//   {"a": [...] | {"weights": [...], "points": [[...], ...]},
//    "b": same as "a",
//    "costs": n x m  or  steps x n x m,
//    "capacities": same shapes as "costs" (null entries = unbounded), optional,
//    "sparsity": [s_j]  or  [[s^i_j], ...], optional,
//    "steps": N, "seed": integer, "meta": {...}}
//
// Single matrices and single sparsity vectors apply to every step.
struct InstanceFile {
  DiscreteMeasure a;
  DiscreteMeasure b;
  std::size_t steps = 1;
  std::vector<CostMatrix> costs;
  std::optional<std::vector<Matrix>> capacities;
  std::optional<std::vector<std::vector<int>>> sparsity;
  std::optional<std::uint64_t> seed;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();

  // Missing capacities become kInfinity.
  CapacityInstance ToCapacityInstance() const;
  // Needs a single cost matrix (or identical per-step ones). A missing
  // sparsity entry means unconstrained rows.
  SparsityInstance ToSparsityInstance() const;
};

InstanceFile ParseInstance(const nlohmann::ordered_json& doc);
// JSON syntax errors report line and column.
InstanceFile ParseInstanceText(std::string_view text);
nlohmann::ordered_json ToJson(const InstanceFile& inst);
// Pretty-printed with a trailing newline; identical input gives identical
// bytes.
std::string SerializeInstance(const InstanceFile& inst);
InstanceFile ReadInstanceFile(const std::filesystem::path& path);
void WriteInstanceFile(const std::filesystem::path& path,
                       const InstanceFile& inst);

nlohmann::ordered_json MatrixToJson(const Matrix& m);

enum class InstanceKind { kCapacity, kSparse, kCombined };
InstanceKind ParseInstanceKind(std::string_view name);

// Random instance, deterministic in `seed`. Weights and costs are uniform on
// (0, 1]; b is rescaled to the mass of a. Capacities are M = P (1 + u) with
// P = a b^T / mass(a) and u uniform on [0, 1), so the fractioned product plan
// P / N is feasible for every N. `sparsity` of 0 picks ceil(m / 2) per row.
//
// Kind combined instead draws a coupling W with `sparsity` entries per row
// and takes b as its column sums; M = max(P, W) (1 + u). Then W / N is a
// budget-feasible plan within M for the uniform split of every step.
InstanceFile GenerateInstance(std::size_t n, std::size_t m, std::size_t steps,
                              InstanceKind kind, std::uint64_t seed,
                              int sparsity = 0);

// Seeded uniform draw on (0, 1], identical across standard libraries.
class UnitSampler {
 public:
  explicit UnitSampler(std::uint64_t seed) : state_(seed) {}
  double Next();

 private:
  std::uint64_t state_;
};

// --- Capacity benchmark ----------------------------------------------------

struct BenchRecord {
  std::string method;  // "<general|fast>/<backend>"
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t steps = 0;
  int repeat = 0;
  std::string status;
  double cost = 0.0;
  double wall_time_s = 0.0;
  std::int64_t iterations = 0;
};

struct BenchAggregate {
  std::string method;
  std::size_t n = 0;
  std::size_t steps = 0;
  int runs = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct BenchReport {
  std::vector<BenchRecord> records;
  std::vector<BenchAggregate> aggregates;
  // Settings where the fast path was not faster (N >= 10 only).
  std::vector<std::string> warnings;

  const BenchAggregate* Find(std::string_view method, std::size_t n,
                             std::size_t steps) const;
};

struct CapacityBenchOptions {
  std::vector<std::size_t> sizes = {10};
  std::vector<std::size_t> step_counts = {10, 50, 100};
  int repeats = 10;
  std::vector<std::string> backends = {"simplex"};
  std::uint64_t seed = 1;
  // A setting whose mean run is below this many seconds is re-measured with
  // `fast_repeats` runs.
  double fast_threshold_s = 1e-3;
  int fast_repeats = 100;
  SolverConfig lp;
};

// Times SolveGeneral against SolveUniformFast on fresh seeded instances, one
// per repeat, for every (size, steps, backend). Throws Error when the two
// optima differ by more than 1e-6 relative or a plan fails its own checks.
BenchReport BenchCapacity(const CapacityBenchOptions& options);

// Columns: method,n,m,N,repeat,status,cost,wall_time_s
std::string ToCsv(const BenchReport& report);
nlohmann::ordered_json ToJson(const BenchReport& report);
// Mean times laid out as rows "N = x" (general) and "N = x*" (fast) against
// one column per backend.
std::string Table1Summary(const BenchReport& report);

// --- Sparsity benchmark ----------------------------------------------------

struct SparseBenchOptions {
  std::size_t n = 4;
  std::size_t m = 4;
  int s = 2;
  int instances = 100;
  std::vector<int> surrogates = {1, 2, 3, 4};
  int baseline_samples = 50;
  std::uint64_t seed = 7;
  double lambda = kDefaultBlend;
  int attempt_cap = 1000;
  SolverConfig lp;
};

struct SparseInstanceRecord {
  int instance = 0;
  double kantorovich_cost = 0.0;
  double oracle_cost = 0.0;
  double oracle_time_s = 0.0;
  // Indexed like SparseBenchOptions::surrogates; nullopt when exhausted.
  std::vector<std::optional<double>> heuristic_cost;
  std::vector<double> heuristic_time_s;
  std::vector<int> heuristic_attempts;
  std::vector<SparsityMetrics> metrics;
  int feasible_baselines = 0;
  // Largest row nonzero count minus its budget over every returned plan;
  // <= 0 means all budgets hold.
  int worst_budget_excess = 0;
};

struct SurrogateSummary {
  int surrogate = 0;
  int solved = 0;
  int exhausted = 0;
  double additional_cost_pct = 0.0;
  double time_saved_pct = 0.0;
  std::optional<double> solutions_beat_pct;
};

struct SparseBenchReport {
  SparseBenchOptions options;
  // Seeded draws passed over because no pattern within the budgets is
  // feasible.
  int infeasible_skipped = 0;
  std::vector<SparseInstanceRecord> instances;
  std::vector<SurrogateSummary> summaries;
};

// Runs the heuristic with each surrogate, the exhaustive oracle and a shared
// random baseline on seeded instances; aggregates the metrics per surrogate.
// Draws without any budget-feasible plan are skipped and replaced by the next
// seed until `instances` feasible ones were benchmarked.
// Instances where a surrogate's heuristic runs out of attempts are counted in
// `exhausted` and left out of its averages.
SparseBenchReport BenchSparse(const SparseBenchOptions& options);

// Metric x surrogate grid. Percentages are printed with two decimals.
// `include_timing` = false drops the wall-clock row so the output depends on
// the seed alone.
std::string Table2Csv(const SparseBenchReport& report,
                      bool include_timing = true);
nlohmann::ordered_json ToJson(const SparseBenchReport& report);

}  // namespace tpot

#endif  // TPOT_HARNESS_H_
