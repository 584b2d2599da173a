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

#include <cmath>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "tpot/capacity.h"
#include "tpot/harness.h"
#include "tpot/ot.h"
#include "tpot/pipeline.h"

#ifndef TPOT_DATA_DIR
#error "TPOT_DATA_DIR must point at the data/ directory"
#endif

namespace tpot {
namespace {

std::string ErrorOf(const std::string& text) {
  try {
    ParseInstanceText(text);
  } catch (const InstanceFormatError& e) {
    return e.what();
  }
  return "";
}

TEST(InstanceFileTest, WorkedExampleFixture) {
  const InstanceFile f = ReadInstanceFile(
      std::filesystem::path(TPOT_DATA_DIR) / "two_mines_two_warehouses.json");
  EXPECT_EQ(f.steps, 2u);
  EXPECT_EQ(f.a.weights(), (std::vector<double>{6, 8}));
  const CapacityInstance inst = f.ToCapacityInstance();
  EXPECT_TRUE(inst.IsStationary());
  EXPECT_NEAR(SolveUniformFast(inst).cost, 60.0, 1e-9);
  EXPECT_NEAR(SolveGeneral(inst).cost, 60.0, 1e-9);
}

TEST(InstanceFileTest, DiagnosticsNameTheField) {
  EXPECT_NE(ErrorOf(R"({"b": [1], "costs": [[1]]})").find("a: missing"),
            std::string::npos);
  EXPECT_NE(ErrorOf(R"({"a": [1, 1], "b": [2], "costs": [[1], [1, 2]]})")
                .find("costs[1]: expected 1 entries, got 2"),
            std::string::npos);
  EXPECT_NE(ErrorOf(R"({"a": [1, -1], "b": [0], "costs": [[1], [1]]})")
                .find("a[1]"),
            std::string::npos);
  EXPECT_NE(ErrorOf(R"({"a": [1], "b": [1], "costs": [[1]], "steps": 2,
                        "capacities": [[[1]], [[1]], [[1]]]})")
                .find("capacities: expected 1 or 2 matrices"),
            std::string::npos);
  EXPECT_NE(ErrorOf(R"({"a": [1], "b": [1], "costs": [["x"]]})")
                .find("costs[0][0]: expected a number"),
            std::string::npos);
  EXPECT_NE(ErrorOf(R"({"a": [1], "b": [1], "costs": [[1]], "sparsity": [0]})")
                .find("sparsity[0]"),
            std::string::npos);
  EXPECT_NE(ErrorOf("{\"a\": [1],\n \"b\": }").find("line 2"),
            std::string::npos);
}

TEST(InstanceFileTest, NullCapacityIsUnbounded) {
  const InstanceFile f = ParseInstanceText(
      R"({"a": [1], "b": [1], "costs": [[2]], "capacities": [[null]]})");
  EXPECT_TRUE(std::isinf(f.ToCapacityInstance().capacities[0](0, 0)));
  const std::string text = SerializeInstance(f);
  EXPECT_NE(text.find("null"), std::string::npos);
  EXPECT_EQ(SerializeInstance(ParseInstanceText(text)), text);
}

TEST(InstanceFileTest, PerStepCostsSetTheStepCount) {
  const InstanceFile f = ParseInstanceText(
      R"({"a": [1], "b": [1], "costs": [[[1]], [[2]], [[3]]]})");
  EXPECT_EQ(f.steps, 3u);
  EXPECT_THROW(f.ToSparsityInstance(), InvalidArgument);
}

TEST(GeneratorTest, SameSeedSameBytes) {
  for (const char* kind : {"capacity", "sparse", "combined"}) {
    const std::string a =
        SerializeInstance(GenerateInstance(5, 4, 3, ParseInstanceKind(kind), 9));
    const std::string b =
        SerializeInstance(GenerateInstance(5, 4, 3, ParseInstanceKind(kind), 9));
    EXPECT_EQ(a, b);
    EXPECT_NE(a, SerializeInstance(
                     GenerateInstance(5, 4, 3, ParseInstanceKind(kind), 10)));
  }
}

TEST(GeneratorTest, CapacityInstancesAreFeasible) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const CapacityInstance inst =
        GenerateInstance(10, 10, 10, InstanceKind::kCapacity, seed)
            .ToCapacityInstance();
    EXPECT_TRUE(ScreenFeasibility(inst).empty()) << "seed " << seed;
    const LinearProgram lp = BuildTransportLp(
        inst.a.weights(), inst.b.weights(), inst.costs, inst.capacities);
    EXPECT_TRUE(CheckFeasible(lp)) << "seed " << seed;
  }
}

TEST(GeneratorTest, SparseShape) {
  const InstanceFile f = GenerateInstance(4, 4, 1, InstanceKind::kSparse, 3, 2);
  const SparsityInstance inst = f.ToSparsityInstance();
  EXPECT_EQ(inst.a.size(), 4u);
  EXPECT_EQ(inst.budgets, (std::vector<int>{2, 2, 2, 2}));
  EXPECT_FALSE(f.capacities.has_value());
  for (double v : inst.cost.data()) {
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_NEAR(TotalMass(inst.a), TotalMass(inst.b), 1e-12);
}

// Combined instances carry a sparse witness, so the default pipeline always
// finds a budget-feasible plan within capacity.
TEST(GeneratorTest, CombinedInstancesAdmitThePipeline) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 2 + seed % 4, m = 2 + (seed / 4) % 4;
    const InstanceFile f =
        GenerateInstance(n, m, 1 + seed % 5, InstanceKind::kCombined, seed);
    const CapacityInstance inst = f.ToCapacityInstance();
    EXPECT_TRUE(ScreenFeasibility(inst).empty());
    for (double v : inst.b.weights()) EXPECT_GT(v, 0.0) << "seed " << seed;
    EXPECT_NO_THROW(SolveCombined(inst, *f.sparsity)) << "seed " << seed;
  }
}

TEST(GeneratorTest, UnitSamplerRange) {
  UnitSampler s(0);
  for (int i = 0; i < 10000; ++i) {
    const double v = s.Next();
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

// Solving from the written file gives bitwise the same answer as solving the
// in-memory instance.
TEST(GeneratorTest, FileRoundTripPreservesResults) {
  const auto path =
      std::filesystem::temp_directory_path() / "tpot_roundtrip_test.json";
  const InstanceFile original =
      GenerateInstance(6, 5, 4, InstanceKind::kCombined, 77);
  WriteInstanceFile(path, original);
  const InstanceFile loaded = ReadInstanceFile(path);
  std::filesystem::remove(path);
  EXPECT_EQ(SerializeInstance(loaded), SerializeInstance(original));
  const TimeExpandedPlan p1 = SolveGeneral(original.ToCapacityInstance());
  const TimeExpandedPlan p2 = SolveGeneral(loaded.ToCapacityInstance());
  EXPECT_EQ(p1.cost, p2.cost);
  EXPECT_EQ(p1.aggregate, p2.aggregate);
}

TEST(BenchCapacityTest, LayoutAndAgreement) {
  CapacityBenchOptions options;
  options.sizes = {3};
  options.step_counts = {1, 4};
  options.repeats = 2;
  options.backends = {"simplex", "simplex-bland"};
  options.fast_repeats = 3;
  const BenchReport report = BenchCapacity(options);
  // general and fast per backend per N.
  EXPECT_EQ(report.aggregates.size(), 2u * 2u * 2u);
  for (const char* method : {"general/simplex", "fast/simplex",
                             "general/simplex-bland", "fast/simplex-bland"}) {
    for (std::size_t steps : {1u, 4u}) {
      const BenchAggregate* a = report.Find(method, 3, steps);
      ASSERT_NE(a, nullptr) << method;
      EXPECT_GE(a->runs, 2);
      EXPECT_LE(a->min, a->mean);
      EXPECT_LE(a->mean, a->max);
    }
  }
  const std::string csv = ToCsv(report);
  EXPECT_EQ(csv.rfind("method,n,m,N,repeat,status,cost,wall_time_s\n", 0), 0u);
  EXPECT_NE(Table1Summary(report).find("n=3 N=4*"), std::string::npos);
}

TEST(BenchSparseTest, GridAndDeterminism) {
  SparseBenchOptions options;
  options.n = 3;
  options.m = 3;
  options.s = 2;
  options.instances = 6;
  options.baseline_samples = 10;
  const SparseBenchReport first = BenchSparse(options);
  const SparseBenchReport second = BenchSparse(options);
  EXPECT_EQ(Table2Csv(first, false), Table2Csv(second, false));
  ASSERT_EQ(first.summaries.size(), 4u);
  const std::string grid = Table2Csv(first);
  for (const char* row : {"additional_cost_pct", "time_saved_pct",
                          "solutions_beat_pct"}) {
    EXPECT_NE(grid.find(row), std::string::npos);
  }
  for (const SparseInstanceRecord& r : first.instances) {
    EXPECT_LE(r.kantorovich_cost, r.oracle_cost + 1e-9);
    EXPECT_LE(r.worst_budget_excess, 0);
    for (const auto& h : r.heuristic_cost) {
      if (h) EXPECT_LE(r.oracle_cost, *h + 1e-9);
    }
  }
}

TEST(BenchSparseTest, InactiveBudgetCostsNothing) {
  SparseBenchOptions options;
  options.n = 3;
  options.m = 3;
  options.s = 3;
  options.instances = 4;
  options.baseline_samples = 3;
  for (const SurrogateSummary& s : BenchSparse(options).summaries) {
    EXPECT_EQ(s.exhausted, 0);
    EXPECT_NEAR(s.additional_cost_pct, 0.0, 1e-7);
  }
}

}  // namespace
}  // namespace tpot
