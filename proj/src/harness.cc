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

#include "tpot/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "tpot/ot.h"

namespace tpot {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void Fail(const std::string& path, const std::string& message) {
  throw InstanceFormatError(path + ": " + message);
}

std::string Index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

int ArrayDepth(const Json& v) {
  if (!v.is_array()) return 0;
  if (v.empty()) return 1;
  return 1 + ArrayDepth(v.front());
}

double ReadNumber(const Json& v, const std::string& path, bool null_is_inf) {
  if (null_is_inf && v.is_null()) return kInfinity;
  if (!v.is_number()) Fail(path, "expected a number");
  return v.get<double>();
}

std::vector<double> ReadVector(const Json& v, const std::string& path,
                               std::optional<std::size_t> expected = {},
                               bool null_is_inf = false) {
  if (!v.is_array()) Fail(path, "expected an array of numbers");
  if (expected && v.size() != *expected) {
    Fail(path, "expected " + std::to_string(*expected) + " entries, got " +
                   std::to_string(v.size()));
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(ReadNumber(v[i], Index(path, i), null_is_inf));
  }
  return out;
}

Matrix ReadMatrix(const Json& v, const std::string& path, std::size_t rows,
                  std::size_t cols, bool null_is_inf) {
  if (!v.is_array()) Fail(path, "expected an array of rows");
  if (v.size() != rows) {
    Fail(path, "expected " + std::to_string(rows) + " rows, got " +
                   std::to_string(v.size()));
  }
  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::vector<double> row =
        ReadVector(v[r], Index(path, r), cols, null_is_inf);
    for (std::size_t c = 0; c < cols; ++c) {
      if (!null_is_inf && (!std::isfinite(row[c]) || row[c] < 0.0)) {
        Fail(Index(Index(path, r), c), "must be finite and >= 0");
      }
      if (null_is_inf && row[c] < 0.0) {
        Fail(Index(Index(path, r), c), "must be >= 0");
      }
      out(r, c) = row[c];
    }
  }
  return out;
}

// A single n x m matrix or a list of them (one per step).
std::vector<Matrix> ReadMatrixList(const Json& v, const std::string& path,
                                   std::size_t rows, std::size_t cols,
                                   std::size_t steps, bool null_is_inf) {
  const int depth = ArrayDepth(v);
  if (depth == 2 || (depth == 1 && v.empty() && rows == 0)) {
    return {ReadMatrix(v, path, rows, cols, null_is_inf)};
  }
  if (depth != 3) Fail(path, "expected an n x m or N x n x m array");
  if (v.size() != 1 && v.size() != steps) {
    Fail(path, "expected 1 or " + std::to_string(steps) + " matrices, got " +
                   std::to_string(v.size()));
  }
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(ReadMatrix(v[i], Index(path, i), rows, cols, null_is_inf));
  }
  return out;
}

std::vector<int> ReadBudgets(const Json& v, const std::string& path,
                             std::size_t n) {
  if (!v.is_array()) Fail(path, "expected an array of integers");
  if (v.size() != n) {
    Fail(path, "expected " + std::to_string(n) + " entries, got " +
                   std::to_string(v.size()));
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!v[i].is_number_integer() || v[i].get<long long>() < 1) {
      Fail(Index(path, i), "expected an integer >= 1");
    }
    out.push_back(v[i].get<int>());
  }
  return out;
}

DiscreteMeasure ReadMeasure(const Json& v, const std::string& path) {
  std::vector<double> weights;
  std::optional<std::vector<Point>> points;
  if (v.is_array()) {
    weights = ReadVector(v, path);
  } else if (v.is_object()) {
    if (!v.contains("weights")) Fail(path + ".weights", "missing");
    weights = ReadVector(v["weights"], path + ".weights");
    if (v.contains("points")) {
      const Json& p = v["points"];
      const std::string ppath = path + ".points";
      if (!p.is_array()) Fail(ppath, "expected an array of points");
      if (p.size() != weights.size()) {
        Fail(ppath, "expected " + std::to_string(weights.size()) +
                        " points, got " + std::to_string(p.size()));
      }
      points.emplace();
      for (std::size_t i = 0; i < p.size(); ++i) {
        points->push_back(ReadVector(p[i], Index(ppath, i)));
      }
    }
  } else {
    Fail(path, "expected an array of weights or an object with \"weights\"");
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i]) || weights[i] < 0.0) {
      Fail(Index(path, i), "weight must be finite and >= 0");
    }
  }
  return DiscreteMeasure(std::move(weights), std::move(points));
}

Json MeasureToJson(const DiscreteMeasure& m) {
  if (!m.points()) return Json(m.weights());
  Json out = Json::object();
  out["weights"] = m.weights();
  out["points"] = *m.points();
  return out;
}

Json MatrixListToJson(const std::vector<Matrix>& list) {
  if (list.size() == 1) return MatrixToJson(list.front());
  Json out = Json::array();
  for (const Matrix& m : list) out.push_back(MatrixToJson(m));
  return out;
}

std::uint64_t SplitMix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t MixSeed(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) {
  std::uint64_t s = SplitMix(seed);
  for (std::uint64_t p : parts) s = SplitMix(s ^ p);
  return s;
}

std::string FormatDouble(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

template <typename F>
double TimeIt(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

}  // namespace

// ---------------------------------------------------------------------------

CapacityInstance InstanceFile::ToCapacityInstance() const {
  CapacityInstance inst;
  inst.a = a;
  inst.b = b;
  inst.steps = steps;
  inst.costs = costs.size() == 1 ? std::vector<Matrix>(steps, costs.front())
                                 : costs;
  if (capacities) {
    inst.capacities = capacities->size() == 1
                          ? std::vector<Matrix>(steps, capacities->front())
                          : *capacities;
  } else {
    inst.capacities.assign(steps, Matrix(a.size(), b.size(), kInfinity));
  }
  return inst;
}

SparsityInstance InstanceFile::ToSparsityInstance() const {
  for (const Matrix& c : costs) {
    if (!(c == costs.front())) {
      throw InvalidArgument(
          "costs: a sparsity instance needs one cost matrix, not per-step ones");
    }
  }
  SparsityInstance inst;
  inst.a = a;
  inst.b = b;
  inst.cost = costs.front();
  if (sparsity) {
    for (const auto& s : *sparsity) {
      if (s != sparsity->front()) {
        throw InvalidArgument(
            "sparsity: a sparsity instance needs one budget vector");
      }
    }
    inst.budgets = sparsity->front();
  } else {
    inst.budgets.assign(a.size(), static_cast<int>(b.size()));
  }
  return inst;
}

InstanceFile ParseInstance(const Json& doc) {
  if (!doc.is_object()) Fail("$", "expected a JSON object");
  InstanceFile inst;
  if (!doc.contains("a")) Fail("a", "missing");
  if (!doc.contains("b")) Fail("b", "missing");
  if (!doc.contains("costs")) Fail("costs", "missing");
  inst.a = ReadMeasure(doc["a"], "a");
  inst.b = ReadMeasure(doc["b"], "b");
  const std::size_t n = inst.a.size();
  const std::size_t m = inst.b.size();

  const Json& costs = doc["costs"];
  if (doc.contains("steps")) {
    const Json& s = doc["steps"];
    if (!s.is_number_integer() || s.get<long long>() < 1) {
      Fail("steps", "expected an integer >= 1");
    }
    inst.steps = s.get<std::size_t>();
  } else if (ArrayDepth(costs) == 3) {
    inst.steps = costs.size();
  }
  inst.costs = ReadMatrixList(costs, "costs", n, m, inst.steps, false);
  if (doc.contains("capacities") && !doc["capacities"].is_null()) {
    inst.capacities =
        ReadMatrixList(doc["capacities"], "capacities", n, m, inst.steps, true);
  }
  if (doc.contains("sparsity") && !doc["sparsity"].is_null()) {
    const Json& s = doc["sparsity"];
    if (ArrayDepth(s) <= 1) {
      inst.sparsity = std::vector<std::vector<int>>{ReadBudgets(s, "sparsity", n)};
    } else {
      if (s.size() != 1 && s.size() != inst.steps) {
        Fail("sparsity", "expected 1 or " + std::to_string(inst.steps) +
                             " budget vectors, got " + std::to_string(s.size()));
      }
      inst.sparsity.emplace();
      for (std::size_t i = 0; i < s.size(); ++i) {
        inst.sparsity->push_back(ReadBudgets(s[i], Index("sparsity", i), n));
      }
    }
  }
  if (doc.contains("seed") && !doc["seed"].is_null()) {
    if (!doc["seed"].is_number_unsigned()) {
      Fail("seed", "expected a nonnegative integer");
    }
    inst.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("meta")) inst.meta = doc["meta"];
  return inst;
}

InstanceFile ParseInstanceText(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InstanceFormatError(std::string("$: ") + e.what());
  }
  return ParseInstance(doc);
}

Json MatrixToJson(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (double v : m.row(r)) {
      if (std::isinf(v)) {
        row.push_back(nullptr);
      } else {
        row.push_back(v);
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

Json ToJson(const InstanceFile& inst) {
  Json out = Json::object();
  out["a"] = MeasureToJson(inst.a);
  out["b"] = MeasureToJson(inst.b);
  out["steps"] = inst.steps;
  out["costs"] = MatrixListToJson(inst.costs);
  if (inst.capacities) out["capacities"] = MatrixListToJson(*inst.capacities);
  if (inst.sparsity) {
    out["sparsity"] = inst.sparsity->size() == 1 ? Json(inst.sparsity->front())
                                                 : Json(*inst.sparsity);
  }
  if (inst.seed) out["seed"] = *inst.seed;
  out["meta"] = inst.meta;
  return out;
}

std::string SerializeInstance(const InstanceFile& inst) {
  return ToJson(inst).dump(2) + "\n";
}

InstanceFile ReadInstanceFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseInstanceText(buf.str());
}

void WriteInstanceFile(const std::filesystem::path& path,
                       const InstanceFile& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << SerializeInstance(inst);
}

InstanceKind ParseInstanceKind(std::string_view name) {
  if (name == "capacity") return InstanceKind::kCapacity;
  if (name == "sparse") return InstanceKind::kSparse;
  if (name == "combined") return InstanceKind::kCombined;
  throw InvalidArgument("unknown instance kind '" + std::string(name) + "'");
}

double UnitSampler::Next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  // 53 random bits in [0, 1), flipped onto (0, 1].
  return 1.0 - static_cast<double>(z >> 11) * 0x1.0p-53;
}

InstanceFile GenerateInstance(std::size_t n, std::size_t m, std::size_t steps,
                              InstanceKind kind, std::uint64_t seed,
                              int sparsity) {
  if (n < 1 || m < 1 || steps < 1) {
    throw InvalidArgument("GenerateInstance: n, m and steps must be >= 1");
  }
  UnitSampler rng(seed);
  const auto below = [&rng](std::size_t k) {
    return std::min(k - 1, static_cast<std::size_t>((1.0 - rng.Next()) * k));
  };
  const int s = sparsity > 0 ? sparsity : static_cast<int>((m + 1) / 2);
  std::vector<double> a(n), b(m);
  for (double& v : a) v = rng.Next();
  std::optional<Matrix> witness;
  if (kind == InstanceKind::kCombined) {
    // Row-sparse coupling W of a and b; b is its column sums. Columns are
    // dealt round-robin first so that every sink receives mass when n s >= m.
    const std::size_t per_row = std::min<std::size_t>(s, m);
    std::vector<std::size_t> perm(m);
    for (std::size_t k = 0; k < m; ++k) perm[k] = k;
    for (std::size_t k = m; k > 1; --k) std::swap(perm[k - 1], perm[below(k)]);
    std::vector<std::vector<std::size_t>> chosen(n);
    for (std::size_t t = 0; t < m && t < n * per_row; ++t) {
      chosen[t % n].push_back(perm[t]);
    }
    witness.emplace(n, m);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> rest;
      for (std::size_t k = 0; k < m; ++k) {
        if (std::find(chosen[j].begin(), chosen[j].end(), k) == chosen[j].end()) {
          rest.push_back(k);
        }
      }
      while (chosen[j].size() < per_row) {
        const std::size_t pick = below(rest.size());
        chosen[j].push_back(rest[pick]);
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
      }
      double total = 0.0;
      for (std::size_t k : chosen[j]) total += ((*witness)(j, k) = rng.Next());
      for (std::size_t k : chosen[j]) (*witness)(j, k) *= a[j] / total;
    }
    b = ColSums(*witness);
  } else {
    for (double& v : b) v = rng.Next();
    double mass_a = 0.0, mass_b = 0.0;
    for (double v : a) mass_a += v;
    for (double v : b) mass_b += v;
    for (double& v : b) v *= mass_a / mass_b;
  }
  Matrix cost(n, m);
  for (double& v : cost.data()) v = rng.Next();

  InstanceFile inst;
  inst.a = DiscreteMeasure(a);
  inst.b = DiscreteMeasure(b);
  inst.costs = {cost};
  inst.seed = seed;
  inst.meta["generator"] = "uniform(0,1]";
  switch (kind) {
    case InstanceKind::kCapacity:
      inst.meta["kind"] = "capacity";
      break;
    case InstanceKind::kSparse:
      inst.meta["kind"] = "sparse";
      break;
    case InstanceKind::kCombined:
      inst.meta["kind"] = "combined";
      break;
  }
  if (kind != InstanceKind::kSparse) {
    inst.steps = steps;
    const Matrix product = ProductPlan(inst.a, inst.b);
    Matrix capacity(n, m);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        const double floor =
            witness ? std::max(product(j, k), (*witness)(j, k)) : product(j, k);
        capacity(j, k) = floor * (2.0 - rng.Next());
      }
    }
    inst.capacities = std::vector<Matrix>{capacity};
  }
  if (kind != InstanceKind::kCapacity) {
    inst.sparsity = std::vector<std::vector<int>>{std::vector<int>(n, s)};
  }
  return inst;
}

// ---------------------------------------------------------------------------

const BenchAggregate* BenchReport::Find(std::string_view method, std::size_t n,
                                        std::size_t steps) const {
  for (const BenchAggregate& a : aggregates) {
    if (a.method == method && a.n == n && a.steps == steps) return &a;
  }
  return nullptr;
}

namespace {

BenchRecord RunCapacity(const CapacityInstance& inst, bool fast,
                        const std::string& backend, int repeat,
                        const SolverConfig& config, TimeExpandedPlan* plan_out) {
  BenchRecord rec;
  rec.method = std::string(fast ? "fast" : "general") + "/" + backend;
  rec.n = inst.a.size();
  rec.m = inst.b.size();
  rec.steps = inst.steps;
  rec.repeat = repeat;
  TimeExpandedPlan plan;
  try {
    rec.wall_time_s = TimeIt([&] {
      plan = fast ? SolveUniformFast(inst, config) : SolveGeneral(inst, config);
    });
  } catch (const InfeasibleInstanceError&) {
    rec.status = "infeasible";
    rec.cost = std::nan("");
    return rec;
  }
  const std::vector<std::string> issues = CheckPlan(inst, plan);
  if (!issues.empty()) {
    throw Error("BenchCapacity: " + rec.method + " plan is invalid: " +
                issues.front());
  }
  rec.status = "optimal";
  rec.cost = plan.cost;
  rec.iterations = plan.iterations;
  if (plan_out) *plan_out = std::move(plan);
  return rec;
}

}  // namespace

BenchReport BenchCapacity(const CapacityBenchOptions& options) {
  if (options.repeats < 1) {
    throw InvalidArgument("BenchCapacity: repeats must be >= 1");
  }
  BenchReport report;
  for (std::size_t n : options.sizes) {
    for (std::size_t steps : options.step_counts) {
      const auto instance_for = [&](int r) {
        return GenerateInstance(n, n, steps, InstanceKind::kCapacity,
                                MixSeed(options.seed, {n, steps,
                                                       static_cast<std::uint64_t>(r)}))
            .ToCapacityInstance();
      };
      std::map<std::string, std::vector<BenchRecord>> runs;
      std::vector<std::string> order;
      for (int r = 0; r < options.repeats; ++r) {
        const CapacityInstance inst = instance_for(r);
        for (const std::string& backend : options.backends) {
          SolverConfig config = options.lp;
          config.backend = MakeBackend(backend);
          BenchRecord general = RunCapacity(inst, false, backend, r, config, nullptr);
          BenchRecord fast = RunCapacity(inst, true, backend, r, config, nullptr);
          if (general.status == "optimal" && fast.status == "optimal") {
            const double gap = std::abs(general.cost - fast.cost);
            if (gap > 1e-6 * std::max(1.0, std::abs(general.cost))) {
              throw Error("BenchCapacity: general and fast optima differ (" +
                          FormatDouble("%.12g", general.cost) + " vs " +
                          FormatDouble("%.12g", fast.cost) + ")");
            }
          } else if (general.status != fast.status) {
            throw Error("BenchCapacity: general and fast disagree on status");
          }
          for (BenchRecord* rec : {&general, &fast}) {
            if (!runs.contains(rec->method)) order.push_back(rec->method);
            runs[rec->method].push_back(*rec);
          }
        }
      }
      // Settings that finish too quickly to time reliably get more runs.
      for (const std::string& method : order) {
        std::vector<BenchRecord>& recs = runs[method];
        double total = 0.0;
        for (const BenchRecord& r : recs) total += r.wall_time_s;
        if (total / recs.size() >= options.fast_threshold_s) continue;
        const bool fast = method.starts_with("fast/");
        const std::string backend = method.substr(method.find('/') + 1);
        SolverConfig config = options.lp;
        config.backend = MakeBackend(backend);
        for (int r = options.repeats; r < options.fast_repeats; ++r) {
          recs.push_back(
              RunCapacity(instance_for(r), fast, backend, r, config, nullptr));
        }
      }
      for (const std::string& method : order) {
        const std::vector<BenchRecord>& recs = runs[method];
        BenchAggregate agg;
        agg.method = method;
        agg.n = n;
        agg.steps = steps;
        agg.min = kInfinity;
        agg.max = 0.0;
        for (const BenchRecord& r : recs) {
          if (r.status != "optimal") continue;
          ++agg.runs;
          agg.mean += r.wall_time_s;
          agg.min = std::min(agg.min, r.wall_time_s);
          agg.max = std::max(agg.max, r.wall_time_s);
        }
        if (agg.runs > 0) agg.mean /= agg.runs;
        report.aggregates.push_back(agg);
        report.records.insert(report.records.end(), recs.begin(), recs.end());
      }
      if (steps >= 10) {
        for (const std::string& backend : options.backends) {
          const BenchAggregate* g = report.Find("general/" + backend, n, steps);
          const BenchAggregate* f = report.Find("fast/" + backend, n, steps);
          if (g && f && f->mean > g->mean) {
            report.warnings.push_back("fast path slower than general for " +
                                      backend + " at n=" + std::to_string(n) +
                                      ", N=" + std::to_string(steps));
          }
        }
      }
    }
  }
  return report;
}

std::string ToCsv(const BenchReport& report) {
  std::string out = "method,n,m,N,repeat,status,cost,wall_time_s\n";
  for (const BenchRecord& r : report.records) {
    out += r.method + "," + std::to_string(r.n) + "," + std::to_string(r.m) +
           "," + std::to_string(r.steps) + "," + std::to_string(r.repeat) +
           "," + r.status + "," + FormatDouble("%.12g", r.cost) + "," +
           FormatDouble("%.6e", r.wall_time_s) + "\n";
  }
  return out;
}

Json ToJson(const BenchReport& report) {
  Json out = Json::object();
  Json records = Json::array();
  for (const BenchRecord& r : report.records) {
    Json rec = Json::object();
    rec["method"] = r.method;
    rec["n"] = r.n;
    rec["m"] = r.m;
    rec["N"] = r.steps;
    rec["repeat"] = r.repeat;
    rec["status"] = r.status;
    rec["cost"] = std::isnan(r.cost) ? Json(nullptr) : Json(r.cost);
    rec["wall_time_s"] = r.wall_time_s;
    rec["iterations"] = r.iterations;
    records.push_back(std::move(rec));
  }
  Json aggregates = Json::array();
  for (const BenchAggregate& a : report.aggregates) {
    aggregates.push_back({{"method", a.method},
                          {"n", a.n},
                          {"N", a.steps},
                          {"runs", a.runs},
                          {"mean", a.mean},
                          {"min", a.min},
                          {"max", a.max}});
  }
  out["records"] = std::move(records);
  out["aggregates"] = std::move(aggregates);
  out["warnings"] = report.warnings;
  return out;
}

std::string Table1Summary(const BenchReport& report) {
  std::vector<std::string> backends;
  std::vector<std::pair<std::size_t, std::size_t>> settings;
  for (const BenchAggregate& a : report.aggregates) {
    const std::string backend = a.method.substr(a.method.find('/') + 1);
    if (std::find(backends.begin(), backends.end(), backend) == backends.end()) {
      backends.push_back(backend);
    }
    const auto key = std::make_pair(a.n, a.steps);
    if (std::find(settings.begin(), settings.end(), key) == settings.end()) {
      settings.push_back(key);
    }
  }
  std::ostringstream out;
  out << "mean wall time [s]; starred rows use the uniform reformulation\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%-20s", "setting");
  out << buf;
  for (const std::string& b : backends) {
    std::snprintf(buf, sizeof(buf), "%16s", b.c_str());
    out << buf;
  }
  out << "\n";
  for (const auto& [n, steps] : settings) {
    for (const char* kind : {"general", "fast"}) {
      const std::string label = "n=" + std::to_string(n) +
                                " N=" + std::to_string(steps) +
                                (std::string(kind) == "fast" ? "*" : "");
      std::snprintf(buf, sizeof(buf), "%-20s", label.c_str());
      out << buf;
      for (const std::string& b : backends) {
        const BenchAggregate* a =
            report.Find(std::string(kind) + "/" + b, n, steps);
        std::snprintf(buf, sizeof(buf), "%16.6g", a ? a->mean : std::nan(""));
        out << buf;
      }
      out << "\n";
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

int BudgetExcess(const TransportPlan& plan, const SparsityInstance& inst) {
  int worst = -static_cast<int>(inst.b.size());
  for (std::size_t j = 0; j < plan.rows(); ++j) {
    worst = std::max(worst, CountNonzerosInRow(plan, j, kSparsityZero) -
                                inst.EffectiveBudget(j));
  }
  return worst;
}

}  // namespace

SparseBenchReport BenchSparse(const SparseBenchOptions& options) {
  if (options.instances < 1) {
    throw InvalidArgument("BenchSparse: instances must be >= 1");
  }
  SparseBenchReport report;
  report.options = options;
  const std::size_t surrogates = options.surrogates.size();
  const int max_draws = 100 * options.instances;
  for (int draw = 0; static_cast<int>(report.instances.size()) < options.instances;
       ++draw) {
    if (draw >= max_draws) {
      throw Error("BenchSparse: too few instances admit a sparse plan");
    }
    const std::uint64_t seed =
        MixSeed(options.seed, {static_cast<std::uint64_t>(draw)});
    const SparsityInstance inst =
        GenerateInstance(options.n, options.m, 1, InstanceKind::kSparse, seed,
                         options.s)
            .ToSparsityInstance();
    SparseInstanceRecord rec;
    rec.instance = draw;

    OracleOptions oracle_options;
    oracle_options.lp = options.lp;
    SparseResult oracle;
    try {
      rec.oracle_time_s =
          TimeIt([&] { oracle = OracleSolve(inst, oracle_options); });
    } catch (const InfeasibleInstanceError&) {
      ++report.infeasible_skipped;
      continue;
    }
    rec.kantorovich_cost =
        SolveKantorovich(inst.a, inst.b, inst.cost, options.lp).cost;
    rec.oracle_cost = oracle.cost;
    rec.worst_budget_excess = BudgetExcess(oracle.plan, inst);

    const std::vector<BaselineSample> baseline =
        RandomBaseline(inst, options.baseline_samples,
                       MixSeed(seed, {0xba5e11e5ULL}), options.lp);
    for (const BaselineSample& s : baseline) rec.feasible_baselines += s.cost ? 1 : 0;

    for (std::size_t t = 0; t < surrogates; ++t) {
      HeuristicOptions h;
      h.attempt_cap = options.attempt_cap;
      h.lp = options.lp;
      std::optional<SparseResult> result;
      const double elapsed = TimeIt([&] {
        const ImportanceScore score =
            Importance(inst.a, inst.b, inst.cost, options.surrogates[t],
                       options.lambda, options.lp);
        try {
          result = HeuristicSolve(inst, score, h);
        } catch (const HeuristicExhaustedError&) {
        }
      });
      rec.heuristic_time_s.push_back(elapsed);
      if (result) {
        rec.heuristic_cost.push_back(result->cost);
        rec.heuristic_attempts.push_back(result->lp_solves);
        rec.metrics.push_back(ComputeSparsityMetrics(
            result->cost, oracle.cost, elapsed, rec.oracle_time_s, baseline));
        rec.worst_budget_excess =
            std::max(rec.worst_budget_excess, BudgetExcess(result->plan, inst));
      } else {
        rec.heuristic_cost.push_back(std::nullopt);
        rec.heuristic_attempts.push_back(options.attempt_cap);
        rec.metrics.push_back({});
      }
    }
    report.instances.push_back(std::move(rec));
  }

  for (std::size_t t = 0; t < surrogates; ++t) {
    SurrogateSummary sum;
    sum.surrogate = options.surrogates[t];
    double beat_total = 0.0;
    int beat_count = 0;
    for (const SparseInstanceRecord& rec : report.instances) {
      if (!rec.heuristic_cost[t]) {
        ++sum.exhausted;
        continue;
      }
      ++sum.solved;
      sum.additional_cost_pct += rec.metrics[t].additional_cost_pct;
      sum.time_saved_pct += rec.metrics[t].time_saved_pct;
      if (rec.metrics[t].solutions_beat_pct) {
        beat_total += *rec.metrics[t].solutions_beat_pct;
        ++beat_count;
      }
    }
    if (sum.solved > 0) {
      sum.additional_cost_pct /= sum.solved;
      sum.time_saved_pct /= sum.solved;
    }
    if (beat_count > 0) sum.solutions_beat_pct = beat_total / beat_count;
    report.summaries.push_back(sum);
  }
  return report;
}

std::string Table2Csv(const SparseBenchReport& report, bool include_timing) {
  std::string out = "metric";
  for (const SurrogateSummary& s : report.summaries) {
    out += ",surrogate_" + std::to_string(s.surrogate);
  }
  out += "\n";
  const auto row = [&](const std::string& name, auto value) {
    out += name;
    for (const SurrogateSummary& s : report.summaries) out += "," + value(s);
    out += "\n";
  };
  row("additional_cost_pct", [](const SurrogateSummary& s) {
    return s.solved ? FormatDouble("%.2f", s.additional_cost_pct)
                    : std::string("NA");
  });
  if (include_timing) {
    row("time_saved_pct", [](const SurrogateSummary& s) {
      return s.solved ? FormatDouble("%.2f", s.time_saved_pct)
                      : std::string("NA");
    });
  }
  row("solutions_beat_pct", [](const SurrogateSummary& s) {
    return s.solutions_beat_pct ? FormatDouble("%.2f", *s.solutions_beat_pct)
                                : std::string("NA");
  });
  row("exhausted", [](const SurrogateSummary& s) {
    return std::to_string(s.exhausted);
  });
  return out;
}

Json ToJson(const SparseBenchReport& report) {
  Json out = Json::object();
  const SparseBenchOptions& o = report.options;
  out["setup"] = {{"n", o.n},
                  {"m", o.m},
                  {"s", o.s},
                  {"instances", o.instances},
                  {"baseline_samples", o.baseline_samples},
                  {"seed", o.seed},
                  {"lambda", o.lambda},
                  {"infeasible_skipped", report.infeasible_skipped}};
  Json grid = Json::array();
  for (const SurrogateSummary& s : report.summaries) {
    Json entry = Json::object();
    entry["surrogate"] = s.surrogate;
    entry["solved"] = s.solved;
    entry["exhausted"] = s.exhausted;
    entry["additional_cost_pct"] = s.additional_cost_pct;
    entry["time_saved_pct"] = s.time_saved_pct;
    entry["solutions_beat_pct"] =
        s.solutions_beat_pct ? Json(*s.solutions_beat_pct) : Json(nullptr);
    grid.push_back(std::move(entry));
  }
  out["surrogates"] = std::move(grid);
  return out;
}

}  // namespace tpot
