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

#include "tpot/lp.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>

#include "tpot/errors.h"

namespace tpot {

void LinearProgram::Validate() const {
  const std::size_t n = objective.size();
  const std::size_t m = eq_rhs.size();
  if (upper_bounds.size() != n) {
    throw InvalidArgument("LinearProgram: upper_bounds has " +
                          std::to_string(upper_bounds.size()) +
                          " entries, expected " + std::to_string(n));
  }
  if (eq_matrix.rows() != m || (m > 0 && eq_matrix.cols() != n)) {
    throw InvalidArgument("LinearProgram: eq_matrix is " +
                          std::to_string(eq_matrix.rows()) + "x" +
                          std::to_string(eq_matrix.cols()) + ", expected " +
                          std::to_string(m) + "x" + std::to_string(n));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(objective[j])) {
      throw InvalidArgument("LinearProgram: objective[" + std::to_string(j) +
                            "] is not finite");
    }
    if (std::isnan(upper_bounds[j]) || upper_bounds[j] < 0.0) {
      throw InvalidArgument("LinearProgram: upper_bounds[" +
                            std::to_string(j) + "] must be >= 0");
    }
  }
  for (double v : eq_matrix.data()) {
    if (!std::isfinite(v)) {
      throw InvalidArgument("LinearProgram: eq_matrix has a non-finite entry");
    }
  }
  for (double v : eq_rhs) {
    if (!std::isfinite(v)) {
      throw InvalidArgument("LinearProgram: eq_rhs has a non-finite entry");
    }
  }
}

std::string_view ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

double EqualityResidual(const LinearProgram& lp, std::span<const double> x) {
  double worst = 0.0;
  for (std::size_t i = 0; i < lp.constraint_count(); ++i) {
    const auto row = lp.eq_matrix.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * x[j];
    worst = std::max(worst, std::abs(s - lp.eq_rhs[i]));
  }
  return worst;
}

namespace {

enum class VarState : std::uint8_t { kBasic, kAtLower, kAtUpper };

constexpr double kPivotTol = 1e-9;
constexpr double kRatioTieTol = 1e-12;
constexpr double kDegenerateStep = 1e-12;

// One solve. Variables [0, n) are structural, [n, n + m) are the per-row
// artificials of phase one.
class BoundedSimplex {
 public:
  BoundedSimplex(const LinearProgram& lp, const SolverConfig& config)
      : lp_(lp),
        config_(config),
        m_(lp.constraint_count()),
        n_(lp.variable_count()),
        total_(n_ + m_),
        columns_(total_ * m_, 0.0),
        upper_(total_, 0.0),
        cost_(total_, 0.0),
        x_(total_, 0.0),
        state_(total_, VarState::kAtLower),
        head_(m_),
        binv_(m_ * m_, 0.0),
        duals_(m_, 0.0),
        alpha_(m_, 0.0) {
    cap_ = config.iteration_cap > 0
               ? config.iteration_cap
               : 50 * static_cast<std::int64_t>(n_ + m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const auto row = lp.eq_matrix.row(i);
      for (std::size_t j = 0; j < n_; ++j) columns_[j * m_ + i] = row[j];
    }
    for (std::size_t j = 0; j < n_; ++j) upper_[j] = lp.upper_bounds[j];
    // All structurals start at zero, so the artificials absorb the rhs.
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t art = n_ + i;
      const double sign = lp.eq_rhs[i] >= 0.0 ? 1.0 : -1.0;
      columns_[art * m_ + i] = sign;
      upper_[art] = kInfinity;
      x_[art] = std::abs(lp.eq_rhs[i]);
      state_[art] = VarState::kBasic;
      head_[i] = static_cast<int>(art);
      binv_[i * m_ + i] = sign;
    }
  }

  LpSolution Run(bool phase_one_only) {
    LpSolution sol;
    // Phase one: minimize the sum of artificials.
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (std::size_t i = 0; i < m_; ++i) cost_[n_ + i] = 1.0;
    LpStatus status = Iterate(sol);
    if (status == LpStatus::kIterationLimit) return Finish(sol, status);
    Refactor();
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < m_; ++i) infeasibility += x_[n_ + i];
    double rhs_scale = 1.0;
    for (double r : lp_.eq_rhs) rhs_scale = std::max(rhs_scale, std::abs(r));
    if (infeasibility > config_.feas_tol * rhs_scale) {
      return Finish(sol, LpStatus::kInfeasible);
    }
    if (phase_one_only) return Finish(sol, LpStatus::kOptimal);

    // Phase two: artificials are pinned at zero but may stay basic, which
    // covers redundant rows.
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t art = n_ + i;
      upper_[art] = 0.0;
      cost_[art] = 0.0;
      if (state_[art] != VarState::kBasic) {
        state_[art] = VarState::kAtLower;
        x_[art] = 0.0;
      }
    }
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = lp_.objective[j];
    status = Iterate(sol);
    if (status == LpStatus::kOptimal) Refactor();
    return Finish(sol, status);
  }

 private:
  LpStatus Iterate(LpSolution& sol) {
    int degenerate_run = 0;
    int since_refactor = 0;
    while (true) {
      if (iterations_ >= cap_) return LpStatus::kIterationLimit;
      const bool bland = config_.pricing == PricingRule::kBland ||
                         degenerate_run >= config_.degenerate_threshold;
      const int q = Price(bland);
      if (q < 0) return LpStatus::kOptimal;
      ++iterations_;

      const double* col = &columns_[static_cast<std::size_t>(q) * m_];
      for (std::size_t i = 0; i < m_; ++i) {
        const double* brow = &binv_[i * m_];
        double s = 0.0;
        for (std::size_t k = 0; k < m_; ++k) s += brow[k] * col[k];
        alpha_[i] = s;
      }
      const double dir = state_[q] == VarState::kAtLower ? 1.0 : -1.0;

      // Ratio test. A bound flip of the entering variable wins ties.
      double step = upper_[q];
      int leave_row = -1;
      bool leave_to_upper = false;
      double best_pivot = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double delta = dir * alpha_[i];
        if (std::abs(delta) <= kPivotTol) continue;
        const int b = head_[i];
        double ratio;
        bool to_upper;
        if (delta > 0.0) {
          ratio = std::max(0.0, x_[b]) / delta;
          to_upper = false;
        } else {
          if (upper_[b] == kInfinity) continue;
          ratio = std::max(0.0, upper_[b] - x_[b]) / -delta;
          to_upper = true;
        }
        bool take;
        if (leave_row < 0) {
          take = ratio < step;
        } else if (ratio < step - kRatioTieTol) {
          take = true;
        } else if (ratio <= step + kRatioTieTol) {
          if (bland) {
            take = b < head_[leave_row];
          } else {
            take = std::abs(delta) > best_pivot ||
                   (std::abs(delta) == best_pivot && b < head_[leave_row]);
          }
        } else {
          take = false;
        }
        if (take) {
          step = ratio;
          leave_row = static_cast<int>(i);
          leave_to_upper = to_upper;
          best_pivot = std::abs(delta);
        }
      }
      if (step == kInfinity) return LpStatus::kUnbounded;

      degenerate_run = step <= kDegenerateStep ? degenerate_run + 1 : 0;
      if (step > 0.0) {
        x_[q] += dir * step;
        for (std::size_t i = 0; i < m_; ++i) {
          x_[head_[i]] -= dir * step * alpha_[i];
        }
      }

      if (leave_row < 0) {
        // Bound flip: the basis is unchanged.
        if (state_[q] == VarState::kAtLower) {
          state_[q] = VarState::kAtUpper;
          x_[q] = upper_[q];
        } else {
          state_[q] = VarState::kAtLower;
          x_[q] = 0.0;
        }
        if (config_.record_pivots) sol.pivots.emplace_back(q, q);
        continue;
      }

      const std::size_t r = static_cast<std::size_t>(leave_row);
      const int leaving = head_[r];
      if (leave_to_upper) {
        state_[leaving] = VarState::kAtUpper;
        x_[leaving] = upper_[leaving];
      } else {
        state_[leaving] = VarState::kAtLower;
        x_[leaving] = 0.0;
      }
      head_[r] = q;
      state_[q] = VarState::kBasic;
      if (config_.record_pivots) sol.pivots.emplace_back(q, leaving);

      if (++since_refactor >= config_.refactor_interval) {
        Refactor();
        since_refactor = 0;
      } else {
        UpdateInverse(r);
      }
    }
  }

  // Returns the entering variable or -1 at optimality.
  int Price(bool bland) {
    for (std::size_t k = 0; k < m_; ++k) duals_[k] = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost_[head_[i]];
      if (cb == 0.0) continue;
      const double* brow = &binv_[i * m_];
      for (std::size_t k = 0; k < m_; ++k) duals_[k] += cb * brow[k];
    }
    int best = -1;
    double best_gain = 0.0;
    for (std::size_t j = 0; j < total_; ++j) {
      const VarState s = state_[j];
      if (s == VarState::kBasic || upper_[j] == 0.0) continue;
      const double* col = &columns_[j * m_];
      double d = cost_[j];
      for (std::size_t k = 0; k < m_; ++k) d -= duals_[k] * col[k];
      double gain;
      if (s == VarState::kAtLower) {
        if (d >= -config_.opt_tol) continue;
        gain = -d;
      } else {
        if (d <= config_.opt_tol) continue;
        gain = d;
      }
      if (bland) return static_cast<int>(j);
      if (gain > best_gain) {
        best_gain = gain;
        best = static_cast<int>(j);
      }
    }
    return best;
  }

  void UpdateInverse(std::size_t r) {
    const double pivot = alpha_[r];
    double* prow = &binv_[r * m_];
    for (std::size_t k = 0; k < m_; ++k) prow[k] /= pivot;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || alpha_[i] == 0.0) continue;
      const double f = alpha_[i];
      double* irow = &binv_[i * m_];
      for (std::size_t k = 0; k < m_; ++k) irow[k] -= f * prow[k];
    }
  }

  // Rebuilds the basis inverse by Gauss-Jordan elimination with partial
  // pivoting, then recomputes basic values from the nonbasic ones.
  void Refactor() {
    if (m_ == 0) return;
    std::vector<double> work(m_ * m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const double* col = &columns_[static_cast<std::size_t>(head_[i]) * m_];
      for (std::size_t k = 0; k < m_; ++k) work[k * m_ + i] = col[k];
    }
    std::fill(binv_.begin(), binv_.end(), 0.0);
    for (std::size_t i = 0; i < m_; ++i) binv_[i * m_ + i] = 1.0;
    for (std::size_t c = 0; c < m_; ++c) {
      std::size_t p = c;
      for (std::size_t i = c + 1; i < m_; ++i) {
        if (std::abs(work[i * m_ + c]) > std::abs(work[p * m_ + c])) p = i;
      }
      if (work[p * m_ + c] == 0.0) {
        throw Error("simplex: basis matrix became singular");
      }
      if (p != c) {
        for (std::size_t k = 0; k < m_; ++k) {
          std::swap(work[p * m_ + k], work[c * m_ + k]);
          std::swap(binv_[p * m_ + k], binv_[c * m_ + k]);
        }
      }
      const double inv = 1.0 / work[c * m_ + c];
      for (std::size_t k = 0; k < m_; ++k) {
        work[c * m_ + k] *= inv;
        binv_[c * m_ + k] *= inv;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (i == c) continue;
        const double f = work[i * m_ + c];
        if (f == 0.0) continue;
        for (std::size_t k = 0; k < m_; ++k) {
          work[i * m_ + k] -= f * work[c * m_ + k];
          binv_[i * m_ + k] -= f * binv_[c * m_ + k];
        }
      }
    }
    std::vector<double> residual(lp_.eq_rhs);
    for (std::size_t j = 0; j < total_; ++j) {
      if (state_[j] == VarState::kBasic || x_[j] == 0.0) continue;
      const double* col = &columns_[j * m_];
      for (std::size_t k = 0; k < m_; ++k) residual[k] -= col[k] * x_[j];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      const double* brow = &binv_[i * m_];
      double s = 0.0;
      for (std::size_t k = 0; k < m_; ++k) s += brow[k] * residual[k];
      x_[head_[i]] = s;
    }
  }

  LpSolution& Finish(LpSolution& sol, LpStatus status) {
    sol.status = status;
    sol.iterations = iterations_;
    if (status != LpStatus::kOptimal) return sol;
    sol.values.assign(n_, 0.0);
    // Round-off residue next to a bound is snapped onto it.
    double scale = 1.0;
    for (double r : lp_.eq_rhs) scale = std::max(scale, std::abs(r));
    const double snap = 1e-12 * scale;
    for (std::size_t j = 0; j < n_; ++j) {
      double v = std::clamp(x_[j], 0.0, upper_[j]);
      if (v <= snap) v = 0.0;
      if (upper_[j] - v <= snap) v = upper_[j];
      sol.values[j] = v;
    }
    double obj = 0.0;
    for (std::size_t j = 0; j < n_; ++j) obj += lp_.objective[j] * sol.values[j];
    sol.objective_value = obj;
    return sol;
  }

  const LinearProgram& lp_;
  const SolverConfig& config_;
  std::size_t m_;
  std::size_t n_;
  std::size_t total_;
  std::vector<double> columns_;  // column-major, total_ columns of height m_
  std::vector<double> upper_;
  std::vector<double> cost_;
  std::vector<double> x_;
  std::vector<VarState> state_;
  std::vector<int> head_;
  std::vector<double> binv_;  // row-major m_ x m_
  std::vector<double> duals_;
  std::vector<double> alpha_;
  std::int64_t iterations_ = 0;
  std::int64_t cap_ = 0;
};

LpSolution RunBuiltin(const LinearProgram& lp, const SolverConfig& config,
                      bool phase_one_only) {
  lp.Validate();
  const auto start = std::chrono::steady_clock::now();
  BoundedSimplex simplex(lp, config);
  LpSolution sol = simplex.Run(phase_one_only);
  sol.wall_time = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return sol;
}

class BlandSimplexBackend final : public LpBackend {
 public:
  std::string name() const override { return "simplex-bland"; }
  LpSolution Solve(const LinearProgram& lp,
                   const SolverConfig& config) const override {
    SolverConfig c = config;
    c.pricing = PricingRule::kBland;
    return RunBuiltin(lp, c, false);
  }
};

}  // namespace

std::string SimplexBackend::name() const { return "simplex"; }

LpSolution SimplexBackend::Solve(const LinearProgram& lp,
                                 const SolverConfig& config) const {
  return RunBuiltin(lp, config, false);
}

std::shared_ptr<const LpBackend> MakeBackend(std::string_view name) {
  if (name == "simplex") return std::make_shared<SimplexBackend>();
  if (name == "simplex-bland") return std::make_shared<BlandSimplexBackend>();
  throw InvalidArgument("unknown LP backend '" + std::string(name) + "'");
}

std::vector<std::string> AvailableBackends() {
  return {"simplex", "simplex-bland"};
}

LpSolution SolveLp(const LinearProgram& lp, const SolverConfig& config) {
  if (config.backend) {
    lp.Validate();
    return config.backend->Solve(lp, config);
  }
  return RunBuiltin(lp, config, false);
}

bool CheckFeasible(const LinearProgram& lp, const SolverConfig& config) {
  const LpSolution sol = RunBuiltin(lp, config, true);
  if (sol.status == LpStatus::kIterationLimit) {
    throw Error("CheckFeasible: phase one hit the iteration cap");
  }
  return sol.status == LpStatus::kOptimal;
}

}  // namespace tpot
