// Copyright 2026 The funcgame Authors
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

// Learning-degree flow. Each player moves its own learning degree along the
// gradient of its equilibrium payoff:
//
//   d eps_i / dt = S_i * g_i(eps1, eps2)
//
// integrated by projected explicit Euler on [0, 1]^2.
//
// Two readings of g_i are available. kFrozenOpponent differentiates player
// i's payoff at the crossing of its re-optimized strategy function with the
// opponent's current equilibrium function held fixed. kTotal differentiates
// the payoff of the full equilibrium u_i(eps1, eps2), in which the opponent's
// function adapts too.

#ifndef FUNCGAME_FLOW_H_
#define FUNCGAME_FLOW_H_

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "funcgame/dynamics.h"
#include "funcgame/games.h"
#include "funcgame/report.h"

namespace funcgame {

enum class GradientMode { kFrozenOpponent, kTotal };
// kSystem uses the direct equilibrium solvers (built-in games only),
// kSimulate runs the functional dynamics.
enum class InnerSolver { kSystem, kSimulate };

std::string GradientModeName(GradientMode m);
GradientMode ParseGradientMode(const std::string& name);
std::string InnerSolverName(InnerSolver s);
InnerSolver ParseInnerSolver(const std::string& name);

struct FlowConfig {
  double s1 = 1.0;
  double s2 = 1.0;
  double dt = 0.05;
  double t_max = 2000.0;
  double eps1_0 = 0.0;
  double eps2_0 = 0.0;
  double grad_h = 1e-2;
  double stationary_tol = 1e-6;
  GradientMode mode = GradientMode::kFrozenOpponent;
  InnerSolver solver = InnerSolver::kSystem;
  DynamicsConfig dynamics;  // used by kSimulate
};

void Validate(const FlowConfig& cfg);

// Equilibrium at one pair of learning degrees. For kSimulate `pair` holds the
// converged strategy functions.
struct FixedPointState {
  EquilibriumReport report;
  std::optional<StrategyPair> pair;
};

inline constexpr double kEpsQuantum = 1e-4;

// Rounds to the memo lattice.
double QuantizeEps(double eps);

// Memoized equilibrium solves keyed on learning degrees rounded to
// kEpsQuantum; solves always run at the rounded degrees so a hit and a miss
// return the same numbers. Thread-safe.
class EquilibriumCache {
 public:
  EquilibriumCache(const GameKernel& kernel, InnerSolver solver,
                   DynamicsConfig dynamics = {});

  // Throws SolverError on non-convergence.
  std::shared_ptr<const FixedPointState> Solve(double eps1, double eps2);
  Payoffs EquilibriumPayoffs(double eps1, double eps2);

  const GameKernel& kernel() const { return kernel_; }
  InnerSolver solver() const { return solver_; }
  size_t size() const;

 private:
  const GameKernel& kernel_;
  InnerSolver solver_;
  DynamicsConfig dynamics_;
  mutable std::mutex mu_;
  std::map<std::pair<long, long>, std::shared_ptr<const FixedPointState>>
      memo_;
};

// Equilibrium payoffs at (eps1, eps2) from a fresh cache.
Payoffs EquilibriumPayoffs(const GameKernel& kernel, double eps1, double eps2,
                           InnerSolver solver = InnerSolver::kSystem);

// Payoff of `player` at the crossing of its eps-response to a fixed opponent
// function with that function. `opp` maps the player's own action to the
// opponent's action; `hint` is a starting own action.
double FrozenCrossingPayoff(const GameKernel& kernel, Player player,
                            const std::function<double(double)>& opp,
                            double eps, double hint);

struct EpsGradient {
  double g1 = 0.0;
  double g2 = 0.0;
};

// Central differences with step h, one-sided at the borders of [0, 1].
// Throws SolverError naming the probe when an inner solve fails.
EpsGradient EpsilonGradient(EquilibriumCache& cache, double eps1, double eps2,
                            double h = 1e-2,
                            GradientMode mode = GradientMode::kFrozenOpponent);

struct FlowSample {
  double t = 0.0;
  double eps1 = 0.0, eps2 = 0.0;
  double u1 = 0.0, u2 = 0.0;
  double g1 = 0.0, g2 = 0.0;
};

struct FlowTrajectory {
  std::vector<FlowSample> samples;
  bool stationary = false;
  // Set when an inner solve failed; samples hold the partial trajectory.
  std::string error;

  const FlowSample& terminal() const { return samples.back(); }
};

FlowTrajectory RunFlow(const GameKernel& kernel, const FlowConfig& cfg);
FlowTrajectory RunFlow(EquilibriumCache& cache, const FlowConfig& cfg);

}  // namespace funcgame

#endif  // FUNCGAME_FLOW_H_
