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

// Direct solvers for equilibria at arbitrary learning degrees, and the
// diagnostic conditions that tell which equilibria differ.

#ifndef FUNCGAME_EQUILIBRIA_H_
#define FUNCGAME_EQUILIBRIA_H_

#include <string>

#include "funcgame/dynamics.h"
#include "funcgame/games.h"
#include "funcgame/report.h"

namespace funcgame {

// Crossing (x1, x2) and local slopes (a1, a2) of the fixed-point strategy
// functions of the resource game. Slopes use the d(own)/d(opp) convention of
// EquilibriumReport.
struct ResourceSolution {
  double x1 = 0.0, x2 = 0.0, a1 = 0.0, a2 = 0.0;
  double residual = 0.0;
  int iters = 0;
  int start = 0;        // 0 is the BB seed
  bool newton = false;  // finished by Newton polishing
};

struct SystemOptions {
  double tol = 1e-10;
  int max_iters = 20000;
  double damping = 0.5;
  int starts = 10;
};

// Solves the four coupled crossing and slope equations by damped fixed-point
// iteration from the BB seed, then from further starts. Throws SolverError
// when no start converges.
ResourceSolution SolveResourceSystem(double r, double eps1, double eps2,
                                     const SystemOptions& opts = {});

// Linear fixed-point strategies f1 = a1 x2 + b1, f2 = a2 x1 + b2 of the
// duopoly and their crossing. Slopes are negative (d(own)/d(opp)).
// `interior` is false when the linear crossing leaves the region where the
// price is positive and both quantities are non-negative; the linear solution
// is then not the equilibrium.
struct DuopolyCoeffs {
  double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;
  double x1 = 0.0, x2 = 0.0;
  bool interior = true;
};

DuopolyCoeffs SolveDuopolyCoeffs(const DuopolyParams& params, double eps1,
                                 double eps2);

// System solution of a built-in game at (eps1, eps2) as a report with
// method "system". Throws UnsupportedError for custom kernels.
EquilibriumReport SystemEquilibrium(const GameKernel& kernel, double eps1,
                                    double eps2,
                                    const SystemOptions& opts = {});

enum class ConditionStatus { kInterior, kBoundary, kInconclusive };

std::string ConditionStatusName(ConditionStatus s);

// Whether a learning player 1 moves the equilibrium away from BB. Both
// quantities are evaluated at the BB crossing.
struct MismatchReport {
  ConditionStatus status = ConditionStatus::kInterior;
  ActionPoint bb;
  double du1_dx2 = 0.0;
  double d2u2_dx1dx2 = 0.0;
  bool predicts_distinct = false;  // LB != BB
  std::string note;
};

inline constexpr double kNonzeroThreshold = 1e-6;

// BB is taken from the closed-form catalog for built-in games and from the
// functional dynamics at eps = (0, 0) otherwise.
MismatchReport CheckMismatchCondition(const GameKernel& kernel,
                                      int n_nodes = kDefaultNodes);

struct PlayerEquilibriumCheck {
  bool holds = false;
  double achieved = 0.0;  // payoff at the crossing
  double optimum = 0.0;   // best payoff against the opponent's function
  double slack = 0.0;     // optimum - achieved
};

struct FunctionEquilibriumReport {
  ActionPoint crossing;
  PlayerEquilibriumCheck p1, p2;

  const PlayerEquilibriumCheck& of(Player p) const {
    return p == Player::kOne ? p1 : p2;
  }
};

inline constexpr double kFunctionEquilibriumTol = 1e-4;

// Compares each player's crossing payoff with the optimum of
// max_x u(x, f_opp(x)) over the opponent's actual grid. Throws SolverError
// when the pair has no crossing.
FunctionEquilibriumReport CheckFunctionEquilibrium(
    const GameKernel& kernel, const StrategyPair& pair,
    double tol = kFunctionEquilibriumTol);

// Leader optimality and follower first-order condition at a Stackelberg
// crossing. The leader is player 1 for LB and player 2 for BL; other labels
// are read as LB.
struct StackelbergReport {
  bool applicable = true;
  Player leader = Player::kOne;
  double leader_residual = 0.0;
  double follower_residual = 0.0;
  bool pass = false;
  std::string note;
};

inline constexpr double kStackelbergTol = 1e-3;

StackelbergReport CheckStackelbergConditions(const GameKernel& kernel,
                                             const EquilibriumReport& report);

}  // namespace funcgame

#endif  // FUNCGAME_EQUILIBRIA_H_
