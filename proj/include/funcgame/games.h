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

#ifndef FUNCGAME_GAMES_H_
#define FUNCGAME_GAMES_H_

#include <functional>
#include <string>
#include <variant>

namespace funcgame {

enum class Player { kOne = 1, kTwo = 2 };

constexpr Player Other(Player p) {
  return p == Player::kOne ? Player::kTwo : Player::kOne;
}

constexpr int Index(Player p) { return p == Player::kOne ? 0 : 1; }

// Closed interval [lo, hi] with lo < hi.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
  double center() const { return 0.5 * (lo + hi); }
};

struct ActionBox {
  Interval x1;
  Interval x2;

  const Interval& of(Player p) const { return p == Player::kOne ? x1 : x2; }
};

struct Payoffs {
  double u1 = 0.0;
  double u2 = 0.0;

  double of(Player p) const { return p == Player::kOne ? u1 : u2; }
};

// Resource competition: player 1 converts cost into claims r times more
// efficiently than player 2.
struct ResourceParams {
  double r = 1.5;
};

// Quantity competition in a market with price max(0, p - x1 - x2).
struct DuopolyParams {
  double p = 1.0;
  double c1 = 0.0;
  double c2 = 0.2;
};

// Prisoner's dilemma played with cooperation probabilities.
struct PrisonerParams {
  double T = 5.0;
  double R = 3.0;
  double P = 1.0;
  double S = 0.0;
};

// Parameter record for kernels built from an arbitrary evaluator.
struct CustomParams {};

using GameParams =
    std::variant<ResourceParams, DuopolyParams, PrisonerParams, CustomParams>;

void Validate(const ResourceParams& params);
void Validate(const DuopolyParams& params);
void Validate(const PrisonerParams& params);

// A two-player payoff definition over an action box. Immutable after
// construction and safe to share across threads.
class GameKernel {
 public:
  using Evaluator = std::function<Payoffs(double x1, double x2)>;
  // Euclidean distance from (x1, x2) to the nearest point where the payoffs
  // are not twice differentiable. Infinity when there is none.
  using SingularDistance = std::function<double(double x1, double x2)>;

  GameKernel(std::string id, std::string name, ActionBox box,
             GameParams params, Evaluator evaluator,
             SingularDistance singular_distance = nullptr);

  const std::string& id() const { return id_; }
  const std::string& name() const { return name_; }
  const ActionBox& box() const { return box_; }
  const GameParams& params() const { return params_; }

  // No box check. Solvers call this after clamping.
  Payoffs Evaluate(double x1, double x2) const { return evaluator_(x1, x2); }

  // Payoff of `player` when it plays `own` and the opponent plays `opp`.
  double Utility(Player player, double own, double opp) const {
    return player == Player::kOne ? evaluator_(own, opp).u1
                                  : evaluator_(opp, own).u2;
  }

  double SingularDistanceAt(double x1, double x2) const;

 private:
  std::string id_;
  std::string name_;
  ActionBox box_;
  GameParams params_;
  Evaluator evaluator_;
  SingularDistance singular_distance_;
};

GameKernel MakeResourceGame(const ResourceParams& params);
GameKernel MakeDuopolyGame(const DuopolyParams& params);
GameKernel MakePrisonerGame(const PrisonerParams& params);

// Checked evaluation. Throws DomainError naming the player and the bound
// when an action lies outside the box.
Payoffs Payoff(const GameKernel& kernel, double x1, double x2);

inline constexpr double kFirstOrderStep = 1e-5;
inline constexpr double kSecondOrderStep = 1e-4;

// Central finite-difference derivatives of both payoffs. Notation: u1_x2 is
// du1/dx2, u2_x1x2 is d2u2/dx1dx2.
struct Partials {
  int order = 1;
  double u1_x1 = 0.0, u1_x2 = 0.0, u2_x1 = 0.0, u2_x2 = 0.0;
  double u1_x1x1 = 0.0, u1_x1x2 = 0.0, u1_x2x2 = 0.0;
  double u2_x1x1 = 0.0, u2_x1x2 = 0.0, u2_x2x2 = 0.0;
  // Duopoly only: the whole stencil lies where the price is clamped to zero,
  // so all cross partials vanish.
  bool price_clamped = false;
};

// order is 1 (gradient) or 2 (gradient and Hessian). The stencil must lie in
// the box (DomainError) and stay clear of singular sets (SingularityError).
Partials ComputePartials(const GameKernel& kernel, double x1, double x2,
                         int order);

}  // namespace funcgame

#endif  // FUNCGAME_GAMES_H_
