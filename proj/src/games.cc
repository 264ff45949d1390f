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

#include "funcgame/games.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <utility>

#include "funcgame/error.h"

namespace funcgame {
namespace {

// Shortest of %.15g and %.17g that reads back as v.
std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  if (std::strtod(buf, nullptr) != v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
  }
  return buf;
}

}  // namespace

void Validate(const ResourceParams& params) {
  if (!std::isfinite(params.r) || params.r < 1.0) {
    throw ConfigError("resource game: r must satisfy r >= 1 (player 1 is the "
                      "superior player), got r = " + Num(params.r));
  }
}

void Validate(const DuopolyParams& params) {
  const auto& [p, c1, c2] = params;
  if (!std::isfinite(p) || !std::isfinite(c1) || !std::isfinite(c2)) {
    throw ConfigError("duopoly game: parameters must be finite");
  }
  if (c1 < 0.0) {
    throw ConfigError("duopoly game: c1 >= 0 violated, got c1 = " + Num(c1));
  }
  if (c1 > c2) {
    throw ConfigError("duopoly game: c1 <= c2 violated (player 1 must be the "
                      "low-cost firm), got c1 = " + Num(c1) +
                      ", c2 = " + Num(c2));
  }
  if (c2 >= p) {
    throw ConfigError("duopoly game: c2 < p violated, got c2 = " + Num(c2) +
                      ", p = " + Num(p));
  }
}

void Validate(const PrisonerParams& params) {
  const auto& [T, R, P, S] = params;
  if (!(T > R)) {
    throw ConfigError("prisoner game: T > R violated, got T = " + Num(T) +
                      ", R = " + Num(R));
  }
  if (!(R > P)) {
    throw ConfigError("prisoner game: R > P violated, got R = " + Num(R) +
                      ", P = " + Num(P));
  }
  if (!(P > S)) {
    throw ConfigError("prisoner game: P > S violated, got P = " + Num(P) +
                      ", S = " + Num(S));
  }
  if (!(2.0 * R > T + S)) {
    throw ConfigError("prisoner game: 2R > T + S violated");
  }
}

GameKernel::GameKernel(std::string id, std::string name, ActionBox box,
                       GameParams params, Evaluator evaluator,
                       SingularDistance singular_distance)
    : id_(std::move(id)),
      name_(std::move(name)),
      box_(box),
      params_(std::move(params)),
      evaluator_(std::move(evaluator)),
      singular_distance_(std::move(singular_distance)) {
  if (!(box_.x1.lo < box_.x1.hi) || !(box_.x2.lo < box_.x2.hi)) {
    throw ConfigError("action box must satisfy min < max for both players");
  }
  if (!evaluator_) throw ConfigError("game kernel needs a payoff evaluator");
}

double GameKernel::SingularDistanceAt(double x1, double x2) const {
  if (!singular_distance_) return std::numeric_limits<double>::infinity();
  return singular_distance_(x1, x2);
}

GameKernel MakeResourceGame(const ResourceParams& params) {
  Validate(params);
  const double r = params.r;
  auto eval = [r](double x1, double x2) -> Payoffs {
    // No cost paid and no resource claimed at the origin.
    if (x1 == 0.0 && x2 == 0.0) return {0.0, 0.0};
    const double total = r * x1 + x2;
    return {r * x1 / total - x1, x2 / total - x2};
  };
  auto singular = [](double x1, double x2) { return std::hypot(x1, x2); };
  return GameKernel("resource", "resource competition",
                    ActionBox{{0.0, 1.0}, {0.0, 1.0}}, params, eval, singular);
}

GameKernel MakeDuopolyGame(const DuopolyParams& params) {
  Validate(params);
  const auto [p, c1, c2] = params;
  auto eval = [p, c1, c2](double x1, double x2) -> Payoffs {
    const double price = std::max(0.0, p - x1 - x2);
    return {x1 * (price - c1), x2 * (price - c2)};
  };
  auto singular = [p](double x1, double x2) {
    return std::abs(p - x1 - x2) / std::sqrt(2.0);
  };
  return GameKernel("duopoly", "quantity duopoly",
                    ActionBox{{0.0, p}, {0.0, p}}, params, eval, singular);
}

GameKernel MakePrisonerGame(const PrisonerParams& params) {
  Validate(params);
  const auto [T, R, P, S] = params;
  auto eval = [T, R, P, S](double x1, double x2) -> Payoffs {
    const double u1 = T * (1 - x1) * x2 + R * x1 * x2 +
                      P * (1 - x1) * (1 - x2) + S * x1 * (1 - x2);
    const double u2 = T * (1 - x2) * x1 + R * x2 * x1 +
                      P * (1 - x2) * (1 - x1) + S * x2 * (1 - x1);
    return {u1, u2};
  };
  return GameKernel("prisoner", "probabilistic prisoner's dilemma",
                    ActionBox{{0.0, 1.0}, {0.0, 1.0}}, params, eval);
}

Payoffs Payoff(const GameKernel& kernel, double x1, double x2) {
  const ActionBox& box = kernel.box();
  auto check = [](const Interval& iv, double x, const char* who) {
    if (std::isnan(x)) {
      throw DomainError(std::string(who) + " action is NaN");
    }
    if (x < iv.lo) {
      throw DomainError(std::string(who) + " action " + Num(x) +
                        " is below the lower bound " + Num(iv.lo));
    }
    if (x > iv.hi) {
      throw DomainError(std::string(who) + " action " + Num(x) +
                        " is above the upper bound " + Num(iv.hi));
    }
  };
  check(box.x1, x1, "player 1");
  check(box.x2, x2, "player 2");
  return kernel.Evaluate(x1, x2);
}

Partials ComputePartials(const GameKernel& kernel, double x1, double x2,
                         int order) {
  if (order != 1 && order != 2) {
    throw ConfigError("partials: order must be 1 or 2");
  }
  const double h1 = kFirstOrderStep;
  const double h2 = kSecondOrderStep;
  const double reach = order == 1 ? h1 : h2;

  const ActionBox& box = kernel.box();
  if (x1 - reach < box.x1.lo || x1 + reach > box.x1.hi ||
      x2 - reach < box.x2.lo || x2 + reach > box.x2.hi) {
    throw DomainError("partials: stencil around (" + Num(x1) + ", " +
                      Num(x2) + ") leaves the action box");
  }
  // The mixed stencil reaches diagonally, hence the factor of two.
  if (kernel.SingularDistanceAt(x1, x2) <= 2.0 * reach) {
    throw SingularityError("partials: (" + Num(x1) + ", " + Num(x2) +
                           ") is within the finite-difference step of a "
                           "singular set of the " + kernel.id() + " game");
  }

  auto f = [&](double a, double b) { return kernel.Evaluate(a, b); };
  Partials out;
  out.order = order;

  const Payoffs px = f(x1 + h1, x2), mx = f(x1 - h1, x2);
  const Payoffs py = f(x1, x2 + h1), my = f(x1, x2 - h1);
  out.u1_x1 = (px.u1 - mx.u1) / (2 * h1);
  out.u2_x1 = (px.u2 - mx.u2) / (2 * h1);
  out.u1_x2 = (py.u1 - my.u1) / (2 * h1);
  out.u2_x2 = (py.u2 - my.u2) / (2 * h1);

  if (order == 2) {
    const Payoffs c = f(x1, x2);
    const Payoffs ppx = f(x1 + h2, x2), mmx = f(x1 - h2, x2);
    const Payoffs ppy = f(x1, x2 + h2), mmy = f(x1, x2 - h2);
    const Payoffs pp = f(x1 + h2, x2 + h2), pm = f(x1 + h2, x2 - h2);
    const Payoffs mp = f(x1 - h2, x2 + h2), mm = f(x1 - h2, x2 - h2);
    const double hh = h2 * h2;
    out.u1_x1x1 = (ppx.u1 - 2 * c.u1 + mmx.u1) / hh;
    out.u2_x1x1 = (ppx.u2 - 2 * c.u2 + mmx.u2) / hh;
    out.u1_x2x2 = (ppy.u1 - 2 * c.u1 + mmy.u1) / hh;
    out.u2_x2x2 = (ppy.u2 - 2 * c.u2 + mmy.u2) / hh;
    out.u1_x1x2 = (pp.u1 - pm.u1 - mp.u1 + mm.u1) / (4 * hh);
    out.u2_x1x2 = (pp.u2 - pm.u2 - mp.u2 + mm.u2) / (4 * hh);
  }

  if (const auto* d = std::get_if<DuopolyParams>(&kernel.params())) {
    out.price_clamped = d->p - x1 - x2 < 0.0;
  }
  return out;
}

}  // namespace funcgame
