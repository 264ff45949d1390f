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

#include "funcgame/responses.h"

#include <cmath>
#include <limits>
#include <vector>

#include "funcgame/error.h"

namespace funcgame {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

EquilibriumReport Make(Label label, double x1, double x2, double u1, double u2,
                       double a1, double a2) {
  EquilibriumReport rep;
  rep.label = label;
  CornerDegrees(label, rep.eps1, rep.eps2);
  rep.method = "closed-form";
  rep.crossing = {x1, x2};
  rep.crossings = {rep.crossing};
  rep.u1 = u1;
  rep.u2 = u2;
  rep.a1 = a1;
  rep.a2 = a2;
  return rep;
}

EquilibriumReport ResourceCatalog(const ResourceParams& params, Label label) {
  const double r = params.r;
  switch (label) {
    case Label::kBB:
    case Label::kLL: {
      const double x = r / ((1 + r) * (1 + r));
      const double u1 = r * r / ((1 + r) * (1 + r));
      const double u2 = 1 / ((1 + r) * (1 + r));
      if (label == Label::kLL) return Make(label, x, x, u1, u2, 0.0, 0.0);
      return Make(label, x, x, u1, u2, (r - 1) / (2 * r), -(r - 1) / 2);
    }
    case Label::kLB:
      // The two branches meet at r = 2; the r/4 branch owns the boundary.
      if (r <= 2.0) {
        const double a2 = r < 2.0 ? 1 - r : kNaN;
        return Make(label, r / 4, (r / 2) * (1 - r / 2), r / 4,
                    (1 - r / 2) * (1 - r / 2), 0.0, a2);
      }
      return Make(label, 1 / r, 0.0, 1 - 1 / r, 0.0, 0.0, kNaN);
    case Label::kBL: {
      const double q = 1 / (2 * r);
      return Make(label, q * (1 - q), 1 / (4 * r), (1 - q) * (1 - q),
                  1 / (4 * r), 1 - 1 / r, 0.0);
    }
    case Label::kMixed: break;
  }
  throw UnsupportedError("closed-form catalog has no MIXED entries");
}

// Slope of a duopoly best response (p - c - x_opp) / 2 clamped at zero.
double DuopolyResponseSlope(double p, double c, double x_opp) {
  const double s = p - c - x_opp;
  if (s > 0) return -0.5;
  if (s < 0) return 0.0;
  return kNaN;
}

EquilibriumReport DuopolyCatalog(const DuopolyParams& params, Label label) {
  const auto [p, c1, c2] = params;
  auto slopes = [&](double x1, double x2, bool flat1, bool flat2) {
    return std::pair{flat1 ? 0.0 : DuopolyResponseSlope(p, c1, x2),
                     flat2 ? 0.0 : DuopolyResponseSlope(p, c2, x1)};
  };
  auto finish = [&](double x1, double x2, bool flat1, bool flat2) {
    const double price = std::max(0.0, p - x1 - x2);
    const auto [a1, a2] = slopes(x1, x2, flat1, flat2);
    return Make(label, x1, x2, x1 * (price - c1), x2 * (price - c2), a1, a2);
  };
  switch (label) {
    case Label::kBB:
    case Label::kLL: {
      const bool flat = label == Label::kLL;
      if (p - 2 * c2 + c1 > 0) {
        return finish((p - 2 * c1 + c2) / 3, (p - 2 * c2 + c1) / 3, flat,
                      flat);
      }
      return finish((p - c1) / 2, 0.0, flat, flat);  // player 2 stays out
    }
    case Label::kLB:
      if (p > 3 * c2 - 2 * c1) {
        return finish((p - 2 * c1 + c2) / 2, (p - 3 * c2 + 2 * c1) / 4, true,
                      false);
      }
      if (2 * c2 - c1 < p) return finish(p - c2, 0.0, true, false);
      return finish((p - c1) / 2, 0.0, true, false);
    case Label::kBL:
      if (p - 2 * c2 + c1 > 0) {
        return finish((p - 3 * c1 + 2 * c2) / 4, (p - 2 * c2 + c1) / 2, false,
                      true);
      }
      return finish((p - c1) / 2, 0.0, false, true);
    case Label::kMixed: break;
  }
  throw UnsupportedError("closed-form catalog has no MIXED entries");
}

EquilibriumReport PrisonerCatalog(const PrisonerParams& params, Label label) {
  if (label == Label::kMixed) {
    throw UnsupportedError("closed-form catalog has no MIXED entries");
  }
  // Defection dominates, so every response type plays 0.
  return Make(label, 0.0, 0.0, params.P, params.P, 0.0, 0.0);
}

}  // namespace

double BestResponse(const GameKernel& kernel, Player player, double x_opp) {
  const Interval& opp_iv = kernel.box().of(Other(player));
  if (!opp_iv.contains(x_opp)) {
    throw DomainError("best response: opponent action outside its interval");
  }
  auto objective = [&](double x) { return kernel.Utility(player, x, x_opp); };
  return Argmax1d(objective, kernel.box().of(player)).x;
}

GridStrategy BestResponseGrid(const GameKernel& kernel, Player player,
                              int n_nodes) {
  const Interval& own = kernel.box().of(player);
  const Interval& opp = kernel.box().of(Other(player));
  return GridStrategy::Sample(player, opp, own, n_nodes, [&](double x_opp) {
    return BestResponse(kernel, player, x_opp);
  });
}

ArgmaxResult LearningResponseOptimum(const GameKernel& kernel, Player player,
                                     const GridStrategy& opp) {
  if (opp.owner() != Other(player)) {
    throw ConfigError("learning response needs the opponent's strategy");
  }
  const Interval& opp_iv = kernel.box().of(Other(player));
  auto objective = [&](double x) {
    return kernel.Utility(player, x, opp_iv.clamp(opp.Eval(x)));
  };
  return Argmax1d(objective, kernel.box().of(player));
}

double LearningResponse(const GameKernel& kernel, Player player,
                        const GridStrategy& opp) {
  return LearningResponseOptimum(kernel, player, opp).x;
}

EquilibriumReport ClosedFormCatalog(const GameKernel& kernel, Label label) {
  const GameParams& params = kernel.params();
  if (const auto* r = std::get_if<ResourceParams>(&params)) {
    return ResourceCatalog(*r, label);
  }
  if (const auto* d = std::get_if<DuopolyParams>(&params)) {
    return DuopolyCatalog(*d, label);
  }
  if (const auto* pd = std::get_if<PrisonerParams>(&params)) {
    return PrisonerCatalog(*pd, label);
  }
  throw UnsupportedError("no closed forms for the '" + kernel.id() +
                         "' kernel");
}

}  // namespace funcgame
