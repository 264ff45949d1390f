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

#include "funcgame/equilibria.h"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "funcgame/error.h"
#include "funcgame/responses.h"

namespace funcgame {
namespace {

using Vec4 = std::array<double, 4>;  // x1, x2, a1, a2

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// One sweep of the crossing/slope equations. Empty when the state leaves
// the region where the square roots are defined.
std::optional<Vec4> ResourceMap(double r, double e1, double e2,
                                const Vec4& v) {
  const auto [x1, x2, a1, a2] = v;
  const double y = x2 - e1 * a2 * x1;
  const double z = x1 - e2 * a1 * x2;
  const double d1 = r + e1 * a2;
  const double d2 = 1 + r * e2 * a1;
  if (!(y > 0) || !(z > 0) || !(d1 > 0) || !(d2 > 0)) return std::nullopt;
  const double dsum = r * x1 + x2;
  Vec4 out;
  out[0] = (std::sqrt(r * y) - y) / d1;
  out[1] = (std::sqrt(r * z) - r * z) / d2;
  out[2] = (1 - e1) / d1 * (dsum / (2 * y) - 1);
  out[3] = (1 - e2) / d2 * (dsum / (2 * z) - r);
  for (double c : out) {
    if (!std::isfinite(c)) return std::nullopt;
  }
  return out;
}

double MaxDiff(const Vec4& a, const Vec4& b) {
  double m = 0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Newton on v - F(v) with a forward-difference Jacobian.
std::optional<Vec4> NewtonPolish(double r, double e1, double e2, Vec4 v,
                                 double tol) {
  for (int it = 0; it < 50; ++it) {
    const auto fv = ResourceMap(r, e1, e2, v);
    if (!fv) return std::nullopt;
    Eigen::Vector4d g;
    for (int i = 0; i < 4; ++i) g(i) = v[i] - (*fv)[i];
    if (g.cwiseAbs().maxCoeff() < tol) return v;
    Eigen::Matrix4d jac;
    for (int j = 0; j < 4; ++j) {
      Vec4 w = v;
      const double h = 1e-7 * std::max(1.0, std::abs(v[j]));
      w[j] += h;
      const auto fw = ResourceMap(r, e1, e2, w);
      if (!fw) return std::nullopt;
      for (int i = 0; i < 4; ++i) {
        jac(i, j) = ((w[i] - (*fw)[i]) - g(i)) / h;
      }
    }
    const Eigen::Vector4d step = jac.fullPivLu().solve(g);
    if (!step.allFinite()) return std::nullopt;
    for (int i = 0; i < 4; ++i) v[i] -= step(i);
  }
  return std::nullopt;
}

Vec4 Start(double r, double e1, double e2, int k) {
  const double xb = r / ((1 + r) * (1 + r));
  const double a1b = (r - 1) / (2 * r), a2b = -(r - 1) / 2;
  if (k == 0) return {xb, xb, a1b, a2b};
  // Later starts shrink the BB slopes toward the flat LL ones and move the
  // actions around the BB point.
  const double t = k / 9.0;
  const double shift = 0.5 + t;
  return {xb * shift, xb * (1.5 - t), a1b * (1 - e1 * t), a2b * (1 - e2 * t)};
}

bool OnBoundary(const ActionBox& box, double x1, double x2, double reach) {
  return x1 - reach < box.x1.lo || x1 + reach > box.x1.hi ||
         x2 - reach < box.x2.lo || x2 + reach > box.x2.hi;
}

}  // namespace

ResourceSolution SolveResourceSystem(double r, double eps1, double eps2,
                                     const SystemOptions& opts) {
  Validate(ResourceParams{r});
  Validate(PerceptionModel{eps1, eps2});
  if (r < 1.0) throw ConfigError("resource system: r must be >= 1");

  double best_residual = std::numeric_limits<double>::infinity();
  for (int k = 0; k < opts.starts; ++k) {
    Vec4 v = Start(r, eps1, eps2, k);
    double residual = std::numeric_limits<double>::infinity();
    int it = 0;
    bool failed = false;
    for (; it < opts.max_iters; ++it) {
      const auto fv = ResourceMap(r, eps1, eps2, v);
      if (!fv) {
        failed = true;
        break;
      }
      residual = MaxDiff(*fv, v);
      if (residual < opts.tol) break;
      for (int i = 0; i < 4; ++i) {
        v[i] = opts.damping * v[i] + (1 - opts.damping) * (*fv)[i];
      }
    }
    if (failed) continue;
    bool newton = false;
    if (!(residual < opts.tol)) {
      const auto polished = NewtonPolish(r, eps1, eps2, v, opts.tol);
      if (!polished) {
        best_residual = std::min(best_residual, residual);
        continue;
      }
      v = *polished;
      residual = MaxDiff(*ResourceMap(r, eps1, eps2, v), v);
      newton = true;
    }
    return {v[0], v[1], v[2], v[3], residual, it, k, newton};
  }
  throw SolverError("resource system: no convergent solution from " +
                    std::to_string(opts.starts) +
                    " starts (best residual " + std::to_string(best_residual) +
                    ")");
}

DuopolyCoeffs SolveDuopolyCoeffs(const DuopolyParams& params, double eps1,
                                 double eps2) {
  Validate(params);
  Validate(PerceptionModel{eps1, eps2});
  const auto [p, c1, c2] = params;
  const double e1 = eps1, e2 = eps2;
  // Slope magnitudes; this form has no removable singularity at eps = 0.
  const double root = std::sqrt((2 - e1 - e2) * (2 - e1 - e2) + 4 * e1 * e2);
  const double m1 = 2 * (1 - e1) / ((2 - e1 + e2) + root);
  const double m2 = 2 * (1 - e2) / ((2 - e2 + e1) + root);
  const double den = 4 * (1 - e1 * m2) * (1 - e2 * m1) - e1 * e2;

  DuopolyCoeffs out;
  out.a1 = -m1;
  out.a2 = -m2;
  out.b1 = (2 * (1 - e2 * m1) * (p - c1) - e1 * (p - c2)) / den;
  out.b2 = (2 * (1 - e1 * m2) * (p - c2) - e2 * (p - c1)) / den;
  out.x1 = (out.a1 * out.b2 + out.b1) / (1 - out.a1 * out.a2);
  out.x2 = out.a2 * out.x1 + out.b2;
  out.interior = out.x1 > 0 && out.x2 > 0 && out.x1 + out.x2 < p;
  return out;
}

EquilibriumReport SystemEquilibrium(const GameKernel& kernel, double eps1,
                                    double eps2, const SystemOptions& opts) {
  EquilibriumReport rep;
  rep.eps1 = eps1;
  rep.eps2 = eps2;
  rep.label = LabelFor(eps1, eps2);
  rep.method = "system";
  const GameParams& params = kernel.params();
  if (const auto* r = std::get_if<ResourceParams>(&params)) {
    const ResourceSolution s = SolveResourceSystem(r->r, eps1, eps2, opts);
    rep.crossing = {s.x1, s.x2};
    rep.a1 = s.a1;
    rep.a2 = s.a2;
    rep.iters = s.iters;
    rep.residual = s.residual;
  } else if (const auto* d = std::get_if<DuopolyParams>(&params)) {
    const DuopolyCoeffs c = SolveDuopolyCoeffs(*d, eps1, eps2);
    if (!c.interior) {
      throw SolverError(
          "duopoly system: the linear crossing is not interior for these "
          "costs; use --method simulate");
    }
    rep.crossing = {c.x1, c.x2};
    rep.a1 = c.a1;
    rep.a2 = c.a2;
  } else if (const auto* pd = std::get_if<PrisonerParams>(&params)) {
    (void)pd;
    rep.crossing = {0.0, 0.0};
    rep.a1 = rep.a2 = 0.0;
  } else {
    throw UnsupportedError("no equilibrium system for the '" + kernel.id() +
                           "' kernel");
  }
  rep.crossings = {rep.crossing};
  const Payoffs u = kernel.Evaluate(rep.crossing.x1, rep.crossing.x2);
  rep.u1 = u.u1;
  rep.u2 = u.u2;
  return rep;
}

std::string ConditionStatusName(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::kInterior: return "interior";
    case ConditionStatus::kBoundary: return "boundary case";
    case ConditionStatus::kInconclusive: return "inconclusive";
  }
  return "interior";
}

MismatchReport CheckMismatchCondition(const GameKernel& kernel,
                                      int n_nodes) {
  MismatchReport out;
  if (std::holds_alternative<CustomParams>(kernel.params())) {
    DynamicsConfig cfg;
    cfg.n_nodes = n_nodes;
    const DynamicsResult res = Run(kernel, {0.0, 0.0}, cfg);
    if (!res.report.converged) {
      out.status = ConditionStatus::kInconclusive;
      out.note = "BB dynamics did not converge";
      return out;
    }
    out.bb = res.report.crossing;
  } else {
    out.bb = ClosedFormCatalog(kernel, Label::kBB).crossing;
  }

  if (OnBoundary(kernel.box(), out.bb.x1, out.bb.x2, kSecondOrderStep)) {
    out.status = ConditionStatus::kBoundary;
    out.predicts_distinct = false;
    out.note = "BB lies on the border of the action box";
    return out;
  }
  Partials d;
  try {
    d = ComputePartials(kernel, out.bb.x1, out.bb.x2, 2);
  } catch (const SingularityError& e) {
    out.status = ConditionStatus::kInconclusive;
    out.note = e.what();
    return out;
  }
  if (d.price_clamped) {
    out.status = ConditionStatus::kInconclusive;
    out.note = "price is clamped at BB";
    return out;
  }
  out.du1_dx2 = d.u1_x2;
  out.d2u2_dx1dx2 = d.u2_x1x2;
  out.predicts_distinct = std::abs(d.u1_x2) > kNonzeroThreshold &&
                          std::abs(d.u2_x1x2) > kNonzeroThreshold;
  return out;
}

FunctionEquilibriumReport CheckFunctionEquilibrium(const GameKernel& kernel,
                                                   const StrategyPair& pair,
                                                   double tol) {
  const auto crossings = FindCrossings(pair.f1, pair.f2);
  const auto principal = PrincipalCrossing(pair.f1, pair.f2, crossings);
  if (!principal) {
    throw SolverError("function equilibrium: the strategy pair has no crossing");
  }
  FunctionEquilibriumReport out;
  out.crossing = *principal;
  const Payoffs achieved = kernel.Evaluate(principal->x1, principal->x2);
  auto check = [&](Player p, const GridStrategy& opp) {
    PlayerEquilibriumCheck c;
    c.achieved = achieved.of(p);
    c.optimum = LearningResponseOptimum(kernel, p, opp).value;
    c.slack = c.optimum - c.achieved;
    c.holds = c.slack < tol;
    return c;
  };
  out.p1 = check(Player::kOne, pair.f2);
  out.p2 = check(Player::kTwo, pair.f1);
  return out;
}

StackelbergReport CheckStackelbergConditions(const GameKernel& kernel,
                                             const EquilibriumReport& report) {
  StackelbergReport out;
  out.leader = report.label == Label::kBL ? Player::kTwo : Player::kOne;
  const double x1 = report.crossing.x1, x2 = report.crossing.x2;
  if (OnBoundary(kernel.box(), x1, x2, kSecondOrderStep)) {
    out.applicable = false;
    out.leader_residual = out.follower_residual = kNaN;
    out.note = "crossing lies on the border of the action box";
    return out;
  }
  Partials d;
  try {
    d = ComputePartials(kernel, x1, x2, 2);
  } catch (const SingularityError& e) {
    out.applicable = false;
    out.leader_residual = out.follower_residual = kNaN;
    out.note = e.what();
    return out;
  }
  if (out.leader == Player::kOne) {
    // d/dx1 u1(x1, f2(x1)) = 0 with f2' = -u2_x1x2 / u2_x2x2.
    out.leader_residual = d.u1_x1 * d.u2_x2x2 - d.u1_x2 * d.u2_x1x2;
    out.follower_residual = d.u2_x2;
  } else {
    out.leader_residual = d.u2_x2 * d.u1_x1x1 - d.u2_x1 * d.u1_x1x2;
    out.follower_residual = d.u1_x1;
  }
  out.pass = std::abs(out.leader_residual) < kStackelbergTol &&
             std::abs(out.follower_residual) < kStackelbergTol;
  return out;
}

}  // namespace funcgame
