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

// Acceptance run: one PASS/FAIL line per criterion. Exits non-zero when any
// criterion fails.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "funcgame/dynamics.h"
#include "funcgame/equilibria.h"
#include "funcgame/error.h"
#include "funcgame/flow.h"
#include "funcgame/games.h"
#include "funcgame/oracle.h"
#include "funcgame/responses.h"
#include "funcgame/run.h"
#include "reference.h"

using namespace funcgame;

namespace {

// Collects the failed clauses of one criterion.
class Criterion {
 public:
  explicit Criterion(int id) : id_(id) {}

  void Expect(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));

  bool passed() const { return failures_.empty(); }

  void Print(const std::string& summary) const {
    std::printf("ACCEPTANCE %2d %s  %s\n", id_, passed() ? "PASS" : "FAIL",
                summary.c_str());
    for (const std::string& f : failures_) std::printf("      - %s\n", f.c_str());
    std::fflush(stdout);
  }

 private:
  int id_;
  std::vector<std::string> failures_;
};

void Criterion::Expect(bool ok, const char* fmt, ...) {
  if (ok) return;
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, ap);
  va_end(ap);
  failures_.emplace_back(buf);
}

std::string Fmt(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, ap);
  va_end(ap);
  return buf;
}

DynamicsResult Simulate(const GameKernel& k, double e1, double e2, int n) {
  DynamicsConfig cfg;
  cfg.n_nodes = n;
  return Run(k, {e1, e2}, cfg);
}

// Catalog to 1e-12 against the expected values, simulation to 1e-4.
void CheckCorner(Criterion& c, const GameKernel& k, Label label,
                 const ref::Point& want, int n) {
  const std::string name = LabelName(label);
  const EquilibriumReport cat = ClosedFormCatalog(k, label);
  const double cat_err =
      std::max({std::abs(cat.crossing.x1 - want.x1),
                std::abs(cat.crossing.x2 - want.x2), std::abs(cat.u1 - want.u1),
                std::abs(cat.u2 - want.u2)});
  c.Expect(cat_err <= 1e-12, "%s %s catalog off by %.3g", k.id().c_str(),
           name.c_str(), cat_err);

  double e1, e2;
  CornerDegrees(label, e1, e2);
  const DynamicsResult d = Simulate(k, e1, e2, n);
  const double sim_err = std::max(
      {std::abs(d.report.crossing.x1 - cat.crossing.x1),
       std::abs(d.report.crossing.x2 - cat.crossing.x2),
       std::abs(d.report.u1 - cat.u1), std::abs(d.report.u2 - cat.u2)});
  c.Expect(d.report.converged, "%s %s simulation not converged",
           k.id().c_str(), name.c_str());
  c.Expect(sim_err <= 1e-4, "%s %s simulation (n=%d) off by %.3g",
           k.id().c_str(), name.c_str(), n, sim_err);
}

constexpr int kFineNodes = 4097;

bool C1() {
  Criterion c(1);
  const GameKernel k = MakeResourceGame({1.5});
  CheckCorner(c, k, Label::kBB, {0.24, 0.24, 0.36, 0.16}, kFineNodes);
  CheckCorner(c, k, Label::kLB, {0.375, 0.1875, 0.375, 0.0625}, kFineNodes);
  CheckCorner(c, k, Label::kBL, {2.0 / 9, 1.0 / 6, 4.0 / 9, 1.0 / 6},
              kFineNodes);
  c.Print(Fmt("resource r=1.5 BB/LB/BL: catalog <= 1e-12, simulation "
              "(n=%d) <= 1e-4", kFineNodes));
  return c.passed();
}

bool C2() {
  Criterion c(2);
  const GameKernel k = MakeDuopolyGame({1.0, 0.0, 0.2});
  // BB payoffs by direct evaluation: u_i = x_i (p - x1 - x2 - c_i).
  const ref::Point bb{0.4, 0.2, 0.4 * (1 - 0.6), 0.2 * (1 - 0.6 - 0.2)};
  c.Expect(std::abs(bb.u1 - 0.16) < 1e-15 && std::abs(bb.u2 - 0.04) < 1e-15,
           "direct BB evaluation (%.17g, %.17g)", bb.u1, bb.u2);
  CheckCorner(c, k, Label::kBB, bb, kFineNodes);
  CheckCorner(c, k, Label::kLB, {0.6, 0.1, 0.18, 0.01}, kFineNodes);
  CheckCorner(c, k, Label::kBL, {0.35, 0.3, 0.1225, 0.045}, kFineNodes);
  c.Print(Fmt("duopoly (0, 0.2) BB/LB/BL: catalog <= 1e-12, simulation "
              "(n=%d) <= 1e-4, BB payoffs (0.16, 0.04) by direct evaluation",
              kFineNodes));
  return c.passed();
}

bool C3() {
  Criterion c(3);
  double worst = 0;
  for (double r : {1.1, 1.5, 2.0, 3.0}) {
    const GameKernel k = MakeResourceGame({r});
    const DynamicsResult bb = Simulate(k, 0, 0, kDefaultNodes);
    const DynamicsResult ll = Simulate(k, 1, 1, kDefaultNodes);
    c.Expect(bb.report.converged && ll.report.converged,
             "r=%g simulation not converged", r);
    const double e = std::max(
        {std::abs(bb.report.a1 - (r - 1) / (2 * r)),
         std::abs(bb.report.a2 + (r - 1) / 2), std::abs(ll.report.a1),
         std::abs(ll.report.a2)});
    c.Expect(e <= 1e-3, "r=%g slopes off by %.3g (BB a=(%.6f, %.6f), LL "
             "a=(%.6f, %.6f))", r, e, bb.report.a1, bb.report.a2,
             ll.report.a1, ll.report.a2);
    worst = std::max(worst, e);
  }
  c.Print(Fmt("resource slopes at eps=(0,0) and (1,1), r in {1.1,1.5,2,3}: "
              "max error %.2e (n=%d)", worst, kDefaultNodes));
  return c.passed();
}

bool C4() {
  Criterion c(4);
  const DuopolyParams p{1.0, 0.0, 0.2};
  const GameKernel k = MakeDuopolyGame(p);
  const double mag = (2 - std::sqrt(2.0)) / 2;
  const DuopolyCoeffs co = SolveDuopolyCoeffs(p, 0.5, 0.5);
  // The coarse grid is the one on which the mixed-degree dynamics converges.
  const int n = 65;
  const DynamicsResult d = Simulate(k, 0.5, 0.5, n);
  c.Expect(d.report.converged, "simulation (n=%d) not converged", n);
  const double e = std::max(std::abs(std::abs(d.report.a1) - mag),
                            std::abs(std::abs(d.report.a2) - mag));
  c.Expect(e <= 1e-3, "|a| off by %.3g", e);
  const bool sign_ok = std::signbit(d.report.a1) == std::signbit(co.a1) &&
                       std::signbit(d.report.a2) == std::signbit(co.a2);
  c.Expect(sign_ok, "sign mismatch: simulator (%.6f, %.6f), solver (%.6f, "
           "%.6f)", d.report.a1, d.report.a2, co.a1, co.a2);
  const DynamicsResult d257 = Simulate(k, 0.5, 0.5, kDefaultNodes);
  c.Print(Fmt("duopoly eps=(0.5,0.5): simulator a=(%.6f, %.6f) (n=%d, "
              "converged), solver a=(%.6f, %.6f), |a|*=%.6f, sign negative; "
              "n=%d run a=(%.6f, %.6f) converged=%d", d.report.a1,
              d.report.a2, n, co.a1, co.a2, mag, kDefaultNodes,
              d257.report.a1, d257.report.a2, d257.report.converged ? 1 : 0));
  return c.passed();
}

bool C5() {
  Criterion c(5);
  int checks = 0;
  for (int i = 1; i <= 20; ++i) {
    const double r = 1.0 + 0.1 * i;
    const GameKernel k = MakeResourceGame({r});
    const auto bb = ClosedFormCatalog(k, Label::kBB);
    const auto lb = ClosedFormCatalog(k, Label::kLB);
    const auto bl = ClosedFormCatalog(k, Label::kBL);
    c.Expect(lb.u1 >= bb.u1, "resource r=%g: u1 LB < BB", r);
    c.Expect(bl.u2 >= bb.u2, "resource r=%g: u2 BL < BB", r);
    c.Expect(bl.u1 > bb.u1 && bl.u2 > bb.u2,
             "resource r=%g: BL not mutually improving", r);
    checks += 3;
  }
  for (double c1 : {0.0, 0.05, 0.1, 0.15}) {
    for (double dc : {0.0, 0.05, 0.1, 0.15, 0.2}) {
      const GameKernel k = MakeDuopolyGame({1.0, c1, c1 + dc});
      const auto bb = ClosedFormCatalog(k, Label::kBB);
      const auto lb = ClosedFormCatalog(k, Label::kLB);
      const auto bl = ClosedFormCatalog(k, Label::kBL);
      c.Expect(lb.u1 >= bb.u1, "duopoly (%g,%g): u1 LB < BB", c1, c1 + dc);
      c.Expect(bl.u2 >= bb.u2, "duopoly (%g,%g): u2 BL < BB", c1, c1 + dc);
      c.Expect(bl.u1 < bb.u1, "duopoly (%g,%g): BL does not harm player 1",
               c1, c1 + dc);
      checks += 3;
    }
  }
  c.Print(Fmt("payoff inequalities over 20 r values and 20 cost pairs: %d "
              "checks", checks));
  return c.passed();
}

bool C6() {
  Criterion c(6);
  const GameKernel pd = MakePrisonerGame({5, 3, 1, 0});
  for (Label l : {Label::kBB, Label::kLB, Label::kBL, Label::kLL}) {
    const std::string name = LabelName(l);
    const auto cat = ClosedFormCatalog(pd, l);
    c.Expect(cat.crossing.x1 == 0.0 && cat.crossing.x2 == 0.0 &&
                 cat.u1 == 1.0 && cat.u2 == 1.0,
             "%s catalog (%g, %g)/(%g, %g)", name.c_str(), cat.crossing.x1,
             cat.crossing.x2, cat.u1, cat.u2);
    double e1, e2;
    CornerDegrees(l, e1, e2);
    const auto sim = Simulate(pd, e1, e2, kDefaultNodes).report;
    c.Expect(sim.converged && sim.crossing.x1 == 0.0 &&
                 sim.crossing.x2 == 0.0 && sim.u1 == 1.0 && sim.u2 == 1.0,
             "%s simulation (%g, %g)/(%g, %g)", name.c_str(), sim.crossing.x1,
             sim.crossing.x2, sim.u1, sim.u2);
  }
  EquilibriumCache cache(pd, InnerSolver::kSystem);
  EquilibriumCache sim_cache(pd, InnerSolver::kSimulate);
  for (double e1 : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (double e2 : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      for (GradientMode m : {GradientMode::kFrozenOpponent, GradientMode::kTotal}) {
        const EpsGradient g = EpsilonGradient(cache, e1, e2, 1e-2, m);
        c.Expect(g.g1 == 0.0 && g.g2 == 0.0, "gradient at (%g,%g) = (%g,%g)",
                 e1, e2, g.g1, g.g2);
      }
      const EpsGradient s = EpsilonGradient(sim_cache, e1, e2);
      c.Expect(s.g1 == 0.0 && s.g2 == 0.0,
               "simulated gradient at (%g,%g) = (%g,%g)", e1, e2, s.g1, s.g2);
    }
  }
  c.Print("prisoner's dilemma (5,3,1,0): BB/LB/BL/LL at (0,0) exactly, "
          "payoffs (1,1), eps-gradients 0 on a 5x5 grid");
  return c.passed();
}

bool C7() {
  Criterion c(7);
  struct Case {
    std::string name;
    GameKernel kernel;
    bool expect_distinct;
    bool expect_boundary;
  };
  const std::vector<Case> cases = {
      {"resource r=1", MakeResourceGame({1.0}), false, false},
      {"resource r=1.5", MakeResourceGame({1.5}), true, false},
      {"duopoly (0,0.2)", MakeDuopolyGame({1.0, 0.0, 0.2}), true, false},
      {"prisoner", MakePrisonerGame({}), false, true}};
  int correct = 0;
  for (const Case& cs : cases) {
    const MismatchReport m = CheckMismatchCondition(cs.kernel);
    const auto bb = ClosedFormCatalog(cs.kernel, Label::kBB);
    const auto lb = ClosedFormCatalog(cs.kernel, Label::kLB);
    const bool observed =
        std::hypot(lb.crossing.x1 - bb.crossing.x1,
                   lb.crossing.x2 - bb.crossing.x2) > 1e-3;
    const bool ok = m.predicts_distinct == observed &&
                    observed == cs.expect_distinct &&
                    (m.status == ConditionStatus::kBoundary) ==
                        cs.expect_boundary;
    c.Expect(ok, "%s: predicted %d observed %d status %s", cs.name.c_str(),
             m.predicts_distinct, observed,
             ConditionStatusName(m.status).c_str());
    correct += ok;
  }
  c.Print(Fmt("mismatch predictor vs observed LB != BB: %d/4 correct",
              correct));
  return c.passed();
}

bool C8() {
  Criterion c(8);
  const GameKernel k = MakeResourceGame({1.5});
  const double eps[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  int converged = 0, checked = 0;
  double worst = 0;
  for (double e1 : eps) {
    for (double e2 : eps) {
      const DynamicsResult d = Simulate(k, e1, e2, kDefaultNodes);
      if (!d.report.converged) continue;
      ++converged;
      const FunctionEquilibriumReport f = CheckFunctionEquilibrium(k, d.pair);
      if (e1 == 1.0) {
        ++checked;
        worst = std::max(worst, f.p1.slack);
        c.Expect(f.p1.slack < 1e-3, "eps=(%g,%g) player 1 slack %.3g", e1, e2,
                 f.p1.slack);
      }
      if (e2 == 1.0) {
        ++checked;
        worst = std::max(worst, f.p2.slack);
        c.Expect(f.p2.slack < 1e-3, "eps=(%g,%g) player 2 slack %.3g", e1, e2,
                 f.p2.slack);
      }
    }
  }
  const DynamicsResult bb = Simulate(k, 0, 0, kDefaultNodes);
  const FunctionEquilibriumReport f = CheckFunctionEquilibrium(k, bb.pair);
  c.Expect(!f.p1.holds && f.p1.slack >= 0.01,
           "BB player 1: holds=%d slack %.6f", f.p1.holds, f.p1.slack);
  c.Expect(!f.p2.holds && f.p2.slack >= 0.01,
           "BB player 2: holds=%d slack %.6f (needs >= 0.01; exact value "
           "u2(BL) - u2(BB) = 1/6 - 0.16 = %.6f)",
           f.p2.holds, f.p2.slack, 1.0 / 6 - 0.16);
  c.Print(Fmt("5x5 grid: %d converged pairs, %d learning players checked, "
              "max slack %.2e; BB slacks (%.6f, %.6f)", converged, checked,
              worst, f.p1.slack, f.p2.slack));
  return c.passed();
}

bool C9() {
  Criterion c(9);
  const GameKernel k = MakeResourceGame({1.5});
  EquilibriumCache cache(k, InnerSolver::kSystem);
  const EpsGradient g0 = EpsilonGradient(cache, 0.0, 0.0);
  c.Expect(g0.g1 > 0 && g0.g2 > 0, "gradient at (0,0) = (%g, %g)", g0.g1,
           g0.g2);

  const EquilibriumReport lb = ClosedFormCatalog(k, Label::kLB);
  const EquilibriumReport bl = ClosedFormCatalog(k, Label::kBL);
  const double ratios[] = {0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<FlowSample> ends;
  std::string table;
  for (double ratio : ratios) {
    FlowConfig cfg;
    cfg.s1 = ratio;
    cfg.s2 = 1.0;
    const FlowTrajectory t = RunFlow(cache, cfg);
    c.Expect(t.error.empty(), "ratio %g: %s", ratio, t.error.c_str());
    ends.push_back(t.terminal());
    const FlowSample& s = t.terminal();
    table += Fmt(" %g:(%.4f,%.4f)->(%.5f,%.5f)", ratio, s.eps1, s.eps2, s.u1,
                 s.u2);
  }
  for (size_t i = 1; i < ends.size(); ++i) {
    c.Expect(ends[i].u1 >= ends[i - 1].u1,
             "u1 decreases from ratio %g to %g: %.5f -> %.5f", ratios[i - 1],
             ratios[i], ends[i - 1].u1, ends[i].u1);
    c.Expect(ends[i].u2 <= ends[i - 1].u2,
             "u2 increases from ratio %g to %g: %.5f -> %.5f", ratios[i - 1],
             ratios[i], ends[i - 1].u2, ends[i].u2);
  }
  auto within = [](double v, double a, double b) {
    return v >= std::min(a, b) - 1e-9 && v <= std::max(a, b) + 1e-9;
  };
  for (size_t i = 0; i < ends.size(); ++i) {
    c.Expect(within(ends[i].u1, lb.u1, bl.u1) &&
                 within(ends[i].u2, lb.u2, bl.u2),
             "ratio %g terminal (%.5f, %.5f) outside the BL/LB bracket "
             "u1 in [%.5f, %.5f], u2 in [%.5f, %.5f]",
             ratios[i], ends[i].u1, ends[i].u2, lb.u1, bl.u1, lb.u2, bl.u2);
  }

  // Ratio 4: near the LB payoffs, or an interior point that is a function
  // equilibrium for every learning player with eps_i = 1.
  const FlowSample& e4 = ends.back();
  const double d_lb = std::max(std::abs(e4.u1 - lb.u1), std::abs(e4.u2 - lb.u2));
  bool band_ok = false;
  const DynamicsResult d = Simulate(k, QuantizeEps(e4.eps1),
                                    QuantizeEps(e4.eps2), kDefaultNodes);
  if (d.report.converged) {
    const FunctionEquilibriumReport f = CheckFunctionEquilibrium(k, d.pair);
    band_ok = (e4.eps1 < 1.0 || f.p1.slack < 1e-3) &&
              (e4.eps2 < 1.0 || f.p2.slack < 1e-3);
  }
  c.Expect(d_lb <= 0.01 || band_ok,
           "ratio 4 terminal %.4f from LB and not a band point", d_lb);
  c.Print(Fmt("eps-flow r=1.5: g(0,0)=(%.5f, %.5f); terminals%s; ratio 4 "
              "is %.4f from LB", g0.g1, g0.g2, table.c_str(), d_lb));
  return c.passed();
}

bool C10() {
  Criterion c(10);
  std::mt19937 rng(1014);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = 1000000;
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    GameKernel k = MakeResourceGame({1.0 + 2.0 * u(rng)});
    if (trial % 2 == 1) {
      const double c1 = 0.3 * u(rng), c2 = c1 + 0.3 * u(rng);
      k = MakeDuopolyGame({1.0, c1, c2});
    }
    const Player p = u(rng) < 0.5 ? Player::kOne : Player::kTwo;
    const Interval& opp = k.box().of(Other(p));
    const double x_opp = opp.lo + opp.width() * u(rng);
    const double err =
        std::abs(BestResponse(k, p, x_opp) - BruteBestResponse(k, p, x_opp, n));
    worst = std::max(worst, err);
    c.Expect(err <= 2.0 / n, "case %d: best response off by %.3g", trial, err);
  }

  int crossings = 0;
  auto catalog = [&](const GameKernel& k, std::function<double(double)> b1,
                     std::function<double(double)> b2) {
    for (Label l : {Label::kBB, Label::kLB, Label::kBL, Label::kLL}) {
      const auto rep = ClosedFormCatalog(k, l);
      std::function<double(double)> f1 = b1, f2 = b2;
      const double x1 = rep.crossing.x1, x2 = rep.crossing.x2;
      if (l == Label::kLB || l == Label::kLL) f1 = [x1](double) { return x1; };
      if (l == Label::kBL || l == Label::kLL) f2 = [x2](double) { return x2; };
      const auto xs = BruteCrossings(f1, f2, k.box().x1);
      bool found = false;
      for (const ActionPoint& q : xs) {
        found |= std::abs(q.x1 - x1) <= 1e-5 && std::abs(q.x2 - x2) <= 1e-5;
      }
      ++crossings;
      c.Expect(found, "%s %s crossing (%g, %g) not found", k.id().c_str(),
               LabelName(l).c_str(), x1, x2);
    }
  };
  for (double r : {1.0, 1.5, 2.0, 3.0}) {
    catalog(MakeResourceGame({r}), [r](double x) { return ref::ResBr1(r, x); },
            [r](double x) { return ref::ResBr2(r, x); });
  }
  catalog(MakeDuopolyGame({1.0, 0.0, 0.2}),
          [](double x2) { return std::max(0.0, (1.0 - x2) / 2); },
          [](double x1) { return std::max(0.0, (0.8 - x1) / 2); });
  catalog(MakePrisonerGame({}), [](double) { return 0.0; },
          [](double) { return 0.0; });

  RunConfig sweep = ParseConfigText(
      R"({"mode":"sweep","eps_values":[0,0.5,1],"jobs":1})");
  auto csv = [](const CommandResult& r) {
    std::string all;
    for (const Table& t : r.tables) all += t.name + "\n" + FormatCsv(t);
    return all;
  };
  const std::string first = csv(Execute(sweep));
  const std::string second = csv(Execute(sweep));
  sweep.jobs = 4;
  const std::string parallel = csv(Execute(sweep));
  c.Expect(first == second, "repeated sweep output differs");
  c.Expect(first == parallel, "sweep output depends on --jobs");
  c.Print(Fmt("100 random best responses (max error %.2e, bound %.0e), %d "
              "catalog crossings to 1e-5, repeated sweeps byte-identical",
              worst, 2.0 / n, crossings));
  return c.passed();
}

}  // namespace

int main() {
  const std::vector<std::function<bool()>> all = {C1, C2, C3, C4, C5,
                                                   C6, C7, C8, C9, C10};
  int failed = 0;
  for (const auto& run : all) {
    try {
      failed += !run();
    } catch (const std::exception& e) {
      std::printf("ACCEPTANCE    FAIL  uncaught error: %s\n", e.what());
      ++failed;
    }
  }
  std::printf("ACCEPTANCE SUMMARY %d/%zu passed\n",
              static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
