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

#include "funcgame/run.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "funcgame/dynamics.h"
#include "funcgame/equilibria.h"
#include "funcgame/error.h"
#include "funcgame/oracle.h"
#include "funcgame/responses.h"
#include "funcgame/strategy.h"

namespace funcgame {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::set<std::string> kResourceKeys = {"r"};
const std::set<std::string> kDuopolyKeys = {"p", "c1", "c2"};
const std::set<std::string> kPrisonerKeys = {"T", "R", "P", "S"};

const std::set<std::string>& ParamKeys(const std::string& game) {
  static const std::set<std::string> none;
  if (game == "resource") return kResourceKeys;
  if (game == "duopoly") return kDuopolyKeys;
  if (game == "prisoner") return kPrisonerKeys;
  return none;
}

bool IsParamKey(const std::string& key) {
  return kResourceKeys.count(key) || kDuopolyKeys.count(key) ||
         kPrisonerKeys.count(key);
}

double Num(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("'" + key + "' must be a number");
  return j.get<double>();
}

int Int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) {
    throw ConfigError("'" + key + "' must be an integer");
  }
  return j.get<int>();
}

std::string Str(const json& j, const std::string& key) {
  if (!j.is_string()) throw ConfigError("'" + key + "' must be a string");
  return j.get<std::string>();
}

bool Bool(const json& j, const std::string& key) {
  if (!j.is_boolean()) throw ConfigError("'" + key + "' must be true or false");
  return j.get<bool>();
}

std::vector<double> NumList(const json& j, const std::string& key) {
  if (!j.is_array()) {
    throw ConfigError("'" + key + "' must be an array of numbers");
  }
  std::vector<double> out;
  for (const json& v : j) out.push_back(Num(v, key));
  return out;
}

GameParams DefaultParams(const std::string& game) {
  if (game == "resource") return ResourceParams{};
  if (game == "duopoly") return DuopolyParams{};
  if (game == "prisoner") return PrisonerParams{};
  throw ConfigError("unknown game '" + game +
                    "' (expected resource, duopoly or prisoner)");
}

void SetParam(GameParams& params, const std::string& key, double v) {
  if (auto* r = std::get_if<ResourceParams>(&params)) {
    r->r = v;
  } else if (auto* d = std::get_if<DuopolyParams>(&params)) {
    (key == "p" ? d->p : key == "c1" ? d->c1 : d->c2) = v;
  } else if (auto* pd = std::get_if<PrisonerParams>(&params)) {
    (key == "T" ? pd->T : key == "R" ? pd->R : key == "P" ? pd->P : pd->S) = v;
  }
}

std::string MethodCheck(const std::string& m) {
  if (m != "closed-form" && m != "system" && m != "simulate") {
    throw ConfigError("unknown method '" + m +
                      "' (expected closed-form, system or simulate)");
  }
  return m;
}

std::string Utc(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json Pair(double a, double b) { return json::array({a, b}); }

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Results must be stored
// by index; fn must not throw.
void ParallelFor(int n, int jobs, const std::function<void(int)>& fn) {
  const int workers = std::max(1, std::min(jobs, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

std::vector<double> SortedUnique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

DynamicsConfig DynamicsFrom(const RunConfig& cfg) {
  DynamicsConfig d;
  d.n_nodes = cfg.n_nodes;
  d.tol = cfg.tol;
  d.max_iters = cfg.max_iters;
  return d;
}

FlowConfig FlowFrom(const RunConfig& cfg) {
  FlowConfig f = cfg.flow;
  f.dynamics = DynamicsFrom(cfg);
  return f;
}

void TargetDegrees(const RunConfig& cfg, double& e1, double& e2) {
  e1 = cfg.eps1;
  e2 = cfg.eps2;
  if (cfg.label) CornerDegrees(*cfg.label, e1, e2);
}

struct Solved {
  EquilibriumReport report;
  std::optional<StrategyPair> pair;
};

Solved SolveWith(const GameKernel& kernel, const RunConfig& cfg,
                 const std::string& method, double e1, double e2) {
  if (method == "closed-form") {
    const Label label = LabelFor(e1, e2);
    if (label == Label::kMixed) {
      throw UnsupportedError(
          "closed-form solutions exist only for the BB, LB, BL and LL "
          "corners");
    }
    return {ClosedFormCatalog(kernel, label), std::nullopt};
  }
  if (method == "system") return {SystemEquilibrium(kernel, e1, e2), {}};
  DynamicsResult res = Run(kernel, {e1, e2}, DynamicsFrom(cfg));
  return {std::move(res.report), std::move(res.pair)};
}

Table GridTable(const std::string& name, const GridStrategy& g) {
  Table t{name, {"node", "value"}, {}};
  for (int i = 0; i < g.size(); ++i) t.rows.push_back({g.node(i), g.value(i)});
  return t;
}

json CheckToJson(const PlayerEquilibriumCheck& c) {
  return {{"holds", c.holds},
          {"achieved", c.achieved},
          {"optimum", c.optimum},
          {"slack", c.slack}};
}

// --- commands -------------------------------------------------------------

void CmdEquilibrium(const RunConfig& cfg, CommandResult& out) {
  const GameKernel kernel = MakeKernel(cfg);
  double e1, e2;
  TargetDegrees(cfg, e1, e2);
  if (cfg.method == "closed-form" && LabelFor(e1, e2) == Label::kMixed) {
    throw ConfigError(
        "--method closed-form needs a corner: pass --label BB|LB|BL|LL or "
        "learning degrees in {0, 1}");
  }
  Solved s;
  try {
    s = SolveWith(kernel, cfg, cfg.method, e1, e2);
  } catch (const SolverError& e) {
    out.exit_code = kExitNoConvergence;
    out.summary = {{"error", e.what()}};
    out.archive["failures"].push_back({{"error", e.what()}});
    return;
  }
  out.summary = ReportToJson(s.report);
  out.documents.push_back({"report.json", out.summary});
  if (!s.report.converged) out.exit_code = kExitNoConvergence;
}

void CmdSimulate(const RunConfig& cfg, CommandResult& out) {
  const GameKernel kernel = MakeKernel(cfg);
  double e1, e2;
  TargetDegrees(cfg, e1, e2);
  Table iters{"iterations.csv", {"iter", "player", "node", "value"}, {}};
  StepObserver observer;
  if (cfg.dump_every > 0) {
    observer = [&](int it, const StrategyPair& pair) {
      if (it % cfg.dump_every != 0) return;
      for (const GridStrategy* g : {&pair.f1, &pair.f2}) {
        const double player = g->owner() == Player::kOne ? 1 : 2;
        for (int i = 0; i < g->size(); ++i) {
          iters.rows.push_back({double(it), player, g->node(i), g->value(i)});
        }
      }
    };
  }
  const DynamicsResult res = Run(kernel, {e1, e2}, DynamicsFrom(cfg), observer);
  out.tables.push_back(GridTable("f1.csv", res.pair.f1));
  out.tables.push_back(GridTable("f2.csv", res.pair.f2));
  if (cfg.dump_every > 0) out.tables.push_back(std::move(iters));
  out.summary = ReportToJson(res.report);
  out.documents.push_back({"report.json", out.summary});
  if (!res.report.converged) out.exit_code = kExitNoConvergence;
}

json TerminalJson(const FlowTrajectory& tr) {
  json j = {{"stationary", tr.stationary}, {"samples", tr.samples.size()}};
  if (!tr.samples.empty()) {
    const FlowSample& s = tr.terminal();
    j["t"] = s.t;
    j["eps"] = Pair(s.eps1, s.eps2);
    j["payoffs"] = Pair(s.u1, s.u2);
    j["gradient"] = Pair(s.g1, s.g2);
  }
  if (!tr.error.empty()) j["error"] = tr.error;
  return j;
}

void CmdEpsilonFlow(const RunConfig& cfg, CommandResult& out) {
  const GameKernel kernel = MakeKernel(cfg);
  const FlowTrajectory tr = RunFlow(kernel, FlowFrom(cfg));
  Table t{"trajectory.csv", {"t", "eps1", "eps2", "u1", "u2"}, {}};
  for (const FlowSample& s : tr.samples) {
    t.rows.push_back({s.t, s.eps1, s.eps2, s.u1, s.u2});
  }
  out.tables.push_back(std::move(t));
  out.summary = TerminalJson(tr);
  out.documents.push_back({"terminal.json", out.summary});
  if (!tr.error.empty()) {
    out.archive["failures"].push_back({{"error", tr.error}});
    out.exit_code = kExitNoConvergence;
  } else if (!tr.stationary) {
    out.exit_code = kExitNoConvergence;
  }
}

std::string CellTag(double e1, double e2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "cell_%.6g_%.6g", e1, e2);
  return buf;
}

void CmdEpsSweep(const RunConfig& cfg, CommandResult& out) {
  const GameKernel kernel = MakeKernel(cfg);
  const std::vector<double> v1 = SortedUnique(cfg.eps1_values);
  const std::vector<double> v2 = SortedUnique(cfg.eps2_values);
  const int n = static_cast<int>(v1.size() * v2.size());
  std::vector<std::optional<Solved>> cells(n);
  std::vector<std::string> errors(n);
  ParallelFor(n, cfg.jobs, [&](int i) {
    const double e1 = v1[i / v2.size()], e2 = v2[i % v2.size()];
    try {
      cells[i] = SolveWith(kernel, cfg, cfg.method, e1, e2);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  Table t{"fig3_grid.csv",
          {"eps1", "eps2", "x1", "x2", "a1", "a2", "u1", "u2", "converged"},
          {}};
  json reports = json::array();
  for (int i = 0; i < n; ++i) {
    const double e1 = v1[i / v2.size()], e2 = v2[i % v2.size()];
    if (!cells[i]) {
      out.archive["failures"].push_back(
          {{"eps", Pair(e1, e2)}, {"error", errors[i]}});
      continue;
    }
    const EquilibriumReport& r = cells[i]->report;
    t.rows.push_back({e1, e2, r.crossing.x1, r.crossing.x2, r.a1, r.a2, r.u1,
                      r.u2, r.converged ? 1.0 : 0.0});
    reports.push_back(ReportToJson(r));
    if (!r.converged) {
      out.archive["failures"].push_back(
          {{"eps", Pair(e1, e2)},
           {"error", "functional dynamics did not converge"},
           {"residual", r.residual}});
    }
    if (cfg.cell_grids && cells[i]->pair) {
      const std::string tag = CellTag(e1, e2);
      out.tables.push_back(GridTable(tag + "_f1.csv", cells[i]->pair->f1));
      out.tables.push_back(GridTable(tag + "_f2.csv", cells[i]->pair->f2));
    }
  }
  out.tables.insert(out.tables.begin(), std::move(t));
  out.documents.push_back({"reports.json", reports});
  out.summary = {{"cells", n},
                 {"failures", out.archive["failures"].size()},
                 {"table", "fig3_grid.csv"}};
  if (!out.archive["failures"].empty()) out.exit_code = kExitNoConvergence;
}

Payoffs CornerPayoffs(const GameKernel& kernel, EquilibriumCache& cache,
                      Label label) {
  if (!std::holds_alternative<CustomParams>(kernel.params())) {
    const EquilibriumReport r = ClosedFormCatalog(kernel, label);
    return {r.u1, r.u2};
  }
  double e1, e2;
  CornerDegrees(label, e1, e2);
  return cache.EquilibriumPayoffs(e1, e2);
}

void CmdRatioSweep(const RunConfig& cfg, CommandResult& out) {
  const GameKernel kernel = MakeKernel(cfg);
  const std::vector<double> ratios = SortedUnique(cfg.ratios);
  const int n = static_cast<int>(ratios.size());
  std::vector<FlowTrajectory> runs(n);
  ParallelFor(n, cfg.jobs, [&](int i) {
    FlowConfig f = FlowFrom(cfg);
    f.s1 = ratios[i] * f.s2;
    try {
      runs[i] = RunFlow(kernel, f);
    } catch (const std::exception& e) {
      runs[i].error = e.what();
    }
  });

  EquilibriumCache cache(kernel, cfg.flow.solver, DynamicsFrom(cfg));
  const Payoffs lb = CornerPayoffs(kernel, cache, Label::kLB);
  const Payoffs ll = CornerPayoffs(kernel, cache, Label::kLL);
  const Payoffs bl = CornerPayoffs(kernel, cache, Label::kBL);

  Table t{"fig6_ratio.csv",
          {"ratio", "eps1", "eps2", "u1", "u2", "stationary", "lb_u1",
           "lb_u2", "ll_u1", "ll_u2", "bl_u1", "bl_u2"},
          {}};
  json terminals = json::array();
  for (int i = 0; i < n; ++i) {
    const FlowTrajectory& tr = runs[i];
    json term = TerminalJson(tr);
    term["ratio"] = ratios[i];
    terminals.push_back(term);
    if (!tr.error.empty() || tr.samples.empty()) {
      out.archive["failures"].push_back(
          {{"ratio", ratios[i]}, {"error", tr.error}});
      continue;
    }
    const FlowSample& s = tr.terminal();
    t.rows.push_back({ratios[i], s.eps1, s.eps2, s.u1, s.u2,
                      tr.stationary ? 1.0 : 0.0, lb.u1, lb.u2, ll.u1, ll.u2,
                      bl.u1, bl.u2});
  }
  out.tables.push_back(std::move(t));
  out.documents.push_back({"terminals.json", terminals});
  out.summary = {{"ratios", n},
                 {"failures", out.archive["failures"].size()},
                 {"table", "fig6_ratio.csv"}};
  if (!out.archive["failures"].empty()) out.exit_code = kExitNoConvergence;
}

void CmdCheck(const RunConfig& cfg, CommandResult& out) {
  const GameKernel kernel = MakeKernel(cfg);
  json doc;

  const MismatchReport m = CheckMismatchCondition(kernel, cfg.n_nodes);
  doc["mismatch"] = {{"status", ConditionStatusName(m.status)},
                     {"bb", Pair(m.bb.x1, m.bb.x2)},
                     {"du1_dx2", m.du1_dx2},
                     {"d2u2_dx1dx2", m.d2u2_dx1dx2},
                     {"predicts_lb_differs", m.predicts_distinct},
                     {"note", m.note}};

  double e1, e2;
  TargetDegrees(cfg, e1, e2);
  const DynamicsResult res = Run(kernel, {e1, e2}, DynamicsFrom(cfg));
  try {
    const FunctionEquilibriumReport f = CheckFunctionEquilibrium(kernel, res.pair);
    doc["function_equilibrium"] = {
        {"eps", Pair(e1, e2)},
        {"converged", res.report.converged},
        {"crossing", Pair(f.crossing.x1, f.crossing.x2)},
        {"player1", CheckToJson(f.p1)},
        {"player2", CheckToJson(f.p2)}};
  } catch (const SolverError& e) {
    doc["function_equilibrium"] = {{"eps", Pair(e1, e2)},
                                   {"error", e.what()}};
  }

  EquilibriumReport lb;
  if (std::holds_alternative<CustomParams>(kernel.params())) {
    lb = Run(kernel, {1.0, 0.0}, DynamicsFrom(cfg)).report;
  } else {
    lb = ClosedFormCatalog(kernel, Label::kLB);
  }
  const StackelbergReport s = CheckStackelbergConditions(kernel, lb);
  doc["stackelberg_lb"] = {{"crossing", Pair(lb.crossing.x1, lb.crossing.x2)},
                           {"applicable", s.applicable},
                           {"leader_residual", s.leader_residual},
                           {"follower_residual", s.follower_residual},
                           {"pass", s.pass},
                           {"note", s.note}};
  out.summary = doc;
  out.documents.push_back({"check.json", doc});
  if (!res.report.converged) out.exit_code = kExitNoConvergence;
}

void CmdVerify(const RunConfig& cfg, CommandResult& out) {
  const GameKernel kernel = MakeKernel(cfg);
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, double expected, double observed,
                    double tol) {
    const bool pass = std::abs(expected - observed) <= tol;
    all = all && pass;
    checks.push_back({{"name", name},
                      {"expected", expected},
                      {"observed", observed},
                      {"tolerance", tol},
                      {"pass", pass}});
  };

  constexpr int kSamples = 100000;
  for (Player p : {Player::kOne, Player::kTwo}) {
    const Interval& opp = kernel.box().of(Other(p));
    const double width = kernel.box().of(p).width();
    for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double x_opp = opp.lo + frac * opp.width();
      char name[80];
      std::snprintf(name, sizeof(name), "best_response p%d x_opp=%.6g",
                    Index(p) + 1, x_opp);
      record(name, BruteBestResponse(kernel, p, x_opp, kSamples),
             BestResponse(kernel, p, x_opp), 2 * width / kSamples);
    }
  }

  if (!std::holds_alternative<CustomParams>(kernel.params())) {
    const GridStrategy f1 = BestResponseGrid(kernel, Player::kOne, cfg.n_nodes);
    const GridStrategy f2 = BestResponseGrid(kernel, Player::kTwo, cfg.n_nodes);
    for (Label label : {Label::kBB, Label::kLB, Label::kBL}) {
      const EquilibriumReport cat = ClosedFormCatalog(kernel, label);
      const GridStrategy g1 =
          label == Label::kLB
              ? GridStrategy::Constant(kernel, Player::kOne, cfg.n_nodes,
                                       cat.crossing.x1)
              : f1;
      const GridStrategy g2 =
          label == Label::kBL
              ? GridStrategy::Constant(kernel, Player::kTwo, cfg.n_nodes,
                                       cat.crossing.x2)
              : f2;
      double best = std::numeric_limits<double>::infinity();
      for (const ActionPoint& c : BruteCrossings(g1, g2)) {
        best = std::min(best, std::hypot(c.x1 - cat.crossing.x1,
                                         c.x2 - cat.crossing.x2));
      }
      record("catalog crossing " + LabelName(label), 0.0, best, 1e-5);
    }
  }
  out.summary = {{"checks", checks}, {"all_pass", all}};
  out.documents.push_back({"verify.json", out.summary});
  if (!all) out.exit_code = kExitInternal;
}

}  // namespace

std::string ModeName(Mode m) {
  switch (m) {
    case Mode::kEquilibrium: return "equilibrium";
    case Mode::kSimulate: return "simulate";
    case Mode::kEpsilonFlow: return "epsilon-flow";
    case Mode::kSweep: return "sweep";
    case Mode::kCheck: return "check";
    case Mode::kVerify: return "verify";
  }
  return "equilibrium";
}

Mode ParseMode(const std::string& name) {
  for (Mode m : {Mode::kEquilibrium, Mode::kSimulate, Mode::kEpsilonFlow,
                 Mode::kSweep, Mode::kCheck, Mode::kVerify}) {
    if (ModeName(m) == name) return m;
  }
  throw ConfigError("unknown mode '" + name +
                    "' (expected equilibrium, simulate, epsilon-flow, sweep, "
                    "check or verify)");
}

RunConfig ParseConfigJson(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (j.contains("tool") && j.contains("config")) {
    return ParseConfigJson(j.at("config"));
  }
  RunConfig cfg;
  if (j.contains("game")) cfg.game = Str(j.at("game"), "game");
  cfg.params = DefaultParams(cfg.game);
  const std::set<std::string>& own = ParamKeys(cfg.game);

  for (const auto& [key, v] : j.items()) {
    if (key == "game") continue;
    if (IsParamKey(key)) {
      if (!own.count(key)) {
        throw ConfigError("parameter '" + key + "' does not apply to game '" +
                          cfg.game + "'");
      }
      SetParam(cfg.params, key, Num(v, key));
    } else if (key == "mode") {
      cfg.mode = ParseMode(Str(v, key));
    } else if (key == "method") {
      cfg.method = MethodCheck(Str(v, key));
    } else if (key == "label") {
      if (v.is_null()) {
        cfg.label.reset();
      } else {
        cfg.label = ParseLabel(Str(v, key));
      }
    } else if (key == "eps1") {
      cfg.eps1 = Num(v, key);
    } else if (key == "eps2") {
      cfg.eps2 = Num(v, key);
    } else if (key == "nodes") {
      cfg.n_nodes = Int(v, key);
    } else if (key == "tol") {
      cfg.tol = Num(v, key);
    } else if (key == "max_iters") {
      cfg.max_iters = Int(v, key);
    } else if (key == "s1") {
      cfg.flow.s1 = Num(v, key);
    } else if (key == "s2") {
      cfg.flow.s2 = Num(v, key);
    } else if (key == "dt") {
      cfg.flow.dt = Num(v, key);
    } else if (key == "t_max") {
      cfg.flow.t_max = Num(v, key);
    } else if (key == "eps0") {
      const std::vector<double> e = NumList(v, key);
      if (e.size() != 2) throw ConfigError("'eps0' must have two entries");
      cfg.flow.eps1_0 = e[0];
      cfg.flow.eps2_0 = e[1];
    } else if (key == "grad_h") {
      cfg.flow.grad_h = Num(v, key);
    } else if (key == "stationary_tol") {
      cfg.flow.stationary_tol = Num(v, key);
    } else if (key == "gradient") {
      cfg.flow.mode = ParseGradientMode(Str(v, key));
    } else if (key == "inner") {
      cfg.flow.solver = ParseInnerSolver(Str(v, key));
    } else if (key == "sweep") {
      const std::string s = Str(v, key);
      if (s != "eps" && s != "ratio") {
        throw ConfigError("'sweep' must be \"eps\" or \"ratio\"");
      }
      cfg.sweep = s == "eps" ? SweepKind::kEps : SweepKind::kRatio;
    } else if (key == "eps_values") {
      cfg.eps1_values = cfg.eps2_values = NumList(v, key);
    } else if (key == "eps1_values") {
      cfg.eps1_values = NumList(v, key);
    } else if (key == "eps2_values") {
      cfg.eps2_values = NumList(v, key);
    } else if (key == "ratios") {
      cfg.ratios = NumList(v, key);
    } else if (key == "cell_grids") {
      cfg.cell_grids = Bool(v, key);
    } else if (key == "out") {
      cfg.out_dir = Str(v, key);
    } else if (key == "jobs") {
      cfg.jobs = Int(v, key);
    } else if (key == "dump_every") {
      cfg.dump_every = Int(v, key);
    } else if (key == "seed") {
      cfg.seed = Int(v, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  Validate(cfg);
  return cfg;
}

RunConfig ParseConfigText(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config JSON: ") + e.what());
  }
  return ParseConfigJson(j);
}

RunConfig ParseConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfigText(ss.str());
}

json ConfigToJson(const RunConfig& cfg) {
  json j;
  j["game"] = cfg.game;
  if (const auto* r = std::get_if<ResourceParams>(&cfg.params)) {
    j["r"] = r->r;
  } else if (const auto* d = std::get_if<DuopolyParams>(&cfg.params)) {
    j["p"] = d->p;
    j["c1"] = d->c1;
    j["c2"] = d->c2;
  } else if (const auto* pd = std::get_if<PrisonerParams>(&cfg.params)) {
    j["T"] = pd->T;
    j["R"] = pd->R;
    j["P"] = pd->P;
    j["S"] = pd->S;
  }
  j["mode"] = ModeName(cfg.mode);
  j["method"] = cfg.method;
  j["label"] = cfg.label ? json(LabelName(*cfg.label)) : json(nullptr);
  j["eps1"] = cfg.eps1;
  j["eps2"] = cfg.eps2;
  j["nodes"] = cfg.n_nodes;
  j["tol"] = cfg.tol;
  j["max_iters"] = cfg.max_iters;
  j["s1"] = cfg.flow.s1;
  j["s2"] = cfg.flow.s2;
  j["dt"] = cfg.flow.dt;
  j["t_max"] = cfg.flow.t_max;
  j["eps0"] = Pair(cfg.flow.eps1_0, cfg.flow.eps2_0);
  j["grad_h"] = cfg.flow.grad_h;
  j["stationary_tol"] = cfg.flow.stationary_tol;
  j["gradient"] = GradientModeName(cfg.flow.mode);
  j["inner"] = InnerSolverName(cfg.flow.solver);
  j["sweep"] = cfg.sweep == SweepKind::kEps ? "eps" : "ratio";
  j["eps1_values"] = cfg.eps1_values;
  j["eps2_values"] = cfg.eps2_values;
  j["ratios"] = cfg.ratios;
  j["cell_grids"] = cfg.cell_grids;
  j["out"] = cfg.out_dir;
  j["jobs"] = cfg.jobs;
  j["dump_every"] = cfg.dump_every;
  j["seed"] = cfg.seed;
  return j;
}

void Validate(const RunConfig& cfg) {
  std::visit(
      [](const auto& p) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(p)>,
                                      CustomParams>) {
          Validate(p);
        }
      },
      cfg.params);
  MethodCheck(cfg.method);
  Validate(PerceptionModel{cfg.eps1, cfg.eps2});
  if (cfg.n_nodes < 3) throw ConfigError("'nodes' must be >= 3");
  if (!(cfg.tol > 0)) throw ConfigError("'tol' must be > 0");
  if (cfg.max_iters < 1) throw ConfigError("'max_iters' must be >= 1");
  if (cfg.jobs < 1) throw ConfigError("'jobs' must be >= 1");
  if (cfg.dump_every < 0) throw ConfigError("'dump_every' must be >= 0");
  auto unit_list = [](const std::vector<double>& v, const char* key) {
    if (v.empty()) {
      throw ConfigError(std::string("sweep axis '") + key + "' is empty");
    }
    for (double e : v) {
      if (!(e >= 0.0 && e <= 1.0)) {
        throw ConfigError(std::string("'") + key +
                          "' entries must lie in [0, 1]");
      }
    }
  };
  unit_list(cfg.eps1_values, "eps1_values");
  unit_list(cfg.eps2_values, "eps2_values");
  if (cfg.ratios.empty()) throw ConfigError("sweep axis 'ratios' is empty");
  for (double r : cfg.ratios) {
    if (!(r > 0)) throw ConfigError("'ratios' entries must be > 0");
  }
  FlowConfig f = cfg.flow;
  f.dynamics = DynamicsFrom(cfg);
  Validate(f);
}

GameKernel MakeKernel(const RunConfig& cfg) {
  if (const auto* r = std::get_if<ResourceParams>(&cfg.params)) {
    return MakeResourceGame(*r);
  }
  if (const auto* d = std::get_if<DuopolyParams>(&cfg.params)) {
    return MakeDuopolyGame(*d);
  }
  if (const auto* pd = std::get_if<PrisonerParams>(&cfg.params)) {
    return MakePrisonerGame(*pd);
  }
  throw ConfigError("custom games cannot be built from a config");
}

std::string FormatCsv(const Table& t) {
  std::string s;
  for (size_t i = 0; i < t.columns.size(); ++i) {
    if (i) s += ',';
    s += t.columns[i];
  }
  s += '\n';
  char buf[40];
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      std::snprintf(buf, sizeof(buf), "%.12g", row[i]);
      s += buf;
    }
    s += '\n';
  }
  return s;
}

json TableToJson(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::array();
    for (double v : row) r.push_back(std::isfinite(v) ? json(v) : json(nullptr));
    rows.push_back(std::move(r));
  }
  return {{"columns", t.columns}, {"rows", rows}};
}

Table TableFromJson(const std::string& name, const json& j) {
  Table t;
  t.name = name;
  t.columns = j.at("columns").get<std::vector<std::string>>();
  for (const json& r : j.at("rows")) {
    std::vector<double> row;
    for (const json& v : r) row.push_back(v.is_null() ? kNaN : v.get<double>());
    t.rows.push_back(std::move(row));
  }
  return t;
}

json ReportToJson(const EquilibriumReport& rep) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json crossings = json::array();
  for (const ActionPoint& c : rep.crossings) crossings.push_back(Pair(c.x1, c.x2));
  return {{"label", rep.label_name()},
          {"eps", Pair(rep.eps1, rep.eps2)},
          {"method", rep.method},
          {"crossing", Pair(rep.crossing.x1, rep.crossing.x2)},
          {"gradients", json::array({num(rep.a1), num(rep.a2)})},
          {"payoffs", Pair(rep.u1, rep.u2)},
          {"iters", rep.iters},
          {"residual", num(rep.residual)},
          {"converged", rep.converged},
          {"crossings", crossings}};
}

CommandResult Execute(const RunConfig& cfg) {
  Validate(cfg);
  const auto started = std::chrono::system_clock::now();
  const auto t0 = std::chrono::steady_clock::now();
  CommandResult out;
  out.archive["failures"] = json::array();
  switch (cfg.mode) {
    case Mode::kEquilibrium: CmdEquilibrium(cfg, out); break;
    case Mode::kSimulate: CmdSimulate(cfg, out); break;
    case Mode::kEpsilonFlow: CmdEpsilonFlow(cfg, out); break;
    case Mode::kSweep:
      if (cfg.sweep == SweepKind::kEps) {
        CmdEpsSweep(cfg, out);
      } else {
        CmdRatioSweep(cfg, out);
      }
      break;
    case Mode::kCheck: CmdCheck(cfg, out); break;
    case Mode::kVerify: CmdVerify(cfg, out); break;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  json& a = out.archive;
  a["tool"] = kToolName;
  a["version"] = kToolVersion;
  a["command"] = ModeName(cfg.mode);
  a["config"] = ConfigToJson(cfg);
  a["exit_code"] = out.exit_code;
  a["tables"] = json::object();
  for (const Table& t : out.tables) a["tables"][t.name] = TableToJson(t);
  a["documents"] = json::object();
  for (const auto& [name, doc] : out.documents) a["documents"][name] = doc;
  a["wall_clock"] = {{"started_utc", Utc(started)},
                     {"elapsed_seconds", elapsed}};
  return out;
}

void WriteOutputs(const CommandResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw ConfigError("cannot create output directory '" + out_dir +
                      "': " + ec.message());
  }
  auto write = [&](const std::string& name, const std::string& body) {
    const fs::path path = fs::path(out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    f << body;
    if (!f) throw Error("failed to write " + path.string());
  };
  for (const Table& t : result.tables) write(t.name, FormatCsv(t));
  for (const auto& [name, doc] : result.documents) {
    write(name, doc.dump(2) + "\n");
  }
  write("archive.json", result.archive.dump(2) + "\n");
}

}  // namespace funcgame
