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

// Command-line front end.
//
//   funcgame equilibrium --set r=1.5 --method closed-form --label LB
//   funcgame simulate --game duopoly --eps1 0.5 --eps2 0.5 --out runs/d
//   funcgame epsilon-flow --s1 4 --s2 1
//   funcgame sweep --eps-values 0,0.5,1 --jobs 4
//   funcgame sweep --ratio
//   funcgame check --game duopoly
//   funcgame verify
//
// Settings come from defaults, then --config (a config or an archive.json),
// then flags. The output directory falls back to $FUNCGAME_OUT.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "funcgame/error.h"
#include "funcgame/run.h"

namespace {

using nlohmann::json;

struct Flags {
  std::string config;
  std::optional<std::string> game, method, label, gradient, inner, out;
  std::optional<int> nodes, max_iters, jobs, dump_every;
  std::optional<double> tol, eps1, eps2, s1, s2, dt, t_max;
  std::optional<std::string> eps_values, ratios;
  bool ratio = false;
  bool cell_grids = false;
  std::vector<std::string> sets;
};

void AddOptions(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config, "JSON config or archive.json");
  app.add_option("--game", f.game, "resource, duopoly or prisoner");
  app.add_option("--set", f.sets, "Override a config key, e.g. r=2 or c2=0.1")
      ->take_all();
  app.add_option("--method", f.method, "closed-form, system or simulate");
  app.add_option("--label", f.label, "Corner equilibrium: BB, LB, BL or LL");
  app.add_option("--nodes", f.nodes, "Grid nodes per strategy function");
  app.add_option("--tol", f.tol, "Sup-norm convergence threshold");
  app.add_option("--max-iters", f.max_iters, "Iteration cap of the dynamics");
  app.add_option("--eps1", f.eps1, "Learning degree of player 1");
  app.add_option("--eps2", f.eps2, "Learning degree of player 2");
  app.add_option("--s1", f.s1, "Learning speed of player 1");
  app.add_option("--s2", f.s2, "Learning speed of player 2");
  app.add_option("--dt", f.dt, "Flow time step");
  app.add_option("--t-max", f.t_max, "Flow horizon");
  app.add_option("--gradient", f.gradient, "Flow gradient: frozen or total");
  app.add_option("--inner", f.inner, "Flow equilibria: system or simulate");
  app.add_option("--eps-values", f.eps_values,
                 "Comma-separated sweep axis for both players");
  app.add_flag("--ratio", f.ratio, "Sweep learning-speed ratios");
  app.add_option("--ratios", f.ratios,
                 "Comma-separated ratios S1/S2 for --ratio");
  app.add_flag("--cell-grids", f.cell_grids, "Write strategy grids per cell");
  app.add_option("--out", f.out, "Output directory");
  app.add_option("--jobs", f.jobs, "Concurrent sweep cells");
  app.add_option("--dump-every", f.dump_every,
                 "Write grids every k-th iteration (simulate)");
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw funcgame::ConfigError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw funcgame::ConfigError("malformed config JSON in '" + path +
                                "': " + e.what());
  }
}

// "0,0.5,1" -> [0, 0.5, 1]. An empty string gives an empty list, which the
// config validation rejects.
json NumberList(const std::string& flag, const std::string& text) {
  json out = json::array();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw funcgame::ConfigError(flag + ": '" + item + "' is not a number");
    }
  }
  return out;
}

json Merge(const std::string& mode, const Flags& f) {
  json j = json::object();
  if (!f.config.empty()) {
    j = ReadJsonFile(f.config);
    if (j.is_object() && j.contains("tool") && j.contains("config")) {
      j = j.at("config");
    }
    if (!j.is_object()) {
      throw funcgame::ConfigError("config must be a JSON object");
    }
  }
  if (!j.contains("out")) {
    if (const char* env = std::getenv("FUNCGAME_OUT"); env && *env) {
      j["out"] = env;
    }
  }
  if (f.game && j.value("game", std::string("resource")) != *f.game) {
    for (const char* k : {"r", "p", "c1", "c2", "T", "R", "P", "S"}) j.erase(k);
  }
  auto put = [&j](const char* key, const auto& v) {
    if (v) j[key] = *v;
  };
  j["mode"] = mode;
  put("game", f.game);
  put("method", f.method);
  put("label", f.label);
  put("nodes", f.nodes);
  put("tol", f.tol);
  put("max_iters", f.max_iters);
  put("eps1", f.eps1);
  put("eps2", f.eps2);
  put("s1", f.s1);
  put("s2", f.s2);
  put("dt", f.dt);
  put("t_max", f.t_max);
  put("gradient", f.gradient);
  put("inner", f.inner);
  put("out", f.out);
  put("jobs", f.jobs);
  put("dump_every", f.dump_every);
  if (f.eps_values) j["eps_values"] = NumberList("--eps-values", *f.eps_values);
  if (f.ratios) j["ratios"] = NumberList("--ratios", *f.ratios);
  if (f.ratio) j["sweep"] = "ratio";
  if (f.cell_grids) j["cell_grids"] = true;
  for (const std::string& s : f.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw funcgame::ConfigError("--set expects key=value, got '" + s + "'");
    }
    const std::string key = s.substr(0, eq), text = s.substr(eq + 1);
    json v = json::parse(text, nullptr, false);
    j[key] = v.is_discarded() ? json(text) : v;
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strategy-function equilibria of two-player games"};
  app.require_subcommand(1);
  app.set_version_flag("--version", funcgame::kToolVersion);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"equilibrium", "Solve one equilibrium"},
      {"simulate", "Run the functional dynamics"},
      {"epsilon-flow", "Integrate the learning-degree flow"},
      {"sweep", "Sweep learning degrees or speed ratios"},
      {"check", "Report the equilibrium conditions"},
      {"verify", "Compare solvers with brute-force oracles"}};
  for (const auto& [name, help] : commands) {
    AddOptions(*app.add_subcommand(name, help), flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? funcgame::kExitOk : funcgame::kExitConfig;
  }

  const std::string mode = app.get_subcommands().front()->get_name();
  try {
    const funcgame::RunConfig cfg = funcgame::ParseConfigJson(Merge(mode, flags));
    const funcgame::CommandResult result = funcgame::Execute(cfg);
    funcgame::WriteOutputs(result, cfg.out_dir);
    std::cout << result.summary.dump(2) << "\n";
    return result.exit_code;
  } catch (const funcgame::ConfigError& e) {
    std::cerr << "funcgame: config error: " << e.what() << "\n";
    return funcgame::kExitConfig;
  } catch (const funcgame::UnsupportedError& e) {
    std::cerr << "funcgame: config error: " << e.what() << "\n";
    return funcgame::kExitConfig;
  } catch (const funcgame::SolverError& e) {
    std::cerr << "funcgame: solver error: " << e.what() << "\n";
    return funcgame::kExitNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "funcgame: internal error: " << e.what() << "\n";
    return funcgame::kExitInternal;
  }
}
