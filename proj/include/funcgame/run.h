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

// Run configuration, command execution and output files for the funcgame
// command-line tool.

#ifndef FUNCGAME_RUN_H_
#define FUNCGAME_RUN_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "funcgame/dynamics.h"
#include "funcgame/flow.h"
#include "funcgame/games.h"
#include "funcgame/report.h"

namespace funcgame {

inline constexpr const char* kToolName = "funcgame";
inline constexpr const char* kToolVersion = "0.1.0";

enum class Mode { kEquilibrium, kSimulate, kEpsilonFlow, kSweep, kCheck, kVerify };

std::string ModeName(Mode m);
Mode ParseMode(const std::string& name);

enum class SweepKind { kEps, kRatio };

struct RunConfig {
  std::string game = "resource";
  GameParams params = ResourceParams{};
  Mode mode = Mode::kEquilibrium;

  std::string method = "simulate";  // closed-form, system or simulate
  std::optional<Label> label;       // corner to solve instead of eps1/eps2
  double eps1 = 0.0;
  double eps2 = 0.0;
  int n_nodes = kDefaultNodes;
  double tol = kDefaultTol;
  int max_iters = kDefaultMaxIters;

  FlowConfig flow;

  SweepKind sweep = SweepKind::kEps;
  std::vector<double> eps1_values = {0.0, 0.5, 1.0};
  std::vector<double> eps2_values = {0.0, 0.5, 1.0};
  std::vector<double> ratios = {0.25, 0.5, 1.0, 2.0, 4.0};
  bool cell_grids = false;

  std::string out_dir = ".";
  int jobs = 1;
  int dump_every = 0;
  int seed = 0;  // reserved; every computation is deterministic
};

// Builds a config from a JSON object with flat keys. An archive written by
// this tool is accepted too; its config snapshot is used. Throws ConfigError
// with a message naming the offending key or constraint.
RunConfig ParseConfigJson(const nlohmann::json& j);
RunConfig ParseConfigText(const std::string& text);
RunConfig ParseConfigFile(const std::string& path);

// Every field, in the format ParseConfigJson reads.
nlohmann::json ConfigToJson(const RunConfig& cfg);

void Validate(const RunConfig& cfg);
GameKernel MakeKernel(const RunConfig& cfg);

// Numeric table written as CSV with 12 significant digits.
struct Table {
  std::string name;  // file name, e.g. "fig3_grid.csv"
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string FormatCsv(const Table& t);
nlohmann::json TableToJson(const Table& t);
Table TableFromJson(const std::string& name, const nlohmann::json& j);

nlohmann::json ReportToJson(const EquilibriumReport& rep);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitInternal = 4;

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json summary;            // printed on stdout
  std::vector<Table> tables;         // CSV files
  std::vector<std::pair<std::string, nlohmann::json>> documents;  // JSON files
  nlohmann::json archive;            // archive.json
};

// Runs cfg.mode. Config errors are thrown; solver failures are reported
// through exit_code and the archive.
CommandResult Execute(const RunConfig& cfg);

// Writes tables, documents and archive.json into cfg.out_dir.
void WriteOutputs(const CommandResult& result, const std::string& out_dir);

}  // namespace funcgame

#endif  // FUNCGAME_RUN_H_
