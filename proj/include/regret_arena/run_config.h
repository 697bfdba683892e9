// Copyright 2026 The Regret Arena Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REGRET_ARENA_RUN_CONFIG_H_
#define REGRET_ARENA_RUN_CONFIG_H_

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "regret_arena/engine.h"
#include "regret_arena/error.h"
#include "regret_arena/game.h"
#include "regret_arena/search.h"

namespace regret_arena {

// Environment variable naming the directory for results when --out is absent.
inline constexpr const char* kOutDirEnv = "REGRET_ARENA_OUT_DIR";

enum class Command { kSimulate, kSearch, kAnalyze };

const char* CommandName(Command command);

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitIo = 4;

// Thrown for --help; carries the usage text.
class HelpRequested : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  Command command = Command::kSimulate;
  // Exactly one of the two game sources is set.
  std::string game_name;    // pd, bos, fpa, spa, apa
  std::string matrix_path;  // bimatrix JSON file
  // Auction parameters.
  int players = 2;
  std::vector<double> values;  // empty: every value is 1
  double bid_step = 0.05;
  bool bid_zero = true;

  std::vector<std::string> learners;  // textual learner specs, one per player
  int turns = kDefaultTurns;
  int simulations = kDefaultSimulations;
  std::uint64_t seed = 0;
  int threads = 0;
  double final_window = kDefaultFinalWindowFraction;
  // Output file for simulate/analyze, directory for search. Empty means
  // $REGRET_ARENA_OUT_DIR (if set) or stdout.
  std::string out;

  // search / analyze.
  std::vector<int> sizes = {2, 3, 4, 5};
  int count = 200;
  double threshold = 0.1;
  double eps_mw = 0.2;
  std::optional<double> eps_swap;  // unset: AdjustSwapRate(eps_mw, K)
};

// Parses `regret_arena <command> [flags]`. A --config JSON file (keys are the
// long flag names without dashes) supplies values that explicit flags
// override. Throws HelpRequested, ConfigError, IoError or ParseError.
RunConfig ParseCommandLine(int argc, const char* const* argv);

// Applies a config-file JSON object on top of `config`.
void ApplyConfigJson(const std::string& path, RunConfig& config);

// Builds the game named by the config. Throws ConfigError for unknown names,
// IoError / ParseError for unreadable matrix files.
Game BuildGame(const RunConfig& config);

// Validated simulation config with noswap:auto resolved.
SimulationConfig BuildSimulationConfig(const RunConfig& config);

MiningOptions BuildMiningOptions(const RunConfig& config);

// Resolved output path for a single-file command.
std::string ResolveOutputPath(const RunConfig& config,
                              const std::string& default_name);

// Maps an exception to the documented exit code.
int ExitCodeFor(const std::exception& error);

}  // namespace regret_arena

#endif  // REGRET_ARENA_RUN_CONFIG_H_
