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

// regret_arena: simulate repeated games between online learners, mine random
// bimatrix games for utility gaps, or measure the gap on a single game.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "json.hpp"
#include "regret_arena/engine.h"
#include "regret_arena/learners.h"
#include "regret_arena/results_io.h"
#include "regret_arena/run_config.h"
#include "regret_arena/search.h"

namespace regret_arena {
namespace {

using nlohmann::json;

void RunSimulate(const RunConfig& config) {
  const SimulationConfig sim = BuildSimulationConfig(config);
  const BatchResult result = RunBatch(sim);
  WriteTextFile(ResolveOutputPath(config, "result.json"),
                CanonicalDump(BatchResultToJson(result, sim)));
}

void RunAnalyze(const RunConfig& config) {
  const Game game = BuildGame(config);
  if (game.num_players() != 2) {
    throw ConfigError("analyze needs a two-player game");
  }
  const double eps_swap = config.eps_swap.value_or(
      AdjustSwapRate(config.eps_mw, game.num_actions(1)));
  const GapMeasurement m =
      GapExperiment(game, config.eps_mw, eps_swap, config.simulations,
                    config.turns, config.seed, config.threads);
  json doc = GapMeasurementToJson(m);
  doc["game"] = GameMetadataJson(game);
  doc["eps_mw"] = config.eps_mw;
  doc["eps_swap"] = eps_swap;
  doc["simulations"] = config.simulations;
  doc["turns"] = config.turns;
  doc["schema_version"] = kSchemaVersion;
  WriteTextFile(ResolveOutputPath(config, "analysis.json"), CanonicalDump(doc));
}

void RunSearch(const RunConfig& config) {
  const MiningOptions options = BuildMiningOptions(config);
  std::filesystem::path dir = config.out;
  if (dir.empty()) {
    const char* env = std::getenv(kOutDirEnv);
    dir = env != nullptr && *env ? env : "search_out";
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create directory '" + dir.string() +
                  "': " + ec.message());
  }
  std::string summary;
  int screened = 0, screen_flags = 0, flags = 0;
  Mine(options, [&](const GapReport& report, const Game& game) {
    const json doc = GapReportToJson(report);
    summary += CanonicalDump(doc, 0);
    ++screened;
    if (report.screen_flagged) ++screen_flags;
    if (!report.flagged) return;
    ++flags;
    SaveMatrixFile(game, (dir / (report.game_id + ".json")).string());
    WriteTextFile((dir / (report.game_id + ".report.json")).string(),
                  CanonicalDump(doc));
  });
  WriteTextFile((dir / "summary.jsonl").string(), summary);
  const json overview = {
      {"sizes", options.sizes},
      {"count_per_size", options.count_per_size},
      {"threshold", options.threshold},
      {"eps_mw", options.eps_mw},
      {"simulations", options.simulations},
      {"turns", options.turns},
      {"seed", options.seed},
      {"games", screened},
      {"screen_flagged", screen_flags},
      {"flagged", flags},
      {"flag_rate", static_cast<double>(flags) / screened},
      {"schema_version", kSchemaVersion}};
  WriteTextFile((dir / "search.json").string(), CanonicalDump(overview));
  std::cerr << "screened " << screened << " games, " << screen_flags
            << " passed the screen, " << flags << " confirmed; wrote "
            << dir.string() << "\n";
}

int Main(int argc, char** argv) {
  try {
    const RunConfig config = ParseCommandLine(argc, argv);
    switch (config.command) {
      case Command::kSimulate:
        RunSimulate(config);
        break;
      case Command::kSearch:
        RunSearch(config);
        break;
      case Command::kAnalyze:
        RunAnalyze(config);
        break;
    }
    return kExitOk;
  } catch (const HelpRequested& help) {
    std::cout << help.what();
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "regret_arena: " << e.what() << "\n";
    return ExitCodeFor(e);
  }
}

}  // namespace
}  // namespace regret_arena

int main(int argc, char** argv) { return regret_arena::Main(argc, argv); }
