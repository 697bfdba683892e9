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

#include "regret_arena/run_config.h"

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>

#include "CLI11.hpp"
#include "json.hpp"
#include "regret_arena/learners.h"
#include "regret_arena/results_io.h"

namespace regret_arena {

using nlohmann::json;

const char* CommandName(Command command) {
  switch (command) {
    case Command::kSimulate:
      return "simulate";
    case Command::kSearch:
      return "search";
    case Command::kAnalyze:
      return "analyze";
  }
  return "unknown";
}

namespace {

template <typename T>
T ConfigValue(const json& doc, const std::string& key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config file key '" + key + "' has the wrong type");
  }
}

void ValidateRunConfig(const RunConfig& config) {
  const bool has_game = !config.game_name.empty();
  const bool has_matrix = !config.matrix_path.empty();
  if (config.command == Command::kSearch) {
    if (has_game || has_matrix) {
      throw ConfigError("search generates its own games; drop --game/--matrix");
    }
  } else {
    if (has_game == has_matrix) {
      throw ConfigError("give exactly one of --game or --matrix");
    }
    if (has_matrix && !std::filesystem::exists(config.matrix_path)) {
      throw IoError("matrix file '" + config.matrix_path + "' does not exist");
    }
  }
  if (config.turns < 1) throw ConfigError("--turns must be at least 1");
  if (config.simulations < 1) throw ConfigError("--sims must be at least 1");
  if (config.threads < 0) throw ConfigError("--threads must be non-negative");
  if (config.players < 2) throw ConfigError("--players must be at least 2");
  if (!(config.final_window > 0.0 && config.final_window <= 1.0)) {
    throw ConfigError("--final-window must lie in (0, 1]");
  }
  if (config.command == Command::kSimulate) {
    for (const auto& text : config.learners) ParseLearnerSpec(text);
  }
}

}  // namespace

void ApplyConfigJson(const std::string& path, RunConfig& config) {
  const json doc = ReadJsonFile(path);
  if (!doc.is_object()) throw ConfigError("config file must hold an object");
  using Setter = std::function<void(const json&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"game", [&](const json& d, const std::string& k) {
         config.game_name = ConfigValue<std::string>(d, k);
       }},
      {"matrix", [&](const json& d, const std::string& k) {
         config.matrix_path = ConfigValue<std::string>(d, k);
       }},
      {"players", [&](const json& d, const std::string& k) {
         config.players = ConfigValue<int>(d, k);
       }},
      {"values", [&](const json& d, const std::string& k) {
         config.values = ConfigValue<std::vector<double>>(d, k);
       }},
      {"bid_step", [&](const json& d, const std::string& k) {
         config.bid_step = ConfigValue<double>(d, k);
       }},
      {"bid_zero", [&](const json& d, const std::string& k) {
         config.bid_zero = ConfigValue<bool>(d, k);
       }},
      {"learners", [&](const json& d, const std::string& k) {
         config.learners = ConfigValue<std::vector<std::string>>(d, k);
       }},
      {"turns", [&](const json& d, const std::string& k) {
         config.turns = ConfigValue<int>(d, k);
       }},
      {"sims", [&](const json& d, const std::string& k) {
         config.simulations = ConfigValue<int>(d, k);
       }},
      {"seed", [&](const json& d, const std::string& k) {
         config.seed = ConfigValue<std::uint64_t>(d, k);
       }},
      {"threads", [&](const json& d, const std::string& k) {
         config.threads = ConfigValue<int>(d, k);
       }},
      {"final_window", [&](const json& d, const std::string& k) {
         config.final_window = ConfigValue<double>(d, k);
       }},
      {"out", [&](const json& d, const std::string& k) {
         config.out = ConfigValue<std::string>(d, k);
       }},
      {"sizes", [&](const json& d, const std::string& k) {
         config.sizes = ConfigValue<std::vector<int>>(d, k);
       }},
      {"count", [&](const json& d, const std::string& k) {
         config.count = ConfigValue<int>(d, k);
       }},
      {"threshold", [&](const json& d, const std::string& k) {
         config.threshold = ConfigValue<double>(d, k);
       }},
      {"eps", [&](const json& d, const std::string& k) {
         config.eps_mw = ConfigValue<double>(d, k);
       }},
      {"eps_swap", [&](const json& d, const std::string& k) {
         config.eps_swap = ConfigValue<double>(d, k);
       }},
  };
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const auto setter = setters.find(it.key());
    if (setter == setters.end()) {
      throw ConfigError("unknown config file key '" + it.key() + "'");
    }
    setter->second(doc, it.key());
  }
}

RunConfig ParseCommandLine(int argc, const char* const* argv) {
  CLI::App app{"Repeated-game simulations of uniform, multiplicative-weights "
               "and no-swap-regret learners",
               "regret_arena"};
  app.require_subcommand(1);
  RunConfig cli;
  std::string config_path;
  std::string p1, p2;

  auto* simulate = app.add_subcommand(
      "simulate", "Run a batch of repeated games and write a result JSON");
  auto* search = app.add_subcommand(
      "search", "Mine random bimatrix games for no-swap vs MW utility gaps");
  auto* analyze = app.add_subcommand(
      "analyze", "Measure the no-swap vs MW column-player gap on one game");

  // Each explicit flag copies its value into the merged config.
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> flags;
  const auto track = [&](CLI::Option* opt, std::function<void(RunConfig&)> f) {
    flags.emplace_back(opt, std::move(f));
  };

  for (CLI::App* sub : {simulate, search, analyze}) {
    sub->add_option("--config", config_path,
                    "JSON file with default values for any flag");
    track(sub->add_option("--turns", cli.turns, "Turns per simulation"),
          [&](RunConfig& c) { c.turns = cli.turns; });
    track(sub->add_option("--sims", cli.simulations, "Simulations per batch"),
          [&](RunConfig& c) { c.simulations = cli.simulations; });
    track(sub->add_option("--seed", cli.seed, "Master seed"),
          [&](RunConfig& c) { c.seed = cli.seed; });
    track(sub->add_option("--threads", cli.threads,
                          "Worker threads (0 = all hardware threads)"),
          [&](RunConfig& c) { c.threads = cli.threads; });
    track(sub->add_option("--out", cli.out,
                          sub == search ? "Output directory"
                                        : "Output file ('-' for stdout)"),
          [&](RunConfig& c) { c.out = cli.out; });
  }
  bool no_zero = false;
  for (CLI::App* sub : {simulate, analyze}) {
    track(sub->add_option("--game", cli.game_name,
                          "Built-in game: pd, bos, fpa, spa, apa"),
          [&](RunConfig& c) { c.game_name = cli.game_name; });
    track(sub->add_option("--matrix", cli.matrix_path,
                          "Bimatrix JSON file with fields A and B"),
          [&](RunConfig& c) { c.matrix_path = cli.matrix_path; });
    track(sub->add_option("--players", cli.players, "Bidders in auctions"),
          [&](RunConfig& c) { c.players = cli.players; });
    track(sub->add_option("--values", cli.values,
                          "Per-bidder valuations (default all 1)")
              ->delimiter(','),
          [&](RunConfig& c) { c.values = cli.values; });
    track(sub->add_option("--bid-step", cli.bid_step, "Bid grid increment"),
          [&](RunConfig& c) { c.bid_step = cli.bid_step; });
    track(sub->add_flag("--no-zero-bid", no_zero,
                        "Drop bid 0 from the grid"),
          [&](RunConfig& c) { c.bid_zero = false; });
  }
  track(simulate->add_option("--p1", p1, "Learner of player 1"),
        [&](RunConfig& c) {
          if (c.learners.size() < 1) c.learners.resize(1);
          c.learners[0] = p1;
        });
  track(simulate->add_option("--p2", p2, "Learner of player 2"),
        [&](RunConfig& c) {
          if (c.learners.size() < 2) c.learners.resize(2);
          c.learners[1] = p2;
        });
  track(simulate->add_option("--learner", cli.learners,
                             "Learner spec per player, in order "
                             "(uniform, mw:<rate>, noswap:<rate>, "
                             "noswap:auto)"),
        [&](RunConfig& c) { c.learners = cli.learners; });
  track(simulate->add_option("--final-window", cli.final_window,
                             "Trailing share of turns for equilibrium gaps"),
        [&](RunConfig& c) { c.final_window = cli.final_window; });
  track(search->add_option("--sizes", cli.sizes, "Game sizes to mine")
            ->delimiter(','),
        [&](RunConfig& c) { c.sizes = cli.sizes; });
  track(search->add_option("--count", cli.count, "Random games per size"),
        [&](RunConfig& c) { c.count = cli.count; });
  track(search->add_option("--threshold", cli.threshold,
                           "Minimum |gap| to flag"),
        [&](RunConfig& c) { c.threshold = cli.threshold; });
  for (CLI::App* sub : {search, analyze}) {
    track(sub->add_option("--eps", cli.eps_mw, "MW learning rate"),
          [&](RunConfig& c) { c.eps_mw = cli.eps_mw; });
  }
  double eps_swap = 0.0;
  track(analyze->add_option("--eps-swap", eps_swap,
                            "No-swap learning rate (default: adjusted)"),
        [&](RunConfig& c) { c.eps_swap = eps_swap; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  RunConfig config;
  if (simulate->parsed()) config.command = Command::kSimulate;
  if (search->parsed()) config.command = Command::kSearch;
  if (analyze->parsed()) config.command = Command::kAnalyze;
  if (config.command == Command::kSearch) config.simulations = 100;
  if (!config_path.empty()) ApplyConfigJson(config_path, config);
  // --learner replaces the whole list, so apply it before --p1/--p2.
  for (auto& [opt, apply] : flags) {
    if (opt->count() > 0 && opt->get_name() == "--learner") apply(config);
  }
  for (auto& [opt, apply] : flags) {
    if (opt->count() > 0 && opt->get_name() != "--learner") apply(config);
  }
  ValidateRunConfig(config);
  return config;
}

Game BuildGame(const RunConfig& config) {
  if (!config.matrix_path.empty()) return LoadMatrixFile(config.matrix_path);
  const std::string& name = config.game_name;
  if (name == "pd") return PrisonersDilemma();
  if (name == "bos") return BattleOfTheSexes();
  AuctionKind kind;
  if (name == "fpa") {
    kind = AuctionKind::kFirstPrice;
  } else if (name == "spa") {
    kind = AuctionKind::kSecondPrice;
  } else if (name == "apa") {
    kind = AuctionKind::kAllPay;
  } else {
    throw ConfigError("unknown game '" + name +
                      "' (expected pd, bos, fpa, spa, apa or --matrix)");
  }
  std::vector<double> values = config.values;
  if (values.empty()) values.assign(config.players, 1.0);
  return Game::Auction(kind, config.players, std::move(values),
                       BidGrid::Uniform(config.bid_step, config.bid_zero));
}

SimulationConfig BuildSimulationConfig(const RunConfig& config) {
  Game game = BuildGame(config);
  std::vector<LearnerSpec> specs;
  for (const auto& text : config.learners) {
    specs.push_back(ParseLearnerSpec(text));
  }
  SimulationConfig sim{std::move(game), std::move(specs)};
  sim.turns = config.turns;
  sim.simulations = config.simulations;
  sim.seed = config.seed;
  sim.threads = config.threads;
  sim.final_window_fraction = config.final_window;
  return ValidateConfig(std::move(sim));
}

MiningOptions BuildMiningOptions(const RunConfig& config) {
  MiningOptions options;
  options.sizes = config.sizes;
  options.count_per_size = config.count;
  options.threshold = config.threshold;
  options.eps_mw = config.eps_mw;
  options.simulations = config.simulations;
  options.turns = config.turns;
  options.seed = config.seed;
  options.threads = config.threads;
  ValidateMiningOptions(options);
  return options;
}

std::string ResolveOutputPath(const RunConfig& config,
                              const std::string& default_name) {
  if (!config.out.empty()) return config.out;
  if (const char* dir = std::getenv(kOutDirEnv); dir != nullptr && *dir) {
    return (std::filesystem::path(dir) / default_name).string();
  }
  return "-";
}

int ExitCodeFor(const std::exception& error) {
  if (dynamic_cast<const HelpRequested*>(&error)) return kExitOk;
  if (dynamic_cast<const IoError*>(&error)) return kExitIo;
  if (dynamic_cast<const NumericError*>(&error)) return kExitNumeric;
  if (dynamic_cast<const ConfigError*>(&error)) return kExitConfig;
  if (dynamic_cast<const ContractViolation*>(&error)) return kExitConfig;
  return kExitInternal;
}

}  // namespace regret_arena
