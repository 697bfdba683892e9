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

#ifndef REGRET_ARENA_ENGINE_H_
#define REGRET_ARENA_ENGINE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "regret_arena/game.h"
#include "regret_arena/history.h"
#include "regret_arena/learners.h"
#include "regret_arena/metrics.h"
#include "regret_arena/rng.h"

namespace regret_arena {

inline constexpr int kDefaultTurns = 1000;
inline constexpr int kDefaultSimulations = 100;
inline constexpr double kDefaultFinalWindowFraction = 0.1;

struct SimulationConfig {
  Game game;
  // One per player. noswap:auto specs are resolved on validation.
  std::vector<LearnerSpec> learners;
  int turns = kDefaultTurns;
  int simulations = kDefaultSimulations;
  std::uint64_t seed = 0;
  // Worker threads for batches; 0 uses every hardware thread. Results do not
  // depend on this.
  int threads = 0;
  // Trailing share of turns used for the final-window heatmap.
  double final_window_fraction = kDefaultFinalWindowFraction;
};

// Checks ranges and player counts and resolves noswap:auto. Throws
// ConfigError.
SimulationConfig ValidateConfig(SimulationConfig config);

// RNG seed of simulation `sim_index` under the config's master seed.
std::uint64_t SimulationSeed(std::uint64_t master_seed, int sim_index);

// First turn of the final window: T - ceil(fraction * T), at least one turn.
int FinalWindowStart(int turns, double fraction);

std::vector<std::unique_ptr<Learner>> MakeLearners(
    const Game& game, const std::vector<LearnerSpec>& specs);

// One turn of full-information play: every learner emits a distribution,
// actions are sampled in player order, and each learner is updated with its
// normalized counterfactual loss vector. Throws ConfigError if the learners
// do not match the game.
RoundRecord PlayRound(const Game& game,
                      std::vector<std::unique_ptr<Learner>>& learners,
                      Rng& rng, int turn = 0);

// A full simulation with fresh learners; bit-identical for identical inputs.
History RunSimulation(const SimulationConfig& config, int sim_index);

struct BatchResult {
  int turns = 0;
  int simulations = 0;
  int final_window_start = 0;
  // [turn][player] means across simulations.
  std::vector<std::vector<double>> mean_utility;
  // [turn][player] mean of Game::ActionValue of the sampled action.
  std::vector<std::vector<double>> mean_action;
  // Joint action counts of players 0 and 1, all turns and simulations.
  Heatmap heatmap;
  // Same, restricted to turns >= final_window_start.
  Heatmap final_window_heatmap;
  // Time average of mean_utility.
  std::vector<double> overall_mean_utility;
  // [sim][player] time-averaged utility of each simulation.
  std::vector<std::vector<double>> sim_mean_utility;
  // Per-player means over simulations of the per-turn regrets.
  std::vector<double> mean_external_regret;
  std::vector<double> mean_swap_regret;
  std::vector<std::uint64_t> sim_seeds;
  // CCE/CE gaps of the final-window empirical distribution (two players).
  std::optional<EquilibriumGaps> final_window_gaps;
  // Largest stationary residual of any no-swap distribution emitted.
  double max_stationary_residual = 0.0;
  // Per player, for no-swap learners: smallest (inner regret bound - expected
  // swap regret) over all simulations. Non-negative when every simulation
  // respects the reduction's bound.
  std::vector<std::optional<double>> min_swap_bound_slack;

  bool operator==(const BatchResult&) const = default;
};

// Runs config.simulations independent simulations (in parallel when allowed)
// and reduces them in simulation order.
BatchResult RunBatch(const SimulationConfig& config);

}  // namespace regret_arena

#endif  // REGRET_ARENA_ENGINE_H_
