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

#ifndef REGRET_ARENA_SEARCH_H_
#define REGRET_ARENA_SEARCH_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "regret_arena/game.h"
#include "regret_arena/rng.h"

namespace regret_arena {

// n x n bimatrix game with all 2 n^2 entries i.i.d. uniform on [0, 1).
Game RandomBimatrix(int n, Rng& rng, std::string name = "random");

// Column player's utility under the two arms of a gap experiment:
//   MW arm:     mw(eps_mw) row  vs  mw(eps_mw) column
//   no-swap arm: mw(eps_mw) row  vs  noswap(eps_swap) column
// Both arms use the same batch seed (common random numbers).
struct GapMeasurement {
  std::uint64_t seed = 0;
  double mean_mw = 0.0;
  double mean_noswap = 0.0;
  // Standard errors of the arm means across simulations.
  double se_mw = 0.0;
  double se_noswap = 0.0;
  // mean_noswap - mean_mw.
  double gap = 0.0;

  double combined_se() const;
  // |gap| > threshold and |gap| > 3 combined standard errors.
  bool Significant(double threshold) const;
  bool operator==(const GapMeasurement&) const = default;
};

GapMeasurement GapExperiment(const Game& game, double eps_mw, double eps_swap,
                             int simulations, int turns, std::uint64_t seed,
                             int threads = 1);

struct GapReport {
  std::string game_id;
  std::uint64_t game_seed = 0;
  int size = 0;
  double eps_mw = 0.0;
  double eps_swap = 0.0;
  int simulations = 0;
  int turns = 0;
  // Screening run.
  GapMeasurement screen;
  bool screen_flagged = false;
  // Re-run with an independent seed, present iff the screen flagged.
  std::optional<GapMeasurement> confirmation;
  // Final verdict: screen and confirmation both significant with equal signs.
  bool flagged = false;
};

struct MiningOptions {
  std::vector<int> sizes = {2, 3, 4, 5};
  int count_per_size = 200;
  double threshold = 0.1;
  double eps_mw = 0.2;
  int simulations = 100;
  int turns = 1000;
  std::uint64_t seed = 0;
  int threads = 0;
};

// Throws ConfigError for sizes outside [2, 16], non-positive counts,
// simulations or turns, or a non-positive threshold.
void ValidateMiningOptions(const MiningOptions& options);

// Seed from which game `index` of size `n` is generated.
std::uint64_t MiningGameSeed(std::uint64_t master_seed, int n, int index);
// Regenerates that game.
Game MiningGame(std::uint64_t game_seed, int n);

// Screens count_per_size random games per size with
// eps_swap = AdjustSwapRate(eps_mw, n), confirms significant screens with a
// fresh seed, and returns one report per game ordered by (size, index).
// `on_report`, when set, sees each report in that same order.
std::vector<GapReport> Mine(
    const MiningOptions& options,
    const std::function<void(const GapReport&, const Game&)>& on_report = {});

}  // namespace regret_arena

#endif  // REGRET_ARENA_SEARCH_H_
