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

#include "regret_arena/search.h"

#include <cmath>
#include <cstdio>
#include <tuple>
#include <utility>

#include "regret_arena/engine.h"
#include "regret_arena/error.h"
#include "regret_arena/parallel.h"

namespace regret_arena {
namespace {

constexpr double kSignificanceMultiplier = 3.0;

// Mean and standard error of the column player's per-simulation utility.
std::pair<double, double> ColumnMeanAndError(const BatchResult& batch) {
  const int sims = batch.simulations;
  double mean = 0.0;
  for (const auto& sim : batch.sim_mean_utility) mean += sim[1];
  mean /= sims;
  if (sims < 2) return {mean, 0.0};
  double sq = 0.0;
  for (const auto& sim : batch.sim_mean_utility) {
    sq += (sim[1] - mean) * (sim[1] - mean);
  }
  return {mean, std::sqrt(sq / (sims - 1) / sims)};
}

}  // namespace

Game RandomBimatrix(int n, Rng& rng, std::string name) {
  if (n < 2) throw ConfigError("random games need at least 2 actions");
  Matrix row(n, n), col(n, n);
  for (Matrix* m : {&row, &col}) {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) (*m)(r, c) = rng.Uniform();
    }
  }
  return Game::Bimatrix(std::move(row), std::move(col), std::move(name));
}

double GapMeasurement::combined_se() const {
  return std::sqrt(se_mw * se_mw + se_noswap * se_noswap);
}

bool GapMeasurement::Significant(double threshold) const {
  const double magnitude = std::abs(gap);
  return magnitude > threshold &&
         magnitude > kSignificanceMultiplier * combined_se();
}

GapMeasurement GapExperiment(const Game& game, double eps_mw, double eps_swap,
                             int simulations, int turns, std::uint64_t seed,
                             int threads) {
  if (game.num_players() != 2) {
    throw ConfigError("gap experiments need a two-player game");
  }
  LearnerSpec mw{LearnerKind::kMultiplicativeWeights, eps_mw};
  LearnerSpec noswap{LearnerKind::kNoSwap, eps_swap};
  SimulationConfig config{game, {mw, mw}};
  config.simulations = simulations;
  config.turns = turns;
  config.seed = seed;
  config.threads = threads;
  const BatchResult mw_arm = RunBatch(config);
  config.learners = {mw, noswap};
  const BatchResult noswap_arm = RunBatch(config);

  GapMeasurement m;
  m.seed = seed;
  std::tie(m.mean_mw, m.se_mw) = ColumnMeanAndError(mw_arm);
  std::tie(m.mean_noswap, m.se_noswap) = ColumnMeanAndError(noswap_arm);
  m.gap = m.mean_noswap - m.mean_mw;
  return m;
}

void ValidateMiningOptions(const MiningOptions& options) {
  if (options.sizes.empty()) throw ConfigError("no game sizes to mine");
  for (int n : options.sizes) {
    if (n < 2 || n > 16) throw ConfigError("mining sizes must lie in [2, 16]");
  }
  if (options.count_per_size < 1) {
    throw ConfigError("count per size must be positive");
  }
  if (!(options.threshold > 0.0)) throw ConfigError("threshold must be positive");
  if (options.simulations < 1 || options.turns < 1) {
    throw ConfigError("simulations and turns must be positive");
  }
  if (!(options.eps_mw > 0.0 && options.eps_mw < 1.0)) {
    throw ConfigError("eps_mw must lie in (0, 1)");
  }
}

std::uint64_t MiningGameSeed(std::uint64_t master_seed, int n, int index) {
  return DeriveSeed(DeriveSeed(master_seed, static_cast<std::uint64_t>(n)),
                    static_cast<std::uint64_t>(index));
}

Game MiningGame(std::uint64_t game_seed, int n) {
  Rng rng(game_seed);
  return RandomBimatrix(n, rng);
}

std::vector<GapReport> Mine(
    const MiningOptions& options,
    const std::function<void(const GapReport&, const Game&)>& on_report) {
  ValidateMiningOptions(options);
  std::vector<GapReport> all;
  for (int n : options.sizes) {
    const double eps_swap = AdjustSwapRate(options.eps_mw, n);
    std::vector<GapReport> reports(options.count_per_size);
    ParallelFor(0, options.count_per_size, options.threads, [&](int index) {
      GapReport& report = reports[index];
      char id[32];
      std::snprintf(id, sizeof(id), "n%d-g%05d", n, index);
      report.game_id = id;
      report.game_seed = MiningGameSeed(options.seed, n, index);
      report.size = n;
      report.eps_mw = options.eps_mw;
      report.eps_swap = eps_swap;
      report.simulations = options.simulations;
      report.turns = options.turns;
      const Game game = MiningGame(report.game_seed, n);
      report.screen = GapExperiment(game, options.eps_mw, eps_swap,
                                    options.simulations, options.turns,
                                    DeriveSeed(report.game_seed, 1));
      report.screen_flagged = report.screen.Significant(options.threshold);
      if (report.screen_flagged) {
        report.confirmation = GapExperiment(
            game, options.eps_mw, eps_swap, options.simulations,
            options.turns, DeriveSeed(report.game_seed, 2));
        report.flagged =
            report.confirmation->Significant(options.threshold) &&
            std::signbit(report.confirmation->gap) ==
                std::signbit(report.screen.gap);
      }
    });
    for (GapReport& report : reports) {
      if (on_report) on_report(report, MiningGame(report.game_seed, n));
      all.push_back(std::move(report));
    }
  }
  return all;
}

}  // namespace regret_arena
