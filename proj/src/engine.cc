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

#include "regret_arena/engine.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "regret_arena/error.h"
#include "regret_arena/parallel.h"

namespace regret_arena {
namespace {

// Scratch space reused across rounds of one simulation.
struct RoundBuffers {
  explicit RoundBuffers(const Game& game)
      : profile(game.num_players()), utilities(game.num_players()) {
    for (int p = 0; p < game.num_players(); ++p) {
      const int k = game.num_actions(p);
      distributions.emplace_back(k);
      counterfactuals.emplace_back(k);
      losses.emplace_back(k);
    }
  }

  ActionProfile profile;
  std::vector<double> utilities;
  std::vector<std::vector<double>> distributions;
  std::vector<std::vector<double>> counterfactuals;
  std::vector<std::vector<double>> losses;
};

void CheckLearners(const Game& game,
                   const std::vector<std::unique_ptr<Learner>>& learners) {
  if (static_cast<int>(learners.size()) != game.num_players()) {
    throw ConfigError("one learner per player is required");
  }
  for (int p = 0; p < game.num_players(); ++p) {
    if (learners[p]->num_actions() != game.num_actions(p)) {
      std::ostringstream msg;
      msg << "learner " << p << " has " << learners[p]->num_actions()
          << " actions, the game gives it " << game.num_actions(p);
      throw ConfigError(msg.str());
    }
  }
}

void PlayRoundInto(const Game& game,
                   std::vector<std::unique_ptr<Learner>>& learners, Rng& rng,
                   RoundBuffers& buf) {
  const int n = game.num_players();
  for (int p = 0; p < n; ++p) {
    const auto dist = learners[p]->Distribution();
    std::copy(dist.begin(), dist.end(), buf.distributions[p].begin());
    buf.profile[p] = rng.Sample(buf.distributions[p]);
  }
  for (int p = 0; p < n; ++p) {
    game.CounterfactualUtilitiesInto(p, buf.profile, buf.counterfactuals[p]);
    buf.utilities[p] = buf.counterfactuals[p][buf.profile[p]];
  }
  for (int p = 0; p < n; ++p) {
    game.NormalizedLossInto(buf.counterfactuals[p], buf.losses[p]);
    learners[p]->Update(buf.losses[p]);
  }
}

std::vector<std::optional<NoSwapDiagnostics>> CollectDiagnostics(
    const Game& game, const std::vector<std::unique_ptr<Learner>>& learners,
    int turns) {
  const double range = game.bounds().max - game.bounds().min;
  std::vector<std::optional<NoSwapDiagnostics>> out(learners.size());
  for (size_t p = 0; p < learners.size(); ++p) {
    const auto* noswap = dynamic_cast<const NoSwapLearner*>(learners[p].get());
    if (noswap == nullptr) continue;
    const auto regrets = noswap->InnerExternalRegrets();
    const double total = std::accumulate(regrets.begin(), regrets.end(), 0.0);
    out[p] = NoSwapDiagnostics{noswap->max_stationary_residual(),
                               range * total / turns};
  }
  return out;
}

// Everything a batch needs from one simulation.
struct SimulationSummary {
  std::vector<double> utility;  // [turn * n + player]
  std::vector<double> action;   // [turn * n + player]
  Heatmap heatmap;
  Heatmap final_window_heatmap;
  std::vector<double> mean_utility;
  std::vector<double> external_regret;
  std::vector<double> swap_regret;
  std::vector<double> expected_swap_regret;
  std::vector<std::optional<NoSwapDiagnostics>> noswap;
};

SimulationSummary Summarize(const SimulationConfig& config, int sim_index,
                            int window_start) {
  const Game& game = config.game;
  const int n = game.num_players();
  const int turns = config.turns;
  auto learners = MakeLearners(game, config.learners);
  Rng rng(SimulationSeed(config.seed, sim_index));
  RoundBuffers buf(game);

  SimulationSummary s;
  s.utility.resize(static_cast<size_t>(turns) * n);
  s.action.resize(static_cast<size_t>(turns) * n);
  s.heatmap = Heatmap(game.num_actions(0), game.num_actions(1));
  s.final_window_heatmap = s.heatmap;
  std::vector<RegretTracker> trackers;
  for (int p = 0; p < n; ++p) trackers.emplace_back(game.num_actions(p));

  for (int t = 0; t < turns; ++t) {
    PlayRoundInto(game, learners, rng, buf);
    for (int p = 0; p < n; ++p) {
      s.utility[static_cast<size_t>(t) * n + p] = buf.utilities[p];
      s.action[static_cast<size_t>(t) * n + p] =
          game.ActionValue(p, buf.profile[p]);
      trackers[p].Add(buf.counterfactuals[p], buf.profile[p],
                      buf.distributions[p]);
    }
    ++s.heatmap.at(buf.profile[0], buf.profile[1]);
    if (t >= window_start) {
      ++s.final_window_heatmap.at(buf.profile[0], buf.profile[1]);
    }
  }

  s.mean_utility.assign(n, 0.0);
  for (int t = 0; t < turns; ++t) {
    for (int p = 0; p < n; ++p) {
      s.mean_utility[p] += s.utility[static_cast<size_t>(t) * n + p];
    }
  }
  for (double& v : s.mean_utility) v /= turns;
  for (int p = 0; p < n; ++p) {
    s.external_regret.push_back(trackers[p].ExternalRegret());
    s.swap_regret.push_back(trackers[p].SwapRegret());
    s.expected_swap_regret.push_back(trackers[p].ExpectedSwapRegret());
  }
  s.noswap = CollectDiagnostics(game, learners, turns);
  return s;
}

}  // namespace

std::uint64_t SimulationSeed(std::uint64_t master_seed, int sim_index) {
  return DeriveSeed(master_seed, static_cast<std::uint64_t>(sim_index));
}

int FinalWindowStart(int turns, double fraction) {
  const int window = std::clamp(
      static_cast<int>(std::ceil(fraction * turns - 1e-9)), 1, turns);
  return turns - window;
}

SimulationConfig ValidateConfig(SimulationConfig config) {
  if (config.turns < 1) throw ConfigError("turns must be at least 1");
  if (config.simulations < 1) {
    throw ConfigError("simulations must be at least 1");
  }
  if (!(config.final_window_fraction > 0.0 &&
        config.final_window_fraction <= 1.0)) {
    throw ConfigError("final window fraction must lie in (0, 1]");
  }
  if (config.threads < 0) throw ConfigError("threads must be non-negative");
  config.learners = ResolveLearnerSpecs(std::move(config.learners), config.game);
  // Surface bad rates here rather than inside a worker thread.
  MakeLearners(config.game, config.learners);
  return config;
}

std::vector<std::unique_ptr<Learner>> MakeLearners(
    const Game& game, const std::vector<LearnerSpec>& specs) {
  if (static_cast<int>(specs.size()) != game.num_players()) {
    throw ConfigError("one learner spec per player is required");
  }
  std::vector<std::unique_ptr<Learner>> learners;
  for (int p = 0; p < game.num_players(); ++p) {
    learners.push_back(MakeLearner(specs[p], game.num_actions(p)));
  }
  return learners;
}

RoundRecord PlayRound(const Game& game,
                      std::vector<std::unique_ptr<Learner>>& learners,
                      Rng& rng, int turn) {
  CheckLearners(game, learners);
  RoundBuffers buf(game);
  PlayRoundInto(game, learners, rng, buf);
  return RoundRecord{turn, buf.profile, buf.utilities, buf.counterfactuals,
                     buf.distributions};
}

History RunSimulation(const SimulationConfig& raw_config, int sim_index) {
  const SimulationConfig config = ValidateConfig(raw_config);
  const Game& game = config.game;
  auto learners = MakeLearners(game, config.learners);
  Rng rng(SimulationSeed(config.seed, sim_index));
  RoundBuffers buf(game);
  History history;
  history.rounds.reserve(config.turns);
  for (int t = 0; t < config.turns; ++t) {
    PlayRoundInto(game, learners, rng, buf);
    history.rounds.push_back(RoundRecord{t, buf.profile, buf.utilities,
                                         buf.counterfactuals,
                                         buf.distributions});
  }
  history.noswap = CollectDiagnostics(game, learners, config.turns);
  return history;
}

BatchResult RunBatch(const SimulationConfig& raw_config) {
  const SimulationConfig config = ValidateConfig(raw_config);
  const Game& game = config.game;
  const int n = game.num_players();
  const int turns = config.turns;
  const int sims = config.simulations;
  const int window_start =
      FinalWindowStart(turns, config.final_window_fraction);

  BatchResult result;
  result.turns = turns;
  result.simulations = sims;
  result.final_window_start = window_start;
  result.heatmap = Heatmap(game.num_actions(0), game.num_actions(1));
  result.final_window_heatmap = result.heatmap;
  result.mean_external_regret.assign(n, 0.0);
  result.mean_swap_regret.assign(n, 0.0);
  result.min_swap_bound_slack.assign(n, std::nullopt);
  for (int s = 0; s < sims; ++s) {
    result.sim_seeds.push_back(SimulationSeed(config.seed, s));
  }

  std::vector<double> utility_sum(static_cast<size_t>(turns) * n, 0.0);
  std::vector<double> action_sum(static_cast<size_t>(turns) * n, 0.0);

  // Simulations run in chunks so memory stays bounded; each chunk is reduced
  // in simulation order, which keeps the result independent of scheduling.
  const int workers = ResolveThreadCount(config.threads);
  const int chunk = std::max(1, workers * 4);
  std::vector<SimulationSummary> summaries;
  for (int first = 0; first < sims; first += chunk) {
    const int last = std::min(sims, first + chunk);
    summaries.assign(last - first, SimulationSummary{});
    ParallelFor(first, last, workers, [&](int s) {
      summaries[s - first] = Summarize(config, s, window_start);
    });
    for (const SimulationSummary& s : summaries) {
      for (size_t i = 0; i < utility_sum.size(); ++i) {
        utility_sum[i] += s.utility[i];
        action_sum[i] += s.action[i];
      }
      for (size_t i = 0; i < s.heatmap.counts.size(); ++i) {
        result.heatmap.counts[i] += s.heatmap.counts[i];
        result.final_window_heatmap.counts[i] += s.final_window_heatmap.counts[i];
      }
      result.sim_mean_utility.push_back(s.mean_utility);
      for (int p = 0; p < n; ++p) {
        result.mean_external_regret[p] += s.external_regret[p];
        result.mean_swap_regret[p] += s.swap_regret[p];
        if (!s.noswap[p]) continue;
        result.max_stationary_residual = std::max(
            result.max_stationary_residual, s.noswap[p]->max_stationary_residual);
        const double slack =
            s.noswap[p]->inner_regret_bound - s.expected_swap_regret[p];
        auto& current = result.min_swap_bound_slack[p];
        current = current ? std::min(*current, slack) : slack;
      }
    }
  }

  result.mean_utility.assign(turns, std::vector<double>(n));
  result.mean_action.assign(turns, std::vector<double>(n));
  result.overall_mean_utility.assign(n, 0.0);
  for (int t = 0; t < turns; ++t) {
    for (int p = 0; p < n; ++p) {
      const size_t i = static_cast<size_t>(t) * n + p;
      result.mean_utility[t][p] = utility_sum[i] / sims;
      result.mean_action[t][p] = action_sum[i] / sims;
      result.overall_mean_utility[p] += result.mean_utility[t][p];
    }
  }
  for (int p = 0; p < n; ++p) {
    result.overall_mean_utility[p] /= turns;
    result.mean_external_regret[p] /= sims;
    result.mean_swap_regret[p] /= sims;
  }
  if (n == 2) {
    result.final_window_gaps = ComputeEquilibriumGaps(
        game, EmpiricalDistribution(result.final_window_heatmap));
  }
  return result;
}

}  // namespace regret_arena
