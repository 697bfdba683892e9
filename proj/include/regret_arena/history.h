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

#ifndef REGRET_ARENA_HISTORY_H_
#define REGRET_ARENA_HISTORY_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "regret_arena/game.h"

namespace regret_arena {

struct RoundRecord {
  int turn = 0;
  ActionProfile profile;
  // Realized utility per player (expected over auction tie-breaking).
  std::vector<double> utilities;
  // counterfactuals[p][a]: player p's utility for action a, others fixed.
  std::vector<std::vector<double>> counterfactuals;
  // The mixed strategy each player sampled from.
  std::vector<std::vector<double>> distributions;

  bool operator==(const RoundRecord&) const = default;
};

// End-of-run bookkeeping of a no-swap learner.
struct NoSwapDiagnostics {
  double max_stationary_residual = 0.0;
  // Sum of the copies' external regrets, converted to utility units and
  // divided by the number of turns. Upper-bounds the learner's expected swap
  // regret.
  double inner_regret_bound = 0.0;

  bool operator==(const NoSwapDiagnostics&) const = default;
};

struct History {
  std::vector<RoundRecord> rounds;
  // One entry per player; set only for no-swap learners.
  std::vector<std::optional<NoSwapDiagnostics>> noswap;

  int turns() const { return static_cast<int>(rounds.size()); }
  bool operator==(const History&) const = default;
};

// Joint action counts of players 0 and 1.
struct Heatmap {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> counts;

  Heatmap() = default;
  Heatmap(int r, int c) : rows(r), cols(c), counts(static_cast<size_t>(r) * c) {}
  std::int64_t& at(int r, int c) { return counts[static_cast<size_t>(r) * cols + c]; }
  std::int64_t at(int r, int c) const {
    return counts[static_cast<size_t>(r) * cols + c];
  }
  std::int64_t total() const {
    std::int64_t sum = 0;
    for (auto v : counts) sum += v;
    return sum;
  }
  bool operator==(const Heatmap&) const = default;
};

}  // namespace regret_arena

#endif  // REGRET_ARENA_HISTORY_H_
