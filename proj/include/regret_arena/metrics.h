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

#ifndef REGRET_ARENA_METRICS_H_
#define REGRET_ARENA_METRICS_H_

#include <span>
#include <vector>

#include "regret_arena/game.h"
#include "regret_arena/history.h"

namespace regret_arena {

// Streaming regret accumulator for one player. All regrets are per-turn
// averages in utility units.
//
//   external = (max_a sum_t cf_t[a] - sum_t u_t) / T
//   swap     = sum_a max_b sum_{t: a_t = a} (cf_t[b] - cf_t[a]) / T
//
// The "expected" variants replace the sampled action with the distribution it
// was drawn from, which removes sampling noise from the comparison.
class RegretTracker {
 public:
  explicit RegretTracker(int num_actions);

  // `distribution` may be empty, in which case expected regrets are not
  // tracked for this turn.
  void Add(std::span<const double> counterfactuals, int action,
           std::span<const double> distribution = {});

  int turns() const { return turns_; }
  double ExternalRegret() const;
  double SwapRegret() const;
  double ExpectedExternalRegret() const;
  double ExpectedSwapRegret() const;

 private:
  int num_actions_;
  int turns_ = 0;
  std::vector<double> cumulative_cf_;
  double cumulative_realized_ = 0.0;
  double cumulative_expected_ = 0.0;
  // by_source_[a * K + b] = sum over turns with a_t = a of cf_t[b].
  std::vector<double> by_source_;
  // expected_by_source_[a * K + b] = sum_t p_t(a) cf_t[b].
  std::vector<double> expected_by_source_;
};

// Per-turn average regrets of `player` over a non-empty history.
double ExternalRegret(const History& history, int player);
double SwapRegret(const History& history, int player);
double ExpectedSwapRegret(const History& history, int player);

// Probability mass over the joint actions of a two-player game.
class JointDistribution {
 public:
  // Throws ContractViolation unless non-negative and summing to 1 within 1e-9.
  explicit JointDistribution(Matrix probabilities);

  int rows() const { return probs_.rows(); }
  int cols() const { return probs_.cols(); }
  double operator()(int r, int c) const { return probs_(r, c); }
  const Matrix& matrix() const { return probs_; }

 private:
  Matrix probs_;
};

// Normalized counts. Throws ContractViolation on an empty or all-zero heatmap.
JointDistribution EmpiricalDistribution(const Heatmap& counts);
// Joint play frequency of players 0 and 1 over a history.
JointDistribution EmpiricalDistribution(const Game& game,
                                        const History& history);

// Largest gain any player gets from committing to a fixed action:
// max_i max_a' E[u_i(a', a_-i)] - E[u_i(a)]. Zero iff `dist` is a CCE.
double RawCceGap(const Game& game, const JointDistribution& dist);
// Largest gain any player gets from the best action-rewriting rule:
//   max_i sum_a max_{b != a} sum_{a_-i} dist(a, a_-i) (u_i(b, a_-i) - u_i(a, a_-i))
// over sources a with positive marginal. A constant rewrite is one such rule,
// so this dominates the CCE gap.
double RawCeGap(const Game& game, const JointDistribution& dist);
// Floored versions: the CCE gap is max(0, raw); in the CE gap every source's
// best gain is floored at zero before summing. Each is zero iff `dist` is a
// CCE (respectively CE).
double CceGap(const Game& game, const JointDistribution& dist);
double CeGap(const Game& game, const JointDistribution& dist);

struct EquilibriumGaps {
  double cce = 0.0;
  double ce = 0.0;
  bool operator==(const EquilibriumGaps&) const = default;
};

EquilibriumGaps ComputeEquilibriumGaps(const Game& game,
                                       const JointDistribution& dist);

}  // namespace regret_arena

#endif  // REGRET_ARENA_METRICS_H_
