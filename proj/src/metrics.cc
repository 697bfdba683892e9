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

#include "regret_arena/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "regret_arena/error.h"

namespace regret_arena {

RegretTracker::RegretTracker(int num_actions)
    : num_actions_(num_actions),
      cumulative_cf_(num_actions, 0.0),
      by_source_(static_cast<size_t>(num_actions) * num_actions, 0.0),
      expected_by_source_(static_cast<size_t>(num_actions) * num_actions,
                          0.0) {}

void RegretTracker::Add(std::span<const double> counterfactuals, int action,
                        std::span<const double> distribution) {
  const int k = num_actions_;
  double* source_row = by_source_.data() + static_cast<size_t>(action) * k;
  for (int b = 0; b < k; ++b) {
    cumulative_cf_[b] += counterfactuals[b];
    source_row[b] += counterfactuals[b];
  }
  cumulative_realized_ += counterfactuals[action];
  if (!distribution.empty()) {
    double expected = 0.0;
    for (int a = 0; a < k; ++a) {
      const double pa = distribution[a];
      expected += pa * counterfactuals[a];
      if (pa == 0.0) continue;
      double* row = expected_by_source_.data() + static_cast<size_t>(a) * k;
      for (int b = 0; b < k; ++b) row[b] += pa * counterfactuals[b];
    }
    cumulative_expected_ += expected;
  }
  ++turns_;
}

double RegretTracker::ExternalRegret() const {
  if (turns_ == 0) return 0.0;
  const double best =
      *std::max_element(cumulative_cf_.begin(), cumulative_cf_.end());
  return (best - cumulative_realized_) / turns_;
}

double RegretTracker::ExpectedExternalRegret() const {
  if (turns_ == 0) return 0.0;
  const double best =
      *std::max_element(cumulative_cf_.begin(), cumulative_cf_.end());
  return (best - cumulative_expected_) / turns_;
}

namespace {

double SwapFromSourceSums(const std::vector<double>& sums, int k, int turns) {
  if (turns == 0) return 0.0;
  double total = 0.0;
  for (int a = 0; a < k; ++a) {
    const double* row = sums.data() + static_cast<size_t>(a) * k;
    // b = a contributes zero, so the per-source maximum is already floored.
    double best_gain = 0.0;
    for (int b = 0; b < k; ++b) best_gain = std::max(best_gain, row[b] - row[a]);
    total += best_gain;
  }
  return total / turns;
}

RegretTracker TrackerFor(const History& history, int player,
                         bool with_distributions) {
  if (history.rounds.empty()) {
    throw ContractViolation("regret of an empty history");
  }
  const auto& first = history.rounds.front();
  if (player < 0 || player >= static_cast<int>(first.profile.size())) {
    throw ContractViolation("player index out of range");
  }
  RegretTracker tracker(
      static_cast<int>(first.counterfactuals[player].size()));
  for (const RoundRecord& round : history.rounds) {
    std::span<const double> dist;
    if (with_distributions) {
      if (round.distributions.empty()) {
        throw ContractViolation("history does not record distributions");
      }
      dist = round.distributions[player];
    }
    tracker.Add(round.counterfactuals[player], round.profile[player], dist);
  }
  return tracker;
}

void CheckShape(const Game& game, const JointDistribution& dist) {
  if (game.num_players() != 2 || dist.rows() != game.num_actions(0) ||
      dist.cols() != game.num_actions(1)) {
    std::ostringstream msg;
    msg << "distribution of shape " << dist.rows() << "x" << dist.cols()
        << " does not match game " << game.name();
    throw ContractViolation(msg.str());
  }
}

}  // namespace

double RegretTracker::SwapRegret() const {
  return SwapFromSourceSums(by_source_, num_actions_, turns_);
}

double RegretTracker::ExpectedSwapRegret() const {
  return SwapFromSourceSums(expected_by_source_, num_actions_, turns_);
}

double ExternalRegret(const History& history, int player) {
  return TrackerFor(history, player, false).ExternalRegret();
}

double SwapRegret(const History& history, int player) {
  return TrackerFor(history, player, false).SwapRegret();
}

double ExpectedSwapRegret(const History& history, int player) {
  return TrackerFor(history, player, true).ExpectedSwapRegret();
}

// -- Joint distributions ------------------------------------------------------

JointDistribution::JointDistribution(Matrix probabilities)
    : probs_(std::move(probabilities)) {
  double total = 0.0;
  for (int r = 0; r < probs_.rows(); ++r) {
    for (double v : probs_.row(r)) {
      if (!(v >= 0.0)) throw ContractViolation("negative probability mass");
      total += v;
    }
  }
  if (std::abs(total - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "joint distribution sums to " << total;
    throw ContractViolation(msg.str());
  }
}

JointDistribution EmpiricalDistribution(const Heatmap& counts) {
  const std::int64_t total = counts.total();
  if (counts.counts.empty() || total <= 0) {
    throw ContractViolation("empirical distribution of an empty heatmap");
  }
  Matrix probs(counts.rows, counts.cols);
  for (int r = 0; r < counts.rows; ++r) {
    for (int c = 0; c < counts.cols; ++c) {
      probs(r, c) = static_cast<double>(counts.at(r, c)) /
                    static_cast<double>(total);
    }
  }
  return JointDistribution(std::move(probs));
}

JointDistribution EmpiricalDistribution(const Game& game,
                                        const History& history) {
  if (game.num_players() < 2) throw ContractViolation("need two players");
  Heatmap counts(game.num_actions(0), game.num_actions(1));
  for (const RoundRecord& round : history.rounds) {
    ++counts.at(round.profile[0], round.profile[1]);
  }
  return EmpiricalDistribution(counts);
}

double RawCceGap(const Game& game, const JointDistribution& dist) {
  CheckShape(game, dist);
  const Matrix& row_u = game.payoff_table(0);
  const Matrix& col_u = game.payoff_table(1);
  const int k1 = dist.rows();
  const int k2 = dist.cols();
  double expected_row = 0.0, expected_col = 0.0;
  std::vector<double> row_marginal(k1, 0.0), col_marginal(k2, 0.0);
  for (int r = 0; r < k1; ++r) {
    for (int c = 0; c < k2; ++c) {
      const double m = dist(r, c);
      expected_row += m * row_u(r, c);
      expected_col += m * col_u(r, c);
      row_marginal[r] += m;
      col_marginal[c] += m;
    }
  }
  double gap = -std::numeric_limits<double>::infinity();
  for (int deviation = 0; deviation < k1; ++deviation) {
    double value = 0.0;
    for (int c = 0; c < k2; ++c) value += col_marginal[c] * row_u(deviation, c);
    gap = std::max(gap, value - expected_row);
  }
  for (int deviation = 0; deviation < k2; ++deviation) {
    double value = 0.0;
    for (int r = 0; r < k1; ++r) value += row_marginal[r] * col_u(r, deviation);
    gap = std::max(gap, value - expected_col);
  }
  return gap;
}

double RawCeGap(const Game& game, const JointDistribution& dist) {
  CheckShape(game, dist);
  const Matrix& row_u = game.payoff_table(0);
  const Matrix& col_u = game.payoff_table(1);
  const int k1 = dist.rows();
  const int k2 = dist.cols();
  // gain(a -> b) for the row player is sum_c dist(a, c) (u(b, c) - u(a, c));
  // transpose the roles for the column player.
  const auto player_gap = [&](int own, int other, auto mass, auto utility) {
    double total = 0.0;
    bool any_source = false;
    for (int a = 0; a < own; ++a) {
      double marginal = 0.0;
      for (int o = 0; o < other; ++o) marginal += mass(a, o);
      if (marginal <= 0.0) continue;
      any_source = true;
      double best = -std::numeric_limits<double>::infinity();
      for (int b = 0; b < own; ++b) {
        if (b == a) continue;
        double gain = 0.0;
        for (int o = 0; o < other; ++o) {
          gain += mass(a, o) * (utility(b, o) - utility(a, o));
        }
        best = std::max(best, gain);
      }
      total += best;
    }
    return any_source ? total : -std::numeric_limits<double>::infinity();
  };
  const double row_gap = player_gap(
      k1, k2, [&](int a, int o) { return dist(a, o); },
      [&](int a, int o) { return row_u(a, o); });
  const double col_gap = player_gap(
      k2, k1, [&](int a, int o) { return dist(o, a); },
      [&](int a, int o) { return col_u(o, a); });
  return std::max(row_gap, col_gap);
}

double CceGap(const Game& game, const JointDistribution& dist) {
  return std::max(0.0, RawCceGap(game, dist));
}

double CeGap(const Game& game, const JointDistribution& dist) {
  CheckShape(game, dist);
  const Matrix& row_u = game.payoff_table(0);
  const Matrix& col_u = game.payoff_table(1);
  const int k1 = dist.rows();
  const int k2 = dist.cols();
  double row_gap = 0.0;
  for (int a = 0; a < k1; ++a) {
    double best = 0.0;
    for (int b = 0; b < k1; ++b) {
      double gain = 0.0;
      for (int c = 0; c < k2; ++c) gain += dist(a, c) * (row_u(b, c) - row_u(a, c));
      best = std::max(best, gain);
    }
    row_gap += best;
  }
  double col_gap = 0.0;
  for (int a = 0; a < k2; ++a) {
    double best = 0.0;
    for (int b = 0; b < k2; ++b) {
      double gain = 0.0;
      for (int r = 0; r < k1; ++r) gain += dist(r, a) * (col_u(r, b) - col_u(r, a));
      best = std::max(best, gain);
    }
    col_gap += best;
  }
  return std::max(row_gap, col_gap);
}

EquilibriumGaps ComputeEquilibriumGaps(const Game& game,
                                       const JointDistribution& dist) {
  return {CceGap(game, dist), CeGap(game, dist)};
}

}  // namespace regret_arena
