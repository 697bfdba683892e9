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

#ifndef REGRET_ARENA_LEARNERS_H_
#define REGRET_ARENA_LEARNERS_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regret_arena/game.h"

namespace regret_arena {

inline constexpr double kDefaultStationaryTolerance = 1e-10;
// Weights are rescaled by their maximum once it drops below this.
inline constexpr double kWeightRescaleThreshold = 1e-150;

// 1 - (1 - rate)^num_actions: the no-swap rate whose per-copy updates match
// the pace of a multiplicative-weights learner with `rate`.
double AdjustSwapRate(double rate, int num_actions);

std::vector<double> UniformDistribution(int num_actions);

// Stationary distribution p = pQ of a row-stochastic matrix by power
// iteration (starting from `initial`, or uniform when empty), falling back to
// a direct linear solve if the iteration cap is hit. The returned p satisfies
// ||pQ - p||_inf <= tolerance.
//
// Throws ContractViolation for a non-stochastic or non-square Q, and
// NumericError (carrying the residual) if neither route reaches tolerance.
std::vector<double> StationaryDistribution(
    const Matrix& transition, double tolerance = kDefaultStationaryTolerance,
    std::span<const double> initial = {});

// ||pQ - p||_inf.
double StationaryResidual(const Matrix& transition, std::span<const double> p);

// Common interface: each turn the engine asks for a distribution, samples an
// action from it, and feeds back the full normalized loss vector.
class Learner {
 public:
  virtual ~Learner() = default;

  virtual int num_actions() const = 0;
  // Distribution to sample this turn's action from. Stays valid until the
  // next call to Distribution() or Update().
  virtual std::span<const double> Distribution() = 0;
  // `loss` has num_actions() entries in [0, 1].
  virtual void Update(std::span<const double> loss) = 0;
  virtual std::string Describe() const = 0;
  virtual std::unique_ptr<Learner> Clone() const = 0;
};

class UniformLearner final : public Learner {
 public:
  explicit UniformLearner(int num_actions);

  int num_actions() const override { return static_cast<int>(probs_.size()); }
  std::span<const double> Distribution() override { return probs_; }
  void Update(std::span<const double> loss) override;
  std::string Describe() const override { return "uniform"; }
  std::unique_ptr<Learner> Clone() const override {
    return std::make_unique<UniformLearner>(*this);
  }

 private:
  std::vector<double> probs_;
};

// Multiplicative weights: w_i <- w_i * (1 - rate)^loss_i, play w / sum(w).
class MultiplicativeWeights final : public Learner {
 public:
  // Throws ConfigError unless num_actions >= 2 and rate in (0, 1).
  MultiplicativeWeights(int num_actions, double rate);

  int num_actions() const override { return static_cast<int>(weights_.size()); }
  double rate() const { return rate_; }
  const std::vector<double>& weights() const { return weights_; }
  // Replaces the weights (all must be positive and finite).
  void set_weights(std::vector<double> weights);

  std::span<const double> Distribution() override;
  // Const version for callers that do not need the cached buffer.
  std::vector<double> ComputeDistribution() const;
  // Throws ContractViolation for a wrong length or entries outside [0, 1].
  void Update(std::span<const double> loss) override;

  std::string Describe() const override;
  std::unique_ptr<Learner> Clone() const override {
    return std::make_unique<MultiplicativeWeights>(*this);
  }

 private:
  double rate_;
  std::vector<double> weights_;
  std::vector<double> probs_;
};

// Swap-regret minimizer built from one multiplicative-weights copy per action.
// Copy i's distribution is row i of a row-stochastic matrix Q; the learner
// plays the stationary distribution p of Q and hands copy i the loss scaled by
// p_i.
class NoSwapLearner final : public Learner {
 public:
  // Throws ConfigError unless num_actions >= 2 and rate in (0, 1).
  NoSwapLearner(int num_actions, double rate,
                double tolerance = kDefaultStationaryTolerance);

  int num_actions() const override { return static_cast<int>(inner_.size()); }
  double rate() const { return rate_; }
  const std::vector<MultiplicativeWeights>& inner() const { return inner_; }
  MultiplicativeWeights& mutable_inner(int i) { return inner_[i]; }

  // Rows of Q from the copies' current distributions.
  Matrix TransitionMatrix() const;
  // Solves for p, caches it for the next Update, and returns it.
  std::span<const double> Distribution() override;
  // Distribution cached by the last Distribution() call (uniform initially).
  const std::vector<double>& cached_distribution() const { return probs_; }
  // Throws ProtocolError if Distribution() has not been called since the
  // previous Update (the initial uniform p counts as fresh).
  void Update(std::span<const double> loss) override;

  // Largest ||pQ - p||_inf over every distribution emitted so far.
  double max_stationary_residual() const { return max_residual_; }
  // External regret of each copy, in loss units, against the scaled losses it
  // received: sum_t <q_i^t, p_i^t l^t> - min_j sum_t p_i^t l^t_j.
  std::vector<double> InnerExternalRegrets() const;

  std::string Describe() const override;
  std::unique_ptr<Learner> Clone() const override {
    return std::make_unique<NoSwapLearner>(*this);
  }

 private:
  double rate_;
  double tolerance_;
  std::vector<MultiplicativeWeights> inner_;
  std::vector<double> probs_;
  bool fresh_ = true;
  double max_residual_ = 0.0;
  Matrix transition_;
  std::vector<double> scaled_loss_;
  // Per copy: cumulative scaled loss per action, and cumulative expected loss.
  std::vector<std::vector<double>> inner_cumulative_loss_;
  std::vector<double> inner_expected_loss_;
};

enum class LearnerKind { kUniform, kMultiplicativeWeights, kNoSwap };

// Textual forms: "uniform", "mw:<rate>", "noswap:<rate>", "noswap:auto".
struct LearnerSpec {
  LearnerKind kind = LearnerKind::kUniform;
  std::optional<double> rate;
  // noswap:auto; resolved against the partner's MW rate.
  bool auto_rate = false;

  std::string ToString() const;
  bool operator==(const LearnerSpec&) const = default;
};

// Throws ConfigError on malformed text.
LearnerSpec ParseLearnerSpec(std::string_view text);

// Replaces every noswap:auto by AdjustSwapRate(partner rate, K) where the
// partner is the first other player with an MW spec and K is the auto
// player's action count. Throws ConfigError if there is no such partner.
std::vector<LearnerSpec> ResolveLearnerSpecs(std::vector<LearnerSpec> specs,
                                             const Game& game);

// Throws ConfigError for unresolved auto rates.
std::unique_ptr<Learner> MakeLearner(const LearnerSpec& spec, int num_actions);

}  // namespace regret_arena

#endif  // REGRET_ARENA_LEARNERS_H_
