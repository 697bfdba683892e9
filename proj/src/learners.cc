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

#include "regret_arena/learners.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "regret_arena/error.h"

namespace regret_arena {
namespace {

void CheckActionsAndRate(int num_actions, double rate) {
  if (num_actions < 2) {
    throw ConfigError("a learner needs at least 2 actions");
  }
  if (!(rate > 0.0 && rate < 1.0)) {
    std::ostringstream msg;
    msg << "learning rate " << rate << " outside (0, 1)";
    throw ConfigError(msg.str());
  }
}

std::string FormatRate(double rate) {
  std::ostringstream out;
  out.precision(17);
  out << rate;
  return out.str();
}

// Solves p (Q - I) = 0, sum(p) = 1 by Gaussian elimination with partial
// pivoting on the transposed system.
std::vector<double> SolveStationaryDirect(const Matrix& q) {
  const int n = q.rows();
  Matrix a(n, n + 1);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a(r, c) = q(c, r) - (r == c ? 1.0 : 0.0);
  }
  for (int c = 0; c < n; ++c) a(n - 1, c) = 1.0;
  a(n - 1, n) = 1.0;

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (a(pivot, col) == 0.0) {
      throw NumericError("singular stationary system",
                         std::numeric_limits<double>::infinity());
    }
    if (pivot != col) {
      for (int c = 0; c <= n; ++c) std::swap(a(pivot, c), a(col, c));
    }
    for (int r = col + 1; r < n; ++r) {
      const double factor = a(r, col) / a(col, col);
      if (factor == 0.0) continue;
      for (int c = col; c <= n; ++c) a(r, c) -= factor * a(col, c);
    }
  }
  std::vector<double> p(n);
  for (int r = n - 1; r >= 0; --r) {
    double acc = a(r, n);
    for (int c = r + 1; c < n; ++c) acc -= a(r, c) * p[c];
    p[r] = acc / a(r, r);
  }
  double total = 0.0;
  for (double& v : p) {
    v = std::max(v, 0.0);
    total += v;
  }
  for (double& v : p) v /= total;
  return p;
}

}  // namespace

double AdjustSwapRate(double rate, int num_actions) {
  if (!(rate > 0.0 && rate < 1.0)) {
    throw ConfigError("learning rate outside (0, 1)");
  }
  if (num_actions < 1) throw ConfigError("action count must be positive");
  return 1.0 - std::pow(1.0 - rate, num_actions);
}

std::vector<double> UniformDistribution(int num_actions) {
  if (num_actions < 1) throw ConfigError("action count must be positive");
  return std::vector<double>(num_actions, 1.0 / num_actions);
}

double StationaryResidual(const Matrix& transition,
                          std::span<const double> p) {
  const int n = transition.rows();
  double residual = 0.0;
  for (int c = 0; c < n; ++c) {
    double acc = 0.0;
    for (int r = 0; r < n; ++r) acc += p[r] * transition(r, c);
    residual = std::max(residual, std::abs(acc - p[c]));
  }
  return residual;
}

std::vector<double> StationaryDistribution(const Matrix& transition,
                                           double tolerance,
                                           std::span<const double> initial) {
  const int n = transition.rows();
  if (n < 1 || transition.cols() != n) {
    throw ContractViolation("transition matrix must be square and non-empty");
  }
  for (int r = 0; r < n; ++r) {
    double total = 0.0;
    for (double v : transition.row(r)) {
      if (!(v >= 0.0)) throw ContractViolation("negative transition entry");
      total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      std::ostringstream msg;
      msg << "row " << r << " of the transition matrix sums to " << total;
      throw ContractViolation(msg.str());
    }
  }
  if (!(tolerance > 0.0)) throw ContractViolation("tolerance must be positive");

  std::vector<double> p;
  if (static_cast<int>(initial.size()) == n) {
    p.assign(initial.begin(), initial.end());
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    if (total > 0.0) {
      for (double& v : p) v /= total;
    } else {
      p = UniformDistribution(n);
    }
  } else {
    p = UniformDistribution(n);
  }

  const int digits =
      std::max(1, static_cast<int>(std::ceil(std::log10(1.0 / tolerance))));
  const long max_iterations = 100L * n * digits;
  // Stop with some headroom so the renormalized p still meets tolerance.
  const double target = 0.5 * tolerance;
  std::vector<double> next(n);
  for (long it = 0; it < max_iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int r = 0; r < n; ++r) {
      const double pr = p[r];
      if (pr == 0.0) continue;
      const auto row = transition.row(r);
      for (int c = 0; c < n; ++c) next[c] += pr * row[c];
    }
    double residual = 0.0;
    double total = 0.0;
    for (int c = 0; c < n; ++c) {
      residual = std::max(residual, std::abs(next[c] - p[c]));
      total += next[c];
    }
    if (residual <= target) return p;
    for (int c = 0; c < n; ++c) p[c] = next[c] / total;
  }

  p = SolveStationaryDirect(transition);
  const double residual = StationaryResidual(transition, p);
  if (!(residual <= tolerance)) {
    std::ostringstream msg;
    msg << "stationary distribution did not converge (residual " << residual
        << ")";
    throw NumericError(msg.str(), residual);
  }
  return p;
}

// -- UniformLearner -----------------------------------------------------------

UniformLearner::UniformLearner(int num_actions)
    : probs_(UniformDistribution(num_actions)) {}

void UniformLearner::Update(std::span<const double> loss) {
  if (loss.size() != probs_.size()) {
    throw ContractViolation("loss vector has the wrong length");
  }
}

// -- MultiplicativeWeights ----------------------------------------------------

MultiplicativeWeights::MultiplicativeWeights(int num_actions, double rate)
    : rate_(rate) {
  CheckActionsAndRate(num_actions, rate);
  weights_.assign(num_actions, 1.0);
  probs_.resize(num_actions);
}

void MultiplicativeWeights::set_weights(std::vector<double> weights) {
  if (weights.size() != weights_.size()) {
    throw ContractViolation("weight vector has the wrong length");
  }
  for (double w : weights) {
    if (!(w > 0.0 && std::isfinite(w))) {
      throw ContractViolation("weights must be positive and finite");
    }
  }
  weights_ = std::move(weights);
}

std::vector<double> MultiplicativeWeights::ComputeDistribution() const {
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  std::vector<double> out(weights_.size());
  for (size_t i = 0; i < weights_.size(); ++i) out[i] = weights_[i] / total;
  return out;
}

std::span<const double> MultiplicativeWeights::Distribution() {
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  for (size_t i = 0; i < weights_.size(); ++i) probs_[i] = weights_[i] / total;
  return probs_;
}

void MultiplicativeWeights::Update(std::span<const double> loss) {
  if (loss.size() != weights_.size()) {
    throw ContractViolation("loss vector has the wrong length");
  }
  const double keep = 1.0 - rate_;
  double max_weight = 0.0;
  for (size_t i = 0; i < weights_.size(); ++i) {
    const double l = loss[i];
    if (!(l >= 0.0 && l <= 1.0)) {
      std::ostringstream msg;
      msg << "loss " << l << " outside [0, 1]";
      throw ContractViolation(msg.str());
    }
    // Clamping keeps weights strictly positive when one action's weight
    // underflows while another keeps the maximum above the threshold.
    if (l != 0.0) {
      weights_[i] = std::max(weights_[i] * std::pow(keep, l),
                             std::numeric_limits<double>::min());
    }
    max_weight = std::max(max_weight, weights_[i]);
  }
  if (max_weight < kWeightRescaleThreshold) {
    for (double& w : weights_) {
      w = std::max(w / max_weight, std::numeric_limits<double>::min());
    }
  }
}

std::string MultiplicativeWeights::Describe() const {
  return "mw:" + FormatRate(rate_);
}

// -- NoSwapLearner ------------------------------------------------------------

NoSwapLearner::NoSwapLearner(int num_actions, double rate, double tolerance)
    : rate_(rate), tolerance_(tolerance) {
  CheckActionsAndRate(num_actions, rate);
  inner_.reserve(num_actions);
  for (int i = 0; i < num_actions; ++i) inner_.emplace_back(num_actions, rate);
  probs_ = UniformDistribution(num_actions);
  transition_ = Matrix(num_actions, num_actions, 1.0 / num_actions);
  scaled_loss_.resize(num_actions);
  inner_cumulative_loss_.assign(num_actions,
                                std::vector<double>(num_actions, 0.0));
  inner_expected_loss_.assign(num_actions, 0.0);
}

Matrix NoSwapLearner::TransitionMatrix() const {
  const int n = num_actions();
  Matrix q(n, n);
  for (int i = 0; i < n; ++i) {
    const auto row = inner_[i].ComputeDistribution();
    std::copy(row.begin(), row.end(), q.row(i).begin());
  }
  return q;
}

std::span<const double> NoSwapLearner::Distribution() {
  const int n = num_actions();
  for (int i = 0; i < n; ++i) {
    const auto row = inner_[i].Distribution();
    std::copy(row.begin(), row.end(), transition_.row(i).begin());
  }
  // Warm start from the previous round's p.
  probs_ = StationaryDistribution(transition_, tolerance_, probs_);
  max_residual_ =
      std::max(max_residual_, StationaryResidual(transition_, probs_));
  fresh_ = true;
  return probs_;
}

void NoSwapLearner::Update(std::span<const double> loss) {
  const int n = num_actions();
  if (static_cast<int>(loss.size()) != n) {
    throw ContractViolation("loss vector has the wrong length");
  }
  if (!fresh_) {
    throw ProtocolError(
        "NoSwapLearner::Update called without a fresh Distribution()");
  }
  for (int i = 0; i < n; ++i) {
    const double share = probs_[i];
    for (int j = 0; j < n; ++j) {
      scaled_loss_[j] = std::min(1.0, share * loss[j]);
    }
    const auto q_row = transition_.row(i);
    double expected = 0.0;
    for (int j = 0; j < n; ++j) {
      expected += q_row[j] * scaled_loss_[j];
      inner_cumulative_loss_[i][j] += scaled_loss_[j];
    }
    inner_expected_loss_[i] += expected;
    inner_[i].Update(scaled_loss_);
  }
  fresh_ = false;
}

std::vector<double> NoSwapLearner::InnerExternalRegrets() const {
  const int n = num_actions();
  std::vector<double> regrets(n);
  for (int i = 0; i < n; ++i) {
    const double best = *std::min_element(inner_cumulative_loss_[i].begin(),
                                          inner_cumulative_loss_[i].end());
    regrets[i] = inner_expected_loss_[i] - best;
  }
  return regrets;
}

std::string NoSwapLearner::Describe() const {
  return "noswap:" + FormatRate(rate_);
}

// -- LearnerSpec --------------------------------------------------------------

std::string LearnerSpec::ToString() const {
  switch (kind) {
    case LearnerKind::kUniform:
      return "uniform";
    case LearnerKind::kMultiplicativeWeights:
      return "mw:" + FormatRate(rate.value_or(0.0));
    case LearnerKind::kNoSwap:
      if (auto_rate && !rate) return "noswap:auto";
      return "noswap:" + FormatRate(rate.value_or(0.0));
  }
  return "unknown";
}

LearnerSpec ParseLearnerSpec(std::string_view text) {
  const auto fail = [&](const std::string& why) -> ConfigError {
    return ConfigError("malformed learner spec '" + std::string(text) +
                       "': " + why);
  };
  if (text == "uniform") return LearnerSpec{};
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw fail("expected uniform, mw:<rate>, noswap:<rate> or noswap:auto");
  }
  const std::string_view head = text.substr(0, colon);
  const std::string_view tail = text.substr(colon + 1);
  LearnerSpec spec;
  if (head == "mw") {
    spec.kind = LearnerKind::kMultiplicativeWeights;
  } else if (head == "noswap") {
    spec.kind = LearnerKind::kNoSwap;
    if (tail == "auto") {
      spec.auto_rate = true;
      return spec;
    }
  } else {
    throw fail("unknown learner kind '" + std::string(head) + "'");
  }
  double rate = 0.0;
  const auto [end, ec] = std::from_chars(tail.data(), tail.data() + tail.size(),
                                         rate);
  if (ec != std::errc() || end != tail.data() + tail.size()) {
    throw fail("rate is not a number");
  }
  if (!(rate > 0.0 && rate < 1.0)) throw fail("rate must lie in (0, 1)");
  spec.rate = rate;
  return spec;
}

std::vector<LearnerSpec> ResolveLearnerSpecs(std::vector<LearnerSpec> specs,
                                             const Game& game) {
  if (static_cast<int>(specs.size()) != game.num_players()) {
    std::ostringstream msg;
    msg << game.name() << " has " << game.num_players() << " players but "
        << specs.size() << " learners were given";
    throw ConfigError(msg.str());
  }
  const int n = static_cast<int>(specs.size());
  std::vector<LearnerSpec> resolved = specs;
  for (int p = 0; p < n; ++p) {
    if (!specs[p].auto_rate || specs[p].rate) continue;
    std::optional<double> partner_rate;
    for (int q = 0; q < n && !partner_rate; ++q) {
      if (q != p && specs[q].kind == LearnerKind::kMultiplicativeWeights) {
        partner_rate = specs[q].rate;
      }
    }
    if (!partner_rate) {
      throw ConfigError("noswap:auto needs a partner with an mw:<rate> learner");
    }
    resolved[p].rate = AdjustSwapRate(*partner_rate, game.num_actions(p));
  }
  return resolved;
}

std::unique_ptr<Learner> MakeLearner(const LearnerSpec& spec, int num_actions) {
  switch (spec.kind) {
    case LearnerKind::kUniform:
      return std::make_unique<UniformLearner>(num_actions);
    case LearnerKind::kMultiplicativeWeights:
      if (!spec.rate) throw ConfigError("mw learner without a rate");
      return std::make_unique<MultiplicativeWeights>(num_actions, *spec.rate);
    case LearnerKind::kNoSwap:
      if (!spec.rate) throw ConfigError("unresolved noswap:auto rate");
      return std::make_unique<NoSwapLearner>(num_actions, *spec.rate);
  }
  throw ConfigError("unknown learner kind");
}

}  // namespace regret_arena
