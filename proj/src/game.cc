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

#include "regret_arena/game.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "regret_arena/error.h"

namespace regret_arena {

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw ConfigError("matrix must have at least one row and one column");
  }
  const int num_rows = static_cast<int>(rows.size());
  const int num_cols = static_cast<int>(rows.front().size());
  Matrix m(num_rows, num_cols);
  for (int r = 0; r < num_rows; ++r) {
    if (static_cast<int>(rows[r].size()) != num_cols) {
      std::ostringstream msg;
      msg << "ragged matrix: row " << r << " has " << rows[r].size()
          << " entries, expected " << num_cols;
      throw ConfigError(msg.str());
    }
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

std::vector<std::vector<double>> Matrix::ToRows() const {
  std::vector<std::vector<double>> out(rows_);
  for (int r = 0; r < rows_; ++r) out[r].assign(row(r).begin(), row(r).end());
  return out;
}

// -- BidGrid ------------------------------------------------------------------

BidGrid BidGrid::Default() { return Uniform(0.05, /*include_zero=*/true); }

BidGrid BidGrid::Uniform(double step, bool include_zero) {
  if (!(step > 0.0) || step > 1.0) {
    throw ConfigError("bid grid step must lie in (0, 1]");
  }
  const int levels = static_cast<int>(std::lround(1.0 / step));
  if (std::abs(levels * step - 1.0) > 1e-9) {
    throw ConfigError("bid grid step must divide 1 evenly");
  }
  std::vector<double> values;
  // Bids are k / levels so that 1.00 is represented exactly.
  for (int k = include_zero ? 0 : 1; k <= levels; ++k) {
    values.push_back(static_cast<double>(k) / levels);
  }
  return BidGrid(std::move(values));
}

BidGrid::BidGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw ConfigError("bid grid needs at least 2 bids");
  for (size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0 && values_[i] <= 1.0)) {
      throw ConfigError("bids must lie in [0, 1]");
    }
    if (i > 0 && !(values_[i] > values_[i - 1])) {
      throw ConfigError("bid grid must be strictly increasing");
    }
  }
}

const char* AuctionKindName(AuctionKind kind) {
  switch (kind) {
    case AuctionKind::kFirstPrice:
      return "first_price";
    case AuctionKind::kSecondPrice:
      return "second_price";
    case AuctionKind::kAllPay:
      return "all_pay";
  }
  return "unknown";
}

// -- Game ---------------------------------------------------------------------

Game::Game(std::string name, std::vector<int> action_counts,
           UtilityBounds bounds, std::variant<BimatrixRule, AuctionRule> rule)
    : name_(std::move(name)),
      action_counts_(std::move(action_counts)),
      bounds_(bounds),
      rule_(std::move(rule)) {
  if (!(bounds_.max > bounds_.min)) {
    throw DegenerateGameError("utility bounds are empty (u_max <= u_min)");
  }
}

Game Game::Bimatrix(Matrix row_payoffs, Matrix col_payoffs, std::string name) {
  if (row_payoffs.rows() != col_payoffs.rows() ||
      row_payoffs.cols() != col_payoffs.cols()) {
    std::ostringstream msg;
    msg << "shape mismatch: A is " << row_payoffs.rows() << "x"
        << row_payoffs.cols() << ", B is " << col_payoffs.rows() << "x"
        << col_payoffs.cols();
    throw ConfigError(msg.str());
  }
  if (row_payoffs.rows() < 2 || row_payoffs.cols() < 2) {
    throw ConfigError("each player needs at least 2 actions");
  }
  for (const Matrix* m : {&row_payoffs, &col_payoffs}) {
    for (int r = 0; r < m->rows(); ++r) {
      for (double v : m->row(r)) {
        if (!(v >= 0.0 && v <= 1.0)) {
          std::ostringstream msg;
          msg << "payoff " << v << " outside [0, 1]";
          throw ConfigError(msg.str());
        }
      }
    }
  }
  Game game(std::move(name), {row_payoffs.rows(), row_payoffs.cols()},
            UtilityBounds{0.0, 1.0}, BimatrixRule{});
  game.tables_ = {std::move(row_payoffs), std::move(col_payoffs)};
  return game;
}

Game Game::Auction(AuctionKind kind, int num_players,
                   std::vector<double> values, BidGrid grid) {
  if (num_players < 2) throw ConfigError("an auction needs at least 2 bidders");
  if (static_cast<int>(values.size()) != num_players) {
    throw ConfigError("one valuation per bidder is required");
  }
  for (double v : values) {
    if (!(v > 0.0 && v <= 1.0)) throw ConfigError("values must lie in (0, 1]");
  }
  const double max_value = *std::max_element(values.begin(), values.end());
  const double min_value = *std::min_element(values.begin(), values.end());
  const double max_bid = grid.values().back();
  UtilityBounds bounds;
  bounds.max = max_value;
  if (kind == AuctionKind::kAllPay) {
    bounds.min = -max_bid;
  } else {
    // Winning at a price above one's value is the only way to lose money.
    bounds.min = std::min(0.0, min_value - max_bid);
  }
  const int k = grid.size();
  std::string name = AuctionKindName(kind);
  Game game(std::move(name), std::vector<int>(num_players, k), bounds,
            AuctionRule{kind, std::move(values), std::move(grid)});
  if (num_players == 2) {
    const auto& rule = std::get<AuctionRule>(game.rule_);
    Matrix row(k, k), col(k, k);
    ActionProfile profile(2);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        profile = {i, j};
        row(i, j) = game.AuctionUtility(rule, profile, 0);
        col(i, j) = game.AuctionUtility(rule, profile, 1);
      }
    }
    game.tables_ = {std::move(row), std::move(col)};
  }
  return game;
}

const Matrix& Game::payoff_table(int player) const {
  if (tables_.empty()) {
    throw ConfigError("payoff tables exist only for two-player games");
  }
  return tables_.at(player);
}

AuctionKind Game::auction_kind() const {
  if (!is_auction()) throw ConfigError(name_ + " is not an auction");
  return std::get<AuctionRule>(rule_).kind;
}

const BidGrid& Game::bid_grid() const {
  if (!is_auction()) throw ConfigError(name_ + " is not an auction");
  return std::get<AuctionRule>(rule_).grid;
}

const std::vector<double>& Game::values() const {
  if (!is_auction()) throw ConfigError(name_ + " is not an auction");
  return std::get<AuctionRule>(rule_).values;
}

void Game::ValidateProfile(const ActionProfile& profile) const {
  if (static_cast<int>(profile.size()) != num_players()) {
    std::ostringstream msg;
    msg << "profile has " << profile.size() << " actions for "
        << num_players() << " players";
    throw InvalidProfileError(msg.str());
  }
  for (int p = 0; p < num_players(); ++p) {
    if (profile[p] < 0 || profile[p] >= action_counts_[p]) {
      std::ostringstream msg;
      msg << "action " << profile[p] << " of player " << p
          << " outside [0, " << action_counts_[p] << ")";
      throw InvalidProfileError(msg.str());
    }
  }
}

double Game::AuctionUtility(const AuctionRule& rule,
                            const ActionProfile& profile, int player) const {
  const int n = static_cast<int>(profile.size());
  double highest = -1.0;
  int num_top = 0;
  for (int p = 0; p < n; ++p) {
    const double bid = rule.grid[profile[p]];
    if (bid > highest) {
      highest = bid;
      num_top = 1;
    } else if (bid == highest) {
      ++num_top;
    }
  }
  const double my_bid = rule.grid[profile[player]];
  const bool in_top = my_bid == highest;
  const double value = rule.values[player];
  switch (rule.kind) {
    case AuctionKind::kFirstPrice:
      return in_top ? (value - my_bid) / num_top : 0.0;
    case AuctionKind::kSecondPrice: {
      if (!in_top) return 0.0;
      // With a tie at the top the second-highest bid equals the top bid.
      double price = highest;
      if (num_top == 1) {
        price = -1.0;
        for (int p = 0; p < n; ++p) {
          if (p != player) price = std::max(price, rule.grid[profile[p]]);
        }
      }
      return (value - price) / num_top;
    }
    case AuctionKind::kAllPay:
      return (in_top ? value / num_top : 0.0) - my_bid;
  }
  return 0.0;
}

std::vector<double> Game::Utility(const ActionProfile& profile) const {
  ValidateProfile(profile);
  std::vector<double> out(num_players());
  if (!tables_.empty()) {
    out[0] = tables_[0](profile[0], profile[1]);
    out[1] = tables_[1](profile[0], profile[1]);
    return out;
  }
  const auto& rule = std::get<AuctionRule>(rule_);
  for (int p = 0; p < num_players(); ++p) {
    out[p] = AuctionUtility(rule, profile, p);
  }
  return out;
}

std::vector<double> Game::CounterfactualUtilities(
    int player, const ActionProfile& profile) const {
  ValidateProfile(profile);
  if (player < 0 || player >= num_players()) {
    throw ConfigError("player index out of range");
  }
  std::vector<double> out(num_actions(player));
  CounterfactualUtilitiesInto(player, profile, out);
  return out;
}

void Game::CounterfactualUtilitiesInto(int player,
                                       const ActionProfile& profile,
                                       std::span<double> out) const {
  if (!tables_.empty()) {
    const Matrix& table = tables_[player];
    if (player == 0) {
      for (int a = 0; a < table.rows(); ++a) out[a] = table(a, profile[1]);
    } else {
      const auto row = table.row(profile[0]);
      std::copy(row.begin(), row.end(), out.begin());
    }
    return;
  }
  const auto& rule = std::get<AuctionRule>(rule_);
  ActionProfile deviated = profile;
  for (int a = 0; a < num_actions(player); ++a) {
    deviated[player] = a;
    out[a] = AuctionUtility(rule, deviated, player);
  }
}

std::vector<double> Game::NormalizedLoss(
    std::span<const double> utilities) const {
  std::vector<double> out(utilities.size());
  NormalizedLossInto(utilities, out);
  return out;
}

void Game::NormalizedLossInto(std::span<const double> utilities,
                              std::span<double> out) const {
  const double range = bounds_.max - bounds_.min;
  for (size_t j = 0; j < utilities.size(); ++j) {
    const double u = utilities[j];
    if (!(u >= bounds_.min && u <= bounds_.max)) {
      std::ostringstream msg;
      msg << "utility " << u << " outside bounds [" << bounds_.min << ", "
          << bounds_.max << "]";
      throw ContractViolation(msg.str());
    }
    out[j] = (bounds_.max - u) / range;
  }
}

double Game::ActionValue(int player, int action) const {
  if (is_auction()) return std::get<AuctionRule>(rule_).grid[action];
  (void)player;
  return static_cast<double>(action);
}

std::string Game::ActionValueLabel() const {
  if (is_auction()) return "mean bid";
  if (action_counts_[0] == 2 && action_counts_[1] == 2) {
    return "P(second action)";
  }
  return "mean action index";
}

Game PrisonersDilemma() {
  return Game::Bimatrix(Matrix::FromRows({{0.9, 0.0}, {1.0, 0.1}}),
                        Matrix::FromRows({{0.9, 1.0}, {0.0, 0.1}}), "pd");
}

Game BattleOfTheSexes() {
  return Game::Bimatrix(Matrix::FromRows({{1.0, 0.0}, {0.0, 0.1}}),
                        Matrix::FromRows({{0.1, 0.0}, {0.0, 1.0}}), "bos");
}

}  // namespace regret_arena
