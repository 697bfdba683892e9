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

#ifndef REGRET_ARENA_GAME_H_
#define REGRET_ARENA_GAME_H_

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace regret_arena {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

  // Builds from nested rows; every row must have the same length.
  static Matrix FromRows(const std::vector<std::vector<double>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int r, int c) const { return data_[Index(r, c)]; }
  double& operator()(int r, int c) { return data_[Index(r, c)]; }
  std::span<const double> row(int r) const {
    return {data_.data() + static_cast<size_t>(r) * cols_,
            static_cast<size_t>(cols_)};
  }
  std::span<double> row(int r) {
    return {data_.data() + static_cast<size_t>(r) * cols_,
            static_cast<size_t>(cols_)};
  }
  std::vector<std::vector<double>> ToRows() const;

  bool operator==(const Matrix&) const = default;

 private:
  size_t Index(int r, int c) const {
    return static_cast<size_t>(r) * cols_ + c;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// One action index per player.
using ActionProfile = std::vector<int>;

struct UtilityBounds {
  double min = 0.0;
  double max = 1.0;
};

// Ordered bid levels available to every bidder.
class BidGrid {
 public:
  // {0.00, 0.05, ..., 1.00}: 21 levels in steps of 0.05.
  static BidGrid Default();
  // {step, 2 step, ..., 1.00}; Uniform(0.05) is the 20-level grid without 0.
  static BidGrid Uniform(double step, bool include_zero = false);
  // Throws ConfigError unless values are strictly increasing within [0, 1].
  explicit BidGrid(std::vector<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

enum class AuctionKind { kFirstPrice, kSecondPrice, kAllPay };

const char* AuctionKindName(AuctionKind kind);

// An immutable normal-form game: either a two-player bimatrix game or a
// sealed-bid single-item auction with any number of bidders.
//
// Auction utilities are expectations under uniform tie-breaking among the
// highest bidders, so both realized and counterfactual utilities are
// deterministic functions of the action profile.
class Game {
 public:
  // Throws ConfigError on shape mismatch or entries outside [0, 1].
  static Game Bimatrix(Matrix row_payoffs, Matrix col_payoffs,
                       std::string name = "matrix");
  // Throws ConfigError for fewer than two bidders, a value count that does
  // not match the bidder count, or values outside (0, 1].
  static Game Auction(AuctionKind kind, int num_players,
                      std::vector<double> values,
                      BidGrid grid = BidGrid::Default());

  const std::string& name() const { return name_; }
  int num_players() const { return static_cast<int>(action_counts_.size()); }
  int num_actions(int player) const { return action_counts_[player]; }
  const std::vector<int>& action_counts() const { return action_counts_; }
  UtilityBounds bounds() const { return bounds_; }
  bool is_bimatrix() const {
    return std::holds_alternative<BimatrixRule>(rule_);
  }
  bool is_auction() const { return std::holds_alternative<AuctionRule>(rule_); }

  // Payoff table of `player` indexed (row action, column action); only for
  // two-player games. For auctions the table is tabulated at construction.
  const Matrix& payoff_table(int player) const;

  // Auction accessors; throw ConfigError on bimatrix games.
  AuctionKind auction_kind() const;
  const BidGrid& bid_grid() const;
  const std::vector<double>& values() const;

  // Throws InvalidProfileError unless every index is in range.
  void ValidateProfile(const ActionProfile& profile) const;

  std::vector<double> Utility(const ActionProfile& profile) const;

  // Entry j is `player`'s utility had they played j with everyone else's
  // action held fixed.
  std::vector<double> CounterfactualUtilities(
      int player, const ActionProfile& profile) const;
  // Allocation-free variant used by the engine; `out` has num_actions(player)
  // entries. Does not validate the profile.
  void CounterfactualUtilitiesInto(int player, const ActionProfile& profile,
                                   std::span<double> out) const;

  // Loss in [0, 1]: (u_max - u) / (u_max - u_min). Throws ContractViolation
  // for a utility outside the bounds.
  std::vector<double> NormalizedLoss(std::span<const double> utilities) const;
  void NormalizedLossInto(std::span<const double> utilities,
                          std::span<double> out) const;

  // The quantity plotted per turn: the bid for auctions, the action index
  // otherwise (so the mean over two actions is the probability of the
  // second action).
  double ActionValue(int player, int action) const;
  // Axis label describing ActionValue.
  std::string ActionValueLabel() const;

 private:
  struct BimatrixRule {};
  struct AuctionRule {
    AuctionKind kind;
    std::vector<double> values;
    BidGrid grid;
  };

  Game(std::string name, std::vector<int> action_counts, UtilityBounds bounds,
       std::variant<BimatrixRule, AuctionRule> rule);

  double AuctionUtility(const AuctionRule& rule, const ActionProfile& profile,
                        int player) const;

  std::string name_;
  std::vector<int> action_counts_;
  UtilityBounds bounds_;
  std::variant<BimatrixRule, AuctionRule> rule_;
  // One payoff table per player; filled for every two-player game.
  std::vector<Matrix> tables_;
};

// Classic 2x2 games, payoffs in [0, 1]. Actions are (C, D) and (A, B).
Game PrisonersDilemma();
Game BattleOfTheSexes();

}  // namespace regret_arena

#endif  // REGRET_ARENA_GAME_H_
