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


#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "regret_arena/error.h"
#include "regret_arena/game.h"

namespace regret_arena {
namespace {

// Independent auction rule: expected utility of `player` under uniform
// tie-breaking among the highest bids.
double OracleAuctionUtility(AuctionKind kind, const std::vector<double>& values,
                            const std::vector<double>& bids, int player) {
  const double top = *std::max_element(bids.begin(), bids.end());
  int winners = 0;
  for (double b : bids) winners += b == top ? 1 : 0;
  std::vector<double> others;
  for (int i = 0; i < static_cast<int>(bids.size()); ++i) {
    if (i != player) others.push_back(bids[i]);
  }
  const double runner_up = *std::max_element(others.begin(), others.end());
  const double mine = bids[player];
  if (mine < top) return kind == AuctionKind::kAllPay ? -mine : 0.0;
  const double share = 1.0 / winners;
  switch (kind) {
    case AuctionKind::kFirstPrice:
      return share * (values[player] - mine);
    case AuctionKind::kSecondPrice:
      // With a tie the price is the tied bid; otherwise the runner-up bid.
      return share * (values[player] - runner_up);
    case AuctionKind::kAllPay:
      return share * values[player] - mine;
  }
  return 0.0;
}

void CheckAgainstOracle(const Game& game, const std::vector<double>& values) {
  const int n = game.num_players();
  const int k = game.num_actions(0);
  ActionProfile profile(n, 0);
  while (true) {
    std::vector<double> bids;
    for (int a : profile) bids.push_back(game.bid_grid()[a]);
    const std::vector<double> u = game.Utility(profile);
    for (int p = 0; p < n; ++p) {
      CHECK(u[p] == doctest::Approx(OracleAuctionUtility(
                        game.auction_kind(), values, bids, p)).epsilon(1e-12));
      CHECK(u[p] >= game.bounds().min - 1e-12);
      CHECK(u[p] <= game.bounds().max + 1e-12);
    }
    int i = 0;
    while (i < n && ++profile[i] == k) profile[i++] = 0;
    if (i == n) break;
  }
}

TEST_CASE("PrisonersDilemmaPayoffs") {
  const Game pd = PrisonersDilemma();
  CHECK(pd.num_players() == 2);
  CHECK(pd.Utility({0, 0}) == std::vector<double>{0.9, 0.9});
  CHECK(pd.Utility({1, 1}) == std::vector<double>{0.1, 0.1});
  CHECK(pd.Utility({0, 1}) == std::vector<double>{0.0, 1.0});
  CHECK(pd.Utility({1, 0}) == std::vector<double>{1.0, 0.0});
}

TEST_CASE("BattleOfTheSexesPayoffs") {
  const Game bos = BattleOfTheSexes();
  CHECK(bos.Utility({0, 0}) == std::vector<double>{1.0, 0.1});
  CHECK(bos.Utility({1, 1}) == std::vector<double>{0.1, 1.0});
  CHECK(bos.Utility({0, 1}) == std::vector<double>{0.0, 0.0});
}

TEST_CASE("AuctionUtilityExamples") {
  const BidGrid grid({0.3, 0.5, 0.7, 1.0});
  const Game fpa = Game::Auction(AuctionKind::kFirstPrice, 2, {1, 1}, grid);
  const std::vector<double> u = fpa.Utility({0, 2});
  CHECK(u[0] == 0.0);
  CHECK(u[1] == doctest::Approx(0.3));
  const Game spa = Game::Auction(AuctionKind::kSecondPrice, 2, {1, 1}, grid);
  const std::vector<double> s = spa.Utility({3, 1});
  CHECK(s[0] == doctest::Approx(0.5));
  CHECK(s[1] == 0.0);
  const std::vector<double> tie = spa.Utility({1, 1});
  CHECK(tie[0] == doctest::Approx(0.25));
  CHECK(tie[1] == doctest::Approx(0.25));
}

TEST_CASE("AuctionsMatchBruteForceOracle") {
  for (AuctionKind kind : {AuctionKind::kFirstPrice, AuctionKind::kSecondPrice,
                           AuctionKind::kAllPay}) {
    CheckAgainstOracle(Game::Auction(kind, 2, {1.0, 1.0}), {1.0, 1.0});
    CheckAgainstOracle(Game::Auction(kind, 2, {0.6, 0.9}), {0.6, 0.9});
    const std::vector<double> three = {1.0, 0.7, 0.5};
    CheckAgainstOracle(Game::Auction(kind, 3, three, BidGrid::Uniform(0.1)),
                       three);
  }
}

TEST_CASE("CounterfactualsAgreeWithUtility") {
  std::vector<Game> games = {PrisonersDilemma(), BattleOfTheSexes()};
  for (AuctionKind kind : {AuctionKind::kFirstPrice, AuctionKind::kSecondPrice,
                           AuctionKind::kAllPay}) {
    games.push_back(Game::Auction(kind, 2, {1.0, 1.0}));
  }
  for (const Game& game : games) {
    const int k0 = game.num_actions(0), k1 = game.num_actions(1);
    for (int a = 0; a < k0; ++a) {
      for (int b = 0; b < k1; ++b) {
        const ActionProfile profile = {a, b};
        const std::vector<double> u = game.Utility(profile);
        for (int p = 0; p < 2; ++p) {
          const std::vector<double> cf =
              game.CounterfactualUtilities(p, profile);
          CHECK(cf[profile[p]] == u[p]);
          for (int j = 0; j < game.num_actions(p); ++j) {
            ActionProfile alt = profile;
            alt[p] = j;
            CHECK(cf[j] == game.Utility(alt)[p]);
          }
        }
      }
    }
  }
}

TEST_CASE("PrisonersDilemmaCounterfactualAgainstDefect") {
  const std::vector<double> cf =
      PrisonersDilemma().CounterfactualUtilities(0, {0, 1});
  CHECK(cf == std::vector<double>{0.0, 0.1});
}

TEST_CASE("SecondPriceCounterfactualsAgainstHalf") {
  const Game spa = Game::Auction(AuctionKind::kSecondPrice, 2, {1.0, 1.0});
  const int half = 10;
  REQUIRE(spa.bid_grid()[half] == doctest::Approx(0.5));
  const std::vector<double> cf = spa.CounterfactualUtilities(0, {0, half});
  for (int j = 0; j < spa.num_actions(0); ++j) {
    const double expected = j < half ? 0.0 : (j == half ? 0.25 : 0.5);
    CHECK(cf[j] == doctest::Approx(expected));
  }
}

TEST_CASE("SecondPriceTruthfulBidIsWeaklyOptimal") {
  for (double value : {1.0, 0.6}) {
    const Game spa =
        Game::Auction(AuctionKind::kSecondPrice, 2, {value, 1.0});
    int truthful = -1;
    for (int j = 0; j < spa.num_actions(0); ++j) {
      if (std::abs(spa.bid_grid()[j] - value) < 1e-12) truthful = j;
    }
    REQUIRE(truthful >= 0);
    for (int opp = 0; opp < spa.num_actions(1); ++opp) {
      const std::vector<double> cf = spa.CounterfactualUtilities(0, {0, opp});
      CHECK(cf[truthful] >= *std::max_element(cf.begin(), cf.end()) - 1e-12);
    }
  }
}

TEST_CASE("NormalizedLoss") {
  const Game pd = PrisonersDilemma();
  const std::vector<double> loss = pd.NormalizedLoss(std::vector{0.9, 0.0});
  CHECK(loss[0] == doctest::Approx(0.1));
  CHECK(loss[1] == 1.0);
  CHECK(pd.NormalizedLoss(std::vector{1.0, 0.5})[0] == 0.0);
  const Game apa = Game::Auction(AuctionKind::kAllPay, 2, {1.0, 1.0});
  CHECK(apa.bounds().min == -1.0);
  CHECK(apa.bounds().max == 1.0);
  CHECK(apa.NormalizedLoss(std::vector{-1.0, 1.0}) ==
        std::vector<double>{1.0, 0.0});
  CHECK_THROWS_AS(pd.NormalizedLoss(std::vector{1.5, 0.0}), ContractViolation);
}

TEST_CASE("NormalizedLossIsMonotone") {
  const Game apa = Game::Auction(AuctionKind::kAllPay, 2, {1.0, 1.0});
  std::vector<double> u;
  for (int i = 0; i <= 100; ++i) u.push_back(-1.0 + i / 50.0);
  const std::vector<double> loss = apa.NormalizedLoss(u);
  for (int i = 1; i <= 100; ++i) CHECK(loss[i] < loss[i - 1]);
  CHECK(loss.front() == 1.0);
  CHECK(loss.back() == 0.0);
}

TEST_CASE("BimatrixValidation") {
  CHECK_THROWS_AS(Game::Bimatrix(Matrix(2, 3), Matrix(3, 2)), ConfigError);
  CHECK_THROWS_AS(Game::Bimatrix(Matrix(2, 2, 1.5), Matrix(2, 2)),
                  ConfigError);
  CHECK_THROWS_AS(Game::Bimatrix(Matrix(1, 2), Matrix(1, 2)), ConfigError);
  const Game g = Game::Bimatrix(Matrix(3, 4, 0.5), Matrix(3, 4, 0.25));
  CHECK(g.action_counts() == std::vector<int>{3, 4});
  CHECK(g.bounds().min == 0.0);
  CHECK(g.bounds().max == 1.0);
}

TEST_CASE("AuctionConstruction") {
  CHECK_THROWS_AS(Game::Auction(AuctionKind::kFirstPrice, 1, {1.0}),
                  ConfigError);
  CHECK_THROWS_AS(Game::Auction(AuctionKind::kFirstPrice, 2, {1.0, 0.0}),
                  ConfigError);
  CHECK_THROWS_AS(Game::Auction(AuctionKind::kFirstPrice, 2, {1.0}),
                  ConfigError);
  const Game twenty = Game::Auction(AuctionKind::kSecondPrice, 2, {1, 1},
                                    BidGrid::Uniform(0.05));
  CHECK(twenty.num_actions(0) == 20);
  CHECK(twenty.bid_grid()[0] == doctest::Approx(0.05));
  CHECK(twenty.bid_grid()[19] == 1.0);
  CHECK(Game::Auction(AuctionKind::kSecondPrice, 2, {1, 1}).num_actions(1) ==
        21);
  const Game fpa = Game::Auction(AuctionKind::kFirstPrice, 2, {1, 1});
  CHECK(fpa.bounds().min == 0.0);
  CHECK(fpa.bounds().max == 1.0);
}

TEST_CASE("BidGridValidation") {
  CHECK_THROWS_AS(BidGrid({0.5, 0.3}), ConfigError);
  CHECK_THROWS_AS(BidGrid({0.5, 1.2}), ConfigError);
  CHECK_THROWS_AS(BidGrid({0.5}), ConfigError);
  CHECK_THROWS_AS(BidGrid::Uniform(0.3), ConfigError);
  CHECK(BidGrid::Uniform(0.25, true).values() ==
        std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
}

TEST_CASE("InvalidProfiles") {
  const Game pd = PrisonersDilemma();
  CHECK_THROWS_AS(pd.Utility({0, 2}), InvalidProfileError);
  CHECK_THROWS_AS(pd.Utility({-1, 0}), InvalidProfileError);
  CHECK_THROWS_AS(pd.Utility({0}), InvalidProfileError);
  CHECK_THROWS_AS(pd.CounterfactualUtilities(0, {5, 0}), InvalidProfileError);
}

TEST_CASE("ActionValues") {
  const Game pd = PrisonersDilemma();
  CHECK(pd.ActionValue(0, 1) == 1.0);
  CHECK(pd.ActionValueLabel() == "P(second action)");
  const Game spa = Game::Auction(AuctionKind::kSecondPrice, 2, {1, 1});
  CHECK(spa.ActionValue(1, 20) == 1.0);
  CHECK(spa.ActionValueLabel() == "mean bid");
  const Game g = Game::Bimatrix(Matrix(3, 3), Matrix(3, 3));
  CHECK(g.ActionValueLabel() == "mean action index");
}

}  // namespace
}  // namespace regret_arena
