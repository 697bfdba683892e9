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
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "regret_arena/error.h"
#include "regret_arena/learners.h"

namespace regret_arena {
namespace {

std::vector<double> Copy(std::span<const double> s) {
  return {s.begin(), s.end()};
}

double Residual(const Matrix& q, const std::vector<double>& p) {
  double worst = 0.0;
  for (int j = 0; j < q.cols(); ++j) {
    double v = 0.0;
    for (int i = 0; i < q.rows(); ++i) v += p[i] * q(i, j);
    worst = std::max(worst, std::abs(v - p[j]));
  }
  return worst;
}

TEST_CASE("AdjustSwapRateValues") {
  CHECK(AdjustSwapRate(0.1, 20) == 1.0 - std::pow(0.9, 20));
  CHECK(AdjustSwapRate(0.5, 2) == 0.75);
  CHECK(AdjustSwapRate(0.2, 7) == 1.0 - std::pow(0.8, 7));
  CHECK(AdjustSwapRate(0.1, 20) == doctest::Approx(0.8784).epsilon(1e-4));
  CHECK(AdjustSwapRate(0.2, 7) == doctest::Approx(0.7903).epsilon(1e-4));
  CHECK(AdjustSwapRate(0.3, 1) == doctest::Approx(0.3));
}

TEST_CASE("AdjustedRateEquivalence") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double eps = 0.01 + 0.9 * unit(gen);
    const int k = 1 + trial % 20;
    const double loss = unit(gen);
    MultiplicativeWeights mw(2, AdjustSwapRate(eps, k));
    mw.Update(std::vector{loss, 0.0});
    const double keep = std::pow(1.0 - eps, k);
    const double direct = std::pow(1.0 - eps, k * loss);
    // The stored rate is rounded once, so 1 - rate carries an absolute error
    // of one ulp of 1; raising it to `loss` scales that by loss * keep^(loss-1).
    const double eps_mach = std::numeric_limits<double>::epsilon();
    const double bound =
        eps_mach * (loss * std::pow(keep, loss - 1.0) + 8.0 * direct);
    CHECK(std::abs(mw.weights()[0] - direct) <= bound);
  }
}

TEST_CASE("UniformDistribution") {
  CHECK(UniformDistribution(2) == std::vector<double>{0.5, 0.5});
  for (double v : UniformDistribution(20)) CHECK(v == doctest::Approx(0.05));
  for (double v : UniformDistribution(7)) CHECK(v == doctest::Approx(1.0 / 7));
}

TEST_CASE("MultiplicativeWeightsInit") {
  MultiplicativeWeights mw(2, 0.5);
  CHECK(mw.weights() == std::vector<double>{1.0, 1.0});
  CHECK(MultiplicativeWeights(20, 0.1).weights() == std::vector<double>(20, 1));
  CHECK_THROWS_AS(MultiplicativeWeights(2, 1.0), ConfigError);
  CHECK_THROWS_AS(MultiplicativeWeights(2, 0.0), ConfigError);
  CHECK_THROWS_AS(MultiplicativeWeights(1, 0.5), ConfigError);
}

TEST_CASE("MultiplicativeWeightsDistribution") {
  MultiplicativeWeights mw(2, 0.5);
  CHECK(Copy(mw.Distribution()) == std::vector<double>{0.5, 0.5});
  mw.set_weights({0.5, 1.0});
  CHECK(mw.Distribution()[0] == doctest::Approx(1.0 / 3));
  CHECK(mw.Distribution()[1] == doctest::Approx(2.0 / 3));
  MultiplicativeWeights three(3, 0.5);
  three.set_weights({1.0, 1.0, 2.0});
  CHECK(Copy(three.Distribution()) == std::vector<double>{0.25, 0.25, 0.5});
}

TEST_CASE("MultiplicativeWeightsUpdate") {
  MultiplicativeWeights mw(2, 0.5);
  mw.Update(std::vector{0.0, 0.0});
  CHECK(mw.weights() == std::vector<double>{1.0, 1.0});
  mw.Update(std::vector{1.0, 0.0});
  CHECK(mw.weights() == std::vector<double>{0.5, 1.0});
  MultiplicativeWeights three(3, 0.1);
  three.Update(std::vector{0.5, 0.5, 0.5});
  for (double w : three.weights()) {
    CHECK(w == doctest::Approx(0.948683298050514).epsilon(1e-14));
  }
  CHECK_THROWS_AS(mw.Update(std::vector{1.5, 0.0}), ContractViolation);
  CHECK_THROWS_AS(mw.Update(std::vector{-0.1, 0.0}), ContractViolation);
  CHECK_THROWS_AS(mw.Update(std::vector{0.1}), ContractViolation);
}

TEST_CASE("WeightRescalingInvariance") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> w(5);
    for (double& v : w) v = unit(gen);
    MultiplicativeWeights a(5, 0.3), b(5, 0.3);
    a.set_weights(w);
    std::vector<double> scaled = w;
    for (double& v : scaled) v *= 0x1.0p-300;
    b.set_weights(scaled);
    const std::vector<double> pa = a.ComputeDistribution();
    const std::vector<double> pb = b.ComputeDistribution();
    for (int i = 0; i < 5; ++i) CHECK(pa[i] == doctest::Approx(pb[i]).epsilon(1e-15));
    CHECK(std::max_element(pa.begin(), pa.end()) - pa.begin() ==
          std::max_element(pb.begin(), pb.end()) - pb.begin());
  }
}

TEST_CASE("WeightsStayPositiveUnderLongLossStreaks") {
  MultiplicativeWeights mw(3, 0.9);
  for (int t = 0; t < 100000; ++t) mw.Update(std::vector{1.0, 1.0, 0.9});
  for (double w : mw.weights()) {
    CHECK(w > 0.0);
    CHECK(std::isfinite(w));
  }
  const std::vector<double> p = mw.ComputeDistribution();
  CHECK(p[2] == doctest::Approx(1.0));
  double sum = 0.0;
  for (double v : p) sum += v;
  CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("StationaryDistributionExamples") {
  Matrix half(2, 2, 0.5);
  const std::vector<double> p = StationaryDistribution(half);
  CHECK(p[0] == doctest::Approx(0.5));
  const Matrix q = Matrix::FromRows({{0.9, 0.1}, {0.5, 0.5}});
  const std::vector<double> s = StationaryDistribution(q);
  // p = pQ with p0 + p1 = 1: 0.1 p0 = 0.5 p1, so p = (5/6, 1/6).
  CHECK(s[0] == doctest::Approx(5.0 / 6).epsilon(1e-10));
  CHECK(s[1] == doctest::Approx(1.0 / 6).epsilon(1e-10));
  const Matrix rank1 = Matrix::FromRows({{0.2, 0.3, 0.5}, {0.2, 0.3, 0.5},
                                         {0.2, 0.3, 0.5}});
  const std::vector<double> r = StationaryDistribution(rank1);
  CHECK(r[0] == doctest::Approx(0.2));
  CHECK(r[2] == doctest::Approx(0.5));
}

TEST_CASE("StationaryResidualOnRandomChains") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> unit(1e-6, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 12;
    Matrix q(n, n);
    for (int i = 0; i < n; ++i) {
      double sum = 0.0;
      for (int j = 0; j < n; ++j) sum += q(i, j) = std::pow(unit(gen), 6);
      for (int j = 0; j < n; ++j) q(i, j) /= sum;
    }
    const std::vector<double> p = StationaryDistribution(q);
    double total = 0.0;
    for (double v : p) {
      CHECK(v >= 0.0);
      total += v;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(Residual(q, p) <= 1e-10);
    CHECK(StationaryResidual(q, p) == doctest::Approx(Residual(q, p)));
  }
}

TEST_CASE("StationaryRejectsNonStochastic") {
  CHECK_THROWS_AS(StationaryDistribution(Matrix::FromRows({{0.9, 0.3},
                                                           {0.5, 0.5}})),
                  ContractViolation);
  CHECK_THROWS_AS(StationaryDistribution(Matrix(2, 3, 0.5)),
                  ContractViolation);
}

TEST_CASE("NoSwapInit") {
  NoSwapLearner a(2, 0.75);
  CHECK(a.inner().size() == 2);
  CHECK(Copy(a.Distribution()) == std::vector<double>{0.5, 0.5});
  CHECK(NoSwapLearner(7, 0.79).inner().size() == 7);
  CHECK_THROWS_AS(NoSwapLearner(1, 0.5), ConfigError);
}

TEST_CASE("NoSwapDistributionFromInnerRows") {
  NoSwapLearner learner(2, 0.5);
  learner.mutable_inner(0).set_weights({0.9, 0.1});
  learner.mutable_inner(1).set_weights({0.5, 0.5});
  const std::vector<double> p = Copy(learner.Distribution());
  CHECK(p[0] == doctest::Approx(5.0 / 6).epsilon(1e-10));
  CHECK(p[1] == doctest::Approx(1.0 / 6).epsilon(1e-10));

  NoSwapLearner same(3, 0.5);
  for (int i = 0; i < 3; ++i) same.mutable_inner(i).set_weights({1, 2, 5});
  const std::vector<double> r = Copy(same.Distribution());
  CHECK(r[0] == doctest::Approx(0.125));
  CHECK(r[2] == doctest::Approx(0.625));
}

TEST_CASE("NoSwapLossSplitting") {
  SUBCASE("uniform p") {
    NoSwapLearner learner(2, 0.5);
    learner.Distribution();
    learner.Update(std::vector{1.0, 0.0});
    for (const auto& inner : learner.inner()) {
      CHECK(inner.weights()[0] == doctest::Approx(std::pow(0.5, 0.5)));
      CHECK(inner.weights()[1] == 1.0);
    }
  }
  SUBCASE("point mass p") {
    NoSwapLearner learner(2, 0.5);
    for (int i = 0; i < 2; ++i) learner.mutable_inner(i).set_weights({1e-200, 1});
    const std::vector<double> p = Copy(learner.Distribution());
    learner.Update(std::vector{0.6, 0.3});
    // Copy i sees p_i * loss.
    for (int i = 0; i < 2; ++i) {
      CHECK(learner.inner()[i].weights()[1] ==
            doctest::Approx(std::pow(0.5, p[i] * 0.3)).epsilon(1e-14));
    }
    CHECK(p[1] == doctest::Approx(1.0));
  }
  SUBCASE("five sixths") {
    NoSwapLearner learner(2, 0.5);
    learner.mutable_inner(0).set_weights({0.9, 0.1});
    learner.mutable_inner(1).set_weights({0.5, 0.5});
    learner.Distribution();
    learner.Update(std::vector{0.6, 0.3});
    // Scaled losses (0.5, 0.25) and (0.1, 0.05).
    CHECK(learner.inner()[0].weights()[0] ==
          doctest::Approx(0.9 * std::pow(0.5, 0.5)).epsilon(1e-9));
    CHECK(learner.inner()[0].weights()[1] ==
          doctest::Approx(0.1 * std::pow(0.5, 0.25)).epsilon(1e-9));
    CHECK(learner.inner()[1].weights()[0] ==
          doctest::Approx(0.5 * std::pow(0.5, 0.1)).epsilon(1e-9));
    CHECK(learner.inner()[1].weights()[1] ==
          doctest::Approx(0.5 * std::pow(0.5, 0.05)).epsilon(1e-9));
  }
}

TEST_CASE("NoSwapProtocolOrder") {
  NoSwapLearner learner(2, 0.5);
  learner.Update(std::vector{0.2, 0.4});
  CHECK_THROWS_AS(learner.Update(std::vector{0.2, 0.4}), ProtocolError);
  learner.Distribution();
  CHECK_NOTHROW(learner.Update(std::vector{0.2, 0.4}));
}

TEST_CASE("SlowdownIdentity") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 9;
    const double eps = 0.05 + 0.9 * unit(gen);
    std::vector<double> loss(n), scaled(n);
    for (int j = 0; j < n; ++j) {
      loss[j] = unit(gen);
      scaled[j] = loss[j] / n;
    }
    NoSwapLearner noswap(n, eps);
    MultiplicativeWeights mw(n, eps);
    noswap.Distribution();
    noswap.Update(loss);
    mw.Update(scaled);
    for (const auto& inner : noswap.inner()) {
      for (int j = 0; j < n; ++j) {
        CHECK(inner.weights()[j] ==
              doctest::Approx(mw.weights()[j]).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("NoSwapEmittedDistributionsAreStationary") {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  NoSwapLearner learner(7, 0.79);
  for (int t = 0; t < 2000; ++t) {
    const std::vector<double> p = Copy(learner.Distribution());
    CHECK(Residual(learner.TransitionMatrix(), p) <= 1e-10);
    std::vector<double> loss(7);
    for (double& v : loss) v = unit(gen);
    learner.Update(loss);
  }
  CHECK(learner.max_stationary_residual() <= 1e-10);
}

TEST_CASE("LearnerSpecParsing") {
  CHECK(ParseLearnerSpec("uniform").kind == LearnerKind::kUniform);
  const LearnerSpec mw = ParseLearnerSpec("mw:0.5");
  CHECK(mw.kind == LearnerKind::kMultiplicativeWeights);
  CHECK(*mw.rate == 0.5);
  CHECK(ParseLearnerSpec("noswap:0.75").ToString() == "noswap:0.75");
  CHECK(ParseLearnerSpec("noswap:auto").auto_rate);
  for (const char* bad : {"mw", "mw:", "mw:x", "mw:1.5", "mw:0", "noswap:-1",
                          "gradient:0.1", "uniform:0.3", ""}) {
    CHECK_THROWS_AS(ParseLearnerSpec(bad), ConfigError);
  }
}

TEST_CASE("AutoRateResolution") {
  const Game spa = Game::Auction(AuctionKind::kSecondPrice, 2, {1, 1},
                                 BidGrid::Uniform(0.05));
  const auto specs = ResolveLearnerSpecs(
      {ParseLearnerSpec("mw:0.1"), ParseLearnerSpec("noswap:auto")}, spa);
  CHECK(*specs[1].rate == 1.0 - std::pow(0.9, 20));
  CHECK_THROWS_AS(ResolveLearnerSpecs({ParseLearnerSpec("uniform"),
                                       ParseLearnerSpec("noswap:auto")},
                                      spa),
                  ConfigError);
}

TEST_CASE("MakeLearner") {
  CHECK(MakeLearner(ParseLearnerSpec("uniform"), 3)->Describe() == "uniform");
  CHECK(MakeLearner(ParseLearnerSpec("mw:0.5"), 3)->num_actions() == 3);
  auto noswap = MakeLearner(ParseLearnerSpec("noswap:0.5"), 4);
  CHECK(dynamic_cast<NoSwapLearner*>(noswap.get()) != nullptr);
}

}  // namespace
}  // namespace regret_arena
