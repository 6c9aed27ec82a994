#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "synthetic.hpp"
#include "vixgate/error.hpp"
#include "vixgate/gate.hpp"

namespace vixgate {
namespace {

ErSeries er_of(std::vector<std::optional<double>> values) {
  const auto dates = testing::business_days(values.size());
  return ErSeries(3, SeriesKind::kVixLevel, dates, std::move(values));
}

// Two-pass Sharpe in long double, independent of the library fold.
long double oracle_sharpe(const std::vector<double>& r) {
  long double mean = 0;
  for (double x : r) mean += x;
  mean /= r.size();
  long double ss = 0;
  for (double x : r) ss += (x - mean) * (x - mean);
  return mean / std::sqrt(ss / (r.size() - 1)) * std::sqrt(252.0L);
}

TEST(MakeGateTest, ThresholdRule) {
  const auto gate = make_gate(er_of({std::nullopt, 0.35, 0.0, 0.1, -0.5}), 1, 0.1);
  ASSERT_EQ(gate.decisions.size(), 5u);
  EXPECT_EQ(gate.decisions[0], GateDecision::kNoSignal);
  EXPECT_EQ(gate.decisions[1], GateDecision::kSkip);
  EXPECT_EQ(gate.decisions[2], GateDecision::kTrade);
  EXPECT_EQ(gate.decisions[3], GateDecision::kSkip);  // inclusive
  EXPECT_EQ(gate.decisions[4], GateDecision::kTrade);
  EXPECT_EQ(gate.count(GateDecision::kSkip), 2u);
}

TEST(MakeGateTest, ThresholdRange) {
  const auto er = er_of({0.1, 0.2});
  EXPECT_THROW(make_gate(er, 1, 0.0), InvalidArgument);
  EXPECT_THROW(make_gate(er, 1, 1.5), InvalidArgument);
  EXPECT_THROW(make_gate(er, 1, -0.1), InvalidArgument);
  EXPECT_THROW(make_gate(er, 0, 0.1), InvalidArgument);
  EXPECT_NO_THROW(make_gate(er, -1, 1.0));
}

TEST(MakeGateTest, NoSignalExactlyOnWarmUp) {
  const auto vix = testing::random_walk_vix(100, 3);
  const auto er = effective_ratio(vix, 7);
  const auto gate = make_gate(er, 1, 0.1);
  for (std::size_t t = 0; t < er.size(); ++t) {
    EXPECT_EQ(gate.decisions[t] == GateDecision::kNoSignal, !er.value(t));
  }
}

TEST(MakeGateTest, RaisingThresholdOnlyRemovesSkips) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const auto er = effective_ratio(testing::random_walk_vix(200, rng()),
                                    1 + trial % 20);
    const int direction = trial % 2 ? 1 : -1;
    for (double lo = 0.05; lo < 1.0; lo += 0.1) {
      const auto low = make_gate(er, direction, lo);
      const auto high = make_gate(er, direction, std::min(1.0, lo + 0.07));
      for (std::size_t t = 0; t < er.size(); ++t) {
        if (high.decisions[t] == GateDecision::kSkip) {
          EXPECT_EQ(low.decisions[t], GateDecision::kSkip);
        }
      }
    }
  }
}

TEST(MakeGateTest, SignDuality) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto er = effective_ratio(testing::random_walk_vix(150, rng()),
                                    1 + trial % 20);
    for (double theta : {0.05, 0.1, 0.3, 1.0}) {
      EXPECT_EQ(make_gate(er, -1, theta).decisions,
                make_gate(negate(er), 1, theta).decisions);
    }
  }
}

TEST(MakeGateTest, OrientationMapsToOppositeDirection) {
  static_assert(gate_direction_for_orientation(-1) == 1);
  static_assert(gate_direction_for_orientation(1) == -1);
}

TEST(TuneThresholdTest, SingletonCandidate) {
  const auto f = testing::generative_fixture(200, 21);
  const auto er = effective_ratio(f.vix, 5);
  const std::vector<double> candidates = {0.1};
  const auto tuning = tune_threshold(er, f.returns, 1, candidates);
  EXPECT_EQ(tuning.best_threshold, 0.1);
  ASSERT_EQ(tuning.trials.size(), 1u);
}

TEST(TuneThresholdTest, FindsTheInjectedBoundary) {
  const auto vix = testing::random_walk_vix(1500, 31);
  const auto er = effective_ratio(vix, 5);
  std::vector<double> r(vix.size());
  for (std::size_t t = 0; t < r.size(); ++t) {
    r[t] = er.value(t) && *er.value(t) > 0.2 ? -0.05 : 0.005;
  }
  const auto returns = vix.with_values(SeriesKind::kReturn, r);
  const std::vector<double> candidates = {0.1, 0.2, 0.3};

  // Hand enumeration of the three gated backtests.
  std::vector<long double> sharpe;
  for (double theta : candidates) {
    std::vector<double> gated = r;
    for (std::size_t t = 0; t < r.size(); ++t) {
      if (er.value(t) && *er.value(t) >= theta) gated[t] = 0.0;
    }
    sharpe.push_back(oracle_sharpe(gated));
  }
  ASSERT_GT(sharpe[1], sharpe[0]);
  ASSERT_GT(sharpe[1], sharpe[2]);

  const auto tuning = tune_threshold(er, returns, 1, candidates);
  EXPECT_EQ(tuning.best_threshold, 0.2);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    EXPECT_NEAR(tuning.trials[i].report.sharpe, static_cast<double>(sharpe[i]),
                1e-10 * std::fabs(static_cast<double>(sharpe[i])));
  }
}

TEST(TuneThresholdTest, PositiveReturnsPreferTheLargestThreshold) {
  const auto vix = testing::random_walk_vix(800, 41);
  const auto er = effective_ratio(vix, 4);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> draw(0.001, 0.01);
  std::vector<double> r(vix.size());
  for (auto& x : r) x = draw(rng);
  const auto returns = vix.with_values(SeriesKind::kReturn, r);
  const std::vector<double> candidates = {0.3, 0.1, 0.5, 0.2};

  const auto tuning = tune_threshold(er, returns, 1, candidates);
  EXPECT_EQ(tuning.best_threshold, 0.5);
  // Sharpe is monotone in the threshold on this construction.
  std::vector<std::pair<double, double>> by_theta;
  for (const auto& t : tuning.trials) by_theta.emplace_back(t.threshold, t.report.sharpe);
  std::sort(by_theta.begin(), by_theta.end());
  for (std::size_t i = 1; i < by_theta.size(); ++i) {
    EXPECT_GT(by_theta[i].second, by_theta[i - 1].second);
  }
}

TEST(TuneThresholdTest, TiesGoToTheLargerThreshold) {
  // ER never reaches 0.6, so 0.6 and 0.8 gate identically.
  const auto er = er_of({std::nullopt, 0.5, 0.2, -0.3, 0.1, 0.0});
  const DailySeries returns(SeriesKind::kReturn, testing::business_days(6),
                            {0.01, -0.02, 0.03, 0.01, -0.01, 0.02});
  const std::vector<double> candidates = {0.8, 0.6};
  EXPECT_EQ(tune_threshold(er, returns, 1, candidates).best_threshold, 0.8);
}

TEST(TuneThresholdTest, RejectsEmptyOrOutOfRangeCandidates) {
  const auto er = er_of({std::nullopt, 0.5, 0.2});
  const DailySeries returns(SeriesKind::kReturn, testing::business_days(3),
                            {0.01, -0.02, 0.03});
  EXPECT_THROW(tune_threshold(er, returns, 1, {}), InvalidArgument);
  const std::vector<double> bad = {0.1, 2.0};
  EXPECT_THROW(tune_threshold(er, returns, 1, bad), InvalidArgument);
}

TEST(BasisSignalTest, RuleCases) {
  EXPECT_EQ(basis_signal(18.5, 17.0, 0.3).action, BasisAction::kShortFuture);
  EXPECT_EQ(basis_signal(16.0, 17.0, 0.3).action, BasisAction::kBuyFuture);
  EXPECT_EQ(basis_signal(18.5, 17.0, 0.05).action, BasisAction::kNoTrade);
  EXPECT_EQ(basis_signal(18.5, 17.0, 0.1).action, BasisAction::kNoTrade);
}

TEST(BasisSignalTest, FlatBasisNeverTrades) {
  for (double conv : {-1.0, 0.0, 0.1, 0.11, 5.0, 100.0}) {
    EXPECT_EQ(basis_signal(17.0, 17.0, conv).action, BasisAction::kNoTrade);
  }
}

TEST(BasisSignalTest, InvalidInputs) {
  EXPECT_THROW(basis_signal(18.0, 0.0, 0.3), InvalidArgument);
  EXPECT_THROW(basis_signal(NAN, 17.0, 0.3), InvalidArgument);
}

}  // namespace
}  // namespace vixgate
