#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "synthetic.hpp"
#include "vixgate/backtest.hpp"
#include "vixgate/error.hpp"
#include "vixgate/gate.hpp"

namespace vixgate {
namespace {

DailySeries returns_of(std::vector<double> r) {
  auto dates = testing::business_days(r.size());
  return DailySeries(SeriesKind::kReturn, std::move(dates), std::move(r));
}

GateSignal gate_of(const DailySeries& returns, std::vector<GateDecision> d) {
  GateSignal gate;
  gate.window = 1;
  gate.dates.assign(returns.dates().begin(), returns.dates().end());
  gate.decisions = std::move(d);
  return gate;
}

double brute_force_mdd(const std::vector<double>& e) {
  double worst = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i; j < e.size(); ++j) {
      worst = std::max(worst, 1.0 - e[j] / e[i]);
    }
  }
  return worst;
}

constexpr auto T = GateDecision::kTrade;
constexpr auto S = GateDecision::kSkip;
constexpr auto N = GateDecision::kNoSignal;

TEST(ApplyGateTest, SkippedDaysEarnZero) {
  const auto r = returns_of({0.01, -0.08, 0.02});
  const auto gated = apply_gate(r, gate_of(r, {T, S, T}));
  EXPECT_EQ(gated.values()[0], 0.01);
  EXPECT_EQ(gated.values()[1], 0.0);
  EXPECT_EQ(gated.values()[2], 0.02);
  EXPECT_EQ(gated.kind(), SeriesKind::kReturn);
}

TEST(ApplyGateTest, TradeAndNoSignalKeepReturns) {
  const auto r = returns_of({0.01, -0.08, 0.02});
  EXPECT_EQ(apply_gate(r, gate_of(r, {T, T, T})), r);
  EXPECT_EQ(apply_gate(r, gate_of(r, {N, N, T})), r);
}

TEST(ApplyGateTest, AllSkippedHasUndefinedSharpe) {
  const auto r = returns_of({0.01, -0.08, 0.02});
  const auto gated = apply_gate(r, gate_of(r, {S, S, S}));
  for (double x : gated.values()) EXPECT_EQ(x, 0.0);
  const auto eq = equity_curve(gated, 5.0);
  for (double e : eq.values()) EXPECT_EQ(e, 5.0);
  EXPECT_THROW(sharpe_ratio(gated), DegenerateError);
}

TEST(ApplyGateTest, MissingDateIsCoverageError) {
  const auto r = returns_of({0.01, -0.08, 0.02});
  auto gate = gate_of(r, {T, T, T});
  gate.dates.erase(gate.dates.begin() + 1);
  gate.decisions.pop_back();
  EXPECT_THROW(apply_gate(r, gate), DataError);
}

TEST(ApplyGateTest, NeverAddsNonzeroReturns) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> draw(0, 0.01);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(30);
    std::vector<GateDecision> d(30);
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = rng() % 4 == 0 ? 0.0 : draw(rng);
      d[i] = static_cast<GateDecision>(rng() % 3);
    }
    const auto r = returns_of(v);
    const auto gated = apply_gate(r, gate_of(r, d));
    const auto nonzero = [](const DailySeries& s) {
      return std::count_if(s.values().begin(), s.values().end(),
                           [](double x) { return x != 0.0; });
    };
    EXPECT_LE(nonzero(gated), nonzero(r));
  }
}

TEST(EquityCurveTest, Compounds) {
  const auto eq = equity_curve(returns_of({0.1, -0.1}), 5.0);
  EXPECT_DOUBLE_EQ(eq.values()[0], 5.5);
  EXPECT_DOUBLE_EQ(eq.values()[1], 4.95);
  EXPECT_EQ(eq.kind(), SeriesKind::kEquityValue);
}

TEST(EquityCurveTest, FlatOnZeroReturns) {
  const auto eq = equity_curve(returns_of({0, 0, 0}), 5.0);
  for (double e : eq.values()) EXPECT_EQ(e, 5.0);
}

TEST(EquityCurveTest, YearOfTenBasisPoints) {
  // 1.001^252 evaluated with mpmath at 40 digits.
  const auto eq = equity_curve(returns_of(std::vector<double>(252, 0.001)), 1.0);
  EXPECT_NEAR(eq.values().back(), 1.2864340443761877459, 1e-12);
}

TEST(EquityCurveTest, BankruptcyNamesTheDate) {
  const auto r = returns_of({0.1, -1.0});
  try {
    equity_curve(r, 5.0);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find(r.date(1).to_string()), std::string::npos);
  }
  EXPECT_THROW(equity_curve(r, 0.0), InvalidArgument);
}

TEST(EquityCurveTest, LinearInInitialValue) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> draw(0, 0.02);
  std::vector<double> v(100);
  for (auto& x : v) x = draw(rng);
  const auto r = returns_of(v);
  const auto one = equity_curve(r, 1.0);
  for (double lambda : {2.0, 8.0, 0.5}) {
    const auto scaled = equity_curve(r, lambda);
    for (std::size_t i = 0; i < v.size(); ++i) {
      EXPECT_EQ(scaled.values()[i], lambda * one.values()[i]);
    }
  }
}

TEST(SharpeTest, Degenerate) {
  EXPECT_THROW(sharpe_ratio(returns_of({0.01, 0.01, 0.01})), DegenerateError);
  EXPECT_THROW(sharpe_ratio(returns_of({0.01})), DataError);
}

TEST(SharpeTest, SymmetricAlternationIsZero) {
  EXPECT_EQ(sharpe_ratio(returns_of({0.01, -0.01, 0.01, -0.01})), 0.0);
}

TEST(SharpeTest, ScaleInvariant) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> draw(0.001, 0.01);
  std::vector<double> v(252);
  for (auto& x : v) x = draw(rng);
  const double base = sharpe_ratio(v);
  for (double lambda : {2.0, 0.25, 16.0}) {
    std::vector<double> scaled = v;
    for (auto& x : scaled) x *= lambda;
    EXPECT_EQ(sharpe_ratio(scaled), base);
  }
}

TEST(MaxDrawdownTest, Examples) {
  const std::vector<double> rising = {1, 2, 3, 4};
  const std::vector<double> dip = {5, 6, 3, 4};
  const std::vector<double> single = {5};
  EXPECT_EQ(max_drawdown(rising), 0.0);
  EXPECT_EQ(max_drawdown(dip), 0.5);
  EXPECT_EQ(max_drawdown(single), 0.0);
  EXPECT_THROW(max_drawdown(std::vector<double>{}), DataError);
}

TEST(MaxDrawdownTest, MatchesExhaustivePairScan) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> level(0.5, 10.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> e(1 + rng() % 12);
    for (auto& x : e) x = level(rng);
    const double mdd = max_drawdown(e);
    EXPECT_EQ(mdd, brute_force_mdd(e));
    EXPECT_GE(mdd, 0.0);
    EXPECT_LE(mdd, 1.0);
    std::vector<double> scaled = e;
    for (auto& x : scaled) x *= 4.0;
    EXPECT_EQ(max_drawdown(scaled), mdd);
  }
}

TEST(CalmarTest, DoublingYearWithHalfDrawdown) {
  // 252 points from 1 to 2 with a dip to half of the running peak.
  std::vector<double> e(252);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = 1.0 + static_cast<double>(i) / 251.0;
  e[100] = e[99] / 2.0;
  EXPECT_NEAR(calmar_ratio(e), 2.0, 1e-12);
}

TEST(CalmarTest, FormulaOracleOnShortCurve) {
  // ((4/5)^(252/4) - 1) / 0.5 with mpmath at 40 digits.
  const std::vector<double> e = {5, 6, 3, 4};
  EXPECT_NEAR(calmar_ratio(e), -1.9999984307245661533, 1e-12);
}

TEST(CalmarTest, NoDrawdownIsUndefined) {
  const std::vector<double> flat = {5, 5, 5};
  EXPECT_THROW(calmar_ratio(flat), DegenerateError);
  const std::vector<double> one = {5};
  EXPECT_THROW(calmar_ratio(one), DataError);
}

TEST(CompareTest, IdentityGateGivesIdenticalReports) {
  const auto f = testing::generative_fixture(300, 3);
  const auto c = compare(f.returns, gate_of(f.returns, std::vector<GateDecision>(300, T)));
  EXPECT_EQ(c.original.equity_curve, c.augmented.equity_curve);
  EXPECT_EQ(c.original.sharpe, c.augmented.sharpe);
  EXPECT_EQ(c.original.mdd, c.augmented.mdd);
  EXPECT_EQ(c.original.calmar, c.augmented.calmar);
  EXPECT_EQ(c.augmented.n_skipped, 0u);
  EXPECT_EQ(c.original.initial_value, 5.0);
}

TEST(CompareTest, GenerativeGateImprovesSharpe) {
  const auto f = testing::injected_fixture(1000, 4);
  const auto er = effective_ratio(f.vix, 5);
  const auto c = compare(f.returns, make_gate(er, 1, 0.1));
  EXPECT_GT(c.augmented.sharpe, c.original.sharpe);
  EXPECT_LT(c.augmented.mdd, c.original.mdd);
  EXPECT_EQ(c.augmented.n_skipped, make_gate(er, 1, 0.1).count(S));
  EXPECT_LE(c.augmented.mdd, 1.0);
}

TEST(CompareTest, ReportMeasuresDrawdownFromInitialValue) {
  const auto r = returns_of({-0.5, 0.1, 0.1});
  const auto report = evaluate(r);
  EXPECT_NEAR(report.mdd, 0.5, 1e-15);
  EXPECT_TRUE(report.calmar);
  const auto up = evaluate(returns_of({0.01, 0.02, 0.0}));
  EXPECT_EQ(up.mdd, 0.0);
  EXPECT_FALSE(up.calmar);
}

}  // namespace
}  // namespace vixgate
