#pragma once

#include <span>
#include <vector>

#include "vixgate/backtest.hpp"
#include "vixgate/effratio.hpp"
#include "vixgate/gate_signal.hpp"

namespace vixgate {

inline constexpr double kDefaultThreshold = 0.1;

// Skip on t iff direction * er[t] >= threshold; warm-up dates get NoSignal.
// threshold must lie in (0, 1], direction in {+1, -1}.
GateSignal make_gate(const ErSeries& er, int direction, double threshold);

// A scan picks the ER orientation whose coefficient with returns is largest.
// Poor days are those where that oriented ER is strongly negative, so the
// gate direction is the opposite sign.
constexpr int gate_direction_for_orientation(int orientation) {
  return -orientation;
}

struct ThresholdTrial {
  double threshold = 0.0;
  BacktestReport report;  // gated strategy
};

struct ThresholdTuning {
  double best_threshold = 0.0;
  std::vector<ThresholdTrial> trials;  // in candidate order
};

/// Runs the gated backtest for each candidate threshold and keeps the one
/// with the highest Sharpe ratio; ties go to the larger threshold. Returns
/// must be covered by the ER dates. Backtest errors propagate.
ThresholdTuning tune_threshold(const ErSeries& er, const DailySeries& returns,
                               int direction, std::span<const double> candidates,
                               const BacktestOptions& options = {});

enum class BasisAction { kShortFuture, kBuyFuture, kNoTrade };

std::string_view to_string(BasisAction action);

struct BasisDecision {
  BasisAction action = BasisAction::kNoTrade;
  double front_future = 0.0;
  double cash_vix = 0.0;
  double expected_convergence = 0.0;
};

inline constexpr double kMinBasisConvergence = 0.1;  // VIX points per day

// Short a rich front future, buy a cheap one, but only when the expected
// daily convergence exceeds 0.1 VIX points.
BasisDecision basis_signal(double front_future, double cash_vix,
                           double expected_convergence);

}  // namespace vixgate
