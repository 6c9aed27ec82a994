#include "vixgate/gate.hpp"

#include <algorithm>
#include <cmath>

#include "vixgate/error.hpp"

namespace vixgate {

std::string_view to_string(GateDecision decision) {
  switch (decision) {
    case GateDecision::kTrade:
      return "trade";
    case GateDecision::kSkip:
      return "skip";
    case GateDecision::kNoSignal:
      return "nosignal";
  }
  return "unknown";
}

std::optional<GateDecision> GateSignal::decision_on(
    const TradingDate& date) const {
  const auto it = std::lower_bound(dates.begin(), dates.end(), date);
  if (it == dates.end() || *it != date) return std::nullopt;
  return decisions[static_cast<std::size_t>(it - dates.begin())];
}

std::size_t GateSignal::count(GateDecision decision) const {
  return static_cast<std::size_t>(
      std::count(decisions.begin(), decisions.end(), decision));
}

namespace {

void check_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw InvalidArgument("gate threshold must lie in (0, 1], got " +
                          format_decimal(threshold));
  }
}

}  // namespace

GateSignal make_gate(const ErSeries& er, int direction, double threshold) {
  if (direction != 1 && direction != -1) {
    throw InvalidArgument("gate direction must be +1 or -1");
  }
  check_threshold(threshold);
  GateSignal gate;
  gate.window = er.window();
  gate.direction = direction;
  gate.threshold = threshold;
  gate.dates.assign(er.dates().begin(), er.dates().end());
  gate.decisions.reserve(er.size());
  for (const auto& e : er.values()) {
    if (!e) {
      gate.decisions.push_back(GateDecision::kNoSignal);
    } else {
      gate.decisions.push_back(direction * *e >= threshold ? GateDecision::kSkip
                                                           : GateDecision::kTrade);
    }
  }
  return gate;
}

ThresholdTuning tune_threshold(const ErSeries& er, const DailySeries& returns,
                               int direction, std::span<const double> candidates,
                               const BacktestOptions& options) {
  if (candidates.empty()) throw InvalidArgument("no threshold candidates");
  for (double c : candidates) check_threshold(c);

  ThresholdTuning tuning;
  const ThresholdTrial* best = nullptr;
  for (double threshold : candidates) {
    auto result = compare(returns, make_gate(er, direction, threshold), options);
    tuning.trials.push_back({threshold, std::move(result.augmented)});
  }
  for (const auto& trial : tuning.trials) {
    if (!best || trial.report.sharpe > best->report.sharpe ||
        (trial.report.sharpe == best->report.sharpe &&
         trial.threshold > best->threshold)) {
      best = &trial;
    }
  }
  tuning.best_threshold = best->threshold;
  return tuning;
}

std::string_view to_string(BasisAction action) {
  switch (action) {
    case BasisAction::kShortFuture:
      return "short_future";
    case BasisAction::kBuyFuture:
      return "buy_future";
    case BasisAction::kNoTrade:
      return "no_trade";
  }
  return "unknown";
}

BasisDecision basis_signal(double front_future, double cash_vix,
                           double expected_convergence) {
  if (!std::isfinite(front_future) || !std::isfinite(cash_vix) ||
      !std::isfinite(expected_convergence)) {
    throw InvalidArgument("basis inputs must be finite");
  }
  if (!(cash_vix > 0.0)) throw InvalidArgument("cash VIX must be positive");
  BasisDecision decision{BasisAction::kNoTrade, front_future, cash_vix,
                         expected_convergence};
  if (expected_convergence > kMinBasisConvergence) {
    if (front_future > cash_vix) {
      decision.action = BasisAction::kShortFuture;
    } else if (front_future < cash_vix) {
      decision.action = BasisAction::kBuyFuture;
    }
  }
  return decision;
}

}  // namespace vixgate
