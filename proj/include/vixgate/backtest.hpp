#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "vixgate/gate_signal.hpp"
#include "vixgate/marketdata.hpp"

namespace vixgate {

inline constexpr double kTradingDaysPerYear = 252.0;

struct BacktestOptions {
  double initial_value = 5.0;
  double periods_per_year = kTradingDaysPerYear;
};

struct BacktestReport {
  DailySeries equity_curve;  // one point per return date, after that return
  double initial_value = 0.0;
  double final_value = 0.0;
  double sharpe = 0.0;
  double mdd = 0.0;  // fraction in [0, 1], measured from the initial value on
  double annualized_return = 0.0;
  std::optional<double> calmar;  // absent when there is no drawdown
  std::size_t n_days = 0;
  std::size_t n_skipped = 0;
};

struct Comparison {
  BacktestReport original;
  BacktestReport augmented;
};

// Skip days earn exactly zero; Trade and NoSignal days keep their return.
// Throws DataError when the gate has no decision for some return date.
DailySeries apply_gate(const DailySeries& returns, const GateSignal& gate);

// E[t] = E[t-1] * (1 + r[t]) starting from `initial`. The initial value
// itself is not part of the output.
DailySeries equity_curve(const DailySeries& returns, double initial);

// mean / sample std * sqrt(periods_per_year), zero risk-free rate.
double sharpe_ratio(std::span<const double> returns,
                    double periods_per_year = kTradingDaysPerYear);
double sharpe_ratio(const DailySeries& returns,
                    double periods_per_year = kTradingDaysPerYear);

// Largest 1 - E[t] / max(E[s], s <= t).
double max_drawdown(std::span<const double> equity);
double max_drawdown(const DailySeries& equity);

// (end / start)^(periods_per_year / n_days) - 1.
double annualized_return(double start, double end, double n_days,
                         double periods_per_year = kTradingDaysPerYear);

// annualized_return(first, last, number of points) / max_drawdown.
// Throws DegenerateError ("no drawdown") when the drawdown is zero.
double calmar_ratio(std::span<const double> equity,
                    double periods_per_year = kTradingDaysPerYear);
double calmar_ratio(const DailySeries& equity,
                    double periods_per_year = kTradingDaysPerYear);

BacktestReport evaluate(const DailySeries& returns,
                        const BacktestOptions& options = {},
                        std::size_t n_skipped = 0);

// Original and gated reports over the same dates.
Comparison compare(const DailySeries& returns, const GateSignal& gate,
                   const BacktestOptions& options = {});

}  // namespace vixgate
