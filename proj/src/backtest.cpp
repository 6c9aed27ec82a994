#include "vixgate/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vixgate/error.hpp"
#include "vixgate/numeric.hpp"

namespace vixgate {

DailySeries apply_gate(const DailySeries& returns, const GateSignal& gate) {
  std::vector<double> gated(returns.values().begin(), returns.values().end());
  for (std::size_t i = 0; i < returns.size(); ++i) {
    const auto decision = gate.decision_on(returns.date(i));
    if (!decision) {
      throw DataError("gate has no decision for " +
                      returns.date(i).to_string());
    }
    if (*decision == GateDecision::kSkip) gated[i] = 0.0;
  }
  return returns.with_values(SeriesKind::kReturn, std::move(gated));
}

DailySeries equity_curve(const DailySeries& returns, double initial) {
  if (!(initial > 0.0) || !std::isfinite(initial)) {
    throw InvalidArgument("initial portfolio value must be positive");
  }
  std::vector<double> equity;
  equity.reserve(returns.size());
  double value = initial;
  for (std::size_t i = 0; i < returns.size(); ++i) {
    const double r = returns.value(i);
    if (r <= -1.0) {
      throw DataError("return " + format_decimal(r) + " on " +
                      returns.date(i).to_string() + " wipes out the portfolio");
    }
    value *= 1.0 + r;
    equity.push_back(value);
  }
  return returns.with_values(SeriesKind::kEquityValue, std::move(equity));
}

double sharpe_ratio(std::span<const double> returns, double periods_per_year) {
  if (returns.size() < 2) {
    throw DataError("Sharpe ratio needs at least 2 returns");
  }
  if (std::all_of(returns.begin(), returns.end(),
                  [&](double r) { return r == returns[0]; })) {
    throw DegenerateError("Sharpe ratio undefined: returns have zero variance");
  }
  const double mean = compensated_mean(returns);
  CompensatedSum squares;
  for (double r : returns) squares.add((r - mean) * (r - mean));
  const double sd =
      std::sqrt(squares.value() / static_cast<double>(returns.size() - 1));
  if (sd == 0.0) {
    throw DegenerateError("Sharpe ratio undefined: returns have zero variance");
  }
  return mean / sd * std::sqrt(periods_per_year);
}

double sharpe_ratio(const DailySeries& returns, double periods_per_year) {
  return sharpe_ratio(returns.values(), periods_per_year);
}

double max_drawdown(std::span<const double> equity) {
  if (equity.empty()) throw DataError("max drawdown of an empty series");
  double peak = equity[0];
  double worst = 0.0;
  for (double e : equity) {
    if (!(e > 0.0)) throw DataError("equity must stay positive");
    peak = std::max(peak, e);
    worst = std::max(worst, 1.0 - e / peak);
  }
  return worst;
}

double max_drawdown(const DailySeries& equity) {
  return max_drawdown(equity.values());
}

double annualized_return(double start, double end, double n_days,
                         double periods_per_year) {
  if (!(start > 0.0) || !(end > 0.0)) {
    throw DataError("equity must stay positive");
  }
  if (!(n_days > 0.0)) throw DataError("annualization needs a positive span");
  return std::pow(end / start, periods_per_year / n_days) - 1.0;
}

double calmar_ratio(std::span<const double> equity, double periods_per_year) {
  if (equity.size() < 2) throw DataError("Calmar ratio needs at least 2 points");
  const double mdd = max_drawdown(equity);
  if (mdd == 0.0) throw DegenerateError("Calmar ratio undefined: no drawdown");
  return annualized_return(equity.front(), equity.back(),
                           static_cast<double>(equity.size()),
                           periods_per_year) /
         mdd;
}

double calmar_ratio(const DailySeries& equity, double periods_per_year) {
  return calmar_ratio(equity.values(), periods_per_year);
}

BacktestReport evaluate(const DailySeries& returns,
                        const BacktestOptions& options,
                        std::size_t n_skipped) {
  if (!(options.periods_per_year > 0.0)) {
    throw InvalidArgument("annualization factor must be positive");
  }
  BacktestReport report;
  report.equity_curve = equity_curve(returns, options.initial_value);
  report.initial_value = options.initial_value;
  report.final_value = returns.empty() ? options.initial_value
                                       : report.equity_curve.values().back();
  report.n_days = returns.size();
  report.n_skipped = n_skipped;
  report.sharpe = sharpe_ratio(returns, options.periods_per_year);

  std::vector<double> path;
  path.reserve(returns.size() + 1);
  path.push_back(options.initial_value);
  path.insert(path.end(), report.equity_curve.values().begin(),
              report.equity_curve.values().end());
  report.mdd = max_drawdown(path);
  report.annualized_return =
      annualized_return(report.initial_value, report.final_value,
                        static_cast<double>(report.n_days),
                        options.periods_per_year);
  if (report.mdd > 0.0) report.calmar = report.annualized_return / report.mdd;
  return report;
}

Comparison compare(const DailySeries& returns, const GateSignal& gate,
                   const BacktestOptions& options) {
  const DailySeries gated = apply_gate(returns, gate);
  std::size_t skipped = 0;
  for (const auto& date : returns.dates()) {
    if (gate.decision_on(date) == GateDecision::kSkip) ++skipped;
  }
  return {evaluate(returns, options, 0), evaluate(gated, options, skipped)};
}

}  // namespace vixgate
