#include "vixgate/effratio.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vixgate/error.hpp"

namespace vixgate {

ErSeries::ErSeries(int window, SeriesKind source_kind,
                   std::vector<TradingDate> dates,
                   std::vector<std::optional<double>> values)
    : window_(window),
      source_kind_(source_kind),
      dates_(std::move(dates)),
      values_(std::move(values)) {
  if (window_ < 1) throw InvalidArgument("ER window must be >= 1");
  if (dates_.size() != values_.size()) {
    throw DataError("ER series dates and values differ in length");
  }
  for (const auto& v : values_) {
    if (v && !(std::fabs(*v) <= 1.0)) {
      throw DataError("ER value outside [-1, 1]");
    }
  }
}

std::optional<double> ErSeries::at(const TradingDate& date) const {
  const auto it = std::lower_bound(dates_.begin(), dates_.end(), date);
  if (it == dates_.end() || *it != date) return std::nullopt;
  return values_[static_cast<std::size_t>(it - dates_.begin())];
}

std::vector<std::optional<double>> effective_ratio_values(
    std::span<const double> values, int window) {
  if (window < 1) throw InvalidArgument("ER window must be >= 1");
  const auto m = static_cast<std::size_t>(window);
  if (values.size() < m + 2) {
    throw DataError("series of length " + std::to_string(values.size()) +
                    " is too short for ER window " + std::to_string(window) +
                    " (needs " + std::to_string(m + 2) + ")");
  }
  std::vector<std::optional<double>> out(values.size());
  for (std::size_t t = m + 1; t < values.size(); ++t) {
    double net = 0.0;
    double path = 0.0;
    // Oldest change first: v[t-1-M] -> ... -> v[t-1].
    for (std::size_t i = m; i >= 1; --i) {
      const double change = values[t - i] - values[t - 1 - i];
      net += change;
      path += std::fabs(change);
    }
    out[t] = path == 0.0 ? 0.0 : net / path;
  }
  return out;
}

ErSeries effective_ratio(const DailySeries& series, int window) {
  auto values = effective_ratio_values(series.values(), window);
  return ErSeries(window, series.kind(),
                  {series.dates().begin(), series.dates().end()},
                  std::move(values));
}

ErSeries oriented(const ErSeries& er, int sign) {
  if (sign != 1 && sign != -1) throw InvalidArgument("sign must be +1 or -1");
  std::vector<std::optional<double>> values(er.values().begin(),
                                            er.values().end());
  if (sign == -1) {
    for (auto& v : values) {
      if (v) *v = 0.0 - *v;  // flat windows stay +0
    }
  }
  return ErSeries(er.window(), er.source_kind(),
                  {er.dates().begin(), er.dates().end()}, std::move(values));
}

ErSeries negate(const ErSeries& er) { return oriented(er, -1); }

}  // namespace vixgate
