#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vixgate/marketdata.hpp"

namespace vixgate {

// Effective ratio of a series for a fixed window, one value per source date.
// A value is missing exactly when fewer than window+1 observations precede
// its date. Present values lie in [-1, 1].
class ErSeries {
 public:
  ErSeries(int window, SeriesKind source_kind, std::vector<TradingDate> dates,
           std::vector<std::optional<double>> values);

  int window() const noexcept { return window_; }
  SeriesKind source_kind() const noexcept { return source_kind_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const TradingDate> dates() const noexcept { return dates_; }
  std::span<const std::optional<double>> values() const noexcept {
    return values_;
  }
  const TradingDate& date(std::size_t i) const { return dates_.at(i); }
  const std::optional<double>& value(std::size_t i) const {
    return values_.at(i);
  }

  // Value on `date`; nullopt when the date is absent or in warm-up.
  std::optional<double> at(const TradingDate& date) const;

  bool operator==(const ErSeries&) const = default;

 private:
  int window_;
  SeriesKind source_kind_;
  std::vector<TradingDate> dates_;
  std::vector<std::optional<double>> values_;
};

/// e[t] = (v[t-1] - v[t-1-M]) / sum_{i=1..M} |v[t-i] - v[t-1-i]|
///
/// Only bars strictly before t enter e[t]. The numerator is accumulated as
/// the telescoping sum of the same bar changes as the denominator, so
/// |e[t]| <= 1 holds exactly in floating point and a monotone window gives
/// exactly +-1. A flat window (zero denominator) yields 0.
///
/// Throws InvalidArgument for window < 1 and DataError when the series has
/// fewer than window + 2 observations.
ErSeries effective_ratio(const DailySeries& series, int window);

// Same computation on a bare value sequence (positions as dates).
std::vector<std::optional<double>> effective_ratio_values(
    std::span<const double> values, int window);

ErSeries negate(const ErSeries& er);

// sign * er with sign in {+1, -1}.
ErSeries oriented(const ErSeries& er, int sign);

}  // namespace vixgate
