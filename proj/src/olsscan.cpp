#include "vixgate/olsscan.hpp"

#include <algorithm>

#include "vixgate/effratio.hpp"
#include "vixgate/error.hpp"
#include "vixgate/numeric.hpp"

namespace vixgate {

OlsFit ols_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InvalidArgument("regressor and response differ in length");
  }
  if (x.size() < 2) {
    throw DataError("OLS needs at least 2 points, got " +
                    std::to_string(x.size()));
  }
  if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; })) {
    throw DegenerateError("OLS regressor is constant");
  }
  const double mean_x = compensated_mean(x);
  const double mean_y = compensated_mean(y);
  CompensatedSum sxy;
  CompensatedSum sxx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    sxy.add(dx * (y[i] - mean_y));
    sxx.add(dx * dx);
  }
  return {sxy.value() / sxx.value(), x.size()};
}

ScanResult scan_windows(const DailySeries& vix, const DailySeries& returns,
                        int window_min, int window_max,
                        std::span<const int> signs) {
  if (window_min < 1 || window_max < window_min) {
    throw InvalidArgument("scan range must satisfy 1 <= min <= max");
  }
  std::vector<int> ordered;
  for (int s : signs) {
    if (s != 1 && s != -1) throw InvalidArgument("scan signs must be +1 or -1");
    if (std::find(ordered.begin(), ordered.end(), s) == ordered.end()) {
      ordered.push_back(s);
    }
  }
  if (ordered.empty()) throw InvalidArgument("no scan signs requested");
  std::sort(ordered.begin(), ordered.end());

  ScanResult result;
  result.window_min = window_min;
  result.window_max = window_max;
  std::optional<ScanChoice> best;

  for (int m = window_min; m <= window_max; ++m) {
    std::optional<ErSeries> er;
    std::string er_failure;
    try {
      er = effective_ratio(vix, m);
    } catch (const Error& e) {
      er_failure = e.what();
    }

    for (int sign : ordered) {
      ScanEntry entry{m, sign, std::nullopt, 0, {}};
      if (!er) {
        entry.reason = er_failure;
        result.entries.push_back(std::move(entry));
        continue;
      }
      std::vector<double> x;
      std::vector<double> y;
      for (std::size_t i = 0; i < returns.size(); ++i) {
        if (const auto e = er->at(returns.date(i))) {
          x.push_back(sign * *e);
          y.push_back(returns.value(i));
        }
      }
      entry.n_obs = x.size();
      try {
        entry.coefficient = ols_slope(x, y).slope;
      } catch (const Error& e) {
        entry.reason = e.what();
      }
      if (entry.coefficient &&
          (!best || *entry.coefficient > best->coefficient)) {
        best = ScanChoice{m, sign, *entry.coefficient, entry.n_obs};
      }
      result.entries.push_back(std::move(entry));
    }
  }

  if (!best) {
    throw DataError("no (window, sign) pair could be fitted: " +
                    result.entries.front().reason);
  }
  result.best = *best;
  return result;
}

}  // namespace vixgate
