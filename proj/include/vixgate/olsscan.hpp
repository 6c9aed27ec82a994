#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vixgate/marketdata.hpp"

namespace vixgate {

struct OlsFit {
  double slope = 0.0;
  std::size_t n = 0;
};

// Slope of y on x with an intercept: sum((x-mx)(y-my)) / sum((x-mx)^2).
// Throws DataError for fewer than 2 points, DegenerateError if all x equal.
OlsFit ols_slope(std::span<const double> x, std::span<const double> y);

struct ScanEntry {
  int window = 0;
  int sign = 0;
  // Absent when the pair could not be fitted; `reason` says why.
  std::optional<double> coefficient;
  std::size_t n_obs = 0;
  std::string reason;
};

struct ScanChoice {
  int window = 0;
  int sign = 0;
  double coefficient = 0.0;
  std::size_t n_obs = 0;
};

struct ScanResult {
  std::vector<ScanEntry> entries;  // window ascending, sign -1 before +1
  ScanChoice best;
  int window_min = 0;
  int window_max = 0;
};

/// Regresses same-date returns on sign * ER(vix, M) for every window in
/// [window_min, window_max] and every requested sign, then picks the largest
/// coefficient. Ties go to the smaller window, then to sign -1.
///
/// ER on date t only uses VIX bars before t, so pairing it with the return
/// of t itself involves no lookahead.
ScanResult scan_windows(const DailySeries& vix, const DailySeries& returns,
                        int window_min, int window_max,
                        std::span<const int> signs);

}  // namespace vixgate
