#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "vixgate/marketdata.hpp"

namespace vixgate {

enum class GateDecision { kTrade, kSkip, kNoSignal };

std::string_view to_string(GateDecision decision);

// Per-date trade/skip decisions derived from one ER window.
struct GateSignal {
  int window = 0;
  int direction = 1;  // days with direction * ER >= threshold are skipped
  double threshold = 0.1;
  std::vector<TradingDate> dates;
  std::vector<GateDecision> decisions;

  std::optional<GateDecision> decision_on(const TradingDate& date) const;
  std::size_t count(GateDecision decision) const;
};

}  // namespace vixgate
