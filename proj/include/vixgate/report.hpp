#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "vixgate/backtest.hpp"
#include "vixgate/effratio.hpp"
#include "vixgate/gate.hpp"
#include "vixgate/olsscan.hpp"
#include "vixgate/vixcalc.hpp"

namespace vixgate::report {

using Json = nlohmann::ordered_json;

// "pos" / "neg".
std::string_view sign_label(int sign);

// "increased", "decreased" or "unchanged".
std::string_view change_direction(double before, double after);

Json to_json(const VixComputation& vix);
Json to_json(const ScanResult& scan);
Json to_json(const ScanChoice& choice);
Json to_json(const BacktestReport& report);
Json to_json(const BasisDecision& decision);

// Original vs gated metrics plus the direction of every change.
Json comparison_json(const Comparison& comparison);

// "original: SR 1.01, MDD 0.67, Calmar 1.32; augmented: SR 2.71, ..."
std::string caption(const Comparison& comparison);

std::string vix_strikes_csv(const VixComputation& vix);
std::string er_csv(const ErSeries& er);             // date,er
std::string gate_csv(const GateSignal& gate);       // date,decision
std::string scan_csv(const ScanResult& scan);       // m,sign,coef,n
std::string tuning_csv(const ThresholdTuning& tuning);

/// Plot-ready overlay of a gated backtest, one row per return date:
/// date, return and gated return in percent, decision, both equity curves,
/// VIX / 10 and the oriented ER * 10 (blank during warm-up).
std::string overlay_csv(const DailySeries& returns, const GateSignal& gate,
                        const Comparison& comparison, const DailySeries& vix,
                        const ErSeries& oriented_er);

}  // namespace vixgate::report
