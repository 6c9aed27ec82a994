#include "vixgate/report.hpp"

#include <cstdio>
#include <sstream>

namespace vixgate::report {

namespace {

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::string two_decimals(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", *v);
  return buf;
}

std::string optional_decimal(const std::optional<double>& v) {
  return v ? format_decimal(*v) : std::string();
}

}  // namespace

std::string_view sign_label(int sign) { return sign < 0 ? "neg" : "pos"; }

std::string_view change_direction(double before, double after) {
  if (after > before) return "increased";
  if (after < before) return "decreased";
  return "unchanged";
}

Json to_json(const VixComputation& vix) {
  Json strikes = Json::array();
  for (const auto& s : vix.strikes) {
    strikes.push_back({{"strike", s.strike}, {"dx", s.spacing}, {"mid", s.mid}});
  }
  return {{"sigma_squared", vix.sigma_squared},
          {"vix_level", vix.vix_level},
          {"forward", vix.forward},
          {"x0", vix.x0},
          {"strip_term", vix.strip_term},
          {"forward_correction", vix.forward_correction},
          {"strikes", std::move(strikes)}};
}

Json to_json(const ScanChoice& choice) {
  return {{"m", choice.window},
          {"sign", sign_label(choice.sign)},
          {"coef", choice.coefficient},
          {"n", choice.n_obs}};
}

Json to_json(const ScanResult& scan) {
  Json entries = Json::array();
  for (const auto& e : scan.entries) {
    Json entry = {{"m", e.window},
                  {"sign", sign_label(e.sign)},
                  {"coef", optional_number(e.coefficient)},
                  {"n", e.n_obs}};
    if (!e.coefficient) entry["reason"] = e.reason;
    entries.push_back(std::move(entry));
  }
  return {{"mmin", scan.window_min},
          {"mmax", scan.window_max},
          {"entries", std::move(entries)},
          {"best", to_json(scan.best)}};
}

Json to_json(const BacktestReport& report) {
  Json out = {{"sharpe", report.sharpe},
              {"mdd", report.mdd},
              {"calmar", optional_number(report.calmar)}};
  if (!report.calmar) out["calmar_note"] = "no drawdown";
  out["final_value"] = report.final_value;
  out["initial_value"] = report.initial_value;
  out["annualized_return"] = report.annualized_return;
  out["n_days"] = report.n_days;
  out["n_skipped"] = report.n_skipped;
  return out;
}

Json to_json(const BasisDecision& decision) {
  return {{"action", to_string(decision.action)},
          {"future", decision.front_future},
          {"cash", decision.cash_vix},
          {"conv", decision.expected_convergence}};
}

Json comparison_json(const Comparison& comparison) {
  const auto& o = comparison.original;
  const auto& a = comparison.augmented;
  Json changes = {{"sharpe", change_direction(o.sharpe, a.sharpe)},
                  {"mdd", change_direction(o.mdd, a.mdd)}};
  if (o.calmar && a.calmar) {
    changes["calmar"] = change_direction(*o.calmar, *a.calmar);
  } else {
    changes["calmar"] = nullptr;
  }
  changes["final_value"] = change_direction(o.final_value, a.final_value);
  return {{"original", to_json(o)},
          {"augmented", to_json(a)},
          {"n_skipped", a.n_skipped},
          {"changes", std::move(changes)},
          {"caption", caption(comparison)}};
}

std::string caption(const Comparison& comparison) {
  const auto line = [](const BacktestReport& r) {
    return "SR " + two_decimals(r.sharpe) + ", MDD " + two_decimals(r.mdd) +
           ", Calmar " + two_decimals(r.calmar);
  };
  return "original: " + line(comparison.original) +
         "; augmented: " + line(comparison.augmented);
}

std::string vix_strikes_csv(const VixComputation& vix) {
  std::ostringstream out;
  out << "strike,dx,mid\n";
  for (const auto& s : vix.strikes) {
    out << format_decimal(s.strike) << ',' << format_decimal(s.spacing) << ','
        << format_decimal(s.mid) << '\n';
  }
  return out.str();
}

std::string er_csv(const ErSeries& er) {
  std::ostringstream out;
  out << "date,er\n";
  for (std::size_t i = 0; i < er.size(); ++i) {
    out << er.date(i).to_string() << ',' << optional_decimal(er.value(i))
        << '\n';
  }
  return out.str();
}

std::string gate_csv(const GateSignal& gate) {
  std::ostringstream out;
  out << "date,decision\n";
  for (std::size_t i = 0; i < gate.dates.size(); ++i) {
    out << gate.dates[i].to_string() << ',' << to_string(gate.decisions[i])
        << '\n';
  }
  return out.str();
}

std::string scan_csv(const ScanResult& scan) {
  std::ostringstream out;
  out << "m,sign,coef,n\n";
  for (const auto& e : scan.entries) {
    out << e.window << ',' << sign_label(e.sign) << ','
        << optional_decimal(e.coefficient) << ',' << e.n_obs << '\n';
  }
  return out.str();
}

std::string tuning_csv(const ThresholdTuning& tuning) {
  std::ostringstream out;
  out << "theta,sharpe,mdd,calmar,final_value,n_skipped\n";
  for (const auto& t : tuning.trials) {
    out << format_decimal(t.threshold) << ',' << format_decimal(t.report.sharpe)
        << ',' << format_decimal(t.report.mdd) << ','
        << optional_decimal(t.report.calmar) << ','
        << format_decimal(t.report.final_value) << ',' << t.report.n_skipped
        << '\n';
  }
  return out.str();
}

std::string overlay_csv(const DailySeries& returns, const GateSignal& gate,
                        const Comparison& comparison, const DailySeries& vix,
                        const ErSeries& oriented_er) {
  const auto gated = apply_gate(returns, gate);
  const auto points = align(returns, vix);
  std::ostringstream out;
  out << "date,return_pct,gated_return_pct,decision,equity_original,"
         "equity_augmented,vix_div10,signed_er_x10\n";
  for (std::size_t i = 0, p = 0; i < returns.size(); ++i) {
    const auto& date = returns.date(i);
    while (p < points.size() && points[p].date < date) ++p;
    const bool has_vix = p < points.size() && points[p].date == date;
    const auto er = oriented_er.at(date);
    out << date.to_string() << ',' << format_decimal(returns.value(i) * 100.0)
        << ',' << format_decimal(gated.value(i) * 100.0) << ','
        << to_string(*gate.decision_on(date)) << ','
        << format_decimal(comparison.original.equity_curve.value(i)) << ','
        << format_decimal(comparison.augmented.equity_curve.value(i)) << ','
        << (has_vix ? format_decimal(points[p].b / 10.0) : std::string()) << ','
        << (er ? format_decimal(*er * 10.0) : std::string()) << '\n';
  }
  return out.str();
}

}  // namespace vixgate::report
