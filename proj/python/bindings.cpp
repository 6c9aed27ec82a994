#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "vixgate/backtest.hpp"
#include "vixgate/effratio.hpp"
#include "vixgate/error.hpp"
#include "vixgate/gate.hpp"
#include "vixgate/marketdata.hpp"
#include "vixgate/olsscan.hpp"
#include "vixgate/report.hpp"
#include "vixgate/vixcalc.hpp"

namespace py = pybind11;
using namespace vixgate;

namespace {

SeriesKind kind_from(const std::string& name) {
  if (name == "return") return SeriesKind::kReturn;
  if (name == "vix") return SeriesKind::kVixLevel;
  if (name == "equity") return SeriesKind::kEquityValue;
  throw InvalidArgument("series kind must be return, vix or equity, got " + name);
}

std::string kind_name(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::kReturn: return "return";
    case SeriesKind::kVixLevel: return "vix";
    case SeriesKind::kEquityValue: return "equity";
  }
  return "";
}

std::vector<TradingDate> parse_dates(const std::vector<std::string>& text) {
  std::vector<TradingDate> out;
  out.reserve(text.size());
  for (const auto& t : text) out.push_back(TradingDate::parse(t));
  return out;
}

template <typename Range>
std::vector<std::string> date_strings(const Range& dates) {
  std::vector<std::string> out;
  out.reserve(dates.size());
  for (const auto& d : dates) out.push_back(d.to_string());
  return out;
}

OptionSide side_from(const std::string& s) {
  if (s == "C" || s == "c" || s == "call") return OptionSide::kCall;
  if (s == "P" || s == "p" || s == "put") return OptionSide::kPut;
  throw InvalidArgument("option side must be C or P, got " + s);
}

py::object to_python(const report::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "VIX effective-ratio gating of daily strategy returns";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgumentError", base);
  py::register_exception<DataError>(m, "DataError", base);
  py::register_exception<DegenerateError>(m, "DegenerateError", base);

  py::class_<DailySeries>(m, "DailySeries")
      .def(py::init([](const std::string& kind, const std::vector<std::string>& dates,
                       std::vector<double> values) {
             return DailySeries(kind_from(kind), parse_dates(dates), std::move(values));
           }),
           py::arg("kind"), py::arg("dates"), py::arg("values"))
      .def_property_readonly("kind", [](const DailySeries& s) { return kind_name(s.kind()); })
      .def_property_readonly("dates", [](const DailySeries& s) { return date_strings(s.dates()); })
      .def_property_readonly("values", [](const DailySeries& s) {
        return std::vector<double>(s.values().begin(), s.values().end());
      })
      .def("__len__", &DailySeries::size)
      .def("__eq__", [](const DailySeries& a, const DailySeries& b) { return a == b; })
      .def("__repr__", [](const DailySeries& s) {
        return "DailySeries(kind=" + kind_name(s.kind()) + ", n=" + std::to_string(s.size()) + ")";
      });

  m.def("load_series",
        [](const std::filesystem::path& path, const std::string& kind, bool percent) {
          return load_daily_series(path, kind_from(kind), LoadOptions{percent});
        },
        py::arg("path"), py::arg("kind"), py::arg("percent") = false,
        "Read a `date,value` CSV.");

  py::class_<VixComputation>(m, "VixComputation")
      .def_readonly("sigma_squared", &VixComputation::sigma_squared)
      .def_readonly("vix_level", &VixComputation::vix_level)
      .def_readonly("forward", &VixComputation::forward)
      .def_readonly("x0", &VixComputation::x0)
      .def_readonly("strip_term", &VixComputation::strip_term)
      .def_readonly("forward_correction", &VixComputation::forward_correction)
      .def_property_readonly("strikes", [](const VixComputation& v) {
        std::vector<std::pair<double, double>> out;
        for (const auto& s : v.strikes) out.emplace_back(s.strike, s.mid);
        return out;
      })
      .def("to_dict", [](const VixComputation& v) { return to_python(report::to_json(v)); });

  m.def("compute_vix",
        [](const std::vector<std::tuple<double, std::string, double>>& quotes, double t,
           double r, std::optional<double> c0, std::optional<double> p0,
           std::optional<double> atm, bool literal_dx) {
          OptionChain chain;
          chain.expiry_years = t;
          chain.risk_free_rate = r;
          for (const auto& [strike, side, mid] : quotes) {
            chain.quotes.push_back({strike, mid, side_from(side)});
          }
          chain.atm_call_mid = c0;
          chain.atm_put_mid = p0;
          chain.atm_strike_hint = atm;
          VixOptions options;
          if (literal_dx) options.spacing = SpacingRule::kLiteralAverage;
          return compute_vix(chain, options);
        },
        py::arg("quotes"), py::arg("t"), py::arg("r") = 0.0, py::arg("c0") = py::none(),
        py::arg("p0") = py::none(), py::arg("atm") = py::none(),
        py::arg("literal_dx") = false,
        "VIX from (strike, side, mid) quotes with side 'C' or 'P'.");

  py::class_<ErSeries>(m, "ErSeries")
      .def_property_readonly("window", &ErSeries::window)
      .def_property_readonly("dates", [](const ErSeries& e) { return date_strings(e.dates()); })
      .def_property_readonly("values", [](const ErSeries& e) {
        return std::vector<std::optional<double>>(e.values().begin(), e.values().end());
      })
      .def("at", [](const ErSeries& e, const std::string& d) { return e.at(TradingDate::parse(d)); })
      .def("__len__", &ErSeries::size);

  m.def("effective_ratio", &effective_ratio, py::arg("series"), py::arg("window"));
  m.def("effective_ratio_values",
        [](const std::vector<double>& v, int window) { return effective_ratio_values(v, window); },
        py::arg("values"), py::arg("window"));
  m.def("negate", &negate, py::arg("er"));
  m.def("oriented", &oriented, py::arg("er"), py::arg("sign"));

  m.def("ols_slope",
        [](const std::vector<double>& x, const std::vector<double>& y) {
          return ols_slope(x, y).slope;
        },
        py::arg("x"), py::arg("y"));

  py::class_<ScanResult>(m, "ScanResult")
      .def_property_readonly("best_window", [](const ScanResult& s) { return s.best.window; })
      .def_property_readonly("best_sign", [](const ScanResult& s) { return s.best.sign; })
      .def_property_readonly("best_coefficient",
                             [](const ScanResult& s) { return s.best.coefficient; })
      .def("to_dict", [](const ScanResult& s) { return to_python(report::to_json(s)); });

  m.def("scan_windows",
        [](const DailySeries& vix, const DailySeries& returns, int mmin, int mmax,
           const std::vector<int>& signs) {
          return scan_windows(vix, returns, mmin, mmax, signs);
        },
        py::arg("vix"), py::arg("returns"), py::arg("window_min") = 1,
        py::arg("window_max") = 20, py::arg("signs") = std::vector<int>{-1, 1});

  py::class_<GateSignal>(m, "GateSignal")
      .def_readonly("window", &GateSignal::window)
      .def_readonly("direction", &GateSignal::direction)
      .def_readonly("threshold", &GateSignal::threshold)
      .def_property_readonly("dates", [](const GateSignal& g) { return date_strings(g.dates); })
      .def_property_readonly("decisions", [](const GateSignal& g) {
        std::vector<std::string> out;
        for (auto d : g.decisions) out.emplace_back(to_string(d));
        return out;
      });

  m.def("make_gate", &make_gate, py::arg("er"), py::arg("direction"),
        py::arg("threshold") = kDefaultThreshold);
  m.def("gate_direction_for_orientation", &gate_direction_for_orientation,
        py::arg("orientation"));

  m.def("tune_threshold",
        [](const ErSeries& er, const DailySeries& returns, int direction,
           const std::vector<double>& candidates) {
          const auto t = tune_threshold(er, returns, direction, candidates);
          py::list trials;
          for (const auto& trial : t.trials) {
            trials.append(py::make_tuple(trial.threshold, trial.report.sharpe));
          }
          return py::make_tuple(t.best_threshold, trials);
        },
        py::arg("er"), py::arg("returns"), py::arg("direction"), py::arg("candidates"),
        "Returns (best_threshold, [(threshold, sharpe), ...]).");

  m.def("basis_signal",
        [](double future, double cash, double conv) {
          return std::string(to_string(basis_signal(future, cash, conv).action));
        },
        py::arg("front_future"), py::arg("cash_vix"), py::arg("expected_convergence"));

  m.def("apply_gate", &apply_gate, py::arg("returns"), py::arg("gate"));
  m.def("equity_curve", &equity_curve, py::arg("returns"), py::arg("initial") = 5.0);
  m.def("sharpe_ratio",
        [](const std::vector<double>& r, double ppy) { return sharpe_ratio(r, ppy); },
        py::arg("returns"), py::arg("periods_per_year") = kTradingDaysPerYear);
  m.def("max_drawdown", [](const std::vector<double>& e) { return max_drawdown(e); },
        py::arg("equity"));
  m.def("calmar_ratio",
        [](const std::vector<double>& e, double ppy) { return calmar_ratio(e, ppy); },
        py::arg("equity"), py::arg("periods_per_year") = kTradingDaysPerYear);

  m.def("compare",
        [](const DailySeries& returns, const GateSignal& gate, double initial) {
          BacktestOptions options;
          options.initial_value = initial;
          return to_python(report::comparison_json(compare(returns, gate, options)));
        },
        py::arg("returns"), py::arg("gate"), py::arg("initial") = 5.0,
        "Original vs gated metrics as a dict, including the caption line.");
}
