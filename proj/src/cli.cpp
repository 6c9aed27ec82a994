#include "vixgate/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "vixgate/backtest.hpp"
#include "vixgate/effratio.hpp"
#include "vixgate/error.hpp"
#include "vixgate/gate.hpp"
#include "vixgate/marketdata.hpp"
#include "vixgate/olsscan.hpp"
#include "vixgate/report.hpp"
#include "vixgate/vixcalc.hpp"

namespace vixgate::cli {

namespace fs = std::filesystem;
using report::Json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<double> kDefaultThetas = {0.05, 0.1,  0.15, 0.2, 0.25,
                                            0.3,  0.35, 0.4,  0.45, 0.5};

int orientation_of(const std::string& label) { return label == "neg" ? -1 : 1; }

std::vector<int> signs_of(const std::string& label) {
  if (label == "pos") return {1};
  if (label == "neg") return {-1};
  return {-1, 1};
}

SeriesKind kind_of(const std::string& label) {
  if (label == "return") return SeriesKind::kReturn;
  if (label == "equity") return SeriesKind::kEquityValue;
  return SeriesKind::kVixLevel;
}

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

Json optional_json(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

// The orientation/direction pair for gate-based commands.
Json gate_params(int window, int orientation,
                 double theta) {
  return {{"m", window},
          {"sign", report::sign_label(orientation)},
          {"gate_direction", gate_direction_for_orientation(orientation)},
          {"theta", theta}};
}

DailySeries load_vix(const RunConfig& c) {
  return load_daily_series(c.vix_path, SeriesKind::kVixLevel);
}

DailySeries load_returns(const RunConfig& c) {
  return load_daily_series(c.returns_path, SeriesKind::kReturn,
                           LoadOptions{c.percent});
}

// Returns restricted to the dates that also carry a VIX value.
DailySeries common_returns(const DailySeries& returns, const DailySeries& vix) {
  const auto points = align(returns, vix);
  std::vector<TradingDate> dates;
  dates.reserve(points.size());
  for (const auto& p : points) dates.push_back(p.date);
  return restrict_to(returns, dates);
}

struct Outputs {
  Outputs(std::string stem_, Json json_, std::vector<Artifact> csv_)
      : stem(std::move(stem_)), json(std::move(json_)), csv(std::move(csv_)) {}

  std::string stem;
  Json json;
  std::vector<Artifact> csv;
  std::optional<std::string> text;  // default stdout form, if any
  bool csv_by_default = false;
};

Outputs run_vix(const RunConfig& c) {
  OptionChain chain;
  chain.expiry_years = c.expiry;
  chain.risk_free_rate = c.rate;
  chain.quotes = load_option_quotes(c.chain_path);
  chain.atm_call_mid = c.c0;
  chain.atm_put_mid = c.p0;
  chain.atm_strike_hint = c.atm;
  const auto vix = compute_vix(
      chain, VixOptions{c.literal_dx ? SpacingRule::kLiteralAverage
                                     : SpacingRule::kHalfDifference});
  Json json = {{"command", "vix"},
               {"params",
                {{"chain", c.chain_path},
                 {"t", c.expiry},
                 {"r", c.rate},
                 {"c0", optional_json(c.c0)},
                 {"p0", optional_json(c.p0)},
                 {"atm", optional_json(c.atm)},
                 {"literal_dx", c.literal_dx}}}};
  json.update(report::to_json(vix));
  return {"vix", std::move(json),
          {{"vix_strikes.csv", report::vix_strikes_csv(vix)}}};
}

Outputs run_er(const RunConfig& c) {
  const auto series = load_daily_series(c.series_path, kind_of(c.series_kind),
                                        LoadOptions{c.percent});
  auto er = effective_ratio(series, *c.window);
  if (c.negate) er = negate(er);
  Json values = Json::array();
  for (std::size_t i = 0; i < er.size(); ++i) {
    values.push_back(
        {{"date", er.date(i).to_string()}, {"er", optional_json(er.value(i))}});
  }
  Json json = {{"command", "er"},
               {"params",
                {{"series", c.series_path},
                 {"kind", c.series_kind},
                 {"percent", c.percent},
                 {"window", *c.window},
                 {"negate", c.negate}}},
               {"values", std::move(values)}};
  Outputs out{"er", std::move(json), {{"er.csv", report::er_csv(er)}}};
  out.csv_by_default = true;
  return out;
}

Outputs run_scan(const RunConfig& c) {
  const auto vix = load_vix(c);
  const auto returns = common_returns(load_returns(c), vix);
  const auto signs = signs_of(c.signs);
  const auto scan =
      scan_windows(vix, returns, c.window_min, c.window_max, signs);
  Json json = {{"command", "scan"},
               {"params",
                {{"vix", c.vix_path},
                 {"returns", c.returns_path},
                 {"percent", c.percent},
                 {"mmin", c.window_min},
                 {"mmax", c.window_max},
                 {"signs", c.signs}}}};
  json.update(report::to_json(scan));
  return {"scan", std::move(json), {{"scan.csv", report::scan_csv(scan)}}};
}

Outputs run_gate(const RunConfig& c) {
  const auto vix = load_vix(c);
  const int orientation = orientation_of(c.sign);
  const auto er = effective_ratio(vix, *c.window);
  const auto gate =
      make_gate(er, gate_direction_for_orientation(orientation), c.theta);
  Json decisions = Json::array();
  for (std::size_t i = 0; i < gate.dates.size(); ++i) {
    decisions.push_back({{"date", gate.dates[i].to_string()},
                         {"decision", to_string(gate.decisions[i])}});
  }
  Json params = {{"vix", c.vix_path}};
  params.update(gate_params(*c.window, orientation, c.theta));
  Json json = {{"command", "gate"},
               {"params", std::move(params)},
               {"n_trade", gate.count(GateDecision::kTrade)},
               {"n_skip", gate.count(GateDecision::kSkip)},
               {"n_nosignal", gate.count(GateDecision::kNoSignal)},
               {"decisions", std::move(decisions)}};
  Outputs out{"gate", std::move(json), {{"gate.csv", report::gate_csv(gate)}}};
  out.csv_by_default = true;
  return out;
}

Outputs run_tune(const RunConfig& c) {
  const auto vix = load_vix(c);
  const auto returns = common_returns(load_returns(c), vix);
  const int orientation = orientation_of(c.sign);
  const auto er = effective_ratio(vix, *c.window);
  const auto& candidates = c.thetas.empty() ? kDefaultThetas : c.thetas;
  const BacktestOptions options{c.initial, c.annualization};
  const auto tuning =
      tune_threshold(er, returns, gate_direction_for_orientation(orientation),
                     candidates, options);
  Json trials = Json::array();
  for (const auto& t : tuning.trials) {
    Json trial = {{"theta", t.threshold}};
    trial.update(report::to_json(t.report));
    trials.push_back(std::move(trial));
  }
  Json json = {{"command", "tune"},
               {"params",
                {{"vix", c.vix_path},
                 {"returns", c.returns_path},
                 {"percent", c.percent},
                 {"m", *c.window},
                 {"sign", c.sign},
                 {"gate_direction", gate_direction_for_orientation(orientation)},
                 {"thetas", candidates},
                 {"initial", c.initial},
                 {"annualization", c.annualization}}},
               {"theta_star", tuning.best_threshold},
               {"trials", std::move(trials)}};
  return {"tune", std::move(json), {{"tune.csv", report::tuning_csv(tuning)}}};
}

Outputs run_basis(const RunConfig& c) {
  const auto decision = basis_signal(c.future, c.cash, c.conv);
  Json json = {{"command", "basis"},
               {"params", {{"future", c.future}, {"cash", c.cash}, {"conv", c.conv}}}};
  json.update(report::to_json(decision));
  std::string line = std::string(to_string(decision.action)) + " future=" +
                     format_decimal(c.future) + " cash=" +
                     format_decimal(c.cash) + " conv=" + format_decimal(c.conv) +
                     "\n";
  std::string csv = "action,future,cash,conv\n" +
                    std::string(to_string(decision.action)) + "," +
                    format_decimal(c.future) + "," + format_decimal(c.cash) +
                    "," + format_decimal(c.conv) + "\n";
  Outputs out{"basis", std::move(json), {{"basis.csv", std::move(csv)}}};
  out.text = std::move(line);
  return out;
}

Outputs run_backtest(const RunConfig& c) {
  const auto vix = load_vix(c);
  const auto returns = common_returns(load_returns(c), vix);

  Json params = {{"returns", c.returns_path},
                 {"vix", c.vix_path},
                 {"percent", c.percent},
                 {"auto_scan", c.auto_scan}};
  std::optional<ScanResult> scan;
  int window = 0;
  int orientation = 0;
  if (c.auto_scan) {
    scan = scan_windows(vix, returns, c.window_min, c.window_max,
                        signs_of(c.signs));
    window = scan->best.window;
    orientation = scan->best.sign;
    params["mmin"] = c.window_min;
    params["mmax"] = c.window_max;
    params["signs"] = c.signs;
  } else {
    window = *c.window;
    orientation = orientation_of(c.sign);
  }
  params.update(gate_params(window, orientation, c.theta));
  params["initial"] = c.initial;
  params["annualization"] = c.annualization;

  const auto er = effective_ratio(vix, window);
  const auto gate =
      make_gate(er, gate_direction_for_orientation(orientation), c.theta);
  const auto comparison =
      compare(returns, gate, BacktestOptions{c.initial, c.annualization});

  Json json = {{"command", "backtest"}, {"params", std::move(params)}};
  if (scan) json["best"] = report::to_json(scan->best);
  json.update(report::comparison_json(comparison));
  if (scan) json["scan"] = report::to_json(*scan)["entries"];

  return {"backtest", std::move(json),
          {{"backtest_overlay.csv",
            report::overlay_csv(returns, gate, comparison, vix,
                                oriented(er, orientation))}}};
}

Outputs dispatch(const RunConfig& c) {
  if (c.command == "vix") return run_vix(c);
  if (c.command == "er") return run_er(c);
  if (c.command == "scan") return run_scan(c);
  if (c.command == "gate") return run_gate(c);
  if (c.command == "tune") return run_tune(c);
  if (c.command == "basis") return run_basis(c);
  if (c.command == "backtest") return run_backtest(c);
  throw UsageError("unknown subcommand '" + c.command + "'");
}

void write_atomically(const fs::path& dir, const std::vector<Artifact>& artifacts) {
  fs::create_directories(dir);
  std::vector<std::pair<fs::path, fs::path>> staged;
  try {
    for (const auto& a : artifacts) {
      const fs::path target = dir / a.name;
      const fs::path temp = dir / ("." + a.name + ".tmp");
      std::ofstream out(temp, std::ios::binary | std::ios::trunc);
      staged.emplace_back(temp, target);
      out << a.content;
      out.close();
      if (!out) throw DataError("cannot write '" + temp.string() + "'");
    }
  } catch (...) {
    std::error_code ignored;
    for (const auto& [temp, target] : staged) fs::remove(temp, ignored);
    throw;
  }
  for (const auto& [temp, target] : staged) fs::rename(temp, target);
}

std::string one_line(std::string message) {
  std::replace(message.begin(), message.end(), '\n', ' ');
  return message;
}

int fail(std::ostream& err, int code, std::string_view category,
         const std::string& message) {
  err << "error: " << category << ": " << one_line(message) << '\n';
  return code;
}

// Appends `--key=value` for every config entry whose flag was not given.
std::vector<std::string> merge_config_file(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;

  std::ifstream in(*path);
  if (!in) throw DataError("cannot open config '" + *path + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(*path + ": line " + std::to_string(line_no) +
                       ": expected key=value");
    }
    const auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const auto& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (!given) args.push_back(flag + "=" + value);
  }
  return args;
}

CLI::Validator unit_interval_open_left() {
  return CLI::Validator(
      [](std::string& input) -> std::string {
        double v = 0.0;
        if (!CLI::detail::lexical_cast(input, v)) return "not a number: " + input;
        if (!(v > 0.0 && v <= 1.0)) return "threshold must lie in (0, 1]";
        return {};
      },
      "(0,1]");
}

void build_app(CLI::App& app, RunConfig& c, std::string& format,
               std::string& config_path) {
  app.require_subcommand(1);
  app.add_option("--out", c.out_dir, "Write outputs into this directory");
  app.add_option("--format", format, "json, csv or both")
      ->check(CLI::IsMember({"json", "csv", "both"}));
  app.add_option("--config", config_path, "key=value file; command-line flags win");

  const auto window_opt = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--window,-m", c.window, "ER window M (bars)")
                    ->check(CLI::Range(1, 100000));
    if (required) opt->required();
    return opt;
  };
  const auto theta_opt = [&](CLI::App* sub) {
    sub->add_option("--theta", c.theta, "Gate threshold in raw ER units")
        ->check(unit_interval_open_left())
        ->capture_default_str();
  };
  const auto sign_opt = [&](CLI::App* sub) {
    sub->add_option("--sign", c.sign,
                    "ER orientation that tracks returns (pos|neg)")
        ->check(CLI::IsMember({"pos", "neg"}))
        ->capture_default_str();
  };
  const auto scan_opts = [&](CLI::App* sub) {
    sub->add_option("--mmin", c.window_min)->check(CLI::Range(1, 100000));
    sub->add_option("--mmax", c.window_max)->check(CLI::Range(1, 100000));
    sub->add_option("--signs", c.signs)
        ->check(CLI::IsMember({"both", "pos", "neg"}));
  };
  const auto pair_inputs = [&](CLI::App* sub) {
    sub->add_option("--vix", c.vix_path, "VIX series CSV")->required();
    sub->add_option("--returns", c.returns_path, "Daily return CSV")->required();
    sub->add_flag("--percent", c.percent, "Returns are given in percent");
  };
  const auto backtest_opts = [&](CLI::App* sub) {
    sub->add_option("--initial", c.initial, "Initial portfolio value")
        ->check(CLI::PositiveNumber);
    sub->add_option("--annualization", c.annualization,
                    "Trading periods per year")
        ->check(CLI::PositiveNumber);
  };

  auto* vix = app.add_subcommand("vix", "VIX value of one option chain");
  vix->add_option("--chain", c.chain_path, "strike,side,mid CSV")->required();
  vix->add_option("--t", c.expiry, "Time to expiry in years")
      ->required()
      ->check(CLI::PositiveNumber);
  vix->add_option("--r", c.rate, "Risk-free rate, continuous");
  vix->add_option("--c0", c.c0, "ATM call midprice")->check(CLI::NonNegativeNumber);
  vix->add_option("--p0", c.p0, "ATM put midprice")->check(CLI::NonNegativeNumber);
  vix->add_option("--atm", c.atm, "ATM strike seeding the forward")
      ->check(CLI::PositiveNumber);
  vix->add_flag("--literal-dx", c.literal_dx,
                "Strike spacing as the average of neighbours");

  auto* er = app.add_subcommand("er", "Effective ratio of a series");
  er->add_option("--series", c.series_path, "date,value CSV")->required();
  er->add_option("--kind", c.series_kind)
      ->check(CLI::IsMember({"vix", "return", "equity"}));
  er->add_flag("--percent", c.percent, "Values are given in percent");
  window_opt(er, true);
  er->add_flag("--negate", c.negate, "Emit the negative ER");

  auto* scan = app.add_subcommand("scan", "OLS coefficient scan over windows");
  pair_inputs(scan);
  scan_opts(scan);

  auto* gate = app.add_subcommand("gate", "Daily trade/skip decisions");
  gate->add_option("--vix", c.vix_path, "VIX series CSV")->required();
  window_opt(gate, true);
  sign_opt(gate);
  theta_opt(gate);

  auto* tune = app.add_subcommand("tune", "Pick the gate threshold by Sharpe");
  pair_inputs(tune);
  window_opt(tune, true);
  sign_opt(tune);
  tune->add_option("--thetas", c.thetas, "Comma-separated candidates")
      ->delimiter(',')
      ->check(unit_interval_open_left());
  backtest_opts(tune);

  auto* basis = app.add_subcommand("basis", "VIX futures basis rule");
  basis->add_option("--future", c.future, "Front future price")->required();
  basis->add_option("--cash", c.cash, "Cash VIX")
      ->required()
      ->check(CLI::PositiveNumber);
  basis->add_option("--conv", c.conv, "Expected daily convergence (VIX points)")
      ->required();

  auto* backtest =
      app.add_subcommand("backtest", "Original vs gated strategy report");
  pair_inputs(backtest);
  auto* w = window_opt(backtest, false);
  auto* auto_scan =
      backtest->add_flag("--auto-scan", c.auto_scan, "Choose M and sign by scan");
  w->excludes(auto_scan);
  sign_opt(backtest);
  theta_opt(backtest);
  scan_opts(backtest);
  backtest_opts(backtest);

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();
  }
}

}  // namespace

std::vector<Artifact> execute(const RunConfig& config) {
  if (config.window_min > config.window_max) {
    throw InvalidArgument("--mmin must not exceed --mmax");
  }
  Outputs outputs = dispatch(config);
  std::vector<Artifact> artifacts;
  const auto json = [&] {
    artifacts.push_back({outputs.stem + ".json", dump(outputs.json)});
  };
  const auto csv = [&] {
    for (auto& a : outputs.csv) artifacts.push_back(a);
  };
  switch (config.format) {
    case OutputFormat::kJson:
      json();
      break;
    case OutputFormat::kCsv:
      csv();
      break;
    case OutputFormat::kBoth:
      json();
      csv();
      break;
    case OutputFormat::kDefault:
      if (outputs.text && config.out_dir.empty()) {
        artifacts.push_back({outputs.stem + ".txt", *outputs.text});
      } else if (outputs.csv_by_default) {
        csv();
      } else {
        json();
      }
      break;
  }
  return artifacts;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto artifacts = execute(config);
    if (config.out_dir.empty()) {
      for (const auto& a : artifacts) out << a.content;
    } else {
      write_atomically(config.out_dir, artifacts);
    }
    return kExitOk;
  } catch (const UsageError& e) {
    return fail(err, kExitUsage, "usage", e.what());
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::kInvalidArgument:
        return fail(err, kExitUsage, "usage", e.what());
      case ErrorKind::kData:
        return fail(err, kExitData, "data", e.what());
      case ErrorKind::kDegenerate:
        return fail(err, kExitDegenerate, "degenerate", e.what());
    }
  } catch (const fs::filesystem_error& e) {
    return fail(err, kExitData, "data", e.what());
  }
  return kExitData;
}

namespace {

// First bare token that is neither a global option value nor a subcommand.
std::optional<std::string> unknown_subcommand(const CLI::App& app,
                                              const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "--out" || a == "--format" || a == "--config") {
      ++i;
      continue;
    }
    if (a.starts_with("-")) continue;
    if (app.get_subcommand_no_throw(a) != nullptr) return std::nullopt;
    return a;
  }
  return std::nullopt;
}

}  // namespace

int main(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::string format;
  CLI::App app{"VIX effective-ratio gating for daily strategy returns",
               "vixgate"};
  std::string config_path;
  build_app(app, config, format, config_path);

  if (const auto name = unknown_subcommand(app, args)) {
    return fail(err, kExitUsage, "usage", "unknown subcommand '" + *name + "'");
  }
  try {
    args = merge_config_file(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail(err, kExitUsage, "usage", e.what());
  } catch (const UsageError& e) {
    return fail(err, kExitUsage, "usage", e.what());
  } catch (const DataError& e) {
    return fail(err, kExitData, "data", e.what());
  }

  config.command = app.get_subcommands().front()->get_name();
  if (format == "json") config.format = OutputFormat::kJson;
  if (format == "csv") config.format = OutputFormat::kCsv;
  if (format == "both") config.format = OutputFormat::kBoth;
  if (config.command == "backtest" && !config.auto_scan && !config.window) {
    return fail(err, kExitUsage, "usage",
                "backtest needs either --window or --auto-scan");
  }
  return run(config, out, err);
}

}  // namespace vixgate::cli
