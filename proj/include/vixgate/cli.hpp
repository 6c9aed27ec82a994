#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vixgate::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitData = 3,
  kExitDegenerate = 4,
};

enum class OutputFormat { kDefault, kJson, kCsv, kBoth };

// Everything one invocation needs. Populated from flags and, for flags not
// given on the command line, from a key=value config file.
struct RunConfig {
  std::string command;
  std::filesystem::path out_dir;  // empty: print to stdout
  OutputFormat format = OutputFormat::kDefault;

  std::string vix_path;
  std::string returns_path;
  bool percent = false;

  // vix
  std::string chain_path;
  double expiry = 0.0;
  double rate = 0.0;
  std::optional<double> c0;
  std::optional<double> p0;
  std::optional<double> atm;
  bool literal_dx = false;

  // er
  std::string series_path;
  std::string series_kind = "vix";
  bool negate = false;

  // scan / gate / tune / backtest
  std::optional<int> window;
  int window_min = 1;
  int window_max = 20;
  std::string signs = "both";
  std::string sign = "neg";  // orientation of the ER that tracks returns
  double theta = 0.1;
  std::vector<double> thetas;
  bool auto_scan = false;
  double initial = 5.0;
  double annualization = 252.0;

  // basis
  double future = 0.0;
  double cash = 0.0;
  double conv = 0.0;
};

struct Artifact {
  std::string name;
  std::string content;
};

// Computes every output of the subcommand in memory. Throws vixgate::Error.
std::vector<Artifact> execute(const RunConfig& config);

// Executes and then either prints to `out` or writes into config.out_dir.
// Files are staged under temporary names and renamed only after every
// artifact has been written. On failure prints one line
// `error: <usage|data|degenerate>: <message>` to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full command-line entry point: parsing, config merge, run.
int main(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace vixgate::cli
