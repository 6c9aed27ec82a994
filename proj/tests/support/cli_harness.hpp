#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vixgate/marketdata.hpp"

namespace vixgate::testing {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

// Runs the CLI in-process.
CliResult run_cli(std::vector<std::string> args);

// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

void write_series(const std::filesystem::path& path, const DailySeries& series);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace vixgate::testing
