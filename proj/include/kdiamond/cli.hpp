#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace kdiamond {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitUsage = 2, kExitUndecided = 3 };

/// Settings shared by all subcommands. Precedence, lowest first: built-in
/// defaults, KDIAMOND_PRECISION_CAP, the --config file, command-line flags.
struct RunConfig {
  std::string command;
  int k = -1;  // -1: not given
  std::int64_t n = 10;
  std::int64_t from = 1;
  std::int64_t to = 100;
  std::string d = "2..13";
  std::int64_t horizon = 2000;
  std::int64_t margin = -1;
  long precision_cap = 4096;
  std::string format = "json";
  std::string output;
  std::string set = "theorems";
  std::string points = "default";
  std::vector<std::string> s;
  std::vector<std::int64_t> N;
  std::int64_t a = 200;
  std::int64_t b = 200;
};

/// Reads KDIAMOND_PRECISION_CAP, falling back to 4096.
long default_precision_cap();

/// Parses `key = value` lines; blank lines and lines starting with '#' are
/// skipped. Throws std::runtime_error on unreadable files or malformed lines.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Applies one config entry; keys mirror the long flag names. Throws
/// std::invalid_argument for unknown keys or bad values.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

/// Entry point of the command-line tool. Returns the process exit code.
int run_cli(int argc, const char* const argv[], std::ostream& out, std::ostream& err);

}  // namespace kdiamond
