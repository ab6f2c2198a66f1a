#pragma once

#include <string>
#include <vector>

namespace bergman::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNonConvergence = 3 };

struct RunConfig {
  std::string weight = "gamma";
  int n = 2;
  std::vector<double> alphas = {0.0};
  std::vector<double> d = {0.0};
  std::vector<double> y = {1.0};
  std::vector<double> b = {1.0};
  std::string symbol = "exp";
  double tol = 1e-12;
  std::string format = "csv";
  /// Empty writes to stdout.
  std::string out;
  /// kernel: radial | holomorphic | closed | diagonal.
  std::string route = "radial";
  /// verify: quick | full.
  std::string level = "quick";
  /// verify: scale applied to omega_{n-1} in the diagonal-identity check.
  double omega_fault = 1.0;
};

/// Thrown for invalid configuration; the message names the offending field.
struct UsageError {
  std::string message;
};

/// Reads [weight], [grid] and [tolerances] from an INI file into cfg.
/// Keys: weight.name, weight.n, grid.alphas, grid.d, grid.y, grid.b,
/// grid.symbol, tolerances.tol. Lists are comma separated.
void load_config_file(const std::string& path, RunConfig& cfg);

/// Comma-separated list of reals.
std::vector<double> parse_list(const std::string& text, const std::string& field);

/// Checks every field used by `command` before anything is computed.
void validate(const std::string& command, const RunConfig& cfg);

/// A rendered table: header plus rows of already formatted cells. JSON
/// output keeps numeric cells as numbers.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool converged = true;
};

Table cmd_kernel(const RunConfig& cfg);
Table cmd_asym(const RunConfig& cfg);
Table cmd_berezin(const RunConfig& cfg);

std::string render_csv(const Table& t);
std::string render_json(const Table& t);

/// Worker count: BERGMAN_THREADS if set to a positive integer, otherwise
/// the hardware concurrency.
unsigned thread_count();

/// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace bergman::cli
