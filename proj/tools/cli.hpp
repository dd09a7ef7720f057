#pragma once

#include <optional>
#include <string>
#include <vector>

namespace phasekit::cli {

struct RunConfig {
  std::string command;  // rep | phases | vs-states | mub | gauss | potential | verify
  std::optional<std::string> kappa;
  std::optional<int> dim;
  double phi = 0.0;
  std::optional<int> p;
  std::optional<int> m;
  std::optional<int> mu;
  std::optional<double> theta;
  std::optional<std::string> potential;
  std::string route = "finite";
  bool truncated = false;
  bool open_top = false;
  std::optional<long long> u;
  std::optional<long long> v;
  std::optional<long long> w;
  std::string output;  // empty: stdout
  std::string format;  // json | csv | pretty; empty picks the command default
  std::optional<std::string> tolerance;
};

struct RunResult {
  int exit_code = 0;
  std::string out;  // written to stdout when no output file is set
  std::string err;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInvalidConfig = 2;

/// Parses argv into a config. Returns the exit code and message on failure
/// (including --help, which yields exit 0).
struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = 0;
  std::string message;
};

ParseOutcome parse_args(const std::vector<std::string>& args);

/// Executes a config. Artifacts go to config.output when set, otherwise into
/// RunResult::out.
RunResult run(const RunConfig& config);

int main_entry(int argc, char** argv);

}  // namespace phasekit::cli
