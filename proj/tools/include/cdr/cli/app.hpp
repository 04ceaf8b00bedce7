#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace cdr::cli {

struct RunConfig {
  std::string subcommand;
  int n = 1;
  std::optional<std::string> twist;  ///< "m1,...,mN/mg"
  std::optional<std::string> max_weight;
  std::optional<std::string> q_max;
  std::optional<std::string> input;
  std::string format = "text";
  std::uint64_t seed = 1;
  int jobs = 1;
  bool strict = false;
};

enum ExitCode : int { kOk = 0, kInvariantFailure = 1, kInputError = 2 };

/// Runs one subcommand; the report goes to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace cdr::cli
