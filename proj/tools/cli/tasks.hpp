#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "problem.hpp"

namespace edc::cli {

// Command-line overrides of the problem file.
struct RunOptions {
  std::optional<std::pair<int, int>> window;
  std::optional<int> denominator_bound;
  int threads = 1;  // accepted; every task runs on one thread
};

enum ExitCode { kSuccess = 0, kInputError = 1, kVerificationFailed = 2 };

struct RunResult {
  Json report;
  int exit_code = kSuccess;
  std::vector<std::string> summary;  // human-readable lines
};

// Executes the task. Input problems surface as InputError naming the field; failed
// verifications are reported in the JSON and turn the exit code to 2.
RunResult run_task(Problem problem, const RunOptions& options);

}  // namespace edc::cli
