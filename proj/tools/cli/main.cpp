#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "acceptance.hpp"
#include "tasks.hpp"

namespace {

using namespace edc;

std::pair<int, int> parse_window(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument("colon");
    std::size_t used = 0;
    const int a = std::stoi(s.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("lo");
    const std::string rest = s.substr(colon + 1);
    const int b = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("hi");
    if (a > b) throw InputError("--window: lower end exceeds upper end");
    return {a, b};
  } catch (const std::logic_error&) {
    throw InputError("--window: expected a:b with integers a <= b");
  }
}

int run_command(const std::string& file, const std::string& out_path, const std::string& window, int denom_bound,
                int threads, bool quiet) {
  const auto start = std::chrono::steady_clock::now();
  cli::RunOptions options;
  if (!window.empty()) options.window = parse_window(window);
  if (denom_bound > 0) options.denominator_bound = denom_bound;
  if (threads < 1) throw InputError("--threads: must be positive");
  options.threads = threads;
  const cli::RunResult result = cli::run_task(cli::load_problem(file), options);
  const std::string text = result.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InputError("--out: cannot open " + out_path);
    out << text;
    if (!quiet) {
      for (const auto& s : result.summary) std::cout << s << "\n";
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::printf("report written to %s (%.2f s)\n", out_path.c_str(), secs);
    }
  }
  return result.exit_code;
}

int selftest_command(bool full, bool corrupt_sign) {
  acceptance::Hooks hooks;
  hooks.corrupt_sign = corrupt_sign;
  int failed = 0;
  acceptance::run(full ? acceptance::Depth::Full : acceptance::Depth::Quick, hooks, [&](const acceptance::Outcome& o) {
    std::printf("%s\n", acceptance::line(o).c_str());
    std::fflush(stdout);
    if (!o.pass()) ++failed;
  });
  std::printf("selftest (%s): %s\n", full ? "full" : "quick", failed == 0 ? "pass" : "FAIL");
  return failed == 0 ? cli::kSuccess : cli::kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant smooth Deligne cohomology of finite group actions on simplicial complexes"};
  app.require_subcommand(1);

  std::string file, out_path, window;
  int denom_bound = 0, threads = 1;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Execute the task in a problem file");
  run->add_option("file", file, "Problem file (JSON)")->required();
  run->add_option("--out", out_path, "Write the JSON report here instead of standard output");
  run->add_option("--window", window, "Override the degree window, as a:b");
  run->add_option("--denom-bound", denom_bound, "Override the denominator bound of bounded searches");
  run->add_option("--threads", threads, "Worker threads");
  run->add_flag("--quiet", quiet, "Suppress the summary printed alongside --out");

  bool full = false, corrupt_sign = false;
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance criteria");
  selftest->add_flag("--full", full, "Full depth instead of the quick pass");
  selftest->add_flag("--debug-corrupt-sign", corrupt_sign, "Flip one sign of the total differential")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInputError;
  }

  try {
    if (*run) return run_command(file, out_path, window, denom_bound, threads, quiet);
    return selftest_command(full, corrupt_sign);
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return cli::kInputError;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return cli::kVerificationFailed;
  }
}
