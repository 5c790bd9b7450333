#pragma once

#include <functional>
#include <string>
#include <vector>

namespace edc::acceptance {

enum class Depth { Quick, Full };

// Debug hooks that deliberately break the model, so that the suite can be seen to fail.
struct Hooks {
  bool corrupt_sign = false;
};

struct Outcome {
  int id = 0;
  std::string title;
  std::vector<std::string> failures;  // each names the fixture
  double seconds = 0;
  double budget = 0;  // seconds
  bool pass() const { return failures.empty() && seconds <= budget; }
};

// Criteria 1-10 in order. `progress` sees each outcome as soon as it is known.
std::vector<Outcome> run(Depth depth, const Hooks& hooks = {}, const std::function<void(const Outcome&)>& progress = {});

// One line: "criterion  3 PASS  trivial group ... (1.2 s, budget 60 s)".
std::string line(const Outcome& o);

}  // namespace edc::acceptance
