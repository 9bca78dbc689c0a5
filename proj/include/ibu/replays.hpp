#pragma once

#include <string>
#include <vector>

#include "ibu/scenario.hpp"

namespace ibu {

struct ReplayCheck {
  std::string description;
  bool pass = false;
  std::string observed;
};

struct ReplayResult {
  std::string id;
  std::string title;
  std::vector<std::string> notes;   // narrative lines
  std::vector<ReplayCheck> checks;  // confirmed expectations
  bool demonstrates_violation = false;

  bool confirmed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  // 0: all confirmed, nothing violated; 1: all confirmed and the scenario
  // demonstrates a postulate violation; 2: some expectation failed.
  int exit_code() const {
    if (!confirmed()) return 2;
    return demonstrates_violation ? 1 : 0;
  }
};

// The bundled scenarios, numbered 1..9. Each ships as embedded scenario text
// (retrievable for inspection or as a starting point for own files) plus a
// driver adding scenario-specific checks.
std::string builtin_example_text(int number);
Scenario load_builtin_example(int number);
ReplayResult replay_example(int number);

// Runs a scenario's expect clauses. Update expectations compare belief sets;
// iterate expectations run the first step through the chosen strategy
// (default: scripted where the script applies, the hierarchy operator
// otherwise); postulate expectations evaluate a single two-step instance and
// require its antecedent to hold.
std::vector<ReplayCheck> run_expectations(const Scenario& sc);

}  // namespace ibu
