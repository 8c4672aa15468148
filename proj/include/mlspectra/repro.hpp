#pragma once

#include "mlspectra/json_io.hpp"
#include "mlspectra/random.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace mlspectra {

struct CriterionInfo {
  int number = 0;
  std::string id;
  std::string title;
  double budget_seconds = 0.0;
};

// The acceptance suite, in run order.
std::vector<CriterionInfo> criteria();

struct CriterionResult {
  CriterionInfo info;
  bool passed = false;
  // One-line summary of the measured values.
  std::string measured;
  double seconds = 0.0;
  std::vector<std::string> failures;
};

struct ReproOptions {
  std::uint64_t seed = kDefaultSeed;
  // Criterion ids to run; empty runs everything.
  std::vector<std::string> only;
  // Receives each summary line as soon as its criterion finishes.
  std::ostream* progress = nullptr;
};

// Throws std::invalid_argument for an unknown id in `only`.
std::vector<CriterionResult> run_repro(const ReproOptions& opts);

// "PASS  [4] genericity  ...  (12.3 s, budget 300 s)"
std::string summary_line(const CriterionResult& r);

// Wall time is left out so that the JSON is reproducible.
Json to_json(const CriterionResult& r);

}  // namespace mlspectra
