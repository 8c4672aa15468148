// Runs every acceptance criterion and prints one PASS/FAIL line each.
#include "mlspectra/repro.hpp"

#include <iostream>

int main(int argc, char** argv) {
  mlspectra::ReproOptions opts;
  opts.progress = &std::cout;
  for (int i = 1; i < argc; ++i) opts.only.emplace_back(argv[i]);
  int failed = 0;
  for (const auto& r : mlspectra::run_repro(opts)) failed += r.passed ? 0 : 1;
  std::cout << (failed == 0 ? "acceptance: all criteria passed" : "acceptance: " + std::to_string(failed) + " failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
