// Statistical acceptance suite: runs the default experiment (alpha = 1/2,
// unit-minimum Pareto gaps, simple symmetric underlying walk, the repo's
// fixed master seed) and checks every scaling law, limit match, and
// invariant at its pinned tolerance. One pass/fail line per criterion.

#include <chrono>
#include <iostream>

#include "levygas/checks.hpp"
#include "levygas/config.hpp"

int main() {
  levygas::ExperimentConfig cfg;  // repo defaults, seed included
  std::cout << "acceptance suite: alpha = " << cfg.alpha
            << ", master_seed = " << cfg.master_seed << "\n";

  auto start = std::chrono::steady_clock::now();
  std::vector<levygas::CheckResult> results =
      levygas::run_acceptance_checks(cfg, &std::cout);
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  bool all = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    all = all && r.pass;
  }
  std::cout << (all ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " ("
            << static_cast<int>(elapsed) << " s)\n";
  return all ? 0 : 1;
}
