// One line per acceptance criterion; exits non-zero if any fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <iostream>

#include "tpd/verify.hpp"

int main() {
  int failed = 0;
  for (int id = 1; id <= tpd::kCriteriaCount; ++id) {
    const auto start = std::chrono::steady_clock::now();
    tpd::CriterionResult r;
    try {
      r = tpd::run_criterion(id);
    } catch (const std::exception& e) {
      r = {id, "criterion " + std::to_string(id), false, std::string("aborted: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char time[32];
    std::snprintf(time, sizeof time, " (%.1fs)", secs);
    std::cout << r.line() << time << std::endl;
    failed += r.passed ? 0 : 1;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
