// Runs a1 ... a16 at their full sample counts and prints one line per
// criterion. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>

#include "cubecalc/suites.hpp"

using namespace cubecalc;

int main(int argc, char** argv) {
  SuiteConfig cfg;
  if (const char* s = std::getenv("CUBECALC_MAX_N")) cfg.max_n = std::atoi(s);
  // optional filter: acceptance a3 a10
  std::vector<std::string> only(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& info : suite_list()) {
    if (!only.empty() && std::find(only.begin(), only.end(), info.name) == only.end()) continue;
    auto label = "A" + info.name.substr(1);
    auto start = std::chrono::steady_clock::now();
    try {
      auto r = run_suite<F32003>(info.name, cfg);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::size_t skips = 0;
      for (const auto& c : r.checks) skips += c.mode == "skipped";
      std::printf("%s %s %s (%zu/%zu checks passed%s, %.1fs)\n", r.passed() ? "PASS" : "FAIL", label.c_str(),
                  info.title.c_str(), r.checks.size() - r.failures(), r.checks.size(),
                  skips ? (", " + std::to_string(skips) + " skipped").c_str() : "", secs);
      for (const auto& c : r.checks)
        if (!c.passed) std::printf("    failed: %s: %s\n", c.name.c_str(), c.detail.c_str());
      failed += !r.passed();
    } catch (const std::exception& e) {
      std::printf("FAIL %s %s (error: %s)\n", label.c_str(), info.title.c_str(), e.what());
      ++failed;
    }
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
