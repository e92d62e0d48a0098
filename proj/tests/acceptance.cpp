// Acceptance suite: runs every verification suite at its stated tolerance
// and prints one line per criterion.  Exits nonzero when any criterion fails.
//
// The default budget is "small"; set FIELDRED_BUDGET=large to include the
// q = 7 two-planes sweep.

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <iomanip>
#include <iostream>

#include "fieldred/verify.hpp"

using namespace fieldred;

namespace {

struct Criterion {
  int number;
  const char* suite;
  double cap_seconds;  // 0 = no stated cap
};

const Criterion kCriteria[] = {
    {1, "lemma-field-reduction", 30},
    {2, "segre-spread", 5},
    {3, "segre-variety", 10},
    {4, "polar-tables", 300},
    {5, "quadric-counts", 300},
    {6, "linset-identities", 30},
    {7, "scattered-bound", 60},
    {8, "subline-intersections", 300},
    {9, "equivalence", 300},
    {10, "two-planes", 600},
    {11, "pseudoregulus", 120},
    {12, "blocking-sets", 300},
    {13, "semifields", 180},
};

}  // namespace

int main(int argc, char** argv) {
  VerifyOptions opts;
  if (const char* env = std::getenv("FIELDRED_BUDGET")) {
    opts.budget = budget_from_string(env);
  }
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--budget") == 0 && i + 1 < argc)
      opts.budget = budget_from_string(argv[++i]);
  }

  std::cout << "acceptance run, budget " << to_string(opts.budget) << "\n";
  int failures = 0;
  for (const Criterion& c : kCriteria) {
    auto start = std::chrono::steady_clock::now();
    VerificationReport rep = run_suite(c.suite, opts);
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    size_t fails = 0, skips = 0;
    for (const auto& ck : rep.checks) {
      fails += ck.status == CheckStatus::Fail;
      skips += ck.status == CheckStatus::SkippedBudget;
    }
    bool in_time = (c.cap_seconds == 0 || secs < c.cap_seconds);
    bool pass = (fails == 0) && in_time;
    if (!pass) ++failures;

    std::cout << "[" << std::setw(2) << c.number << "] " << (pass ? "PASS" : "FAIL") << " "
              << std::left << std::setw(24) << c.suite << std::right << " " << rep.checks.size()
              << " checks";
    if (skips) std::cout << " (" << skips << " skipped: budget)";
    std::cout << "  " << std::fixed << std::setprecision(2) << secs << "s";
    if (c.cap_seconds > 0) std::cout << " < " << std::setprecision(0) << c.cap_seconds << "s";
    if (!in_time) std::cout << "  [over time]";
    std::cout << "\n";
    if (fails) {
      for (const auto& ck : rep.checks)
        if (ck.status == CheckStatus::Fail)
          std::cout << "      failed: " << ck.name << " -- " << ck.witness << "\n";
    }
  }
  std::cout << (failures ? "ACCEPTANCE: FAIL (" : "ACCEPTANCE: PASS (")
            << (failures ? std::to_string(failures) + " criteria failed)" : "13 criteria)")
            << "\n";
  return failures ? 1 : 0;
}
