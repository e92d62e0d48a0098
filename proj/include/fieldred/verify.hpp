#pragma once

#include <string>
#include <vector>

#include "fieldred/projspace.hpp"

namespace fieldred {

enum class Budget { Small, Medium, Large };
Budget budget_from_string(const std::string& s);
const char* to_string(Budget b);

enum class CheckStatus { Pass, Fail, SkippedBudget };
const char* to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Fail;
  std::string witness;  // set on failure
};

struct VerificationReport {
  std::string suite;
  std::string grid;
  std::vector<CheckResult> checks;
  double wall_ms = 0;  // reported on stderr only; canonical output is timing-free

  bool all_passed() const;
  bool all_skipped() const;
  std::string to_text() const;
  std::string to_json() const;  // key-sorted and byte-stable for fixed inputs
};

struct VerifyOptions {
  Budget budget = Budget::Small;
  unsigned long long seed = 0;
  unsigned long long enum_budget = kDefaultEnumBudget;
};

// suites correspond one-to-one to the acceptance checks
std::vector<std::string> suite_names();
VerificationReport run_suite(const std::string& name, const VerifyOptions& opts);

}  // namespace fieldred
