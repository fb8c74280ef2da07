#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace phasecontract {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceReport {
  std::vector<CriterionResult> results;
  bool all_pass() const;
};

/// "[PASS] 3 lambda/laguerre identity: ... (0.01 s)"
std::string format_criterion(const CriterionResult& r);

/// Runs criteria 1..11 in order. When `out` is given, each line is printed
/// as soon as its criterion finishes. An exception inside a criterion
/// counts as a failure of that criterion only.
AcceptanceReport run_acceptance_suite(std::ostream* out = nullptr);

}  // namespace phasecontract
