#pragma once

#include "afw/audits.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace afw {

struct SuiteCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<SuiteCheck> checks;
  /// Stepsize and step-case audits over every trace the suite produced.
  AuditResult stepsize;
  AuditResult step_cases;

  [[nodiscard]] bool passed() const;
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument listing the valid names for an unknown suite.
SuiteReport run_suite(std::string_view name, std::uint64_t seed);

SuiteReport suite_local_identification(std::uint64_t seed);
SuiteReport suite_sc_complexity(std::uint64_t seed);
SuiteReport suite_nonconvex_rate(std::uint64_t seed);
SuiteReport suite_polytope_faces(std::uint64_t seed);
SuiteReport suite_lemma_audits(std::uint64_t seed);

void print_suite_report(std::ostream& os, const SuiteReport& report);

}  // namespace afw
