#pragma once

#include "afw/engine.hpp"
#include "afw/stationary.hpp"

#include <cstdint>
#include <string>

namespace afw {

/// Tally of one inequality family checked over many instances.
struct AuditResult {
  std::string name;
  std::int64_t checked = 0;
  std::int64_t failures = 0;
  std::string first_failure;

  [[nodiscard]] bool passed() const { return failures == 0; }
  void record(bool ok, const std::string& what);
  void merge(const AuditResult& other);
};

inline constexpr double kAuditSlack = 1e-12;

/// Sufficient decrease f_k - f_{k+1} >= alpha_bar * slope / 2 on every step;
/// additionally f_k - f_{k+1} >= (L/2) ||x_{k+1} - x_k||^2 under the
/// Lipschitz rule and alpha >= alpha_bar under linesearch.
AuditResult audit_stepsize(const IterationTrace& trace, StepRule rule, double lipschitz,
                           double slack = kAuditSlack);

/// Case 3 steps zero their vertex exactly and shrink the support by one,
/// Case 1/2 steps grow it by at most one, and no run has n consecutive
/// Case 3 steps.
AuditResult audit_step_cases(const IterationTrace& trace, Index n);

/// g*_T <= max(sqrt(4 L h0 / (rho T)), 4 h0 / T) for every recorded T.
AuditResult audit_gap_rate(const IterationTrace& trace, double lipschitz, double h0,
                           double rho = 0.5, double slack = kAuditSlack);

/// |J_{k+1}| <= max(0, |J_k| - 1) whenever dist1(x_k, A) < r*.
AuditResult audit_local_decrement(const IterationTrace& trace, const StationaryRegion& region);

}  // namespace afw
