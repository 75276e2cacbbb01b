#include "afw/audits.hpp"

#include "afw/identification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace afw {

void AuditResult::record(bool ok, const std::string& what) {
  ++checked;
  if (ok) return;
  if (failures == 0) first_failure = what;
  ++failures;
}

void AuditResult::merge(const AuditResult& other) {
  if (failures == 0 && other.failures > 0) first_failure = other.first_failure;
  checked += other.checked;
  failures += other.failures;
}

namespace {

std::string at(std::int64_t k, const std::string& what, double lhs, double rhs) {
  std::ostringstream os;
  os.precision(17);
  os << "iter " << k << ": " << what << " (" << lhs << " vs " << rhs << ")";
  return os.str();
}

Index support_after(const IterationTrace& trace, std::size_t k) {
  return k + 1 < trace.records.size() ? trace.records[k + 1].support_size : trace.support_final;
}

}  // namespace

AuditResult audit_stepsize(const IterationTrace& trace, StepRule rule, double lipschitz,
                           double slack) {
  AuditResult out;
  out.name = "stepsize";
  for (std::size_t k = 0; k < trace.records.size(); ++k) {
    const StepRecord& r = trace.records[k];
    const double decrease = r.f - trace.f_after(k);
    const double model = 0.5 * r.alpha_bar * r.slope;
    out.record(decrease >= model - slack, at(r.iter, "decrease below alpha_bar*slope/2", decrease, model));
    if (rule == StepRule::Lipschitz) {
      const double quad = 0.5 * lipschitz * r.step_norm2;
      out.record(decrease >= quad - slack, at(r.iter, "decrease below L/2 ||step||^2", decrease, quad));
    } else {
      out.record(r.alpha >= r.alpha_bar - slack, at(r.iter, "linesearch step below alpha_bar", r.alpha, r.alpha_bar));
    }
  }
  return out;
}

AuditResult audit_step_cases(const IterationTrace& trace, Index n) {
  AuditResult out;
  out.name = "step-cases";
  Index run = 0;
  for (std::size_t k = 0; k < trace.records.size(); ++k) {
    const StepRecord& r = trace.records[k];
    const Index s_next = support_after(trace, k);
    if (r.step_case == 3) {
      out.record(r.drop && r.vertex_weight_after == 0.0,
                 at(r.iter, "case 3 without exact zero", r.vertex_weight_after, 0.0));
      out.record(s_next == r.support_size - 1,
                 at(r.iter, "case 3 support change", static_cast<double>(s_next),
                    static_cast<double>(r.support_size - 1)));
      ++run;
      out.record(run < n, at(r.iter, "consecutive case 3 steps", static_cast<double>(run),
                             static_cast<double>(n)));
    } else {
      out.record(s_next <= r.support_size + 1,
                 at(r.iter, "support grew by more than one", static_cast<double>(s_next),
                    static_cast<double>(r.support_size + 1)));
      run = 0;
    }
  }
  return out;
}

AuditResult audit_gap_rate(const IterationTrace& trace, double lipschitz, double h0, double rho,
                           double slack) {
  AuditResult out;
  out.name = "gap-rate";
  if (trace.records.empty()) return out;
  const auto best = min_gap_prefix(trace);
  for (std::size_t t = 0; t < best.size(); ++t) {
    const auto T = static_cast<std::int64_t>(t + 1);
    const double bound = nonconvex_rate_bound(lipschitz, h0, rho, T);
    out.record(best[t] <= bound + slack, at(T, "g*_T above rate bound", best[t], bound));
  }
  return out;
}

AuditResult audit_local_decrement(const IterationTrace& trace, const StationaryRegion& region) {
  AuditResult out;
  out.name = "local-decrement";
  const auto js = trace.j_sizes();
  const auto ds = trace.dist1_series();
  if (!js || !ds) return out;
  for (std::size_t k = 0; k < trace.records.size(); ++k) {
    if (!((*ds)[k] < region.r_star)) continue;
    const Index allowed = std::max<Index>(0, (*js)[k] - 1);
    out.record((*js)[k + 1] <= allowed,
               at(trace.records[k].iter, "|J| did not decrease inside r*",
                  static_cast<double>((*js)[k + 1]), static_cast<double>(allowed)));
  }
  return out;
}

}  // namespace afw
