#pragma once

#include "afw/audits.hpp"
#include "afw/config.hpp"
#include "afw/identification.hpp"
#include "afw/objective.hpp"
#include "afw/polytope.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace afw {

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// A configured problem, ready to run on the weight simplex.
struct Problem {
  ProblemKind kind = ProblemKind::Quadratic;
  /// Objective the engine runs on; the lifted one for polytopes.
  ObjectiveModel objective;
  std::optional<ObjectiveModel> ambient;
  std::optional<AtomPolytope> polytope;
  /// Quadratic data in run space.
  std::optional<QuadraticSpec> spec;
  std::vector<SimplexPoint> reference;
  std::optional<Vector> reference_y;
  /// Optimal value when known exactly, else a certified lower bound.
  std::optional<double> f_star;
  bool f_star_exact = false;
  Metadata generated;
};

/// Throws ConfigError for inconsistent or invalid problem data.
Problem build_problem(const ExperimentConfig& cfg);
SimplexPoint start_point(const ExperimentConfig& cfg, Index dim);

struct ExperimentResult {
  IterationTrace trace;
  std::optional<StationaryRegion> region;
  Metadata metadata;
  std::vector<AuditResult> monitors;
  std::vector<BoundReport> bounds;
  std::optional<std::int64_t> identification;

  [[nodiscard]] bool monitors_passed() const;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Bound reports computable from the configuration alone.
std::vector<BoundReport> predict_bounds(const ExperimentConfig& cfg);

/// Shortest round-trip decimal form; "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double v);

/// `# schema=afw-trace-v1`, `# key=value` metadata, the column header, one row
/// per step and a final row for the last iterate with empty step cells.
void write_trace_csv(std::ostream& os, const ExperimentResult& result);

void print_bound_report(std::ostream& os, const BoundReport& report);
void print_monitor(std::ostream& os, const AuditResult& audit);

}  // namespace afw
