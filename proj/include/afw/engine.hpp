#pragma once

#include "afw/objective.hpp"
#include "afw/simplex.hpp"
#include "afw/stationary.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace afw {

enum class DirectionKind { FrankWolfe, Away };
enum class StepRule { Lipschitz, Linesearch };
enum class Termination { GapTolerance, MaxIterations };

std::string_view to_string(DirectionKind kind);
std::string_view to_string(StepRule rule);
std::string_view to_string(Termination reason);

/// Search direction at an iterate: d = e_i - x (FW) or d = x - e_i (away).
struct Direction {
  DirectionKind kind = DirectionKind::FrankWolfe;
  Index vertex = 0;
  Vector d;
  double alpha_max = 1.0;
  /// -grad^T d, the decrease rate of the linear model along d.
  double slope = 0.0;
};

/// One recorded AFW/FW iteration. State fields describe x_k; step fields
/// describe the move to x_{k+1}.
struct StepRecord {
  std::int64_t iter = 0;
  double f = 0.0;
  double gap = 0.0;
  DirectionKind kind = DirectionKind::FrankWolfe;
  Index vertex = 0;
  double alpha = 0.0;
  double alpha_max = 0.0;
  double alpha_bar = 0.0;
  int step_case = 0;
  Index support_size = 0;
  std::optional<Index> j_size;
  std::optional<double> dist1_ref;

  double slope = 0.0;
  double d_norm2 = 0.0;
  double step_norm2 = 0.0;
  double step_norm1 = 0.0;
  /// Weight of the direction's vertex after the step; exactly 0 after a drop.
  double vertex_weight_after = 0.0;
  bool drop = false;
};

struct IterationTrace {
  std::vector<StepRecord> records;
  Termination termination = Termination::MaxIterations;
  SimplexPoint x_final = SimplexPoint::vertex(1, 0);
  double f_final = 0.0;
  double gap_final = 0.0;
  Index support_final = 0;
  std::optional<Index> j_size_final;
  std::optional<double> dist1_final;
  /// x_0 .. x_K when RunOptions::keep_iterates is set.
  std::vector<SimplexPoint> iterates;

  /// f(x_{k+1}) for record k.
  [[nodiscard]] double f_after(std::size_t k) const;
  /// J sizes of x_0 .. x_K (records then final iterate), if a reference was set.
  [[nodiscard]] std::optional<std::vector<Index>> j_sizes() const;
  [[nodiscard]] std::optional<std::vector<double>> dist1_series() const;
};

struct RunOptions {
  StepRule rule = StepRule::Lipschitz;
  double gap_tol = 1e-10;
  std::int64_t max_iters = 10000;
  const StationaryRegion* reference = nullptr;
  bool keep_iterates = false;
};

/// AFW direction choice. FW is taken when its slope is at least the away
/// slope; ties in the vertex argmin/argmax resolve to the lowest index.
Direction select_direction(const SimplexPoint& x, const Vector& grad);

/// Plain FW direction toward the LMO vertex.
Direction fw_direction(const SimplexPoint& x, const Vector& grad);

/// min(alpha_max, -grad^T d / (L ||d||^2)). Throws std::domain_error on a
/// non-descent direction.
double alpha_bar(const Direction& dir, const Vector& grad, double lipschitz);

/// Exact minimizer of t -> f(x + t d) over (0, alpha_max]. Closed form for
/// quadratics; golden-section search otherwise.
double exact_linesearch(const ObjectiveModel& f, const SimplexPoint& x, const Direction& dir);

/// Golden-section minimization of phi on [lo, hi] to interval width `width`.
double golden_section(const std::function<double(double)>& phi, double lo, double hi,
                      double width = 1e-12);

/// Case 1: alpha_bar < alpha_max. Case 2: alpha_bar = alpha_max with a FW
/// direction. Case 3: alpha_bar = alpha_max with an away direction.
int classify_step(DirectionKind kind, double alpha, double alpha_bar, double alpha_max);

/// Applies x + alpha d. A maximal away step zeroes the away vertex exactly
/// and rescales the rest by (1 + alpha).
SimplexPoint apply_step(const SimplexPoint& x, const Direction& dir, double alpha);

/// Result of a single iteration from a given point.
struct StepOutcome {
  bool stationary = false;
  Direction dir;
  double alpha = 0.0;
  double alpha_bar = 0.0;
  int step_case = 0;
  SimplexPoint next = SimplexPoint::vertex(1, 0);
};

StepOutcome afw_step(const ObjectiveModel& f, const SimplexPoint& x, StepRule rule,
                     double gap_tol = 1e-10);

IterationTrace run_afw(const ObjectiveModel& f, const SimplexPoint& x0, const RunOptions& opts);
IterationTrace run_fw(const ObjectiveModel& f, const SimplexPoint& x0, const RunOptions& opts);

/// g*_T = min_{0 <= i <= T-1} g(x_i) for T = 1 .. records.size().
std::vector<double> min_gap_prefix(const IterationTrace& trace);

Index j_size(const SimplexPoint& x, const StationaryRegion& region);

}  // namespace afw
