#pragma once

#include "afw/engine.hpp"
#include "afw/objective.hpp"
#include "afw/stationary.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace afw {

/// Default threshold for classifying a multiplier as zero, before scaling by
/// 1 + ||grad||_inf.
inline constexpr double kDefaultZeroTol = 1e-8;

double scaled_zero_tol(double zero_tol, const Vector& grad);

struct SupportSplit {
  std::vector<Index> extended_support;  // I: lambda_i = 0
  std::vector<Index> active_set;        // I^c: lambda_i > 0
};

/// Splits [0, n) by the multipliers at a stationary point. Throws
/// std::domain_error if x is not stationary or supp(x) is not inside I.
SupportSplit extended_support(const SimplexPoint& x, const ObjectiveModel& f,
                              double zero_tol = kDefaultZeroTol);

/// delta / (delta + 2L). Requires delta > 0; use kInfinity for an empty
/// active set.
double active_set_radius(double delta_min, double lipschitz);

/// Builds a region from stationary points that must share one active set.
/// Throws std::domain_error when a point is not stationary or the active
/// sets differ.
StationaryRegion make_region(std::vector<SimplexPoint> points, const ObjectiveModel& f,
                             double zero_tol = kDefaultZeroTol);

/// Region known only through its active set and smallest positive
/// multiplier (lifted polytope problems).
StationaryRegion make_region_from_active_set(Index dim, std::vector<Index> active_set,
                                             double delta_min, double lipschitz);

/// J = {i in I^c : x_i > 0}, exact comparison.
std::vector<Index> j_set(const SimplexPoint& x, const StationaryRegion& region);

/// h (L + delta_k / 2).
double multiplier_perturbation_bound(double h, double lipschitz, double delta_k);

struct PerturbationCheck {
  bool applicable = false;
  bool holds = false;
  double h = 0.0;
  double delta_k = 0.0;
  double bound = 0.0;
  /// max_i |lambda_i(x*) - lambda_i(x_k)|.
  double max_deviation = 0.0;
  std::string message;
};

/// Evaluates both sides of the multiplier perturbation inequality for a
/// stationary x* and an arbitrary x_k, with h = ||x_k - x*||_1.
PerturbationCheck check_multiplier_perturbation(const SimplexPoint& x_star,
                                                const SimplexPoint& x_k,
                                                const ObjectiveModel& f, double slack = 1e-10,
                                                double zero_tol = kDefaultZeroTol);

enum class DecrementStatus { Pass, Fail, PreconditionUnmet };

struct DecrementCheck {
  DecrementStatus status = DecrementStatus::PreconditionUnmet;
  Index j_before = 0;
  Index j_after = 0;
  double dist1 = 0.0;
  int step_case = 0;
  DirectionKind kind = DirectionKind::FrankWolfe;
  Index vertex = 0;
  std::string message;
};

/// Takes one AFW step from x_k and checks |J_{k+1}| <= max(0, |J_k| - 1).
/// Only evaluated when ||x_k - x*||_1 < r* for some x* in the region.
DecrementCheck verify_local_decrement(const StationaryRegion& region, const SimplexPoint& x_k,
                                      const ObjectiveModel& f, StepRule rule);

struct BoundCondition {
  bool satisfied = true;
  std::string message;
};

struct BoundReport {
  std::string bound_name;
  std::vector<std::pair<std::string, double>> inputs;
  /// nullopt stands for an unbounded prediction.
  std::optional<std::int64_t> predicted_iterations;
  /// False for reports that bound a quantity other than an iteration count.
  bool counts_iterations = true;
  std::vector<BoundCondition> conditions;

  [[nodiscard]] bool all_conditions_satisfied() const;
};

/// max(0, ceil((ln h0 - ln(u1 r*^2 / 2)) / ln(1/q))) + |I^c|.
BoundReport strongly_convex_bound(double h0, double u1, double r_star, double q,
                                  std::int64_t ic_size);

/// max(sqrt(4 L h0 / (rho T)), 4 h0 / T).
double nonconvex_rate_bound(double lipschitz, double h0, double rho, std::int64_t T);

enum class EpsilonConstraint { StepBelowL, RadiusCondition, SeparationCondition };

struct HolderEpsilon {
  double eps_l = 0.0;           // eps < L
  double eps_radius = 0.0;      // (2 sqrt(L eps) / theta)^(1/p) < r*
  double eps_separation = 0.0;  // 2 (...)^(1/p) + 2n sqrt(2 eps / L) <= d
  double supremum = 0.0;
  EpsilonConstraint binding = EpsilonConstraint::StepBelowL;
  /// True when the supremum itself is admissible.
  bool closed = false;

  /// An admissible epsilon: the supremum when closed, slightly below it otherwise.
  [[nodiscard]] double admissible() const;
};

/// Largest epsilon satisfying the three conditions of the Holder-bound
/// identification result. The separation condition is solved by bisection
/// to relative width 1e-12.
HolderEpsilon holder_epsilon_conditions(double lipschitz, double theta, double p,
                                        double r_star, double d_min_dist, Index n);

/// q(eps) + 2n.
BoundReport holder_complexity_bound(const HolderEpsilon& eps,
                                    const std::function<std::int64_t(double)>& q_of_eps, Index n);

/// Smallest k with f(x_j) - f(x_{j+1}) <= eps for every recorded j >= k.
std::int64_t measured_q(const IterationTrace& trace, double eps);

/// ceil(max(4 (f0 - fmin) / tau, 8 L (f0 - fmin) / tau^2)) + 1 + |I^c|.
BoundReport local_basin_bound(double f0, double f_min, double tau, double lipschitz,
                              std::int64_t ic_size);

struct FamilyAnalysis {
  std::vector<StationaryRegion> regions;
  /// min over distinct regions of the l1 distance between their points;
  /// kInfinity for a single region.
  double separation = kInfinity;
  /// Strict complementarity per input point, in input order.
  std::vector<bool> strict_complementarity;
};

/// Groups stationary points into classes with identical active sets.
FamilyAnalysis analyze_stationary_family(const std::vector<SimplexPoint>& points,
                                         const ObjectiveModel& f,
                                         double zero_tol = kDefaultZeroTol);

/// Smallest M with x_k restricted to I on every recorded iterate k >= M.
/// nullopt when the final iterate still touches I^c. Throws when the trace
/// has no reference J sizes.
std::optional<std::int64_t> identification_iteration(const IterationTrace& trace);

/// Smallest k such that dist1(x_j, region) < r* for every recorded j >= k.
std::optional<std::int64_t> radius_entry_iteration(const IterationTrace& trace, double r_star);

/// Largest observed ratio h_{k+1} / h_k over iterates with h_k > floor.
/// Exact convergence makes every ratio zero; the result is then the smallest
/// positive normal double, which still satisfies h_{k+1} <= q h_k.
double measured_contraction(const IterationTrace& trace, double f_star, double floor);

}  // namespace afw
