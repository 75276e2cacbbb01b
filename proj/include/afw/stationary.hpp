#pragma once

#include "afw/simplex.hpp"

#include <limits>
#include <vector>

namespace afw {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A finite set of stationary points sharing one active set.
///
/// `extended_support` holds the indices with zero multiplier and
/// `active_set` its complement. `points` may be empty when only the active
/// set is known (lifted polytope problems), in which case distances to the
/// region are unavailable.
struct StationaryRegion {
  std::vector<SimplexPoint> points;
  std::vector<Index> extended_support;
  std::vector<Index> active_set;
  double delta_min = kInfinity;
  double r_star = kInfinity;
  std::vector<bool> strict_complementarity;
  double lipschitz = 0.0;
  Index dim = 0;

  [[nodiscard]] bool has_points() const { return !points.empty(); }
};

}  // namespace afw
