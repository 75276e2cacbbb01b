#pragma once

#include "afw/objective.hpp"
#include "afw/polytope.hpp"

#include <random>
#include <vector>

namespace afw::gen {

using Rng = std::mt19937_64;

/// Strongly convex quadratic with a planted minimizer on the boundary of the
/// simplex. The support of x* has between 1 and n-1 elements, multipliers
/// off the support lie in [0.5, 2], so strict complementarity holds.
struct PlantedQuadratic {
  QuadraticSpec spec;
  SimplexPoint x_star = SimplexPoint::vertex(1, 0);
  std::vector<Index> support;
  double f_star = 0.0;
};

PlantedQuadratic strongly_convex_boundary(Index n, Rng& rng, double mu = 0.5);

/// Random symmetric Q and b with entries in [-1, 1]. f_lower is the
/// certified pairwise lower bound on the minimum over the simplex.
struct IndefiniteQuadratic {
  QuadraticSpec spec;
  double f_lower = 0.0;
  double min_eigenvalue = 0.0;
};

IndefiniteQuadratic indefinite_quadratic(Index n, Rng& rng);

/// Atom polytope in dimension 2 or 3 with an exposed face {y : y_0 = 1} and a
/// strongly convex ambient quadratic minimized at a point of that face.
struct PlantedPolytope {
  AtomPolytope polytope;
  QuadraticSpec ambient;
  Vector y_star;
  std::vector<Index> face_atoms;
};

PlantedPolytope polytope_with_face(Index dim, Index face_size, Index other_atoms, Rng& rng);

/// Uniform point of the simplex (normalized exponentials).
SimplexPoint uniform_simplex(Index n, Rng& rng);

/// Uniform point on a random face: each coordinate is kept with probability
/// `keep` (at least one is kept).
SimplexPoint sparse_simplex(Index n, double keep, Rng& rng);

/// Point at l1 distance u * radius from x along a random feasible direction,
/// u uniform in (0, 1).
SimplexPoint near_point(const SimplexPoint& x, double radius, double keep, Rng& rng);

}  // namespace afw::gen
