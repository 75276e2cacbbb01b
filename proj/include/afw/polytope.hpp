#pragma once

#include "afw/engine.hpp"
#include "afw/identification.hpp"
#include "afw/objective.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace afw {

/// P = conv of the columns of `atoms`. Weights on the simplex of atoms map
/// to ambient points through x -> A x.
struct AtomPolytope {
  Matrix atoms;
  std::vector<std::string> labels;

  /// Validates finiteness and m >= 1. Missing labels become "a0", "a1", ...
  static AtomPolytope make(Matrix atoms, std::vector<std::string> labels = {});

  [[nodiscard]] Index num_atoms() const { return atoms.cols(); }
  [[nodiscard]] Index ambient_dim() const { return atoms.rows(); }
  [[nodiscard]] Vector map(const SimplexPoint& x) const;
};

/// lambda_a(y) = grad^T (a - y) for every atom column a.
Vector polytope_multipliers(const Vector& y, const Vector& grad, const AtomPolytope& P);

struct ExposedFace {
  std::vector<Index> atom_indices;
  Vector gradient;

  [[nodiscard]] bool contains(Index atom) const;
  /// Atoms outside the face, i.e. the active set of the lifted problem.
  [[nodiscard]] std::vector<Index> complement(Index num_atoms) const;
};

/// Atoms with lambda_a(y*) <= tol, tol scaled by 1 + ||A^T grad||_inf.
/// Throws std::domain_error when some lambda_a < -tol.
ExposedFace exposed_face(const Vector& y_star, const Vector& grad, const AtomPolytope& P,
                         double zero_tol = kDefaultZeroTol);

/// max_i |lambda_{A^i}(Ax) - lambda~_i(x)| for the lifted objective.
double affine_invariance_error(const ObjectiveModel& f, const AtomPolytope& P,
                               const SimplexPoint& x);

/// Exposed face of a stationary ambient point and the matching region of the
/// lifted problem (active set = atoms off the face, no points).
struct PolytopeReference {
  ExposedFace face;
  StationaryRegion region;
};

PolytopeReference make_polytope_reference(const ObjectiveModel& f, const AtomPolytope& P,
                                          double lifted_lipschitz, const Vector& y_star,
                                          double zero_tol = kDefaultZeroTol);

struct PolytopeRunOptions {
  StepRule rule = StepRule::Lipschitz;
  double gap_tol = 1e-10;
  std::int64_t max_iters = 10000;
  /// Stationary ambient point whose exposed face is tracked.
  std::optional<Vector> reference_y_star;
  double zero_tol = kDefaultZeroTol;
};

struct PolytopeTrace {
  ObjectiveModel lifted;
  IterationTrace trace;
  /// y_0 .. y_K.
  std::vector<Vector> ambient;
  std::optional<ExposedFace> face;
  std::optional<StationaryRegion> region;
  /// Per iterate: all weight outside the face is exactly zero.
  std::vector<bool> in_face;

  /// Smallest M with every iterate k >= M in the face; nullopt when the
  /// final iterate is outside or no reference was given.
  [[nodiscard]] std::optional<std::int64_t> face_identification_iteration() const;
};

PolytopeTrace run_afw_polytope(const ObjectiveModel& f, const AtomPolytope& P,
                               const SimplexPoint& w0, const PolytopeRunOptions& opts);

/// u / (2 n theta^2), with theta a user-supplied Hoffman constant.
double polytope_error_bound_modulus(double u, Index n, double theta);

/// Same arithmetic as strongly_convex_bound with u_P in place of u1.
BoundReport polytope_strongly_convex_bound(double h0, double u_p, double r_star, double q,
                                           std::int64_t ic_size);

}  // namespace afw
