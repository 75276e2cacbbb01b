#pragma once

#include "afw/simplex.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace afw {

struct AtomPolytope;

/// Evaluator bundle for f with Lipschitz gradient.
///
/// `lipschitz` is a certified upper bound on the gradient Lipschitz constant
/// (valid in both the Euclidean and the l1 norm). When `hessian` is set the
/// objective is quadratic and exact linesearch uses the closed form.
struct ObjectiveModel {
  Index dim = 0;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  double lipschitz = 1.0;
  /// Modulus u1 of f(x) >= f(x*) + (u1/2) ||x - x*||_1^2 on the simplex.
  std::optional<double> strong_convexity_l1;
  std::vector<SimplexPoint> known_stationary;
  std::optional<Matrix> hessian;
  std::string name;

  [[nodiscard]] bool is_quadratic() const { return hessian.has_value(); }
  /// True for linear objectives and quadratics with a PSD Hessian.
  [[nodiscard]] bool is_convex() const;
};

/// f(x) = 1/2 x^T Q x + b^T x.
struct QuadraticSpec {
  Matrix Q;
  Vector b;
};

/// Largest singular value of M via power iteration on M^T M. Converges to
/// relative tolerance `rel_tol` or stops after `max_iters` sweeps.
double power_iteration_norm(const Matrix& M, double rel_tol = 1e-10, int max_iters = 100000);

/// Certified upper bound on ||M||_2: the larger of the power-iteration
/// estimate and a dense symmetric eigensolve of M^T M, inflated by 1 + 1e-6.
double certified_spectral_norm(const Matrix& M);

ObjectiveModel make_quadratic(const QuadraticSpec& spec);
ObjectiveModel make_linear(const Vector& c, double lipschitz = 1.0);

/// Lifts f over the ambient space to x -> f(Ax) on the weight simplex.
/// The lifted Lipschitz constant is L_f ||A||_2^2.
ObjectiveModel compose_affine(const ObjectiveModel& f, const AtomPolytope& P);

/// Certified lower bound on min over the simplex of a quadratic:
/// min_{i,j} (Q_ij / 2 + (b_i + b_j) / 2). Exact when attained on the diagonal.
double quadratic_lower_bound(const QuadraticSpec& spec);

}  // namespace afw
