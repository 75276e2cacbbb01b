#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace afw {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Sum drift above which an iterate is renormalized after an update.
inline constexpr double kRenormalizeDrift = 1e-14;

/// A point of the probability simplex.
///
/// Coordinates are nonnegative and sum to one. Zeros are exact: coordinates
/// removed by a drop step are stored as 0.0 and support queries compare
/// against 0.0 without a threshold.
class SimplexPoint {
 public:
  /// Validates a raw vector. Coordinates in [-tol, 0) are clamped to exact
  /// zero and the sum is renormalized. Throws std::invalid_argument for
  /// non-finite input, coordinates below -tol, or |sum - 1| > tol.
  static SimplexPoint validate(const Vector& raw, double tol = 1e-12);

  static SimplexPoint vertex(Index n, Index i);
  static SimplexPoint barycenter(Index n);

  /// Wraps weights produced by an algorithm step. Nonpositive coordinates
  /// become exact zeros and the sum is rescaled when it drifts by more than
  /// kRenormalizeDrift.
  static SimplexPoint from_update(Vector weights);

  [[nodiscard]] const Vector& weights() const { return w_; }
  [[nodiscard]] Index size() const { return w_.size(); }
  [[nodiscard]] double operator[](Index i) const { return w_[i]; }

  [[nodiscard]] std::vector<Index> support() const;
  [[nodiscard]] Index support_size() const;
  [[nodiscard]] bool in_support(Index i) const { return w_[i] > 0.0; }

  friend bool operator==(const SimplexPoint& a, const SimplexPoint& b) {
    return a.w_ == b.w_;
  }

 private:
  explicit SimplexPoint(Vector w) : w_(std::move(w)) {}
  Vector w_;
};

inline SimplexPoint validate_simplex(const Vector& raw, double tol = 1e-12) {
  return SimplexPoint::validate(raw, tol);
}

/// Linear minimization oracle on the simplex: the lowest index attaining
/// min_i grad_i.
Index lmo(const Vector& grad);

/// lambda_i(x) = grad_i - x^T grad.
Vector multipliers(const SimplexPoint& x, const Vector& grad);

/// FW gap max_i(-lambda_i). Nonnegative whenever lambda comes from a
/// simplex point.
double fw_gap(const Vector& lambda);

/// min over s in set of ||x - s||_1. Throws on an empty set.
double dist1_point_to_set(const SimplexPoint& x, std::span<const SimplexPoint> set);

double norm1(const Vector& v);

}  // namespace afw
