#include "afw/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace afw {

SimplexPoint SimplexPoint::validate(const Vector& raw, double tol) {
  if (raw.size() == 0) {
    throw std::invalid_argument("simplex point must have at least one coordinate");
  }
  if (!raw.allFinite()) {
    throw std::invalid_argument("simplex point has non-finite coordinates");
  }
  Vector w = raw;
  for (Index i = 0; i < w.size(); ++i) {
    if (w[i] < -tol) {
      throw std::invalid_argument("simplex point coordinate " + std::to_string(i) +
                                  " is negative beyond tolerance");
    }
    if (w[i] < 0.0) w[i] = 0.0;
  }
  const double sum = w.sum();
  if (std::abs(sum - 1.0) > tol) {
    throw std::invalid_argument("simplex point coordinates do not sum to one");
  }
  if (sum != 1.0) w /= sum;
  return SimplexPoint(std::move(w));
}

SimplexPoint SimplexPoint::vertex(Index n, Index i) {
  if (n <= 0 || i < 0 || i >= n) {
    throw std::invalid_argument("vertex index out of range");
  }
  Vector w = Vector::Zero(n);
  w[i] = 1.0;
  return SimplexPoint(std::move(w));
}

SimplexPoint SimplexPoint::barycenter(Index n) {
  if (n <= 0) throw std::invalid_argument("dimension must be positive");
  return SimplexPoint(Vector::Constant(n, 1.0 / static_cast<double>(n)));
}

SimplexPoint SimplexPoint::from_update(Vector weights) {
  for (Index i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0)) weights[i] = 0.0;
  }
  const double sum = weights.sum();
  if (!(sum > 0.0)) throw std::domain_error("update produced an empty support");
  if (std::abs(sum - 1.0) > kRenormalizeDrift) weights /= sum;
  return SimplexPoint(std::move(weights));
}

std::vector<Index> SimplexPoint::support() const {
  std::vector<Index> s;
  for (Index i = 0; i < w_.size(); ++i) {
    if (w_[i] > 0.0) s.push_back(i);
  }
  return s;
}

Index SimplexPoint::support_size() const {
  Index count = 0;
  for (Index i = 0; i < w_.size(); ++i) count += w_[i] > 0.0 ? 1 : 0;
  return count;
}

Index lmo(const Vector& grad) {
  if (grad.size() == 0) throw std::invalid_argument("lmo: empty gradient");
  Index best = 0;
  for (Index i = 1; i < grad.size(); ++i) {
    if (grad[i] < grad[best]) best = i;
  }
  return best;
}

Vector multipliers(const SimplexPoint& x, const Vector& grad) {
  if (grad.size() != x.size()) {
    throw std::invalid_argument("multipliers: dimension mismatch");
  }
  const double avg = x.weights().dot(grad);
  return grad.array() - avg;
}

double fw_gap(const Vector& lambda) {
  if (lambda.size() == 0) throw std::invalid_argument("fw_gap: empty multiplier vector");
  // Rounding can push min lambda slightly above zero at stationary points.
  return std::max(0.0, -lambda.minCoeff());
}

double dist1_point_to_set(const SimplexPoint& x, std::span<const SimplexPoint> set) {
  if (set.empty()) throw std::invalid_argument("dist1: empty point set");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : set) {
    if (s.size() != x.size()) throw std::invalid_argument("dist1: dimension mismatch");
    best = std::min(best, norm1(x.weights() - s.weights()));
  }
  return best;
}

double norm1(const Vector& v) { return v.lpNorm<1>(); }

}  // namespace afw
