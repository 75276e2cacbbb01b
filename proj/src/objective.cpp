#include "afw/objective.hpp"

#include "afw/polytope.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace afw {

namespace {

constexpr double kLipschitzInflation = 1.0 + 1e-6;
constexpr double kSymmetryTol = 1e-12;

double min_eigenvalue(const Matrix& Q) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(Q, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

bool ObjectiveModel::is_convex() const {
  if (!hessian) return false;
  if (hessian->size() == 0) return true;
  return min_eigenvalue(*hessian) >= 0.0;
}

double power_iteration_norm(const Matrix& M, double rel_tol, int max_iters) {
  if (M.size() == 0) return 0.0;
  const Matrix gram = M.transpose() * M;
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  Vector v(gram.cols());
  for (Index i = 0; i < v.size(); ++i) v[i] = unif(rng);
  v.normalize();
  double estimate = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    Vector w = gram * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    const double next = v.dot(w);
    v = w / norm;
    if (std::abs(next - estimate) <= rel_tol * std::abs(next)) {
      estimate = next;
      break;
    }
    estimate = next;
  }
  return std::sqrt(std::max(estimate, 0.0));
}

double certified_spectral_norm(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  const double power = power_iteration_norm(M);
  Eigen::SelfAdjointEigenSolver<Matrix> es(M.transpose() * M, Eigen::EigenvaluesOnly);
  const double dense = std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
  return std::max(power, dense) * kLipschitzInflation;
}

ObjectiveModel make_quadratic(const QuadraticSpec& spec) {
  const Index n = spec.Q.rows();
  if (n == 0 || spec.Q.cols() != n) throw std::invalid_argument("Q must be square and nonempty");
  if (spec.b.size() != n) throw std::invalid_argument("b length must match Q");
  if (!spec.Q.allFinite() || !spec.b.allFinite()) {
    throw std::invalid_argument("quadratic data must be finite");
  }
  const double scale = std::max(1.0, spec.Q.cwiseAbs().maxCoeff());
  if ((spec.Q - spec.Q.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
    throw std::invalid_argument("Q is not symmetric");
  }
  const Matrix Q = 0.5 * (spec.Q + spec.Q.transpose());
  const Vector b = spec.b;

  ObjectiveModel f;
  f.dim = n;
  f.name = "quadratic";
  f.value = [Q, b](const Vector& x) { return 0.5 * x.dot(Q * x) + b.dot(x); };
  f.gradient = [Q, b](const Vector& x) -> Vector { return Q * x + b; };
  // ||Q||_2 equals the spectral radius for symmetric Q.
  f.lipschitz = certified_spectral_norm(Q);
  if (f.lipschitz == 0.0) f.lipschitz = 1.0;
  const double lmin = min_eigenvalue(Q);
  if (lmin > 0.0) f.strong_convexity_l1 = lmin / static_cast<double>(n);
  f.hessian = Q;
  return f;
}

ObjectiveModel make_linear(const Vector& c, double lipschitz) {
  if (c.size() == 0) throw std::invalid_argument("linear objective needs a nonempty cost");
  if (!c.allFinite()) throw std::invalid_argument("linear cost must be finite");
  if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) {
    throw std::invalid_argument("linear objective needs a positive finite L");
  }
  ObjectiveModel f;
  f.dim = c.size();
  f.name = "linear";
  f.value = [c](const Vector& x) { return c.dot(x); };
  f.gradient = [c](const Vector&) -> Vector { return c; };
  f.lipschitz = lipschitz;
  f.hessian = Matrix::Zero(c.size(), c.size());
  return f;
}

ObjectiveModel compose_affine(const ObjectiveModel& f, const AtomPolytope& P) {
  const Matrix& A = P.atoms;
  if (A.rows() != f.dim) {
    throw std::invalid_argument("compose_affine: atom dimension does not match objective");
  }
  if (A.cols() == 0) throw std::invalid_argument("compose_affine: no atoms");
  ObjectiveModel lifted;
  lifted.dim = A.cols();
  lifted.name = f.name + "(Ax)";
  lifted.value = [A, v = f.value](const Vector& x) { return v(A * x); };
  lifted.gradient = [A, g = f.gradient](const Vector& x) -> Vector {
    return A.transpose() * g(A * x);
  };
  const double sigma = certified_spectral_norm(A);
  lifted.lipschitz = f.lipschitz * sigma * sigma;
  if (lifted.lipschitz == 0.0) lifted.lipschitz = f.lipschitz;
  if (f.hessian) lifted.hessian = Matrix(A.transpose() * (*f.hessian) * A);
  return lifted;
}

double quadratic_lower_bound(const QuadraticSpec& spec) {
  const Index n = spec.Q.rows();
  double best = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      best = std::min(best, 0.5 * spec.Q(i, j) + 0.5 * (spec.b[i] + spec.b[j]));
    }
  }
  return best;
}

}  // namespace afw
