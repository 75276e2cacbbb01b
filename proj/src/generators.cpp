#include "afw/generators.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace afw::gen {

namespace {

Matrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix M(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) M(i, j) = normal(rng);
  }
  return M;
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Index uniform_index(Rng& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

}  // namespace

PlantedQuadratic strongly_convex_boundary(Index n, Rng& rng, double mu) {
  if (n < 2) throw std::invalid_argument("strongly_convex_boundary: n must be >= 2");
  const Matrix M = gaussian_matrix(n, n, rng);
  Matrix Q = M.transpose() * M / static_cast<double>(n);
  Q.diagonal().array() += mu;
  Q = 0.5 * (Q + Q.transpose());

  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  const Index s = uniform_index(rng, 1, n - 1);
  std::vector<Index> support(perm.begin(), perm.begin() + s);
  std::sort(support.begin(), support.end());

  Vector w = Vector::Zero(n);
  for (Index i : support) w[i] = uniform(rng, 0.5, 1.5);
  w /= w.sum();

  const double level = uniform(rng, -1.0, 1.0);
  Vector g = Vector::Constant(n, level);
  for (Index i = 0; i < n; ++i) {
    if (w[i] == 0.0) g[i] += uniform(rng, 0.5, 2.0);
  }

  PlantedQuadratic out;
  out.spec.Q = Q;
  out.spec.b = g - Q * w;
  out.x_star = SimplexPoint::validate(w);
  out.support = std::move(support);
  const Vector& x = out.x_star.weights();
  out.f_star = 0.5 * x.dot(Q * x) + out.spec.b.dot(x);
  return out;
}

IndefiniteQuadratic indefinite_quadratic(Index n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("indefinite_quadratic: n must be >= 2");
  Matrix Q(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i <= j; ++i) {
      Q(i, j) = uniform(rng, -1.0, 1.0);
      Q(j, i) = Q(i, j);
    }
  }
  Vector b(n);
  for (Index i = 0; i < n; ++i) b[i] = uniform(rng, -1.0, 1.0);

  IndefiniteQuadratic out;
  out.spec = {Q, b};
  out.f_lower = quadratic_lower_bound(out.spec);
  Eigen::SelfAdjointEigenSolver<Matrix> es(Q, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = es.eigenvalues().minCoeff();
  return out;
}

PlantedPolytope polytope_with_face(Index dim, Index face_size, Index other_atoms, Rng& rng) {
  if (dim < 2 || dim > 3) throw std::invalid_argument("polytope_with_face: dim must be 2 or 3");
  if (face_size < 1 || face_size > dim) {
    throw std::invalid_argument("polytope_with_face: face size must be in [1, dim]");
  }
  if (other_atoms < 1) throw std::invalid_argument("polytope_with_face: need off-face atoms");
  constexpr double kMargin = 0.2;

  const Index m = face_size + other_atoms;
  Matrix atoms(dim, m);
  for (Index j = 0; j < m; ++j) {
    atoms(0, j) = j < face_size ? 1.0 : uniform(rng, -1.0, 1.0 - kMargin);
    for (Index r = 1; r < dim; ++r) atoms(r, j) = uniform(rng, -1.0, 1.0);
  }
  // Shuffle columns so face atoms are not always first.
  std::vector<Index> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  Matrix shuffled(dim, m);
  std::vector<Index> face;
  for (Index j = 0; j < m; ++j) {
    shuffled.col(j) = atoms.col(perm[static_cast<std::size_t>(j)]);
    if (perm[static_cast<std::size_t>(j)] < face_size) face.push_back(j);
  }

  Vector weights(face_size);
  for (Index k = 0; k < face_size; ++k) weights[k] = uniform(rng, 0.5, 1.5);
  weights /= weights.sum();
  Vector y_star = Vector::Zero(dim);
  for (Index k = 0; k < face_size; ++k) y_star += weights[k] * shuffled.col(face[static_cast<std::size_t>(k)]);
  y_star[0] = 1.0;

  const Matrix B = gaussian_matrix(dim, dim, rng);
  Matrix H = B.transpose() * B / static_cast<double>(dim);
  H.diagonal().array() += 0.5;
  H = 0.5 * (H + H.transpose());
  const double gamma = uniform(rng, 0.5, 2.0);
  Vector e0 = Vector::Zero(dim);
  e0[0] = 1.0;

  PlantedPolytope out;
  out.polytope = AtomPolytope::make(shuffled);
  // 1/2 (y - y*)^T H (y - y*) - gamma e0^T (y - y*), up to a constant.
  out.ambient = {H, -H * y_star - gamma * e0};
  out.y_star = y_star;
  out.face_atoms = std::move(face);
  return out;
}

SimplexPoint uniform_simplex(Index n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  Vector w(n);
  for (Index i = 0; i < n; ++i) w[i] = expo(rng);
  return SimplexPoint::validate(w / w.sum());
}

SimplexPoint sparse_simplex(Index n, double keep, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::bernoulli_distribution coin(keep);
  Vector w = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    if (coin(rng)) w[i] = expo(rng);
  }
  if (w.sum() == 0.0) w[uniform_index(rng, 0, n - 1)] = 1.0;
  return SimplexPoint::validate(w / w.sum());
}

SimplexPoint near_point(const SimplexPoint& x, double radius, double keep, Rng& rng) {
  const Index n = x.size();
  SimplexPoint y = sparse_simplex(n, keep, rng);
  while (y == x) y = sparse_simplex(n, keep, rng);
  const Vector d = y.weights() - x.weights();
  const double u = uniform(rng, 0.0, 1.0);
  const double t = std::min(1.0, u * radius / norm1(d));
  return SimplexPoint::from_update(x.weights() + t * d);
}

}  // namespace afw::gen
