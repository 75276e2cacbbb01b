#include "afw/generators.hpp"
#include "afw/objective.hpp"
#include "afw/polytope.hpp"

#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace afw;

namespace {

Vector central_difference(const ObjectiveModel& f, const Vector& x, double h = 1e-6) {
  Vector g(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    Vector xp = x;
    Vector xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f.value(xp) - f.value(xm)) / (2.0 * h);
  }
  return g;
}

std::vector<ObjectiveModel> builtins(gen::Rng& rng) {
  std::vector<ObjectiveModel> out;
  out.push_back(make_quadratic(gen::strongly_convex_boundary(6, rng).spec));
  out.push_back(make_quadratic(gen::indefinite_quadratic(7, rng).spec));
  out.push_back(make_linear((Vector(4) << 0.5, -1.0, 2.0, 0.0).finished()));
  const auto poly = gen::polytope_with_face(3, 2, 4, rng);
  out.push_back(compose_affine(make_quadratic(poly.ambient), poly.polytope));
  return out;
}

}  // namespace

TEST_CASE("identity quadratic") {
  const ObjectiveModel f = make_quadratic({Matrix::Identity(3, 3), Vector::Zero(3)});
  CHECK(f.lipschitz >= 1.0);
  CHECK(f.lipschitz <= 1.0 + 1.1e-6);
  CHECK(f.gradient(SimplexPoint::vertex(3, 0).weights()) == Vector::Unit(3, 0));
  REQUIRE(f.strong_convexity_l1);
  CHECK(*f.strong_convexity_l1 == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("indefinite diagonal quadratic has no strong convexity") {
  Matrix Q = Matrix::Zero(2, 2);
  Q(0, 0) = 1.0;
  Q(1, 1) = -2.0;
  const ObjectiveModel f = make_quadratic({Q, Vector::Zero(2)});
  CHECK(f.lipschitz >= 2.0);
  CHECK(f.lipschitz <= 2.0 * (1.0 + 1.1e-6));
  CHECK_FALSE(f.strong_convexity_l1);
  CHECK_FALSE(f.is_convex());
}

TEST_CASE("two-dimensional quadratic minimized at a vertex") {
  // f(t, 1-t) = t^2 + (1-t)^2 / 2 - 2t has derivative 3t - 3, so t = 1.
  Matrix Q = Matrix::Zero(2, 2);
  Q(0, 0) = 2.0;
  Q(1, 1) = 1.0;
  const ObjectiveModel f = make_quadratic({Q, (Vector(2) << -2.0, 0.0).finished()});
  const SimplexPoint e0 = SimplexPoint::vertex(2, 0);
  const Vector g = f.gradient(e0.weights());
  CHECK(g == Vector::Zero(2));
  CHECK(multipliers(e0, g) == Vector::Zero(2));
  for (int k = 0; k <= 100; ++k) {
    const double t = k / 100.0;
    CHECK(f.value((Vector(2) << t, 1 - t).finished()) >= f.value(e0.weights()) - 1e-15);
  }
}

TEST_CASE("asymmetric Q is rejected") {
  Matrix Q = Matrix::Identity(2, 2);
  Q(0, 1) = 1e-3;
  CHECK_THROWS_AS(make_quadratic({Q, Vector::Zero(2)}), std::invalid_argument);
}

TEST_CASE("linear objectives") {
  const ObjectiveModel f = make_linear((Vector(3) << 1, 2, 3).finished());
  CHECK(f.lipschitz == 1.0);
  const Vector lambda = multipliers(SimplexPoint::vertex(3, 0), f.gradient(Vector::Zero(3)));
  CHECK(lambda == (Vector(3) << 0, 1, 2).finished());

  const ObjectiveModel zero = make_linear(Vector::Zero(3));
  CHECK(fw_gap(multipliers(SimplexPoint::barycenter(3), zero.gradient(Vector::Zero(3)))) == 0.0);

  // c = [1, 1, 2]: every point of the edge {x_2 = 0} is stationary.
  const ObjectiveModel edge = make_linear((Vector(3) << 1, 1, 2).finished());
  for (int k = 0; k <= 10; ++k) {
    const SimplexPoint x = SimplexPoint::validate((Vector(3) << k / 10.0, 1 - k / 10.0, 0).finished());
    CHECK(fw_gap(multipliers(x, edge.gradient(x.weights()))) <= 1e-15);
  }
  CHECK_THROWS(make_linear((Vector(2) << 1, 2).finished(), 0.0));
}

TEST_CASE("spectral norm bounds on known matrices") {
  const Matrix D = (Vector(4) << 3.0, -7.0, 0.5, 2.0).finished().asDiagonal();
  CHECK(power_iteration_norm(D) == doctest::Approx(7.0).epsilon(1e-9));
  const double cert = certified_spectral_norm(D);
  CHECK(cert >= 7.0);
  CHECK(cert <= 7.0 * (1.0 + 1.1e-6));
  // Rank-one u v^T has norm |u| |v|.
  const Vector u = (Vector(3) << 1, 2, 2).finished();
  const Vector v = (Vector(2) << 3, 4).finished();
  CHECK(certified_spectral_norm(u * v.transpose()) >= 15.0);
}

TEST_CASE("finite-difference gradients of the built-in objectives") {
  gen::Rng rng(5);
  for (const ObjectiveModel& f : builtins(rng)) {
    for (int t = 0; t < 100; ++t) {
      const Vector x = gen::uniform_simplex(f.dim, rng).weights();
      const Vector fd = central_difference(f, x);
      CHECK((fd - f.gradient(x)).cwiseAbs().maxCoeff() <= 1e-5);
    }
  }
}

TEST_CASE("sampled gradient differences respect L") {
  gen::Rng rng(6);
  for (const ObjectiveModel& f : builtins(rng)) {
    for (int t = 0; t < 200; ++t) {
      const Vector x = gen::uniform_simplex(f.dim, rng).weights();
      const Vector y = gen::sparse_simplex(f.dim, 0.5, rng).weights();
      CHECK((f.gradient(x) - f.gradient(y)).norm() <= f.lipschitz * (x - y).norm() * (1 + 1e-9));
    }
  }
}

TEST_CASE("l1 quadratic growth of planted strongly convex problems") {
  gen::Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto g = gen::strongly_convex_boundary(3 + t % 6, rng);
    const ObjectiveModel f = make_quadratic(g.spec);
    REQUIRE(f.strong_convexity_l1);
    for (int s = 0; s < 50; ++s) {
      const Vector x = gen::uniform_simplex(f.dim, rng).weights();
      const double d = norm1(x - g.x_star.weights());
      CHECK(f.value(x) - g.f_star >= 0.5 * *f.strong_convexity_l1 * d * d - 1e-12);
    }
  }
}

TEST_CASE("compose_affine") {
  const Matrix Q = (Matrix(2, 2) << 2.0, 0.5, 0.5, 1.0).finished();
  const Vector b = (Vector(2) << -1.0, 0.3).finished();
  const ObjectiveModel f = make_quadratic({Q, b});

  const ObjectiveModel id = compose_affine(f, AtomPolytope::make(Matrix::Identity(2, 2)));
  CHECK(id.lipschitz == doctest::Approx(f.lipschitz).epsilon(1e-5));
  const Vector x = (Vector(2) << 0.3, 0.7).finished();
  CHECK(id.value(x) == f.value(x));

  const ObjectiveModel twice = compose_affine(f, AtomPolytope::make(2.0 * Matrix::Identity(2, 2)));
  CHECK(twice.lipschitz == doctest::Approx(4.0 * f.lipschitz).epsilon(1e-5));

  Matrix dup = Matrix::Zero(2, 2);
  dup(0, 0) = 1.0;
  dup(0, 1) = 1.0;
  const ObjectiveModel flat = compose_affine(f, AtomPolytope::make(dup));
  const Vector g = flat.gradient(x);
  CHECK(g[0] == g[1]);
  CHECK(flat.value((Vector(2) << 0.1, 0.9).finished()) == flat.value((Vector(2) << 0.9, 0.1).finished()));

  CHECK_THROWS_AS(compose_affine(f, AtomPolytope::make(Matrix::Identity(3, 3))), std::invalid_argument);
}

TEST_CASE("pairwise lower bound against a dense grid") {
  gen::Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const auto g = gen::indefinite_quadratic(3, rng);
    const ObjectiveModel f = make_quadratic(g.spec);
    double grid_min = INFINITY;
    constexpr int kSteps = 200;
    for (int i = 0; i <= kSteps; ++i) {
      for (int j = 0; i + j <= kSteps; ++j) {
        const Vector x = (Vector(3) << i, j, kSteps - i - j).finished() / kSteps;
        grid_min = std::min(grid_min, f.value(x));
      }
    }
    CHECK(g.f_lower <= grid_min + 1e-12);
  }
}
