#include "afw/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace afw {

AtomPolytope AtomPolytope::make(Matrix atoms, std::vector<std::string> labels) {
  if (atoms.cols() < 1 || atoms.rows() < 1) throw std::invalid_argument("polytope needs atoms");
  if (!atoms.allFinite()) throw std::invalid_argument("polytope atoms must be finite");
  if (labels.empty()) {
    for (Index i = 0; i < atoms.cols(); ++i) labels.push_back("a" + std::to_string(i));
  } else if (static_cast<Index>(labels.size()) != atoms.cols()) {
    throw std::invalid_argument("one label per atom required");
  }
  AtomPolytope P;
  P.atoms = std::move(atoms);
  P.labels = std::move(labels);
  return P;
}

Vector AtomPolytope::map(const SimplexPoint& x) const {
  if (x.size() != num_atoms()) throw std::invalid_argument("map: weight dimension mismatch");
  return atoms * x.weights();
}

Vector polytope_multipliers(const Vector& y, const Vector& grad, const AtomPolytope& P) {
  if (y.size() != P.ambient_dim() || grad.size() != P.ambient_dim()) {
    throw std::invalid_argument("polytope_multipliers: dimension mismatch");
  }
  Vector lambda = P.atoms.transpose() * grad;
  lambda.array() -= grad.dot(y);
  return lambda;
}

bool ExposedFace::contains(Index atom) const {
  return std::binary_search(atom_indices.begin(), atom_indices.end(), atom);
}

std::vector<Index> ExposedFace::complement(Index num_atoms) const {
  std::vector<Index> out;
  for (Index i = 0; i < num_atoms; ++i) {
    if (!contains(i)) out.push_back(i);
  }
  return out;
}

ExposedFace exposed_face(const Vector& y_star, const Vector& grad, const AtomPolytope& P,
                         double zero_tol) {
  const Vector lambda = polytope_multipliers(y_star, grad, P);
  const double tol = scaled_zero_tol(zero_tol, P.atoms.transpose() * grad);
  if (lambda.minCoeff() < -tol) throw std::domain_error("exposed_face: point is not stationary");
  ExposedFace face;
  face.gradient = grad;
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda[i] <= tol) face.atom_indices.push_back(i);
  }
  return face;
}

double affine_invariance_error(const ObjectiveModel& f, const AtomPolytope& P,
                               const SimplexPoint& x) {
  const Vector y = P.map(x);
  const Vector grad = f.gradient(y);
  const Vector ambient = polytope_multipliers(y, grad, P);
  const Vector lifted = multipliers(x, P.atoms.transpose() * grad);
  return (ambient - lifted).lpNorm<Eigen::Infinity>();
}

PolytopeReference make_polytope_reference(const ObjectiveModel& f, const AtomPolytope& P,
                                          double lifted_lipschitz, const Vector& y_star,
                                          double zero_tol) {
  if (y_star.size() != P.ambient_dim()) {
    throw std::invalid_argument("reference point dimension mismatch");
  }
  PolytopeReference ref;
  ref.face = exposed_face(y_star, f.gradient(y_star), P, zero_tol);
  const Vector lambda = polytope_multipliers(y_star, ref.face.gradient, P);
  const std::vector<Index> outside = ref.face.complement(P.num_atoms());
  double delta = kInfinity;
  for (Index i : outside) delta = std::min(delta, lambda[i]);
  ref.region = make_region_from_active_set(P.num_atoms(), outside, delta, lifted_lipschitz);
  return ref;
}

std::optional<std::int64_t> PolytopeTrace::face_identification_iteration() const {
  if (!face || in_face.empty() || !in_face.back()) return std::nullopt;
  auto k = static_cast<std::int64_t>(in_face.size()) - 1;
  while (k > 0 && in_face[static_cast<std::size_t>(k - 1)]) --k;
  return k;
}

PolytopeTrace run_afw_polytope(const ObjectiveModel& f, const AtomPolytope& P,
                               const SimplexPoint& w0, const PolytopeRunOptions& opts) {
  PolytopeTrace out;
  out.lifted = compose_affine(f, P);

  RunOptions run;
  run.rule = opts.rule;
  run.gap_tol = opts.gap_tol;
  run.max_iters = opts.max_iters;
  run.keep_iterates = true;
  if (opts.reference_y_star) {
    PolytopeReference ref =
        make_polytope_reference(f, P, out.lifted.lipschitz, *opts.reference_y_star, opts.zero_tol);
    out.face = std::move(ref.face);
    out.region = std::move(ref.region);
    run.reference = &*out.region;
  }

  out.trace = run_afw(out.lifted, w0, run);
  out.ambient.reserve(out.trace.iterates.size());
  for (const auto& x : out.trace.iterates) {
    out.ambient.push_back(P.map(x));
    if (out.region) out.in_face.push_back(j_size(x, *out.region) == 0);
  }
  return out;
}

double polytope_error_bound_modulus(double u, Index n, double theta) {
  if (!(u > 0.0) || n < 1 || !(theta > 0.0)) {
    throw std::invalid_argument("polytope_error_bound_modulus: inputs must be positive");
  }
  return u / (2.0 * static_cast<double>(n) * theta * theta);
}

BoundReport polytope_strongly_convex_bound(double h0, double u_p, double r_star, double q,
                                           std::int64_t ic_size) {
  BoundReport report = strongly_convex_bound(h0, u_p, r_star, q, ic_size);
  report.bound_name = "polytope-strongly-convex";
  report.inputs[1].first = "u_P";
  return report;
}

}  // namespace afw
