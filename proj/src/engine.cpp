#include "afw/engine.hpp"

#include <cmath>
#include <stdexcept>

namespace afw {

std::string_view to_string(DirectionKind kind) {
  return kind == DirectionKind::FrankWolfe ? "FW" : "AWAY";
}

std::string_view to_string(StepRule rule) {
  return rule == StepRule::Lipschitz ? "lipschitz" : "linesearch";
}

std::string_view to_string(Termination reason) {
  return reason == Termination::GapTolerance ? "gap tolerance" : "max iterations";
}

double IterationTrace::f_after(std::size_t k) const {
  if (k >= records.size()) throw std::out_of_range("f_after: no such step");
  return k + 1 < records.size() ? records[k + 1].f : f_final;
}

std::optional<std::vector<Index>> IterationTrace::j_sizes() const {
  if (!j_size_final) return std::nullopt;
  std::vector<Index> out;
  out.reserve(records.size() + 1);
  for (const auto& r : records) {
    if (!r.j_size) return std::nullopt;
    out.push_back(*r.j_size);
  }
  out.push_back(*j_size_final);
  return out;
}

std::optional<std::vector<double>> IterationTrace::dist1_series() const {
  if (!dist1_final) return std::nullopt;
  std::vector<double> out;
  out.reserve(records.size() + 1);
  for (const auto& r : records) {
    if (!r.dist1_ref) return std::nullopt;
    out.push_back(*r.dist1_ref);
  }
  out.push_back(*dist1_final);
  return out;
}

namespace {

Index away_vertex(const SimplexPoint& x, const Vector& grad) {
  Index best = -1;
  for (Index j = 0; j < x.size(); ++j) {
    if (!x.in_support(j)) continue;
    if (best < 0 || grad[j] > grad[best]) best = j;
  }
  if (best < 0) throw std::logic_error("away_vertex: empty support");
  return best;
}

Direction make_fw(const SimplexPoint& x, Index vertex, double slope) {
  Direction dir;
  dir.kind = DirectionKind::FrankWolfe;
  dir.vertex = vertex;
  dir.d = -x.weights();
  dir.d[vertex] += 1.0;
  dir.alpha_max = 1.0;
  dir.slope = slope;
  return dir;
}

}  // namespace

Direction select_direction(const SimplexPoint& x, const Vector& grad) {
  if (grad.size() != x.size()) throw std::invalid_argument("select_direction: dimension mismatch");
  const Vector lambda = multipliers(x, grad);
  const Index fw_vertex = lmo(grad);
  const Index aw_vertex = away_vertex(x, grad);
  const double fw_slope = -lambda[fw_vertex];
  const double away_slope = lambda[aw_vertex];
  if (fw_slope >= away_slope) return make_fw(x, fw_vertex, fw_slope);

  Direction dir;
  dir.kind = DirectionKind::Away;
  dir.vertex = aw_vertex;
  dir.d = x.weights();
  dir.d[aw_vertex] -= 1.0;
  const double xv = x[aw_vertex];
  dir.alpha_max = xv / (1.0 - xv);
  dir.slope = away_slope;
  return dir;
}

Direction fw_direction(const SimplexPoint& x, const Vector& grad) {
  if (grad.size() != x.size()) throw std::invalid_argument("fw_direction: dimension mismatch");
  const Index v = lmo(grad);
  return make_fw(x, v, x.weights().dot(grad) - grad[v]);
}

double alpha_bar(const Direction& dir, const Vector& grad, double lipschitz) {
  if (!(lipschitz > 0.0)) throw std::invalid_argument("alpha_bar: L must be positive");
  const double p = -grad.dot(dir.d);
  const double dd = dir.d.squaredNorm();
  if (!(p > 0.0) || dd == 0.0) throw std::domain_error("alpha_bar: not a descent direction");
  return std::min(dir.alpha_max, p / (lipschitz * dd));
}

double golden_section(const std::function<double(double)>& phi, double lo, double hi,
                      double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = phi(c);
  double fd = phi(d);
  while (b - a > width) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = phi(d);
    }
    // Width stops shrinking once a and b are adjacent doubles.
    if (c <= a || d >= b) break;
  }
  return 0.5 * (a + b);
}

double exact_linesearch(const ObjectiveModel& f, const SimplexPoint& x, const Direction& dir) {
  const Vector grad = f.gradient(x.weights());
  const double p = -grad.dot(dir.d);
  if (!(p > 0.0) || dir.d.squaredNorm() == 0.0) {
    throw std::domain_error("exact_linesearch: not a descent direction");
  }
  if (f.hessian) {
    const double curvature = dir.d.dot((*f.hessian) * dir.d);
    if (curvature <= 0.0) return dir.alpha_max;
    return std::min(dir.alpha_max, p / curvature);
  }
  const Vector& w = x.weights();
  auto phi = [&](double t) { return f.value(w + t * dir.d); };
  double t = golden_section(phi, 0.0, dir.alpha_max);
  if (phi(dir.alpha_max) <= phi(t)) t = dir.alpha_max;
  if (!(t > 0.0)) t = std::min(dir.alpha_max, 1e-12);
  return t;
}

int classify_step(DirectionKind kind, double alpha, double alpha_bar, double alpha_max) {
  if (!(alpha_bar > 0.0) || !(alpha_max > 0.0) || alpha_bar > alpha_max) {
    throw std::invalid_argument("classify_step: alpha_bar must lie in (0, alpha_max]");
  }
  if (!(alpha > 0.0) || alpha > alpha_max) {
    throw std::invalid_argument("classify_step: alpha must lie in (0, alpha_max]");
  }
  if (alpha_bar < alpha_max) return 1;
  if (alpha != alpha_max) {
    throw std::invalid_argument("classify_step: alpha_bar = alpha_max requires a maximal step");
  }
  if (kind == DirectionKind::FrankWolfe) {
    if (alpha_max != 1.0) throw std::invalid_argument("classify_step: FW alpha_max must be 1");
    return 2;
  }
  return 3;
}

SimplexPoint apply_step(const SimplexPoint& x, const Direction& dir, double alpha) {
  Vector w = x.weights();
  const Index v = dir.vertex;
  if (dir.kind == DirectionKind::FrankWolfe) {
    if (alpha == 1.0) {
      w.setZero();
      w[v] = 1.0;
    } else {
      w *= (1.0 - alpha);
      w[v] += alpha;
    }
  } else {
    const double xv = w[v];
    w *= (1.0 + alpha);
    if (alpha >= dir.alpha_max) {
      w[v] = 0.0;
    } else {
      w[v] = xv - alpha * (1.0 - xv);
    }
  }
  return SimplexPoint::from_update(std::move(w));
}

StepOutcome afw_step(const ObjectiveModel& f, const SimplexPoint& x, StepRule rule,
                     double gap_tol) {
  StepOutcome out;
  out.next = x;
  const Vector grad = f.gradient(x.weights());
  if (fw_gap(multipliers(x, grad)) <= gap_tol) {
    out.stationary = true;
    return out;
  }
  out.dir = select_direction(x, grad);
  if (!(-grad.dot(out.dir.d) > 0.0)) {
    out.stationary = true;
    return out;
  }
  out.alpha_bar = alpha_bar(out.dir, grad, f.lipschitz);
  out.alpha = rule == StepRule::Lipschitz ? out.alpha_bar : exact_linesearch(f, x, out.dir);
  out.step_case = classify_step(out.dir.kind, out.alpha, out.alpha_bar, out.dir.alpha_max);
  out.next = apply_step(x, out.dir, out.alpha);
  return out;
}

Index j_size(const SimplexPoint& x, const StationaryRegion& region) {
  Index count = 0;
  for (Index i : region.active_set) count += x.in_support(i) ? 1 : 0;
  return count;
}

namespace {

template <typename SelectFn>
IterationTrace run_loop(const ObjectiveModel& f, const SimplexPoint& x0, const RunOptions& opts,
                        SelectFn select) {
  if (x0.size() != f.dim) throw std::invalid_argument("starting point dimension mismatch");
  if (!(opts.gap_tol >= 0.0)) throw std::invalid_argument("gap_tol must be nonnegative");
  const StationaryRegion* ref = opts.reference;
  if (ref && ref->dim != 0 && ref->dim != f.dim) {
    throw std::invalid_argument("reference region dimension mismatch");
  }

  IterationTrace trace;
  SimplexPoint x = x0;
  if (opts.keep_iterates) trace.iterates.push_back(x);
  std::int64_t k = 0;
  double fx = f.value(x.weights());
  Vector grad = f.gradient(x.weights());
  double gap = fw_gap(multipliers(x, grad));

  for (;;) {
    if (gap <= opts.gap_tol) {
      trace.termination = Termination::GapTolerance;
      break;
    }
    if (k >= opts.max_iters) {
      trace.termination = Termination::MaxIterations;
      break;
    }
    const Direction dir = select(x, grad);
    const double slope = -grad.dot(dir.d);
    if (!(slope > 0.0) || dir.d.squaredNorm() == 0.0) {
      trace.termination = Termination::GapTolerance;
      break;
    }
    StepRecord rec;
    rec.iter = k;
    rec.f = fx;
    rec.gap = gap;
    rec.kind = dir.kind;
    rec.vertex = dir.vertex;
    rec.alpha_max = dir.alpha_max;
    rec.alpha_bar = alpha_bar(dir, grad, f.lipschitz);
    rec.alpha = opts.rule == StepRule::Lipschitz ? rec.alpha_bar : exact_linesearch(f, x, dir);
    rec.step_case = classify_step(dir.kind, rec.alpha, rec.alpha_bar, dir.alpha_max);
    rec.support_size = x.support_size();
    if (ref) {
      rec.j_size = j_size(x, *ref);
      if (ref->has_points()) rec.dist1_ref = dist1_point_to_set(x, ref->points);
    }
    rec.slope = slope;
    rec.d_norm2 = dir.d.squaredNorm();

    SimplexPoint next = apply_step(x, dir, rec.alpha);
    const Vector delta = next.weights() - x.weights();
    rec.step_norm2 = delta.squaredNorm();
    rec.step_norm1 = norm1(delta);
    rec.vertex_weight_after = next[dir.vertex];
    rec.drop = dir.kind == DirectionKind::Away && next[dir.vertex] == 0.0;
    trace.records.push_back(rec);

    x = std::move(next);
    if (opts.keep_iterates) trace.iterates.push_back(x);
    ++k;
    fx = f.value(x.weights());
    grad = f.gradient(x.weights());
    gap = fw_gap(multipliers(x, grad));
  }

  trace.f_final = fx;
  trace.gap_final = gap;
  trace.support_final = x.support_size();
  if (ref) {
    trace.j_size_final = j_size(x, *ref);
    if (ref->has_points()) trace.dist1_final = dist1_point_to_set(x, ref->points);
  }
  trace.x_final = std::move(x);
  return trace;
}

}  // namespace

IterationTrace run_afw(const ObjectiveModel& f, const SimplexPoint& x0, const RunOptions& opts) {
  return run_loop(f, x0, opts, select_direction);
}

IterationTrace run_fw(const ObjectiveModel& f, const SimplexPoint& x0, const RunOptions& opts) {
  return run_loop(f, x0, opts, fw_direction);
}

std::vector<double> min_gap_prefix(const IterationTrace& trace) {
  if (trace.records.empty()) throw std::invalid_argument("min_gap_prefix: empty trace");
  std::vector<double> out;
  out.reserve(trace.records.size());
  double best = kInfinity;
  for (const auto& r : trace.records) {
    best = std::min(best, r.gap);
    out.push_back(best);
  }
  return out;
}

}  // namespace afw
