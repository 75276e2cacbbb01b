#include "afw/identification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace afw {

namespace {

// Ratios that are integers in exact arithmetic (ln 8 / ln 2) can land one
// ulp above the integer; snap before taking the ceiling.
double snap_to_integer(double v) {
  const double r = std::round(v);
  return std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v)) ? r : v;
}

constexpr double kMaxIterationCount = 9.0e18;

}  // namespace

double scaled_zero_tol(double zero_tol, const Vector& grad) {
  return zero_tol * (1.0 + grad.lpNorm<Eigen::Infinity>());
}

SupportSplit extended_support(const SimplexPoint& x, const ObjectiveModel& f, double zero_tol) {
  if (x.size() != f.dim) throw std::invalid_argument("extended_support: dimension mismatch");
  const Vector grad = f.gradient(x.weights());
  const Vector lambda = multipliers(x, grad);
  const double tol = scaled_zero_tol(zero_tol, grad);
  if (fw_gap(lambda) > tol) throw std::domain_error("extended_support: point is not stationary");
  SupportSplit split;
  for (Index i = 0; i < x.size(); ++i) {
    if (std::abs(lambda[i]) <= tol) {
      split.extended_support.push_back(i);
    } else {
      if (x.in_support(i)) {
        throw std::domain_error("extended_support: positive multiplier on the support");
      }
      split.active_set.push_back(i);
    }
  }
  return split;
}

double active_set_radius(double delta_min, double lipschitz) {
  if (std::isinf(delta_min) && delta_min > 0.0) return kInfinity;
  if (!(delta_min > 0.0)) {
    throw std::invalid_argument("active_set_radius: delta_min must be positive");
  }
  if (!(lipschitz > 0.0)) throw std::invalid_argument("active_set_radius: L must be positive");
  return delta_min / (delta_min + 2.0 * lipschitz);
}

StationaryRegion make_region(std::vector<SimplexPoint> points, const ObjectiveModel& f,
                             double zero_tol) {
  if (points.empty()) throw std::invalid_argument("make_region: no points");
  StationaryRegion region;
  region.dim = f.dim;
  region.lipschitz = f.lipschitz;
  bool first = true;
  for (const auto& x : points) {
    const SupportSplit split = extended_support(x, f, zero_tol);
    if (first) {
      region.extended_support = split.extended_support;
      region.active_set = split.active_set;
      first = false;
    } else if (split.active_set != region.active_set) {
      throw std::domain_error("make_region: points do not share one active set");
    }
    const Vector lambda = multipliers(x, f.gradient(x.weights()));
    for (Index i : split.active_set) region.delta_min = std::min(region.delta_min, lambda[i]);
    region.strict_complementarity.push_back(
        static_cast<std::size_t>(x.support_size()) == split.extended_support.size());
  }
  region.r_star = region.active_set.empty() ? kInfinity
                                            : active_set_radius(region.delta_min, f.lipschitz);
  region.points = std::move(points);
  return region;
}

StationaryRegion make_region_from_active_set(Index dim, std::vector<Index> active_set,
                                             double delta_min, double lipschitz) {
  StationaryRegion region;
  region.dim = dim;
  region.lipschitz = lipschitz;
  std::sort(active_set.begin(), active_set.end());
  for (Index i = 0, k = 0; i < dim; ++i) {
    if (k < static_cast<Index>(active_set.size()) && active_set[k] == i) {
      ++k;
    } else {
      region.extended_support.push_back(i);
    }
  }
  region.active_set = std::move(active_set);
  if (region.active_set.empty()) {
    region.delta_min = kInfinity;
    region.r_star = kInfinity;
  } else {
    region.delta_min = delta_min;
    region.r_star = active_set_radius(delta_min, lipschitz);
  }
  return region;
}

std::vector<Index> j_set(const SimplexPoint& x, const StationaryRegion& region) {
  std::vector<Index> out;
  for (Index i : region.active_set) {
    if (i >= x.size()) throw std::invalid_argument("j_set: dimension mismatch");
    if (x.in_support(i)) out.push_back(i);
  }
  return out;
}

double multiplier_perturbation_bound(double h, double lipschitz, double delta_k) {
  if (h < 0.0 || delta_k < 0.0) {
    throw std::invalid_argument("multiplier_perturbation_bound: h and delta_k must be >= 0");
  }
  return h * (lipschitz + 0.5 * delta_k);
}

PerturbationCheck check_multiplier_perturbation(const SimplexPoint& x_star,
                                                const SimplexPoint& x_k,
                                                const ObjectiveModel& f, double slack,
                                                double zero_tol) {
  PerturbationCheck out;
  const SupportSplit split = extended_support(x_star, f, zero_tol);
  std::vector<bool> in_o(static_cast<std::size_t>(x_star.size()), false);
  std::size_t o_count = 0;
  for (Index i : split.active_set) {
    if (!x_k.in_support(i)) {
      in_o[static_cast<std::size_t>(i)] = true;
      ++o_count;
    }
  }
  if (o_count == split.active_set.size()) {
    out.message = "inapplicable: every active index is already zero at x_k";
    return out;
  }
  out.applicable = true;
  const Vector lambda_star = multipliers(x_star, f.gradient(x_star.weights()));
  const Vector lambda_k = multipliers(x_k, f.gradient(x_k.weights()));
  out.delta_k = -kInfinity;
  for (Index i = 0; i < x_star.size(); ++i) {
    if (!in_o[static_cast<std::size_t>(i)]) out.delta_k = std::max(out.delta_k, lambda_star[i]);
  }
  // Multipliers on I are zero up to rounding; delta_k is a max of nonnegatives.
  out.delta_k = std::max(out.delta_k, 0.0);
  out.h = norm1(x_k.weights() - x_star.weights());
  out.bound = multiplier_perturbation_bound(out.h, f.lipschitz, out.delta_k);
  out.max_deviation = (lambda_star - lambda_k).lpNorm<Eigen::Infinity>();
  out.holds = out.max_deviation <= out.bound + slack;
  if (!out.holds) out.message = "multiplier deviation exceeds h(L + delta_k/2)";
  return out;
}

DecrementCheck verify_local_decrement(const StationaryRegion& region, const SimplexPoint& x_k,
                                      const ObjectiveModel& f, StepRule rule) {
  DecrementCheck out;
  if (!region.has_points()) {
    out.message = "precondition unmet: region has no points";
    return out;
  }
  out.dist1 = dist1_point_to_set(x_k, region.points);
  if (!(out.dist1 < region.r_star)) {
    out.message = "precondition unmet: x_k is outside the active set radius";
    return out;
  }
  out.j_before = j_size(x_k, region);
  const StepOutcome step = afw_step(f, x_k, rule, 0.0);
  out.j_after = j_size(step.next, region);
  if (!step.stationary) {
    out.step_case = step.step_case;
    out.kind = step.dir.kind;
    out.vertex = step.dir.vertex;
  }
  const Index allowed = std::max<Index>(0, out.j_before - 1);
  out.status = out.j_after <= allowed ? DecrementStatus::Pass : DecrementStatus::Fail;
  if (out.status == DecrementStatus::Fail) {
    out.message = "|J| went from " + std::to_string(out.j_before) + " to " +
                  std::to_string(out.j_after);
  }
  return out;
}

bool BoundReport::all_conditions_satisfied() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const BoundCondition& c) { return c.satisfied; });
}

BoundReport strongly_convex_bound(double h0, double u1, double r_star, double q,
                                  std::int64_t ic_size) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("strongly_convex_bound: q must be in (0,1)");
  if (!(u1 > 0.0)) throw std::invalid_argument("strongly_convex_bound: u1 must be positive");
  if (!(h0 >= 0.0)) throw std::invalid_argument("strongly_convex_bound: h0 must be >= 0");
  if (!(r_star > 0.0)) throw std::invalid_argument("strongly_convex_bound: r* must be positive");
  if (ic_size < 0) throw std::invalid_argument("strongly_convex_bound: |I^c| must be >= 0");

  BoundReport report;
  report.bound_name = "strongly-convex";
  report.inputs = {{"h0", h0}, {"u1", u1}, {"r_star", r_star}, {"q", q},
                   {"Ic_size", static_cast<double>(ic_size)}};
  const double threshold = 0.5 * u1 * r_star * r_star;
  double entry = 0.0;
  if (h0 > threshold) {
    entry = snap_to_integer((std::log(h0) - std::log(threshold)) / std::log(1.0 / q));
    entry = std::max(0.0, std::ceil(entry));
  }
  if (!std::isfinite(entry) || entry > kMaxIterationCount) {
    report.conditions.push_back({false, "contraction factor too close to 1: bound overflows"});
    return report;
  }
  report.conditions.push_back({true, "q in (0,1)"});
  report.predicted_iterations = static_cast<std::int64_t>(entry) + ic_size;
  return report;
}

double nonconvex_rate_bound(double lipschitz, double h0, double rho, std::int64_t T) {
  if (T < 1) throw std::invalid_argument("nonconvex_rate_bound: T must be >= 1");
  if (!(rho > 0.0)) throw std::invalid_argument("nonconvex_rate_bound: rho must be positive");
  const double t = static_cast<double>(T);
  return std::max(std::sqrt(4.0 * lipschitz * h0 / (rho * t)), 4.0 * h0 / t);
}

double HolderEpsilon::admissible() const { return closed ? supremum : supremum * (1.0 - 1e-9); }

HolderEpsilon holder_epsilon_conditions(double lipschitz, double theta, double p,
                                        double r_star, double d_min_dist, Index n) {
  if (!(lipschitz > 0.0) || !(theta > 0.0) || !(p > 0.0) || !(r_star > 0.0) ||
      !(d_min_dist > 0.0) || n < 1) {
    throw std::invalid_argument("holder_epsilon_conditions: inputs must be positive");
  }
  HolderEpsilon out;
  out.eps_l = lipschitz;
  if (std::isinf(theta) || std::isinf(r_star)) {
    out.eps_radius = kInfinity;
  } else {
    const double s = 0.5 * theta * std::pow(r_star, p);
    out.eps_radius = s * s / lipschitz;
  }

  const double nn = static_cast<double>(n);
  auto separation = [&](double eps) {
    const double ratio = 2.0 * std::sqrt(lipschitz * eps) / theta;
    return 2.0 * std::pow(ratio, 1.0 / p) + 2.0 * nn * std::sqrt(2.0 * eps / lipschitz);
  };
  if (std::isinf(d_min_dist)) {
    out.eps_separation = kInfinity;
  } else {
    double lo = 0.0;
    double hi = 1.0;
    while (separation(hi) <= d_min_dist) {
      lo = hi;
      hi *= 2.0;
    }
    while (hi - lo > 1e-12 * hi) {
      const double mid = 0.5 * (lo + hi);
      if (separation(mid) <= d_min_dist) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out.eps_separation = lo;
  }

  out.supremum = out.eps_l;
  out.binding = EpsilonConstraint::StepBelowL;
  if (out.eps_radius < out.supremum) {
    out.supremum = out.eps_radius;
    out.binding = EpsilonConstraint::RadiusCondition;
  }
  if (out.eps_separation < out.supremum) {
    out.supremum = out.eps_separation;
    out.binding = EpsilonConstraint::SeparationCondition;
  }
  out.closed = out.binding == EpsilonConstraint::SeparationCondition;
  if (!(out.supremum > 0.0)) {
    throw std::domain_error("holder_epsilon_conditions: no admissible epsilon");
  }
  return out;
}

BoundReport holder_complexity_bound(const HolderEpsilon& eps,
                                    const std::function<std::int64_t(double)>& q_of_eps, Index n) {
  BoundReport report;
  report.bound_name = "holder";
  const double e = eps.admissible();
  report.inputs = {{"eps_bar", e}, {"n", static_cast<double>(n)}};
  const std::int64_t q = q_of_eps(e);
  report.inputs.emplace_back("q(eps_bar)", static_cast<double>(q));
  report.conditions.push_back({e < eps.eps_l, "eps_bar < L"});
  report.conditions.push_back({e < eps.eps_radius, "radius condition"});
  report.conditions.push_back({e <= eps.eps_separation, "separation condition"});
  report.predicted_iterations = q + 2 * static_cast<std::int64_t>(n);
  return report;
}

std::int64_t measured_q(const IterationTrace& trace, double eps) {
  const auto K = static_cast<std::int64_t>(trace.records.size());
  std::int64_t k = K;
  while (k > 0) {
    const auto j = static_cast<std::size_t>(k - 1);
    if (trace.records[j].f - trace.f_after(j) > eps) break;
    --k;
  }
  return k;
}

BoundReport local_basin_bound(double f0, double f_min, double tau, double lipschitz,
                              std::int64_t ic_size) {
  if (!(tau > 0.0)) throw std::invalid_argument("local_basin_bound: tau must be positive");
  if (!(f0 >= f_min)) throw std::invalid_argument("local_basin_bound: f0 must be >= f_min");
  BoundReport report;
  report.bound_name = "local-basin";
  report.inputs = {{"f0", f0}, {"f_min", f_min}, {"tau", tau}, {"L", lipschitz},
                   {"Ic_size", static_cast<double>(ic_size)}};
  const double h = f0 - f_min;
  const double steps =
      std::ceil(snap_to_integer(std::max(4.0 * h / tau, 8.0 * lipschitz * h / (tau * tau))));
  if (!std::isfinite(steps) || steps > kMaxIterationCount) {
    report.conditions.push_back({false, "bound overflows"});
    return report;
  }
  report.conditions.push_back({true, "tau > 0"});
  report.predicted_iterations = static_cast<std::int64_t>(steps) + 1 + ic_size;
  return report;
}

FamilyAnalysis analyze_stationary_family(const std::vector<SimplexPoint>& points,
                                         const ObjectiveModel& f, double zero_tol) {
  if (points.empty()) throw std::invalid_argument("analyze_stationary_family: no points");
  std::vector<std::vector<Index>> keys;
  std::vector<std::vector<std::size_t>> members;
  std::vector<std::size_t> class_of(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const SupportSplit split = extended_support(points[p], f, zero_tol);
    auto it = std::find(keys.begin(), keys.end(), split.active_set);
    if (it == keys.end()) {
      keys.push_back(split.active_set);
      members.emplace_back();
      it = keys.end() - 1;
    }
    const auto c = static_cast<std::size_t>(it - keys.begin());
    members[c].push_back(p);
    class_of[p] = c;
  }

  FamilyAnalysis out;
  out.strict_complementarity.resize(points.size());
  for (const auto& group : members) {
    std::vector<SimplexPoint> pts;
    for (std::size_t p : group) pts.push_back(points[p]);
    out.regions.push_back(make_region(std::move(pts), f, zero_tol));
    const auto& region = out.regions.back();
    for (std::size_t k = 0; k < group.size(); ++k) {
      out.strict_complementarity[group[k]] = region.strict_complementarity[k];
    }
  }
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      if (class_of[a] == class_of[b]) continue;
      out.separation =
          std::min(out.separation, norm1(points[a].weights() - points[b].weights()));
    }
  }
  return out;
}

std::optional<std::int64_t> identification_iteration(const IterationTrace& trace) {
  const auto js = trace.j_sizes();
  if (!js) throw std::invalid_argument("identification_iteration: trace has no reference J sizes");
  if (js->back() > 0) return std::nullopt;
  auto k = static_cast<std::int64_t>(js->size()) - 1;
  while (k > 0 && (*js)[static_cast<std::size_t>(k - 1)] == 0) --k;
  return k;
}

std::optional<std::int64_t> radius_entry_iteration(const IterationTrace& trace, double r_star) {
  const auto ds = trace.dist1_series();
  if (!ds) throw std::invalid_argument("radius_entry_iteration: trace has no reference distances");
  if (!(ds->back() < r_star)) return std::nullopt;
  auto k = static_cast<std::int64_t>(ds->size()) - 1;
  while (k > 0 && (*ds)[static_cast<std::size_t>(k - 1)] < r_star) --k;
  return k;
}

double measured_contraction(const IterationTrace& trace, double f_star, double floor) {
  double q = std::numeric_limits<double>::min();
  for (std::size_t k = 0; k < trace.records.size(); ++k) {
    const double h = trace.records[k].f - f_star;
    if (!(h > floor)) break;
    q = std::max(q, (trace.f_after(k) - f_star) / h);
  }
  return q;
}

}  // namespace afw
