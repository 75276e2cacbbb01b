#include "afw/experiment.hpp"

#include "afw/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

namespace afw {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

template <typename Fn>
auto as_config_error(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
}

QuadraticSpec lifted_spec(const QuadraticSpec& ambient, const Matrix& A) {
  return {A.transpose() * ambient.Q * A, A.transpose() * ambient.b};
}

double min_sym_eigenvalue(const Matrix& Q) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(Q, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

Problem build_generated(const ExperimentConfig& cfg) {
  Problem pr;
  pr.kind = cfg.problem;
  gen::Rng rng(cfg.seed);
  pr.generated.emplace_back("generator", *cfg.generator);
  pr.generated.emplace_back("seed", std::to_string(cfg.seed));
  if (*cfg.generator == "sc-boundary") {
    auto g = gen::strongly_convex_boundary(cfg.n, rng);
    pr.objective = make_quadratic(g.spec);
    pr.spec = g.spec;
    pr.reference = {g.x_star};
    pr.f_star = g.f_star;
    pr.f_star_exact = true;
  } else if (*cfg.generator == "indefinite") {
    auto g = gen::indefinite_quadratic(cfg.n, rng);
    pr.objective = make_quadratic(g.spec);
    pr.spec = g.spec;
    pr.f_star = g.f_lower;
  } else {
    auto g = gen::polytope_with_face(cfg.dim, cfg.face_size, cfg.other_atoms, rng);
    pr.ambient = make_quadratic(g.ambient);
    pr.polytope = g.polytope;
    pr.objective = compose_affine(*pr.ambient, *pr.polytope);
    pr.spec = lifted_spec(g.ambient, g.polytope.atoms);
    pr.reference_y = g.y_star;
    pr.f_star = pr.ambient->value(g.y_star);
    pr.f_star_exact = true;
  }
  return pr;
}

Problem build_explicit(const ExperimentConfig& cfg) {
  Problem pr;
  pr.kind = cfg.problem;
  switch (cfg.problem) {
    case ProblemKind::Linear:
      pr.objective = make_linear(cfg.c, cfg.lipschitz.value_or(1.0));
      pr.f_star = cfg.c.minCoeff();
      pr.f_star_exact = true;
      break;
    case ProblemKind::Quadratic:
      pr.objective = make_quadratic({cfg.Q, cfg.b});
      pr.spec = QuadraticSpec{pr.objective.hessian.value(), cfg.b};
      break;
    case ProblemKind::PolytopeQuadratic: {
      pr.ambient = make_quadratic({cfg.Q, cfg.b});
      pr.polytope = AtomPolytope::make(cfg.atoms);
      pr.objective = compose_affine(*pr.ambient, *pr.polytope);
      pr.spec = lifted_spec({pr.ambient->hessian.value(), cfg.b}, cfg.atoms);
      break;
    }
  }
  if (cfg.lipschitz && cfg.problem != ProblemKind::Linear) {
    throw ConfigError("'L' applies to linear problems only");
  }
  for (const Vector& r : cfg.reference) {
    if (r.size() != pr.objective.dim) throw ConfigError("reference point dimension mismatch");
    pr.reference.push_back(SimplexPoint::validate(r));
  }
  if (cfg.reference_y) {
    if (!pr.polytope) throw ConfigError("'reference_y' applies to polytope problems only");
    pr.reference_y = cfg.reference_y;
  }
  if (!pr.f_star && pr.spec) {
    const bool convex = min_sym_eigenvalue(pr.spec->Q) >= 0.0;
    if (convex && !pr.reference.empty()) {
      pr.f_star = pr.objective.value(pr.reference.front().weights());
      pr.f_star_exact = true;
    } else if (convex && pr.reference_y) {
      pr.f_star = pr.ambient->value(*pr.reference_y);
      pr.f_star_exact = true;
    } else {
      pr.f_star = quadratic_lower_bound(*pr.spec);
    }
  }
  return pr;
}

}  // namespace

Problem build_problem(const ExperimentConfig& cfg) {
  return as_config_error([&] {
    Problem pr = cfg.generator ? build_generated(cfg) : build_explicit(cfg);
    if (cfg.f_star) {
      pr.f_star = cfg.f_star;
      pr.f_star_exact = false;
    }
    return pr;
  });
}

SimplexPoint start_point(const ExperimentConfig& cfg, Index dim) {
  return as_config_error([&] {
    switch (cfg.x0.kind) {
      case StartSpec::Kind::Barycenter:
        return SimplexPoint::barycenter(dim);
      case StartSpec::Kind::Vertex:
        if (cfg.x0.vertex >= dim) throw ConfigError("'x0' vertex index out of range");
        return SimplexPoint::vertex(dim, cfg.x0.vertex);
      case StartSpec::Kind::Weights:
        if (cfg.x0.weights.size() != dim) throw ConfigError("'x0' dimension mismatch");
        return SimplexPoint::validate(cfg.x0.weights);
    }
    throw ConfigError("bad x0");
  });
}

bool ExperimentResult::monitors_passed() const {
  return std::all_of(monitors.begin(), monitors.end(),
                     [](const AuditResult& a) { return a.passed(); });
}

namespace {

std::optional<StationaryRegion> build_region(const Problem& pr, double zero_tol) {
  return as_config_error([&]() -> std::optional<StationaryRegion> {
    if (pr.polytope && pr.reference_y) {
      return make_polytope_reference(*pr.ambient, *pr.polytope, pr.objective.lipschitz,
                                     *pr.reference_y, zero_tol)
          .region;
    }
    if (!pr.reference.empty()) return make_region(pr.reference, pr.objective, zero_tol);
    return std::nullopt;
  });
}

bool is_vertex(const SimplexPoint& x) { return x.support_size() == 1; }

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const Problem pr = build_problem(cfg);
  const ObjectiveModel& f = pr.objective;
  const SimplexPoint x0 = start_point(cfg, f.dim);

  ExperimentResult res;
  res.region = build_region(pr, cfg.zero_tol);

  RunOptions opts;
  opts.rule = cfg.rule;
  opts.gap_tol = cfg.gap_tol;
  opts.max_iters = cfg.max_iters;
  opts.reference = res.region ? &*res.region : nullptr;
  opts.keep_iterates = pr.polytope.has_value();
  res.trace = cfg.algorithm == Algorithm::AFW ? run_afw(f, x0, opts) : run_fw(f, x0, opts);
  const IterationTrace& tr = res.trace;

  res.monitors.push_back(audit_stepsize(tr, cfg.rule, f.lipschitz));
  res.monitors.push_back(audit_step_cases(tr, f.dim));
  if (pr.polytope) {
    AuditResult inv;
    inv.name = "affine-invariance";
    for (const auto& x : tr.iterates) {
      const double err = affine_invariance_error(*pr.ambient, *pr.polytope, x);
      inv.record(err <= 1e-10, "multiplier mismatch " + format_number(err));
    }
    res.monitors.push_back(inv);
  }
  const double f0 = f.value(x0.weights());
  if (cfg.algorithm == Algorithm::AFW && pr.f_star && is_vertex(x0)) {
    res.monitors.push_back(audit_gap_rate(tr, f.lipschitz, std::max(0.0, f0 - *pr.f_star)));
  }

  const auto ic = res.region ? static_cast<std::int64_t>(res.region->active_set.size()) : 0;
  if (res.region) {
    res.identification = identification_iteration(tr);
    if (res.region->has_points() && cfg.algorithm == Algorithm::AFW) {
      res.monitors.push_back(audit_local_decrement(tr, *res.region));
      const auto entry = radius_entry_iteration(tr, res.region->r_star);
      const auto K = static_cast<std::int64_t>(tr.records.size());
      if (entry && K >= *entry + ic) {
        AuditResult ident;
        ident.name = "identification-after-entry";
        ident.record(res.identification && *res.identification <= *entry + ic,
                     "M exceeds radius entry + |I^c|");
        res.monitors.push_back(ident);
      }
    }
  }

  // Strongly convex complexity with the contraction factor measured on this run.
  if (cfg.algorithm == Algorithm::AFW && res.region && res.region->has_points() &&
      f.strong_convexity_l1 && pr.f_star && pr.f_star_exact && !tr.records.empty()) {
    const double floor = 1e-12 * std::max(1.0, std::abs(*pr.f_star));
    const double q = measured_contraction(tr, *pr.f_star, floor);
    const double u1 = *f.strong_convexity_l1;
    const double r = res.region->r_star;
    if (q > 0.0 && q < 1.0 && (std::isinf(r) || 0.5 * u1 * r * r > floor)) {
      BoundReport rep = strongly_convex_bound(std::max(0.0, f0 - *pr.f_star), u1, r, q, ic);
      if (rep.predicted_iterations && res.identification) {
        AuditResult sc;
        sc.name = "strongly-convex-bound";
        sc.record(*res.identification <= *rep.predicted_iterations,
                  "M = " + std::to_string(*res.identification) + " exceeds bound " +
                      std::to_string(*rep.predicted_iterations));
        res.monitors.push_back(sc);
      }
      res.bounds.push_back(std::move(rep));
    }
  }
  if (pr.f_star && !tr.records.empty()) {
    BoundReport rate;
    rate.bound_name = "nonconvex-rate";
    rate.counts_iterations = false;
    const auto T = static_cast<std::int64_t>(tr.records.size());
    const double h0 = std::max(0.0, f0 - *pr.f_star);
    rate.inputs = {{"L", f.lipschitz}, {"h0", h0}, {"rho", 0.5}, {"T", static_cast<double>(T)},
                   {"g*_T", min_gap_prefix(tr).back()},
                   {"bound", nonconvex_rate_bound(f.lipschitz, h0, 0.5, T)}};
    rate.conditions.push_back({is_vertex(x0), "x0 is a vertex"});
    res.bounds.push_back(std::move(rate));
  }

  Metadata& md = res.metadata;
  md.emplace_back("problem", std::string(to_string(pr.kind)));
  for (const auto& kv : pr.generated) md.push_back(kv);
  md.emplace_back("algorithm", std::string(to_string(cfg.algorithm)));
  md.emplace_back("stepsize", std::string(to_string(cfg.rule)));
  md.emplace_back("n", std::to_string(f.dim));
  md.emplace_back("L", format_number(f.lipschitz));
  if (f.strong_convexity_l1) md.emplace_back("u1", format_number(*f.strong_convexity_l1));
  if (pr.f_star) {
    md.emplace_back(pr.f_star_exact ? "f_star" : "f_lower", format_number(*pr.f_star));
  }
  if (res.region) {
    md.emplace_back("delta_min", format_number(res.region->delta_min));
    md.emplace_back("r_star", format_number(res.region->r_star));
    md.emplace_back("Ic_size", std::to_string(ic));
    md.emplace_back("identification",
                    res.identification ? std::to_string(*res.identification) : "none");
  }
  md.emplace_back("termination", std::string(to_string(tr.termination)));
  md.emplace_back("iterations", std::to_string(tr.records.size()));
  for (const auto& [k, v] : cfg.entries) md.emplace_back("config." + k, v);
  return res;
}

std::vector<BoundReport> predict_bounds(const ExperimentConfig& cfg) {
  const Problem pr = build_problem(cfg);
  const ObjectiveModel& f = pr.objective;
  const SimplexPoint x0 = start_point(cfg, f.dim);
  const double f0 = f.value(x0.weights());
  std::vector<BoundReport> out;

  std::optional<FamilyAnalysis> family;
  if (!pr.reference.empty()) {
    family = as_config_error([&] { return analyze_stationary_family(pr.reference, f, cfg.zero_tol); });
  }
  std::optional<StationaryRegion> poly_region;
  if (pr.polytope && pr.reference_y) poly_region = build_region(pr, cfg.zero_tol);

  return as_config_error([&] {
    if (cfg.q && family && family->regions.size() == 1 && f.strong_convexity_l1 && pr.f_star) {
      const auto& region = family->regions.front();
      out.push_back(strongly_convex_bound(std::max(0.0, f0 - *pr.f_star), *f.strong_convexity_l1,
                                          region.r_star, *cfg.q,
                                          static_cast<std::int64_t>(region.active_set.size())));
    }
    if (pr.f_star) {
      BoundReport rate;
      rate.bound_name = "nonconvex-rate";
    rate.counts_iterations = false;
      const std::int64_t T = std::max<std::int64_t>(1, cfg.max_iters);
      const double h0 = std::max(0.0, f0 - *pr.f_star);
      rate.inputs = {{"L", f.lipschitz}, {"h0", h0}, {"rho", 0.5}, {"T", static_cast<double>(T)},
                     {"bound", nonconvex_rate_bound(f.lipschitz, h0, 0.5, T)}};
      rate.conditions.push_back({x0.support_size() == 1, "x0 is a vertex"});
      out.push_back(std::move(rate));
    }
    if (cfg.theta && cfg.p && family) {
      double r_star = kInfinity;
      for (const auto& region : family->regions) r_star = std::min(r_star, region.r_star);
      const HolderEpsilon eps = holder_epsilon_conditions(f.lipschitz, *cfg.theta, *cfg.p, r_star,
                                                          family->separation, f.dim);
      BoundReport rep;
      if (cfg.q_eps) {
        rep = holder_complexity_bound(eps, [&](double) { return *cfg.q_eps; }, f.dim);
      } else {
        rep.bound_name = "holder";
        rep.conditions.push_back({false, "q_eps not supplied"});
      }
      rep.inputs.insert(rep.inputs.begin(), {{"L", f.lipschitz}, {"theta", *cfg.theta}, {"p", *cfg.p},
                                             {"r_star", r_star}, {"d", family->separation},
                                             {"eps_sup", eps.supremum}});
      out.push_back(std::move(rep));
    }
    if (cfg.tau && cfg.f_min) {
      const std::int64_t ic =
          family && family->regions.size() == 1
              ? static_cast<std::int64_t>(family->regions.front().active_set.size())
              : 0;
      out.push_back(local_basin_bound(f0, *cfg.f_min, *cfg.tau, f.lipschitz, ic));
    }
    if (poly_region && cfg.u && cfg.theta && cfg.q && pr.f_star) {
      const double u_p = polytope_error_bound_modulus(*cfg.u, f.dim, *cfg.theta);
      out.push_back(polytope_strongly_convex_bound(
          std::max(0.0, f0 - *pr.f_star), u_p, poly_region->r_star, *cfg.q,
          static_cast<std::int64_t>(poly_region->active_set.size())));
    }
    return out;
  });
}

void write_trace_csv(std::ostream& os, const ExperimentResult& result) {
  os << "# schema=afw-trace-v1\n";
  for (const auto& [k, v] : result.metadata) os << "# " << k << '=' << v << '\n';
  os << "iter,f,gap,dir_kind,vertex,alpha,alpha_max,alpha_bar,step_case,support_size,j_size,"
        "dist1_ref\n";
  for (const StepRecord& r : result.trace.records) {
    os << r.iter << ',' << format_number(r.f) << ',' << format_number(r.gap) << ','
       << to_string(r.kind) << ',' << r.vertex << ',' << format_number(r.alpha) << ','
       << format_number(r.alpha_max) << ',' << format_number(r.alpha_bar) << ',' << r.step_case
       << ',' << r.support_size << ',';
    if (r.j_size) os << *r.j_size;
    os << ',';
    if (r.dist1_ref) os << format_number(*r.dist1_ref);
    os << '\n';
  }
  const IterationTrace& t = result.trace;
  os << t.records.size() << ',' << format_number(t.f_final) << ',' << format_number(t.gap_final)
     << ",,,,,,," << t.support_final << ',';
  if (t.j_size_final) os << *t.j_size_final;
  os << ',';
  if (t.dist1_final) os << format_number(*t.dist1_final);
  os << '\n';
}

void print_bound_report(std::ostream& os, const BoundReport& report) {
  os << "bound " << report.bound_name << '\n';
  for (const auto& [name, value] : report.inputs) {
    os << "  " << name << " = " << format_number(value) << '\n';
  }
  if (report.counts_iterations) {
    os << "  predicted_iterations = "
       << (report.predicted_iterations ? std::to_string(*report.predicted_iterations) : "inf")
       << '\n';
  }
  for (const auto& c : report.conditions) {
    os << "  condition " << (c.satisfied ? "ok" : "unmet") << ": " << c.message << '\n';
  }
}

void print_monitor(std::ostream& os, const AuditResult& audit) {
  os << (audit.passed() ? "PASS " : "FAIL ") << audit.name << " (" << audit.checked
     << " checks";
  if (!audit.passed()) os << ", " << audit.failures << " failed; first: " << audit.first_failure;
  os << ")\n";
}

}  // namespace afw
