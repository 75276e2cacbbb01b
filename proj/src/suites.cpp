#include "afw/suites.hpp"

#include "afw/experiment.hpp"
#include "afw/generators.hpp"
#include "afw/identification.hpp"
#include "afw/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace afw {

bool SuiteReport::passed() const {
  return stepsize.passed() && step_cases.passed() &&
         std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"local-identification", "sc-complexity",
                                                 "nonconvex-rate", "polytope-faces",
                                                 "lemma-audits"};
  return names;
}

namespace {

constexpr std::int64_t kRunCap = 200000;

SuiteReport new_report(std::string name, std::uint64_t seed) {
  SuiteReport r;
  r.suite = std::move(name);
  r.seed = seed;
  r.stepsize.name = "stepsize";
  r.step_cases.name = "step-cases";
  return r;
}

void audit_trace(SuiteReport& rep, const IterationTrace& trace, StepRule rule, double L, Index n) {
  rep.stepsize.merge(audit_stepsize(trace, rule, L));
  rep.step_cases.merge(audit_step_cases(trace, n));
}

std::string tally(std::int64_t ok, std::int64_t total) {
  return std::to_string(ok) + "/" + std::to_string(total);
}

StepRule alternate(std::int64_t t) { return t % 2 == 0 ? StepRule::Lipschitz : StepRule::Linesearch; }

}  // namespace

SuiteReport suite_local_identification(std::uint64_t seed) {
  SuiteReport rep = new_report("local-identification", seed);
  gen::Rng rng(seed);

  {
    constexpr int kTrials = 1000;
    int pass = 0;
    int with_j = 0;
    std::string first;
    for (int t = 0; t < kTrials; ++t) {
      const Index n = 3 + t % 8;
      const auto g = gen::strongly_convex_boundary(n, rng);
      const ObjectiveModel f = make_quadratic(g.spec);
      const StationaryRegion region = make_region({g.x_star}, f);
      DecrementCheck chk;
      do {
        const SimplexPoint xk = gen::near_point(g.x_star, region.r_star, 0.6, rng);
        chk = verify_local_decrement(region, xk, f, StepRule::Lipschitz);
      } while (chk.status == DecrementStatus::PreconditionUnmet);
      if (chk.j_before > 0) ++with_j;
      if (chk.status == DecrementStatus::Pass) {
        ++pass;
      } else if (first.empty()) {
        first = "trial " + std::to_string(t) + ": " + chk.message;
      }
    }
    rep.checks.push_back({"local-decrement", pass == kTrials,
                          tally(pass, kTrials) + " pass, " + std::to_string(with_j) +
                              " trials started with |J| > 0" + (first.empty() ? "" : "; " + first)});
  }

  {
    constexpr int kRuns = 100;
    int pass = 0;
    std::int64_t worst_slack = -1;
    std::string first;
    for (int t = 0; t < kRuns; ++t) {
      const Index n = 3 + t % 8;
      const auto g = gen::strongly_convex_boundary(n, rng);
      const ObjectiveModel f = make_quadratic(g.spec);
      const StationaryRegion region = make_region({g.x_star}, f);
      RunOptions opts;
      opts.rule = alternate(t);
      opts.gap_tol = 1e-12;
      opts.max_iters = kRunCap;
      opts.reference = &region;
      const SimplexPoint x0 = t % 4 < 2 ? SimplexPoint::barycenter(n)
                                        : SimplexPoint::vertex(n, t % n);
      const IterationTrace tr = run_afw(f, x0, opts);
      audit_trace(rep, tr, opts.rule, f.lipschitz, n);
      const auto M = identification_iteration(tr);
      const auto entry = radius_entry_iteration(tr, region.r_star);
      const auto ic = static_cast<std::int64_t>(region.active_set.size());
      const bool ok = M && entry && *M <= *entry + ic;
      if (ok) {
        ++pass;
        worst_slack = std::max(worst_slack, *M - *entry);
      } else if (first.empty()) {
        first = "run " + std::to_string(t) + ": M=" + (M ? std::to_string(*M) : "none") +
                " entry=" + (entry ? std::to_string(*entry) : "none") + " |Ic|=" +
                std::to_string(ic);
      }
    }
    rep.checks.push_back({"finite-identification", pass == kRuns,
                          tally(pass, kRuns) + " runs with M <= entry + |Ic|, max M - entry = " +
                              std::to_string(worst_slack) + (first.empty() ? "" : "; " + first)});
  }
  return rep;
}

SuiteReport suite_sc_complexity(std::uint64_t seed) {
  SuiteReport rep = new_report("sc-complexity", seed);
  gen::Rng rng(seed);
  constexpr int kRuns = 50;
  int applicable = 0;
  int pass = 0;
  std::int64_t tightest = -1;
  std::string first;
  for (int t = 0; t < kRuns; ++t) {
    const Index n = 3 + t % 8;
    const auto g = gen::strongly_convex_boundary(n, rng);
    const ObjectiveModel f = make_quadratic(g.spec);
    const StationaryRegion region = make_region({g.x_star}, f);
    RunOptions opts;
    opts.rule = alternate(t);
    opts.gap_tol = 1e-12;
    opts.max_iters = kRunCap;
    opts.reference = &region;
    const SimplexPoint x0 = SimplexPoint::vertex(n, t % n);
    const IterationTrace tr = run_afw(f, x0, opts);
    audit_trace(rep, tr, opts.rule, f.lipschitz, n);

    const double floor = 1e-12 * std::max(1.0, std::abs(g.f_star));
    const double q = measured_contraction(tr, g.f_star, floor);
    const double u1 = *f.strong_convexity_l1;
    if (!(q > 0.0 && q < 1.0) || !(0.5 * u1 * region.r_star * region.r_star > floor)) continue;
    ++applicable;
    const double h0 = std::max(0.0, f.value(x0.weights()) - g.f_star);
    const BoundReport b = strongly_convex_bound(h0, u1, region.r_star, q,
                                                static_cast<std::int64_t>(region.active_set.size()));
    const auto M = identification_iteration(tr);
    const bool ok = M && b.predicted_iterations && *M <= *b.predicted_iterations;
    if (ok) {
      ++pass;
      const std::int64_t slack = *b.predicted_iterations - *M;
      if (tightest < 0 || slack < tightest) tightest = slack;
    } else if (first.empty()) {
      first = "run " + std::to_string(t) + ": M=" + (M ? std::to_string(*M) : "none") +
              " bound=" + (b.predicted_iterations ? std::to_string(*b.predicted_iterations) : "inf");
    }
  }
  rep.checks.push_back({"measured-contraction", applicable == kRuns,
                        tally(applicable, kRuns) + " runs with measured q < 1"});
  rep.checks.push_back({"strongly-convex-bound", pass == applicable && applicable > 0,
                        tally(pass, applicable) + " runs with M <= bound, smallest margin " +
                            std::to_string(tightest) + (first.empty() ? "" : "; " + first)});
  return rep;
}

SuiteReport suite_nonconvex_rate(std::uint64_t seed) {
  SuiteReport rep = new_report("nonconvex-rate", seed);
  gen::Rng rng(seed);
  constexpr int kInstances = 5;
  constexpr Index kN = 20;
  AuditResult rate;
  bool indefinite = true;
  double worst_ratio = 0.0;
  std::int64_t longest = 0;
  for (int t = 0; t < kInstances; ++t) {
    const auto g = gen::indefinite_quadratic(kN, rng);
    indefinite = indefinite && g.min_eigenvalue < 0.0;
    const ObjectiveModel f = make_quadratic(g.spec);
    Index start = 0;
    for (Index i = 1; i < kN; ++i) {
      if (g.spec.Q(i, i) / 2 + g.spec.b[i] > g.spec.Q(start, start) / 2 + g.spec.b[start]) start = i;
    }
    const SimplexPoint x0 = SimplexPoint::vertex(kN, start);
    const double h0 = f.value(x0.weights()) - g.f_lower;
    for (StepRule rule : {StepRule::Lipschitz, StepRule::Linesearch}) {
      RunOptions opts;
      opts.rule = rule;
      opts.gap_tol = 0.0;
      opts.max_iters = 10000;
      const IterationTrace tr = run_afw(f, x0, opts);
      audit_trace(rep, tr, rule, f.lipschitz, kN);
      rate.merge(audit_gap_rate(tr, f.lipschitz, h0));
      longest = std::max<std::int64_t>(longest, static_cast<std::int64_t>(tr.records.size()));
      const auto best = min_gap_prefix(tr);
      for (std::size_t k = 0; k < best.size(); ++k) {
        const double b = nonconvex_rate_bound(f.lipschitz, h0, 0.5, static_cast<std::int64_t>(k + 1));
        worst_ratio = std::max(worst_ratio, best[k] / b);
      }
    }
  }
  rep.checks.push_back({"indefinite-instances", indefinite,
                        indefinite ? "all Hessians indefinite" : "a Hessian is PSD"});
  std::ostringstream os;
  os << rate.checked << " prefixes checked (longest run " << longest
     << " steps), max g*_T / bound = " << worst_ratio;
  if (!rate.passed()) os << "; " << rate.first_failure;
  rep.checks.push_back({"gap-rate", rate.passed() && rate.checked > 0, os.str()});
  return rep;
}

SuiteReport suite_polytope_faces(std::uint64_t seed) {
  SuiteReport rep = new_report("polytope-faces", seed);
  gen::Rng rng(seed);
  constexpr int kPolytopes = 20;
  int identified = 0;
  int face_match = 0;
  double worst_invariance = 0.0;
  std::string first;
  for (int t = 0; t < kPolytopes; ++t) {
    const Index dim = 2 + t % 2;
    const Index face_size = 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(dim));
    const Index others = 3 + static_cast<Index>(rng() % 3);
    const auto g = gen::polytope_with_face(dim, face_size, others, rng);
    const ObjectiveModel f = make_quadratic(g.ambient);
    PolytopeRunOptions opts;
    opts.rule = alternate(t);
    opts.gap_tol = 1e-12;
    opts.max_iters = kRunCap;
    opts.reference_y_star = g.y_star;
    const SimplexPoint w0 = SimplexPoint::barycenter(g.polytope.num_atoms());
    const PolytopeTrace pt = run_afw_polytope(f, g.polytope, w0, opts);
    audit_trace(rep, pt.trace, opts.rule, pt.lifted.lipschitz, g.polytope.num_atoms());
    if (pt.face && pt.face->atom_indices == g.face_atoms) ++face_match;
    for (const auto& x : pt.trace.iterates) {
      worst_invariance = std::max(worst_invariance, affine_invariance_error(f, g.polytope, x));
    }
    if (pt.face_identification_iteration()) {
      ++identified;
    } else if (first.empty()) {
      first = "polytope " + std::to_string(t) + " not identified after " +
              std::to_string(pt.trace.records.size()) + " steps";
    }
  }
  rep.checks.push_back({"exposed-face", face_match == kPolytopes,
                        tally(face_match, kPolytopes) + " computed faces equal the planted face"});
  rep.checks.push_back({"face-identification", identified == kPolytopes,
                        tally(identified, kPolytopes) + " runs end permanently on the face" +
                            (first.empty() ? "" : "; " + first)});
  std::ostringstream os;
  os << "max |lambda_P(Ax) - lambda~(x)| = " << worst_invariance;
  rep.checks.push_back({"affine-invariance", worst_invariance <= 1e-10, os.str()});
  return rep;
}

namespace {

SuiteCheck perturbation_check(gen::Rng& rng) {
  constexpr int kPairs = 1000;
  int applicable = 0;
  int skipped = 0;
  int holds = 0;
  double worst = 0.0;
  for (int t = 0; applicable < kPairs; ++t) {
    const Index n = 3 + t % 8;
    ObjectiveModel f;
    SimplexPoint x_star = SimplexPoint::vertex(n, 0);
    if (t % 2 == 0) {
      const auto g = gen::strongly_convex_boundary(n, rng);
      f = make_quadratic(g.spec);
      x_star = g.x_star;
    } else {
      Vector c(n);
      for (Index i = 0; i < n; ++i) c[i] = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
      Index best = 0;
      c.minCoeff(&best);
      f = make_linear(c);
      x_star = SimplexPoint::vertex(n, best);
    }
    const SimplexPoint xk = t % 3 == 0 ? gen::uniform_simplex(n, rng) : gen::sparse_simplex(n, 0.5, rng);
    const PerturbationCheck chk = check_multiplier_perturbation(x_star, xk, f);
    if (!chk.applicable) {
      ++skipped;
      continue;
    }
    ++applicable;
    if (chk.holds) ++holds;
    if (chk.bound > 0.0) worst = std::max(worst, chk.max_deviation / chk.bound);
  }
  std::ostringstream os;
  os << tally(holds, applicable) << " pairs hold (" << skipped
     << " inapplicable draws skipped), max deviation / bound = " << worst;
  return {"multiplier-perturbation", holds == applicable && applicable > 0, os.str()};
}

SuiteCheck norm_lemma_check(gen::Rng& rng) {
  constexpr int kSamples = 10000;
  int pass = 0;
  for (int t = 0; t < kSamples; ++t) {
    const Index n = 2 + t % 9;
    const SimplexPoint x = gen::sparse_simplex(n, 0.7, rng);
    const SimplexPoint y = gen::uniform_simplex(n, rng);
    const Index i = static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
    Vector ei = Vector::Zero(n);
    ei[i] = 1.0;
    const Vector exi = ei - x.weights();
    const bool a = exi.norm() <= std::sqrt(2.0) * exi[i] + 1e-12;
    const Vector yx = y.weights() - x.weights();
    const bool b = yx[i] <= 0.5 * norm1(yx) + 1e-12;

    Vector grad(n);
    for (Index j = 0; j < n; ++j) grad[j] = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    bool c = true;
    if (fw_gap(multipliers(x, grad)) > 0.0) {
      const Direction dir = select_direction(x, grad);
      if (-grad.dot(dir.d) > 0.0) {
        const double alpha =
            dir.alpha_max * std::uniform_real_distribution<double>(1e-3, 1.0)(rng);
        const Vector step = apply_step(x, dir, alpha).weights() - x.weights();
        c = norm1(step) <= 2.0 * step.norm() + 1e-12;
      }
    }
    if (a && b && c) ++pass;
  }
  return {"norm-lemma", pass == kSamples, tally(pass, kSamples) + " samples satisfy all three"};
}

SuiteCheck lipschitz_and_error_bound_check(gen::Rng& rng) {
  int lip_ok = 0;
  int lip_total = 0;
  int he_ok = 0;
  int he_total = 0;
  for (int t = 0; t < 50; ++t) {
    const Index n = 3 + t % 8;
    const auto g = gen::strongly_convex_boundary(n, rng);
    const ObjectiveModel f = make_quadratic(g.spec);
    for (int s = 0; s < 20; ++s) {
      const Vector x = gen::uniform_simplex(n, rng).weights();
      const Vector y = gen::sparse_simplex(n, 0.5, rng).weights();
      ++lip_total;
      if ((f.gradient(x) - f.gradient(y)).norm() <= f.lipschitz * (x - y).norm() * (1 + 1e-9)) ++lip_ok;
      ++he_total;
      const double gap = f.value(x) - g.f_star;
      const double d1 = norm1(x - g.x_star.weights());
      if (gap >= 0.5 * *f.strong_convexity_l1 * d1 * d1 - 1e-12) ++he_ok;
    }
  }
  return {"lipschitz-and-growth", lip_ok == lip_total && he_ok == he_total,
          tally(lip_ok, lip_total) + " Lipschitz samples, " + tally(he_ok, he_total) +
              " quadratic growth samples"};
}

SuiteCheck holder_linear_check(gen::Rng& rng) {
  int ok = 0;
  int total = 0;
  for (int t = 0; t < 100; ++t) {
    const Index n = 3 + t % 8;
    Vector c(n);
    for (Index i = 0; i < n; ++i) c[i] = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    Index best = 0;
    const double cmin = c.minCoeff(&best);
    double delta = kInfinity;
    for (Index i = 0; i < n; ++i) {
      if (i != best) delta = std::min(delta, c[i] - cmin);
    }
    const ObjectiveModel f = make_linear(c);
    const SimplexPoint opt = SimplexPoint::vertex(n, best);
    const double theta = 0.5 * delta;
    for (int s = 0; s < 20; ++s) {
      const SimplexPoint x = gen::sparse_simplex(n, 0.6, rng);
      const double gap = fw_gap(multipliers(x, f.gradient(x.weights())));
      const double d1 = norm1(x.weights() - opt.weights());
      ++total;
      if (gap >= theta * d1 - 1e-12) ++ok;
    }
  }
  return {"holder-linear", ok == total, tally(ok, total) + " samples with g(x) >= theta dist1(x, X*)"};
}

}  // namespace

SuiteReport suite_lemma_audits(std::uint64_t seed) {
  SuiteReport rep = new_report("lemma-audits", seed);
  gen::Rng rng(seed);
  rep.checks.push_back(perturbation_check(rng));
  rep.checks.push_back(norm_lemma_check(rng));
  rep.checks.push_back(lipschitz_and_error_bound_check(rng));
  rep.checks.push_back(holder_linear_check(rng));

  // Non-identification contrast on the linear problem c = [1, 2, 3].
  {
    const ObjectiveModel f = make_linear((Vector(3) << 1.0, 2.0, 3.0).finished());
    const StationaryRegion region = make_region({SimplexPoint::vertex(3, 0)}, f);
    std::ostringstream os;
    bool fw_positive = true;
    for (StepRule rule : {StepRule::Lipschitz, StepRule::Linesearch}) {
      RunOptions opts;
      opts.rule = rule;
      opts.gap_tol = 0.0;
      opts.max_iters = 1000;
      opts.reference = &region;
      const IterationTrace fw = run_fw(f, SimplexPoint::barycenter(3), opts);
      audit_trace(rep, fw, rule, f.lipschitz, 3);
      const auto js = *fw.j_sizes();
      const auto zero = std::find(js.begin(), js.end(), Index{0});
      const bool positive = zero == js.end() && js.size() > 1000;
      fw_positive = fw_positive && positive;
      os << "FW/" << to_string(rule) << ": ";
      if (positive) {
        os << "I^c stays positive for 1000 iterations; ";
      } else {
        os << "I^c zeroed at iterate " << (zero - js.begin()) << "; ";
      }
    }
    RunOptions opts;
    opts.max_iters = 1000;
    opts.reference = &region;
    const IterationTrace afw = run_afw(f, SimplexPoint::barycenter(3), opts);
    audit_trace(rep, afw, opts.rule, f.lipschitz, 3);
    const auto M = identification_iteration(afw);
    os << "AFW M = " << (M ? std::to_string(*M) : "none");
    rep.checks.push_back({"fw-contrast-linear", fw_positive && M.has_value(), os.str()});
  }

  // Same contrast on a strongly convex quadratic whose minimizer lies on an edge.
  {
    gen::Rng local(seed ^ 0x9e3779b97f4a7c15ULL);
    gen::PlantedQuadratic g = gen::strongly_convex_boundary(3, local);
    while (g.support.size() != 2) g = gen::strongly_convex_boundary(3, local);
    const ObjectiveModel f = make_quadratic(g.spec);
    const StationaryRegion region = make_region({g.x_star}, f);
    RunOptions opts;
    opts.gap_tol = 0.0;
    opts.max_iters = 1000;
    opts.reference = &region;
    const IterationTrace fw = run_fw(f, SimplexPoint::barycenter(3), opts);
    audit_trace(rep, fw, opts.rule, f.lipschitz, 3);
    const auto js = *fw.j_sizes();
    const bool positive = std::find(js.begin(), js.end(), Index{0}) == js.end();
    opts.gap_tol = 1e-12;
    const IterationTrace afw = run_afw(f, SimplexPoint::barycenter(3), opts);
    audit_trace(rep, afw, opts.rule, f.lipschitz, 3);
    const auto M = identification_iteration(afw);
    rep.checks.push_back({"fw-contrast-edge-quadratic", positive && M.has_value(),
                          std::string("FW keeps I^c positive over ") + std::to_string(js.size()) +
                              " iterates: " + (positive ? "yes" : "no") + "; AFW M = " +
                              (M ? std::to_string(*M) : "none")});
  }

  // Fold in the trace audits of every other suite.
  for (auto* other : {&suite_local_identification, &suite_sc_complexity, &suite_nonconvex_rate,
                      &suite_polytope_faces}) {
    const SuiteReport r = other(seed);
    rep.stepsize.merge(r.stepsize);
    rep.step_cases.merge(r.step_cases);
  }
  return rep;
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed) {
  if (name == "local-identification") return suite_local_identification(seed);
  if (name == "sc-complexity") return suite_sc_complexity(seed);
  if (name == "nonconvex-rate") return suite_nonconvex_rate(seed);
  if (name == "polytope-faces") return suite_polytope_faces(seed);
  if (name == "lemma-audits") return suite_lemma_audits(seed);
  std::string valid;
  for (const auto& n : suite_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown suite '" + std::string(name) + "' (valid: " + valid + ")");
}

void print_suite_report(std::ostream& os, const SuiteReport& report) {
  os << "suite " << report.suite << " seed " << report.seed << '\n';
  for (const auto& c : report.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  print_monitor(os, report.stepsize);
  print_monitor(os, report.step_cases);
  os << (report.passed() ? "suite passed" : "suite FAILED") << '\n';
}

}  // namespace afw
