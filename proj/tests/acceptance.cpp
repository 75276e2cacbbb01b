// Acceptance gate. Problems and runs come from the library; every pass/fail
// decision below is recomputed here from raw iterates.

#include "afw/generators.hpp"
#include "afw/identification.hpp"
#include "afw/polytope.hpp"
#include "afw/suites.hpp"

#include "CLI11.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace afw;

namespace {

constexpr double kSlack = 1e-12;

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---- independent simplex arithmetic ----

Vector lambda_of(const Vector& x, const Vector& g) {
  return (g.array() - x.dot(g)).matrix();
}

double gap_of(const Vector& x, const Vector& g) {
  return std::max(0.0, x.dot(g) - g.minCoeff());
}

Index support_of(const Vector& x) {
  return static_cast<Index>((x.array() > 0.0).count());
}

double l1(const Vector& v) { return v.cwiseAbs().sum(); }

struct Split {
  std::vector<Index> active;  // positive multipliers
  double delta = std::numeric_limits<double>::infinity();
};

Split split_at(const Vector& x_star, const Vector& g, double tol = 1e-8) {
  const Vector lam = lambda_of(x_star, g);
  const double scaled = tol * (1.0 + g.cwiseAbs().maxCoeff());
  Split s;
  for (Index i = 0; i < lam.size(); ++i) {
    if (lam[i] > scaled) {
      s.active.push_back(i);
      s.delta = std::min(s.delta, lam[i]);
    }
  }
  return s;
}

Index j_count(const Vector& x, const std::vector<Index>& active) {
  Index c = 0;
  for (Index i : active) c += x[i] > 0.0 ? 1 : 0;
  return c;
}

double own_spectral_norm(const Matrix& Q) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(Q, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double own_min_eigenvalue(const Matrix& Q) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(Q, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Start of the trailing run on which pred holds; nullopt if it fails at the end.
std::optional<std::int64_t> trailing_start(std::size_t count, const std::function<bool(std::size_t)>& pred) {
  if (count == 0 || !pred(count - 1)) return std::nullopt;
  std::size_t k = count - 1;
  while (k > 0 && pred(k - 1)) --k;
  return static_cast<std::int64_t>(k);
}

// ---- traces gathered for the stepsize and step-case criteria ----

struct RunRecord {
  std::string label;
  ObjectiveModel f;
  IterationTrace trace;
  StepRule rule = StepRule::Lipschitz;
};

Direction own_direction(const Vector& x, DirectionKind kind, Index v) {
  Direction d;
  d.kind = kind;
  d.vertex = v;
  const Vector e = Vector::Unit(x.size(), v);
  if (kind == DirectionKind::FrankWolfe) {
    d.d = e - x;
    d.alpha_max = 1.0;
  } else {
    d.d = x - e;
    d.alpha_max = x[v] / (1.0 - x[v]);
  }
  return d;
}

struct StepAudit {
  std::int64_t checked = 0;
  std::int64_t failures = 0;
  std::string first;
  void record(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      if (failures == 0) first = what;
      ++failures;
    }
  }
};

void audit_steps(const RunRecord& run, StepAudit& out) {
  const auto& xs = run.trace.iterates;
  const double L = run.f.lipschitz;
  for (std::size_t k = 0; k < run.trace.records.size(); ++k) {
    const StepRecord& r = run.trace.records[k];
    const Vector& x = xs[k].weights();
    const Vector& y = xs[k + 1].weights();
    const Vector g = run.f.gradient(x);
    const Direction dir = own_direction(x, r.kind, r.vertex);
    const double slope = -g.dot(dir.d);
    const double abar = std::min(dir.alpha_max, slope / (L * dir.d.squaredNorm()));
    const double dec = run.f.value(x) - run.f.value(y);
    const std::string where = run.label + " iter " + std::to_string(r.iter);
    out.record(dec >= 0.5 * abar * slope - kSlack, where + ": decrease below abar*slope/2");
    if (run.rule == StepRule::Lipschitz) {
      out.record(dec >= 0.5 * L * (y - x).squaredNorm() - kSlack, where + ": decrease below L/2 |step|^2");
    } else {
      out.record(r.alpha >= abar - kSlack, where + ": linesearch step below abar");
    }
  }
}

void audit_cases(const RunRecord& run, StepAudit& out) {
  const auto& xs = run.trace.iterates;
  const Index n = run.f.dim;
  Index consecutive = 0;
  for (std::size_t k = 0; k < run.trace.records.size(); ++k) {
    const StepRecord& r = run.trace.records[k];
    const Vector& x = xs[k].weights();
    const Vector& y = xs[k + 1].weights();
    const Direction dir = own_direction(x, r.kind, r.vertex);
    const double slope = -run.f.gradient(x).dot(dir.d);
    const double abar = std::min(dir.alpha_max, slope / (run.f.lipschitz * dir.d.squaredNorm()));
    int expected = 1;
    if (!(abar < dir.alpha_max)) expected = r.kind == DirectionKind::FrankWolfe ? 2 : 3;
    const std::string where = run.label + " iter " + std::to_string(r.iter);
    out.record(r.step_case == expected, where + ": step case " + std::to_string(r.step_case) +
                                            " but abar/alpha_max give " + std::to_string(expected));
    const Index s0 = support_of(x);
    const Index s1 = support_of(y);
    if (r.step_case == 3) {
      out.record(y[r.vertex] == 0.0, where + ": drop coordinate not exactly zero");
      out.record(s1 == s0 - 1, where + ": drop did not shrink the support by one");
      ++consecutive;
      out.record(consecutive < n, where + ": n consecutive drop steps");
    } else {
      out.record(s1 <= s0 + 1, where + ": support grew by more than one");
      consecutive = 0;
    }
  }
}

RunOptions tracked(StepRule rule, double gap_tol, std::int64_t cap) {
  RunOptions o;
  o.rule = rule;
  o.gap_tol = gap_tol;
  o.max_iters = cap;
  o.keep_iterates = true;
  return o;
}

StepRule alternate(int t) { return t % 2 == 0 ? StepRule::Lipschitz : StepRule::Linesearch; }

// ---- criteria ----

Outcome criterion_local_decrement(std::uint64_t seed, std::vector<RunRecord>*) {
  gen::Rng rng(seed);
  Clock clock;
  int trials = 0;
  int pass = 0;
  int with_j = 0;
  std::string first;
  while (trials < 1000) {
    const Index n = 3 + trials % 8;
    const auto g = gen::strongly_convex_boundary(n, rng);
    const ObjectiveModel f = make_quadratic(g.spec);
    const Vector xs = g.x_star.weights();
    const Vector grad = f.gradient(xs);
    const Split s = split_at(xs, grad);
    // Strict complementarity: the multipliers vanish exactly on the support.
    if (static_cast<Index>(s.active.size()) + support_of(xs) != n) continue;
    const double r_star = s.delta / (s.delta + 2.0 * f.lipschitz);
    SimplexPoint xk = gen::near_point(g.x_star, r_star, 0.6, rng);
    while (!(l1(xk.weights() - xs) < r_star)) xk = gen::near_point(g.x_star, r_star, 0.6, rng);
    const Index before = j_count(xk.weights(), s.active);
    const StepOutcome step = afw_step(f, xk, StepRule::Lipschitz, 0.0);
    const Index after = step.stationary ? before : j_count(step.next.weights(), s.active);
    const bool ok = after <= std::max<Index>(0, before - 1);
    pass += ok ? 1 : 0;
    with_j += before > 0 ? 1 : 0;
    if (!ok && first.empty()) {
      first = "; trial " + std::to_string(trials) + ": |J| " + std::to_string(before) + " -> " +
              std::to_string(after);
    }
    ++trials;
  }
  const double secs = clock.seconds();
  Outcome o;
  o.passed = pass == 1000 && secs < 5.0;
  o.detail = std::to_string(pass) + "/1000 trials (" + std::to_string(with_j) + " with |J| > 0), " +
             fmt(secs) + " s" + first;
  return o;
}

struct IdentifiedRun {
  std::optional<std::int64_t> M;
  std::optional<std::int64_t> entry;
  Index ic = 0;
  double r_star = 0.0;
};

IdentifiedRun identify(const gen::PlantedQuadratic& g, const ObjectiveModel& f, const IterationTrace& tr) {
  IdentifiedRun out;
  const Vector xs = g.x_star.weights();
  const Split s = split_at(xs, f.gradient(xs));
  out.ic = static_cast<Index>(s.active.size());
  out.r_star = s.delta / (s.delta + 2.0 * f.lipschitz);
  const auto& it = tr.iterates;
  out.M = trailing_start(it.size(), [&](std::size_t k) { return j_count(it[k].weights(), s.active) == 0; });
  out.entry = trailing_start(it.size(), [&](std::size_t k) { return l1(it[k].weights() - xs) < out.r_star; });
  return out;
}

Outcome criterion_finite_identification(std::uint64_t seed, std::vector<RunRecord>* keep) {
  gen::Rng rng(seed + 1);
  Clock clock;
  int ok = 0;
  std::int64_t worst_margin = std::numeric_limits<std::int64_t>::max();
  std::string first;
  for (int t = 0; t < 100; ++t) {
    const Index n = 3 + t % 8;
    const auto g = gen::strongly_convex_boundary(n, rng);
    const ObjectiveModel f = make_quadratic(g.spec);
    const StepRule rule = alternate(t);
    IterationTrace tr = run_afw(f, SimplexPoint::barycenter(n), tracked(rule, 1e-12, 200000));
    const IdentifiedRun id = identify(g, f, tr);
    const bool good = id.M && id.entry && *id.M <= *id.entry + id.ic;
    if (good) {
      ++ok;
      worst_margin = std::min(worst_margin, *id.entry + id.ic - *id.M);
    } else if (first.empty()) {
      first = "; run " + std::to_string(t) + " M=" + (id.M ? std::to_string(*id.M) : "none") +
              " entry=" + (id.entry ? std::to_string(*id.entry) : "none");
    }
    if (keep) keep->push_back({"identification run " + std::to_string(t), f, std::move(tr), rule});
  }
  const double secs = clock.seconds();
  Outcome o;
  o.passed = ok == 100 && secs < 10.0;
  o.detail = std::to_string(ok) + "/100 runs with M <= entry + |Ic| (min slack " +
             std::to_string(ok ? worst_margin : 0) + "), " + fmt(secs) + " s" + first;
  return o;
}

Outcome criterion_sc_complexity(std::uint64_t seed, std::vector<RunRecord>* keep) {
  gen::Rng rng(seed + 2);
  int ok = 0;
  int contracting = 0;
  std::string first;
  for (int t = 0; t < 50; ++t) {
    const Index n = 3 + t % 8;
    const auto g = gen::strongly_convex_boundary(n, rng);
    const ObjectiveModel f = make_quadratic(g.spec);
    const StepRule rule = alternate(t);
    IterationTrace tr = run_afw(f, SimplexPoint::vertex(n, 0), tracked(rule, 1e-12, 200000));
    const IdentifiedRun id = identify(g, f, tr);
    const double f_star = f.value(g.x_star.weights());
    const double floor = 1e-12 * std::max(1.0, std::abs(f_star));
    const auto& it = tr.iterates;
    double q = std::numeric_limits<double>::min();
    for (std::size_t k = 0; k + 1 < it.size(); ++k) {
      const double h = f.value(it[k].weights()) - f_star;
      if (!(h > floor)) break;
      q = std::max(q, (f.value(it[k + 1].weights()) - f_star) / h);
    }
    const double u1 = own_min_eigenvalue(g.spec.Q) / static_cast<double>(n);
    const double h0 = f.value(it.front().weights()) - f_star;
    std::optional<std::int64_t> bound;
    if (q < 1.0) {
      ++contracting;
      const double thresh = 0.5 * u1 * id.r_star * id.r_star;
      double e = 0.0;
      if (h0 > thresh) {
        e = (std::log(h0) - std::log(thresh)) / std::log(1.0 / q);
        const double r = std::round(e);
        if (std::abs(e - r) <= 1e-9 * std::max(1.0, std::abs(r))) e = r;
        e = std::max(0.0, std::ceil(e));
      }
      if (std::isfinite(e) && e < 9e18) bound = static_cast<std::int64_t>(e) + id.ic;
    }
    const bool good = id.M && bound && *id.M <= *bound;
    ok += good ? 1 : 0;
    if (!good && first.empty()) {
      first = "; run " + std::to_string(t) + " q=" + fmt(q) + " M=" + (id.M ? std::to_string(*id.M) : "none") +
              " bound=" + (bound ? std::to_string(*bound) : "none");
    }
    if (keep) keep->push_back({"sc run " + std::to_string(t), f, std::move(tr), rule});
  }
  Outcome o;
  o.passed = ok == 50 && contracting == 50;
  o.detail = std::to_string(ok) + "/50 runs with M <= bound, " + std::to_string(contracting) +
             "/50 with q < 1" + first;
  return o;
}

Outcome criterion_gap_rate(std::uint64_t seed, std::vector<RunRecord>* keep) {
  gen::Rng rng(seed + 3);
  Clock clock;
  int ok = 0;
  int runs = 0;
  std::int64_t steps = 0;
  double tightest = 0.0;
  std::string first;
  for (int t = 0; t < 5; ++t) {
    const auto ind = gen::indefinite_quadratic(20, rng);
    const Matrix& Q = ind.spec.Q;
    const Vector& b = ind.spec.b;
    const ObjectiveModel f = make_quadratic(ind.spec);
    // Pairwise lower bound: f(x) = sum_ij x_i x_j (Q_ij / 2 + (b_i + b_j) / 2) on the simplex.
    double f_low = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < 20; ++i)
      for (Index j = 0; j < 20; ++j) f_low = std::min(f_low, 0.5 * Q(i, j) + 0.5 * (b[i] + b[j]));
    const double L = f.lipschitz;
    const bool indefinite = own_min_eigenvalue(Q) < 0.0 && own_spectral_norm(Q) <= L;
    Index v0 = 0;
    for (Index i = 1; i < 20; ++i)
      if (Q(i, i) / 2 + b[i] > Q(v0, v0) / 2 + b[v0]) v0 = i;
    for (StepRule rule : {StepRule::Lipschitz, StepRule::Linesearch}) {
      ++runs;
      IterationTrace tr = run_afw(f, SimplexPoint::vertex(20, v0), tracked(rule, 0.0, 10000));
      const auto& it = tr.iterates;
      const double h0 = f.value(it.front().weights()) - f_low;
      double best = std::numeric_limits<double>::infinity();
      bool good = indefinite;
      steps += static_cast<std::int64_t>(tr.records.size());
      // A run that stops early sits at a stationary iterate for the remaining T.
      for (std::size_t T = 1; T <= 10000; ++T) {
        const Vector& x = it[std::min(T - 1, it.size() - 1)].weights();
        best = std::min(best, gap_of(x, f.gradient(x)));
        const double Td = static_cast<double>(T);
        const double bound = std::max(std::sqrt(8.0 * L * h0 / Td), 4.0 * h0 / Td);
        tightest = std::max(tightest, best / bound);
        if (!(best <= bound + kSlack)) {
          if (good && first.empty()) {
            first = "; instance " + std::to_string(t) + " T=" + std::to_string(T) + " g*=" + fmt(best) +
                    " bound=" + fmt(bound);
          }
          good = false;
        }
      }
      ok += good ? 1 : 0;
      if (keep) {
        keep->push_back({"indefinite " + std::to_string(t) + " " + std::string(to_string(rule)), f,
                         std::move(tr), rule});
      }
    }
  }
  const double secs = clock.seconds();
  Outcome o;
  o.passed = ok == runs && secs < 30.0;
  o.detail = std::to_string(ok) + "/" + std::to_string(runs) + " runs within the rate for T <= 10000 (" +
             std::to_string(steps) + " steps taken, max g*/bound " + fmt(tightest) + "), " + fmt(secs) + " s" + first;
  return o;
}

Outcome criterion_perturbation(std::uint64_t seed, std::vector<RunRecord>*) {
  gen::Rng rng(seed + 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int applicable = 0;
  int ok = 0;
  int linear = 0;
  int attempt = 0;
  std::string first;
  while (applicable < 1000) {
    const Index n = 3 + attempt % 8;
    ObjectiveModel f;
    Vector xs;
    if (attempt % 2 == 0) {
      const auto g = gen::strongly_convex_boundary(n, rng);
      f = make_quadratic(g.spec);
      xs = g.x_star.weights();
    } else {
      Vector c(n);
      for (Index i = 0; i < n; ++i) c[i] = unit(rng);
      f = make_linear(c);
      Index best = 0;
      c.minCoeff(&best);
      xs = Vector::Unit(n, best);
    }
    ++attempt;
    const Vector xk = gen::sparse_simplex(n, 0.6, rng).weights();
    const Vector gs = f.gradient(xs);
    const Split s = split_at(xs, gs);
    const Vector lam_s = lambda_of(xs, gs);
    std::vector<bool> in_o(static_cast<std::size_t>(n), false);
    std::size_t o_count = 0;
    for (Index i : s.active) {
      if (xk[i] == 0.0) {
        in_o[static_cast<std::size_t>(i)] = true;
        ++o_count;
      }
    }
    if (o_count == s.active.size()) continue;
    ++applicable;
    linear += attempt % 2 == 0 ? 1 : 0;
    double delta_k = 0.0;
    for (Index i = 0; i < n; ++i)
      if (!in_o[static_cast<std::size_t>(i)]) delta_k = std::max(delta_k, lam_s[i]);
    const double h = l1(xk - xs);
    const Vector lam_k = lambda_of(xk, f.gradient(xk));
    const double dev = (lam_s - lam_k).cwiseAbs().maxCoeff();
    const double bound = h * (f.lipschitz + delta_k / 2.0);
    const bool good = dev <= bound + 1e-10;
    ok += good ? 1 : 0;
    if (!good && first.empty()) first = "; deviation " + fmt(dev) + " > " + fmt(bound);
  }
  Outcome o;
  o.passed = ok == 1000;
  o.detail = std::to_string(ok) + "/1000 pairs (" + std::to_string(linear) + " linear)" + first;
  return o;
}

Outcome criterion_norm_lemma(std::uint64_t seed, std::vector<RunRecord>*) {
  gen::Rng rng(seed + 5);
  int ok = 0;
  for (int t = 0; t < 10000; ++t) {
    const Index n = 2 + t % 9;
    const Vector x = gen::uniform_simplex(n, rng).weights();
    const Vector y = gen::sparse_simplex(n, 0.5, rng).weights();
    bool good = true;
    for (Index i = 0; i < n; ++i) {
      const Vector d = Vector::Unit(n, i) - x;
      good = good && d.norm() <= std::sqrt(2.0) * d[i] + kSlack;
      good = good && (y - x)[i] <= l1(y - x) / 2.0 + kSlack;
    }
    // An AFW step from x along its own direction.
    const ObjectiveModel f = make_linear(y - x);
    const StepOutcome step = afw_step(f, SimplexPoint::validate(x), t % 2 ? StepRule::Linesearch : StepRule::Lipschitz, 0.0);
    if (!step.stationary) {
      const Vector s = step.next.weights() - x;
      good = good && l1(s) <= 2.0 * s.norm() + kSlack;
    }
    ok += good ? 1 : 0;
  }
  Outcome o;
  o.passed = ok == 10000;
  o.detail = std::to_string(ok) + "/10000 samples satisfy all three inequalities";
  return o;
}

Outcome criterion_polytope(std::uint64_t seed, std::vector<RunRecord>* keep) {
  gen::Rng rng(seed + 6);
  int ok = 0;
  double worst_affine = 0.0;
  std::string first;
  for (int t = 0; t < 20; ++t) {
    const Index dim = 2 + t % 2;
    const Index face_size = 1 + t % dim;
    const auto p = gen::polytope_with_face(dim, face_size, 3 + t % 3, rng);
    const ObjectiveModel f = make_quadratic(p.ambient);
    const Matrix& A = p.polytope.atoms;
    const Index m = A.cols();
    // Exposed face by direct dot products.
    const Vector g_star = f.gradient(p.y_star);
    const Vector lam_star = (A.transpose() * g_star).array() - g_star.dot(p.y_star);
    const double tol = 1e-8 * (1.0 + (A.transpose() * g_star).cwiseAbs().maxCoeff());
    std::vector<bool> on_face(static_cast<std::size_t>(m));
    std::vector<Index> face;
    for (Index a = 0; a < m; ++a) {
      on_face[static_cast<std::size_t>(a)] = lam_star[a] <= tol;
      if (lam_star[a] <= tol) face.push_back(a);
    }
    const bool planted = face == p.face_atoms;

    PolytopeRunOptions opts;
    opts.rule = alternate(t);
    opts.gap_tol = 1e-12;
    opts.max_iters = 200000;
    opts.reference_y_star = p.y_star;
    PolytopeTrace run = run_afw_polytope(f, p.polytope, SimplexPoint::barycenter(m), opts);
    const auto& it = run.trace.iterates;
    const auto M = trailing_start(it.size(), [&](std::size_t k) {
      for (Index a = 0; a < m; ++a)
        if (!on_face[static_cast<std::size_t>(a)] && it[k].weights()[a] != 0.0) return false;
      return true;
    });
    double affine = 0.0;
    for (const auto& x : it) {
      const Vector y = A * x.weights();
      const Vector gy = f.gradient(y);
      const Vector ambient = (A.transpose() * gy).array() - gy.dot(y);
      const Vector lifted = lambda_of(x.weights(), run.lifted.gradient(x.weights()));
      affine = std::max(affine, (ambient - lifted).cwiseAbs().maxCoeff());
    }
    worst_affine = std::max(worst_affine, affine);
    const bool good = planted && M.has_value() && affine <= 1e-10;
    ok += good ? 1 : 0;
    if (!good && first.empty()) {
      first = "; polytope " + std::to_string(t) + (planted ? "" : " face mismatch") +
              (M ? "" : " not identified") + " affine " + fmt(affine);
    }
    if (keep) keep->push_back({"polytope " + std::to_string(t), run.lifted, std::move(run.trace), opts.rule});
  }
  Outcome o;
  o.passed = ok == 20;
  o.detail = std::to_string(ok) + "/20 polytopes identified on the exposed face, max affine error " +
             fmt(worst_affine) + first;
  return o;
}

Outcome criterion_fw_contrast(std::uint64_t, std::vector<RunRecord>* keep) {
  Vector c(3);
  c << 1, 2, 3;
  const std::vector<Index> active = {1, 2};
  Outcome o;
  std::ostringstream d;
  for (StepRule rule : {StepRule::Lipschitz, StepRule::Linesearch}) {
    const ObjectiveModel f = make_linear(c);
    IterationTrace fw = run_fw(f, SimplexPoint::barycenter(3), tracked(rule, 0.0, 1000));
    std::size_t positive = 0;
    for (const auto& x : fw.iterates) positive += j_count(x.weights(), active) == 2 ? 1 : 0;
    const bool fw_ok = fw.records.size() == 1000 && positive == fw.iterates.size();
    IterationTrace afw = run_afw(f, SimplexPoint::barycenter(3), tracked(rule, 0.0, 1000));
    const auto& it = afw.iterates;
    const auto M = trailing_start(it.size(), [&](std::size_t k) { return j_count(it[k].weights(), active) == 0; });
    o.passed = o.passed && fw_ok && M.has_value();
    d << to_string(rule) << ": FW ran " << fw.records.size() << " steps, I^c positive on "
      << positive << "/" << fw.iterates.size() << " iterates; AFW M = "
      << (M ? std::to_string(*M) : "none") << ". ";
    if (keep) {
      keep->push_back({"fw contrast " + std::string(to_string(rule)), f, std::move(fw), rule});
      keep->push_back({"afw contrast " + std::string(to_string(rule)), f, std::move(afw), rule});
    }
  }
  o.detail = d.str();
  return o;
}

using CriterionFn = Outcome (*)(std::uint64_t, std::vector<RunRecord>*);

const CriterionFn kTraceProducers[] = {criterion_finite_identification, criterion_sc_complexity,
                                       criterion_gap_rate, criterion_polytope, criterion_fw_contrast};

std::vector<RunRecord> gather_runs(std::uint64_t seed) {
  std::vector<RunRecord> runs;
  for (CriterionFn fn : kTraceProducers) fn(seed, &runs);
  return runs;
}

Outcome summarize(const StepAudit& own, const std::vector<SuiteReport>& suites,
                  const std::function<const AuditResult&(const SuiteReport&)>& pick) {
  Outcome o;
  std::int64_t suite_checked = 0;
  std::int64_t suite_failures = 0;
  for (const auto& s : suites) {
    suite_checked += pick(s).checked;
    suite_failures += pick(s).failures;
  }
  o.passed = own.failures == 0 && suite_failures == 0 && own.checked > 0;
  o.detail = std::to_string(own.checked - own.failures) + "/" + std::to_string(own.checked) +
             " recomputed checks, suites " + std::to_string(suite_checked - suite_failures) + "/" +
             std::to_string(suite_checked);
  if (!own.first.empty()) o.detail += "; " + own.first;
  return o;
}

std::vector<SuiteReport> all_suites(std::uint64_t seed) {
  std::vector<SuiteReport> out;
  for (const auto& name : suite_names()) out.push_back(run_suite(name, seed));
  return out;
}

Outcome criterion_stepsize(std::uint64_t seed, std::vector<RunRecord>*) {
  StepAudit own;
  for (const auto& run : gather_runs(seed)) audit_steps(run, own);
  return summarize(own, all_suites(seed), [](const SuiteReport& s) -> const AuditResult& { return s.stepsize; });
}

Outcome criterion_step_cases(std::uint64_t seed, std::vector<RunRecord>*) {
  StepAudit own;
  for (const auto& run : gather_runs(seed)) audit_cases(run, own);
  return summarize(own, all_suites(seed), [](const SuiteReport& s) -> const AuditResult& { return s.step_cases; });
}

struct Criterion {
  const char* name;
  CriterionFn fn;
};

const Criterion kCriteria[] = {
    {"local decrement", criterion_local_decrement},
    {"finite identification", criterion_finite_identification},
    {"strongly convex complexity", criterion_sc_complexity},
    {"nonconvex gap rate", criterion_gap_rate},
    {"stepsize audits", criterion_stepsize},
    {"multiplier perturbation", criterion_perturbation},
    {"norm inequalities", criterion_norm_lemma},
    {"step-case structure", criterion_step_cases},
    {"polytope face identification", criterion_polytope},
    {"FW non-identification contrast", criterion_fw_contrast},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  std::uint64_t seed = 42;
  app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
  app.add_option("--seed", seed, "base seed");
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  for (int i = 1; i <= 10; ++i) {
    if (only != 0 && i != only) continue;
    const Criterion& c = kCriteria[i - 1];
    const Outcome o = c.fn(seed, nullptr);
    std::cout << "criterion " << i << " (" << c.name << "): " << (o.passed ? "PASS" : "FAIL") << " - "
              << o.detail << std::endl;
    all = all && o.passed;
  }
  return all ? 0 : 1;
}
