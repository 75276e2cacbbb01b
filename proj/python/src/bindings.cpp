#include "afw/config.hpp"
#include "afw/experiment.hpp"
#include "afw/identification.hpp"
#include "afw/polytope.hpp"
#include "afw/suites.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace afw;

namespace {

StepRule parse_rule(const std::string& s) {
  if (s == "lipschitz") return StepRule::Lipschitz;
  if (s == "linesearch") return StepRule::Linesearch;
  throw py::value_error("stepsize must be 'lipschitz' or 'linesearch'");
}

std::optional<StationaryRegion> region_from(const ObjectiveModel& f,
                                            const std::optional<std::vector<Vector>>& reference) {
  if (!reference || reference->empty()) return std::nullopt;
  std::vector<SimplexPoint> pts;
  for (const auto& r : *reference) pts.push_back(SimplexPoint::validate(r));
  return make_region(std::move(pts), f);
}

py::dict trace_dict(const IterationTrace& tr, const std::optional<StationaryRegion>& region) {
  std::vector<std::int64_t> iter;
  std::vector<double> f, gap, alpha, alpha_max, alpha_bar;
  std::vector<std::string> kind;
  std::vector<Index> vertex, support;
  std::vector<int> step_case;
  for (const auto& r : tr.records) {
    iter.push_back(r.iter);
    f.push_back(r.f);
    gap.push_back(r.gap);
    kind.emplace_back(to_string(r.kind));
    vertex.push_back(r.vertex);
    alpha.push_back(r.alpha);
    alpha_max.push_back(r.alpha_max);
    alpha_bar.push_back(r.alpha_bar);
    step_case.push_back(r.step_case);
    support.push_back(r.support_size);
  }
  py::dict d;
  d["iter"] = iter;
  d["f"] = f;
  d["gap"] = gap;
  d["dir_kind"] = kind;
  d["vertex"] = vertex;
  d["alpha"] = alpha;
  d["alpha_max"] = alpha_max;
  d["alpha_bar"] = alpha_bar;
  d["step_case"] = step_case;
  d["support_size"] = support;
  d["termination"] = std::string(to_string(tr.termination));
  d["x"] = tr.x_final.weights();
  d["f_final"] = tr.f_final;
  d["gap_final"] = tr.gap_final;
  if (auto js = tr.j_sizes()) d["j_size"] = *js;
  if (region) {
    d["r_star"] = region->r_star;
    d["active_set"] = region->active_set;
    const auto M = identification_iteration(tr);
    d["identification"] = M ? py::cast(*M) : py::none();
  }
  return d;
}

py::dict bound_dict(const BoundReport& b) {
  py::dict d;
  d["name"] = b.bound_name;
  d["predicted"] = b.predicted_iterations ? py::cast(*b.predicted_iterations) : py::none();
  d["conditions_satisfied"] = b.all_conditions_satisfied();
  py::dict inputs;
  for (const auto& [k, v] : b.inputs) inputs[py::str(k)] = v;
  d["inputs"] = inputs;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Away-step Frank-Wolfe on the simplex and on atom polytopes";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("lmo", &lmo, py::arg("grad"));
  m.def("multipliers",
        [](const Vector& x, const Vector& g) { return multipliers(SimplexPoint::validate(x), g); },
        py::arg("x"), py::arg("grad"));
  m.def("fw_gap", &fw_gap, py::arg("lam"));

  py::class_<ObjectiveModel>(m, "Objective")
      .def_readonly("dim", &ObjectiveModel::dim)
      .def_readonly("lipschitz", &ObjectiveModel::lipschitz)
      .def_readonly("strong_convexity_l1", &ObjectiveModel::strong_convexity_l1)
      .def("value", [](const ObjectiveModel& f, const Vector& x) { return f.value(x); })
      .def("gradient", [](const ObjectiveModel& f, const Vector& x) { return f.gradient(x); });

  m.def("quadratic", [](const Matrix& Q, const Vector& b) { return make_quadratic({Q, b}); },
        py::arg("Q"), py::arg("b"));
  m.def("linear", &make_linear, py::arg("c"), py::arg("lipschitz") = 1.0);

  m.def("extended_support",
        [](const Vector& x, const ObjectiveModel& f) {
          const SupportSplit s = extended_support(SimplexPoint::validate(x), f);
          return py::make_tuple(s.extended_support, s.active_set);
        },
        py::arg("x"), py::arg("f"));
  m.def("active_set_radius", &active_set_radius, py::arg("delta_min"), py::arg("lipschitz"));

  m.def("run_afw",
        [](const ObjectiveModel& f, const Vector& x0, const std::string& stepsize, double gap_tol,
           std::int64_t max_iters, const std::optional<std::vector<Vector>>& reference, bool fw) {
          const auto region = region_from(f, reference);
          RunOptions opts;
          opts.rule = parse_rule(stepsize);
          opts.gap_tol = gap_tol;
          opts.max_iters = max_iters;
          opts.reference = region ? &*region : nullptr;
          const SimplexPoint start = SimplexPoint::validate(x0);
          const IterationTrace tr = fw ? run_fw(f, start, opts) : run_afw(f, start, opts);
          return trace_dict(tr, region);
        },
        py::arg("f"), py::arg("x0"), py::arg("stepsize") = "lipschitz", py::arg("gap_tol") = 1e-10,
        py::arg("max_iters") = 10000, py::arg("reference") = py::none(), py::arg("fw") = false);

  m.def("strongly_convex_bound",
        [](double h0, double u1, double r_star, double q, std::int64_t ic) {
          return bound_dict(strongly_convex_bound(h0, u1, r_star, q, ic));
        },
        py::arg("h0"), py::arg("u1"), py::arg("r_star"), py::arg("q"), py::arg("ic_size"));
  m.def("nonconvex_rate_bound", &nonconvex_rate_bound, py::arg("lipschitz"), py::arg("h0"),
        py::arg("rho"), py::arg("T"));
  m.def("local_basin_bound",
        [](double f0, double f_min, double tau, double L, std::int64_t ic) {
          return bound_dict(local_basin_bound(f0, f_min, tau, L, ic));
        },
        py::arg("f0"), py::arg("f_min"), py::arg("tau"), py::arg("lipschitz"), py::arg("ic_size"));
  m.def("holder_epsilon",
        [](double L, double theta, double p, double r_star, double d, Index n) {
          const HolderEpsilon e = holder_epsilon_conditions(L, theta, p, r_star, d, n);
          py::dict out;
          out["supremum"] = e.supremum;
          out["admissible"] = e.admissible();
          out["closed"] = e.closed;
          return out;
        },
        py::arg("lipschitz"), py::arg("theta"), py::arg("p"), py::arg("r_star"), py::arg("d_min_dist"),
        py::arg("n"));

  m.def("polytope_multipliers",
        [](const Vector& y, const Vector& g, const Matrix& atoms) {
          return polytope_multipliers(y, g, AtomPolytope::make(atoms));
        },
        py::arg("y"), py::arg("grad"), py::arg("atoms"));
  m.def("exposed_face",
        [](const Vector& y, const Vector& g, const Matrix& atoms) {
          return exposed_face(y, g, AtomPolytope::make(atoms)).atom_indices;
        },
        py::arg("y"), py::arg("grad"), py::arg("atoms"));
  m.def("run_afw_polytope",
        [](const ObjectiveModel& f, const Matrix& atoms, const std::optional<Vector>& y_star,
           const std::string& stepsize, double gap_tol, std::int64_t max_iters) {
          const AtomPolytope P = AtomPolytope::make(atoms);
          PolytopeRunOptions opts;
          opts.rule = parse_rule(stepsize);
          opts.gap_tol = gap_tol;
          opts.max_iters = max_iters;
          opts.reference_y_star = y_star;
          const PolytopeTrace run = run_afw_polytope(f, P, SimplexPoint::barycenter(P.num_atoms()), opts);
          py::dict d = trace_dict(run.trace, std::nullopt);
          d["y"] = run.ambient.back();
          if (run.face) {
            d["face"] = run.face->atom_indices;
            const auto M = run.face_identification_iteration();
            d["identification"] = M ? py::cast(*M) : py::none();
          }
          return d;
        },
        py::arg("f"), py::arg("atoms"), py::arg("y_star") = py::none(), py::arg("stepsize") = "lipschitz",
        py::arg("gap_tol") = 1e-10, py::arg("max_iters") = 10000);

  m.def("run_config",
        [](const std::string& text) {
          const ExperimentResult res = run_experiment(parse_config(text));
          std::ostringstream os;
          write_trace_csv(os, res);
          return py::make_tuple(os.str(), res.monitors_passed());
        },
        py::arg("text"), "Runs a config given as text; returns (csv, monitors_passed).");
  m.def("suite_names", &suite_names);
  m.def("run_suite",
        [](const std::string& name, std::uint64_t seed) {
          const SuiteReport r = run_suite(name, seed);
          py::dict checks;
          for (const auto& c : r.checks) checks[py::str(c.name)] = c.passed;
          checks["stepsize"] = r.stepsize.passed();
          checks["step-cases"] = r.step_cases.passed();
          return checks;
        },
        py::arg("name"), py::arg("seed") = 42);
}
