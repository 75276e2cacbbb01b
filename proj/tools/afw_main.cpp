#include "afw/config.hpp"
#include "afw/experiment.hpp"
#include "afw/suites.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kMonitorFailure = 3, kIoError = 4 };

int cmd_run(const std::string& config_path, const std::string& out_flag) {
  const afw::ExperimentConfig cfg = afw::load_config(config_path);
  const afw::ExperimentResult res = afw::run_experiment(cfg);
  const std::string out = !out_flag.empty() ? out_flag : cfg.output.value_or("");

  std::ostream* summary = &std::cout;
  if (out.empty()) {
    afw::write_trace_csv(std::cout, res);
    summary = &std::cerr;
  } else {
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file) throw afw::IoError("cannot open '" + out + "' for writing");
    afw::write_trace_csv(file, res);
    file.close();
    if (!file) throw afw::IoError("error writing '" + out + "'");
  }

  *summary << "termination: " << afw::to_string(res.trace.termination) << " after "
           << res.trace.records.size() << " iterations, f = " << afw::format_number(res.trace.f_final)
           << ", gap = " << afw::format_number(res.trace.gap_final) << '\n';
  if (res.region) {
    *summary << "identification: "
             << (res.identification ? std::to_string(*res.identification) : "not identified") << '\n';
  }
  for (const auto& m : res.monitors) afw::print_monitor(*summary, m);
  for (const auto& b : res.bounds) afw::print_bound_report(*summary, b);
  return res.monitors_passed() ? kOk : kMonitorFailure;
}

int cmd_suite(const std::string& name, std::uint64_t seed) {
  afw::SuiteReport rep;
  try {
    rep = afw::run_suite(name, seed);
  } catch (const std::invalid_argument& e) {
    throw afw::ConfigError(e.what());
  }
  afw::print_suite_report(std::cout, rep);
  return rep.passed() ? kOk : kMonitorFailure;
}

int cmd_bounds(const std::string& config_path) {
  const afw::ExperimentConfig cfg = afw::load_config(config_path);
  const auto reports = afw::predict_bounds(cfg);
  if (reports.empty()) std::cout << "no bound is computable from this configuration\n";
  for (const auto& r : reports) afw::print_bound_report(std::cout, r);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Away-step Frank-Wolfe runs, suites and bound reports"};
  app.require_subcommand(1);

  std::string run_config;
  std::string run_out;
  auto* run = app.add_subcommand("run", "Run one configured experiment and write its CSV trace");
  run->add_option("config", run_config, "Experiment file")->required();
  run->add_option("--out", run_out, "Trace output path (default: config 'output' or stdout)");

  std::string suite_name;
  std::uint64_t seed = 42;
  auto* suite = app.add_subcommand("suite", "Run a named check suite");
  suite->add_option("name", suite_name, "local-identification | sc-complexity | nonconvex-rate | "
                                        "polytope-faces | lemma-audits")
      ->required();
  suite->add_option("--seed", seed, "Random seed");

  std::string bounds_config;
  auto* bounds = app.add_subcommand("bounds", "Print bound reports without running");
  bounds->add_option("config", bounds_config, "Experiment file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return cmd_run(run_config, run_out);
    if (*suite) return cmd_suite(suite_name, seed);
    return cmd_bounds(bounds_config);
  } catch (const afw::IoError& e) {
    std::cerr << "afw: " << e.what() << '\n';
    return kIoError;
  } catch (const afw::ConfigError& e) {
    std::cerr << "afw: config error: " << e.what() << '\n';
    return kConfigError;
  }
}
