// safemon: evaluate runtime safety monitors from recorded traces, simulate the
// braking scenario, or generate synthetic trace files.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "safemon/safemon.hpp"

namespace {

enum ExitCode : int { kOk = 0, kDataError = 1, kArgumentError = 2, kSelfCheck = 3 };

struct EvaluateArgs {
  std::string scheme;
  std::vector<std::string> inputs;
  std::string out;
  safemon::SchemeParams params;
  double default_action_score = -1.0;
  std::optional<double> normalize_safety;
  std::optional<double> normalize_mission;
  bool compensated = false;
};

struct SimulateArgs {
  std::string config;
  std::string builtin;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

struct GenerateArgs {
  std::string generator;
  std::size_t n = 0;
  std::size_t errors = 0;
  std::size_t true_alarms = 0;
  std::size_t false_alarms = 0;
  std::size_t threats = 0;
  std::size_t detected = 0;
  std::string out;
};

int run_evaluate(const EvaluateArgs& a) {
  safemon::EvaluateOptions opts;
  opts.scheme = *safemon::parse_scheme(a.scheme);
  opts.params = a.params;
  if (a.default_action_score >= 0.0) opts.params.default_action_score = a.default_action_score;
  opts.normalize_safety = a.normalize_safety;
  opts.normalize_mission = a.normalize_mission;
  opts.compensated = a.compensated;

  std::vector<std::filesystem::path> inputs(a.inputs.begin(), a.inputs.end());
  const auto report = safemon::evaluate_files(inputs, opts);
  if (!a.out.empty()) safemon::write_report(report, a.out);
  std::cout << safemon::format_table(report);
  return kOk;
}

int run_simulate(const SimulateArgs& a) {
  namespace sim = safemon::sim;
  sim::SuiteConfig suite;
  if (!a.config.empty())
    suite = sim::load_suite_config(a.config);
  else if (a.builtin == "desk")
    suite = sim::desk_suite();
  else
    suite = sim::default_suite();
  if (a.seed) sim::reseed(suite, *a.seed);

  const auto result = sim::run_suite(suite);
  sim::write_suite(result, a.out_dir);
  const auto& s = result.summary;
  std::cout << fmt::format("{} scenarios, {} traces written to {}\n", s.f.episodes,
                           s.f.episodes + s.f_with_monitor.episodes + s.f_star.episodes, a.out_dir);
  std::cout << fmt::format("{:<16} {:>10} {:>8}\n", "variant", "collisions", "brakes");
  std::cout << fmt::format("{:<16} {:>10} {:>8}\n", "f", s.f.collisions, s.f.brakes);
  std::cout << fmt::format("{:<16} {:>10} {:>8}\n", "f_with_monitor", s.f_with_monitor.collisions,
                           s.f_with_monitor.brakes);
  std::cout << fmt::format("{:<16} {:>10} {:>8}\n", "f_star", s.f_star.collisions, s.f_star.brakes);
  return kOk;
}

int run_generate(const GenerateArgs& a) {
  namespace gen = safemon::gen;
  const std::filesystem::path out = a.out;
  try {
    if (a.generator == "classification") {
      safemon::save_traces(safemon::RecordSet{gen::synth_classification(a.n, a.errors, a.true_alarms,
                                                                        a.false_alarms)},
                           out);
    } else if (a.generator == "threat") {
      safemon::save_traces(
          safemon::RecordSet{gen::synth_threat(a.n, a.threats, a.detected, a.false_alarms)}, out);
    } else if (a.generator == "table1") {
      safemon::save_traces(safemon::RecordSet{gen::table1_reconstruction()}, out);
    } else if (a.generator == "table3-e1") {
      safemon::save_traces(safemon::RecordSet{gen::table3_e1_reconstruction()}, out);
    } else if (a.generator == "suite-default") {
      safemon::sim::save_suite_config(safemon::sim::default_suite(), out);
    } else {
      safemon::sim::save_suite_config(safemon::sim::desk_suite(), out);
    }
  } catch (const safemon::InvalidInput& e) {
    std::cerr << "error: invalid arguments: " << e.what() << '\n';
    return kArgumentError;
  }
  std::cout << "wrote " << out.string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Safety Gain / Residual Hazard / Availability Cost evaluation of runtime monitors"};
  app.require_subcommand(1);

  std::vector<std::string> schemes;
  for (const auto& [_, name] : safemon::kSchemeNames) schemes.emplace_back(name);

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "compute SG, RH and AC over a trace file");
  evaluate->add_option("--scheme", ev.scheme, "return-function scheme")->required()->check(CLI::IsMember(schemes));
  evaluate->add_option("--input,-i", ev.inputs, "trace file(s); repeat for episodic variant files")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--out,-o", ev.out, "write the report object here");
  evaluate->add_option("--iou-threshold", ev.params.iou_threshold, "detection match IoU threshold")
      ->capture_default_str();
  evaluate->add_option("--score-threshold", ev.params.score_threshold, "detection score threshold")
      ->capture_default_str();
  evaluate->add_option("--kappa", ev.params.kappa, "landing score gap")->capture_default_str();
  evaluate->add_option("--default-action-score", ev.default_action_score,
                       "landing parachute score (default: kappa)");
  evaluate->add_option("--normalize-safety", ev.normalize_safety, "divide SG, RH, hazard_f by this");
  evaluate->add_option("--normalize-mission", ev.normalize_mission, "divide AC by this");
  evaluate->add_flag("--compensated", ev.compensated, "use compensated summation");

  SimulateArgs si;
  auto* simulate = app.add_subcommand("simulate", "run the braking scenario suite");
  auto* cfg = simulate->add_option("--config,-c", si.config, "suite config file")->check(CLI::ExistingFile);
  simulate->add_option("--builtin", si.builtin, "built-in suite when no config is given")
      ->check(CLI::IsMember({"default", "desk"}))
      ->excludes(cfg);
  simulate->add_option("--out,-o", si.out_dir, "output directory")->required();
  simulate->add_option("--seed", si.seed, "reseed every scenario from this master seed");

  GenerateArgs ge;
  auto* generate = app.add_subcommand("generate", "write a synthetic trace or suite config file");
  generate
      ->add_option("generator", ge.generator,
                   "classification | threat | table1 | table3-e1 | suite-default | suite-desk")
      ->required()
      ->check(CLI::IsMember(
          {"classification", "threat", "table1", "table3-e1", "suite-default", "suite-desk"}));
  generate->add_option("--n", ge.n, "number of records");
  generate->add_option("--errors", ge.errors, "misclassified records (classification)");
  generate->add_option("--true-alarms", ge.true_alarms, "flagged errors (classification)");
  generate->add_option("--false-alarms", ge.false_alarms, "flagged non-errors / non-threats");
  generate->add_option("--threats", ge.threats, "threat records (threat)");
  generate->add_option("--detected", ge.detected, "flagged threats (threat)");
  generate->add_option("--out,-o", ge.out, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; every other parse failure is an argument error.
    return app.exit(e) == 0 ? kOk : kArgumentError;
  }

  try {
    if (*evaluate) return run_evaluate(ev);
    if (*simulate) return run_simulate(si);
    return run_generate(ge);
  } catch (const safemon::SelfCheckFailure& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kSelfCheck;
  } catch (const safemon::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
}
