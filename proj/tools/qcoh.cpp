// qcoh: coherence/mixedness experiments from the command line.
//
//   qcoh run additivity_table --qubits 3,4,5 --ranks 1-4 --samples 20000 --seed 7 --out t.csv
//   qcoh inspect --state eq11

#include <memory>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcoh/errors.hpp"
#include "qcoh/experiments.hpp"

namespace {

struct RunOptions {
  std::string experiment;
  std::string preset = "paper";
  std::optional<std::string> qubits;
  std::optional<std::string> ranks;
  std::optional<std::string> measures;
  std::optional<int> samples;
  std::uint64_t seed = 7;
  std::string out;
  int pivot = 0;
  int bins = 50;
  int workers = 1;
  std::string state;
  std::string state_file;
};

qcoh::ExperimentConfig build_config(const RunOptions& o) {
  auto config = qcoh::ExperimentConfig::defaults(qcoh::parse_experiment(o.experiment),
                                                 qcoh::parse_preset(o.preset));
  if (o.qubits) config.n_qubits = qcoh::parse_int_list(*o.qubits);
  if (o.ranks) config.ranks = qcoh::parse_int_list(*o.ranks);
  if (o.measures) config.measures = qcoh::parse_measure_list(*o.measures);
  if (o.samples) config.samples = *o.samples;
  config.seed = o.seed;
  config.output = o.out;
  config.pivot = o.pivot;
  config.bins = o.bins;
  config.workers = o.workers;
  config.state = o.state;
  config.state_file = o.state_file;
  return config;
}

void print_summary(const qcoh::ExperimentResult& result) {
  for (const auto& p : result.panels) {
    std::cout << "panel " << p.panel << " rank " << p.rank << " qubits " << p.n_qubits
              << ": exceed-1 fraction " << p.exceed_fraction << ", range [" << p.min_value << ", "
              << p.max_value << "]" << (p.extension ? " (extension)" : "") << '\n';
  }
  for (const auto& c : result.cells) {
    std::cout << "rank " << c.rank << " qubits " << c.n_qubits << " " << qcoh::describe(c.kind)
              << ": " << c.percent_satisfied << "% satisfied\n";
  }
  for (const auto& line : result.single.lines) std::cout << line << '\n';
}

}  // namespace

// Reads flat key=value lines and files them under the chosen subcommand, so
// "qubits=3,4" works without a [run] section header.
class FlatConfig : public CLI::ConfigINI {
 public:
  explicit FlatConfig(std::string section) : section_(std::move(section)) {
    // Values such as "3,4" are list syntax for our own parser, not arrays.
    arrayDelimiter('\x1f');
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::vector<CLI::ConfigItem> items = CLI::ConfigINI::from_config(input);
    if (section_.empty()) return items;
    for (CLI::ConfigItem& item : items) {
      if (item.parents.empty() && item.name != "config") item.parents = {section_};
    }
    return items;
  }

 private:
  std::string section_;
};

int main(int argc, char** argv) {
  CLI::App app{"Quantum coherence and mixedness numerics"};
  app.set_config("--config", "", "Read options from a flat key=value file (e.g. qubits=3,4)");
  app.require_subcommand(1);
  app.fallthrough();
  std::string section;
  for (int i = 1; i < argc && section.empty(); ++i) {
    const std::string arg = argv[i];
    if (arg == "run" || arg == "inspect") section = arg;
  }
  app.config_formatter(std::make_shared<FlatConfig>(section));

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment and write CSV plus a JSON sidecar");
  run_cmd->add_option("experiment", run.experiment,
                      "tradeoff_histograms | additivity_table | dicke_curves | single_state")
      ->required();
  run_cmd->add_option("--preset", run.preset, "paper (2x10^4 samples) or ci (2x10^3)");
  run_cmd->add_option("--qubits", run.qubits, "Qubit counts, e.g. 3,4,5 or 3-10");
  run_cmd->add_option("--ranks", run.ranks, "Ranks, e.g. 1-4");
  run_cmd->add_option("--measures", run.measures, "Measures, e.g. l1,l1^2,cr,cr^2:raw");
  run_cmd->add_option("--samples", run.samples, "Samples per (rank, qubits) cell");
  run_cmd->add_option("--seed", run.seed, "Master seed");
  run_cmd->add_option("--out", run.out, "CSV output path (default: stdout)");
  run_cmd->add_option("--pivot", run.pivot, "Pivot qubit for additivity scores");
  run_cmd->add_option("--bins", run.bins, "Histogram bins");
  run_cmd->add_option("--workers", run.workers, "Worker threads");
  run_cmd->add_option("--state", run.state, "Named state for single_state");
  run_cmd->add_option("--state-file", run.state_file, "State file for single_state");

  RunOptions inspect;
  inspect.experiment = "single_state";
  auto* inspect_cmd = app.add_subcommand("inspect", "Print every measure for one state");
  auto* state_opt = inspect_cmd->add_option("--state", inspect.state,
                                            "eq11 | mcs:<d> | dicke:<n>,<r> | ghzx:<n>,<p>");
  auto* file_opt = inspect_cmd->add_option("--state-file", inspect.state_file,
                                           "Text file: d, then d^2 lines 're im'");
  state_opt->excludes(file_opt);
  inspect_cmd->add_option("--pivot", inspect.pivot, "Pivot qubit for additivity scores");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*inspect_cmd) {
      const auto result = qcoh::run_experiment(build_config(inspect));
      print_summary(result);
      return 0;
    }
    const auto config = build_config(run);
    const auto result = qcoh::run_experiment(config);
    if (config.output.empty()) {
      qcoh::write_csv(result, std::cout);
    } else {
      qcoh::write_outputs(result, config.output);
      print_summary(result);
      std::cout << "wrote " << config.output << " in " << result.wall_time_s << " s\n";
    }
  } catch (const qcoh::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
