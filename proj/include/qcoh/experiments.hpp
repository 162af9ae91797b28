#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcoh/distribution.hpp"

namespace qcoh {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Experiment { TradeoffHistograms, AdditivityTable, DickeCurves, SingleState };
enum class Preset { Paper, Ci };

std::string to_string(Experiment e);
Experiment parse_experiment(std::string_view s);
Preset parse_preset(std::string_view s);

/// Seeded description of one Monte Carlo run.
struct ExperimentConfig {
  Experiment experiment = Experiment::AdditivityTable;
  std::vector<int> n_qubits;
  std::vector<int> ranks;
  int samples = 20'000;
  std::uint64_t seed = 7;
  std::vector<CoherenceKind> measures;
  int bins = 50;
  std::string output;
  int pivot = 0;
  int workers = 1;
  // single_state only: a named state or a path to a state file.
  std::string state;
  std::string state_file;

  /// Experiment defaults for a preset: paper = 2x10^4 samples, ci = 2x10^3.
  static ExperimentConfig defaults(Experiment experiment, Preset preset = Preset::Paper);

  /// Throws ConfigError on invalid settings.
  void validate() const;
};

/// Inclusive list syntax: "3,4,5", "1-4", or a mix such as "1,3-5".
std::vector<int> parse_int_list(std::string_view text);

/// Measure descriptors "l1", "l1^2", "cr^2", with an optional ":raw" suffix
/// (normalized by default), comma separated.
std::vector<CoherenceKind> parse_measure_list(std::string_view text);
std::string describe(const CoherenceKind& kind);

/// Sample seed for cell (n_qubits, rank) and sample index i.
std::uint64_t sample_seed(std::uint64_t master, int n_qubits, int rank, std::uint64_t index);

struct TableCell {
  int rank = 0;
  int n_qubits = 0;
  CoherenceKind kind;
  double percent_satisfied = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

struct HistogramBin {
  char panel = 'a';
  int rank = 0;
  int n_qubits = 0;
  double lo = 0.0;
  double hi = 0.0;
  double rel_freq = 0.0;
};

/// Per (panel, rank, n) summary of the trade-off values.
struct PanelSummary {
  char panel = 'a';
  int rank = 0;
  int n_qubits = 0;
  double exceed_fraction = 0.0;  // fraction of samples with value > 1
  double min_value = 0.0;
  double max_value = 0.0;
  bool extension = false;        // outside ranks {2,3} x qubits {3,4}
};

struct DickeRow {
  int n = 0;
  int r = 0;
  CoherenceMeasure measure = CoherenceMeasure::L1;
  bool normalized = true;
  double delta_closed = 0.0;
  double delta_direct = 0.0;
};

/// Everything single_state prints, in display order.
struct SingleStateReport {
  std::vector<std::pair<std::string, double>> quantities;
  std::vector<std::string> lines;
};

struct ExperimentResult {
  Experiment experiment = Experiment::AdditivityTable;
  std::vector<TableCell> cells;
  std::vector<HistogramBin> bins;
  std::vector<PanelSummary> panels;
  std::vector<DickeRow> dicke;
  SingleStateReport single;
  std::uint64_t seed = 0;
  int samples = 0;
  double wall_time_s = 0.0;
};

/// Panel letters a-d: (L1^2, S), (L1^2, M_g), (C_r, M_l), (C_r, M_g).
std::pair<CoherenceKind, MixednessKind> tradeoff_panel(char panel);

ExperimentResult run_tradeoff_histograms(const ExperimentConfig& config);
ExperimentResult run_additivity_table(const ExperimentConfig& config);
ExperimentResult run_dicke_curves(const ExperimentConfig& config);
ExperimentResult run_single_state(const ExperimentConfig& config);
SingleStateReport inspect_state(const DensityMatrix& rho, int pivot = 0);
ExperimentResult run_experiment(const ExperimentConfig& config);

/// CSV in the experiment's schema. Output is a pure function of config and seed.
void write_csv(const ExperimentResult& result, std::ostream& out);
std::string metadata_json(const ExperimentResult& result);

/// Writes the CSV to `path` and the metadata sidecar to `path + ".meta.json"`.
void write_outputs(const ExperimentResult& result, const std::string& path);

}  // namespace qcoh
