#include "qcoh/experiments.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "qcoh/errors.hpp"

namespace qcoh {

namespace {

constexpr std::uint64_t kTradeoffTag = 0x7472616465ULL;
constexpr std::uint64_t kTableTag = 0x7461626c65ULL;

// Runs body(i) for i in [0, count) on `workers` threads. Outputs must be
// written to slot i only; the caller reduces in index order.
void parallel_for(int count, int workers, const std::function<void(int)>& body) {
  workers = std::clamp(workers, 1, std::max(count, 1));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (int i = w; i < count; i += workers) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string format(const char* spec, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, value);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::TradeoffHistograms:
      return "tradeoff_histograms";
    case Experiment::AdditivityTable:
      return "additivity_table";
    case Experiment::DickeCurves:
      return "dicke_curves";
    case Experiment::SingleState:
      return "single_state";
  }
  return "?";
}

Experiment parse_experiment(std::string_view s) {
  for (Experiment e : {Experiment::TradeoffHistograms, Experiment::AdditivityTable,
                       Experiment::DickeCurves, Experiment::SingleState}) {
    if (s == to_string(e)) return e;
  }
  throw ConfigError("unknown experiment '" + std::string(s) + "'");
}

Preset parse_preset(std::string_view s) {
  if (s == "paper") return Preset::Paper;
  if (s == "ci") return Preset::Ci;
  throw ConfigError("unknown preset '" + std::string(s) + "' (expected paper or ci)");
}

static std::string_view trim(std::string_view s) {
  const std::size_t first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  auto parse_one = [&](std::string_view token) {
    try {
      std::size_t used = 0;
      const std::string s(token);
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("bad integer '" + std::string(token) + "' in list '" + std::string(text) + "'");
    }
  };
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view token = trim(text.substr(start, comma - start));
    if (token.empty()) throw ConfigError("empty entry in list '" + std::string(text) + "'");
    const std::size_t dash = token.find('-', 1);
    if (dash == std::string_view::npos) {
      out.push_back(parse_one(token));
    } else {
      const int lo = parse_one(trim(token.substr(0, dash)));
      const int hi = parse_one(trim(token.substr(dash + 1)));
      if (hi < lo) throw ConfigError("descending range '" + std::string(token) + "'");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
    start = comma + 1;
  }
  return out;
}

std::vector<CoherenceKind> parse_measure_list(std::string_view text) {
  std::vector<CoherenceKind> kinds;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string_view token = trim(text.substr(start, comma - start));
    CoherenceKind kind;
    kind.normalized = true;
    if (const std::size_t colon = token.find(':'); colon != std::string_view::npos) {
      const std::string_view flag = token.substr(colon + 1);
      if (flag == "raw") {
        kind.normalized = false;
      } else if (flag != "norm") {
        throw ConfigError("unknown measure flag '" + std::string(flag) + "'");
      }
      token = token.substr(0, colon);
    }
    if (const std::size_t caret = token.find('^'); caret != std::string_view::npos) {
      const std::vector<int> power = parse_int_list(token.substr(caret + 1));
      if (power.size() != 1 || power[0] < 1) {
        throw ConfigError("bad power in '" + std::string(token) + "'");
      }
      kind.power = power[0];
      token = token.substr(0, caret);
    }
    try {
      kind.measure = parse_coherence_measure(token);
    } catch (const ParseError& e) {
      throw ConfigError(e.what());
    }
    kinds.push_back(kind);
    start = comma + 1;
  }
  return kinds;
}

std::string describe(const CoherenceKind& kind) {
  std::string s = to_string(kind.measure);
  if (kind.power != 1) s += "^" + std::to_string(kind.power);
  if (!kind.normalized) s += ":raw";
  return s;
}

std::uint64_t sample_seed(std::uint64_t master, int n_qubits, int rank, std::uint64_t index) {
  const std::uint64_t cell = stream_seed(stream_seed(master, static_cast<std::uint64_t>(n_qubits)),
                                         static_cast<std::uint64_t>(rank));
  return stream_seed(cell, index);
}

ExperimentConfig ExperimentConfig::defaults(Experiment experiment, Preset preset) {
  ExperimentConfig c;
  c.experiment = experiment;
  c.samples = preset == Preset::Paper ? 20'000 : 2'000;
  switch (experiment) {
    case Experiment::TradeoffHistograms:
      c.n_qubits = {3, 4};
      c.ranks = {2, 3};
      break;
    case Experiment::AdditivityTable:
      c.n_qubits = {3, 4, 5};
      c.ranks = {1, 2, 3, 4};
      c.measures = parse_measure_list("l1,l1^2,l1^3,cr,cr^2");
      break;
    case Experiment::DickeCurves:
      c.n_qubits = {3, 4, 5, 6, 7, 8, 9, 10};
      c.measures = parse_measure_list("l1,cr");
      break;
    case Experiment::SingleState:
      break;
  }
  return c;
}

void ExperimentConfig::validate() const {
  if (samples < 1) throw ConfigError("samples must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  switch (experiment) {
    case Experiment::TradeoffHistograms:
    case Experiment::AdditivityTable: {
      if (n_qubits.empty() || ranks.empty()) throw ConfigError("qubits and ranks must be non-empty");
      const int min_qubits = experiment == Experiment::AdditivityTable ? 3 : 1;
      for (int n : n_qubits) {
        if (n < min_qubits || n > 8) {
          throw ConfigError("qubit count " + std::to_string(n) + " outside [" +
                            std::to_string(min_qubits) + ", 8]");
        }
        for (int r : ranks) {
          if (r < 1 || r > (1 << n)) {
            throw ConfigError("rank " + std::to_string(r) + " invalid for " + std::to_string(n) +
                              " qubits");
          }
        }
        if (experiment == Experiment::AdditivityTable && (pivot < 0 || pivot >= n)) {
          throw ConfigError("pivot " + std::to_string(pivot) + " out of range");
        }
      }
      if (experiment == Experiment::TradeoffHistograms && bins < 2) {
        throw ConfigError("histograms need at least 2 bins");
      }
      if (experiment == Experiment::AdditivityTable && measures.empty()) {
        throw ConfigError("no measures requested");
      }
      break;
    }
    case Experiment::DickeCurves:
      for (int n : n_qubits) {
        if (n < 3 || n > 16) throw ConfigError("dicke curves need 3 <= n <= 16");
      }
      for (const CoherenceKind& k : measures) {
        if (k.measure != CoherenceMeasure::L1 && k.measure != CoherenceMeasure::RelativeEntropy) {
          throw ConfigError("dicke curves support l1 and cr only");
        }
        if (k.power != 1) throw ConfigError("dicke curves use power 1");
      }
      break;
    case Experiment::SingleState:
      if (state.empty() == state_file.empty()) {
        throw ConfigError("single_state needs exactly one of --state or --state-file");
      }
      break;
  }
}

std::pair<CoherenceKind, MixednessKind> tradeoff_panel(char panel) {
  const CoherenceKind l1_sq{CoherenceMeasure::L1, true, 2};
  const CoherenceKind cr{CoherenceMeasure::RelativeEntropy, true, 1};
  switch (panel) {
    case 'a':
      return {l1_sq, {MixednessMeasure::VonNeumann}};
    case 'b':
      return {l1_sq, {MixednessMeasure::Geometric}};
    case 'c':
      return {cr, {MixednessMeasure::LinearEntropy}};
    case 'd':
      return {cr, {MixednessMeasure::Geometric}};
    default:
      throw ConfigError(std::string("unknown panel '") + panel + "'");
  }
}

ExperimentResult run_tradeoff_histograms(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  constexpr char kPanels[] = {'a', 'b', 'c', 'd'};

  ExperimentResult result;
  result.experiment = Experiment::TradeoffHistograms;
  result.seed = config.seed;
  result.samples = config.samples;

  for (int n : config.n_qubits) {
    for (int rank : config.ranks) {
      std::vector<std::array<double, 4>> values(static_cast<std::size_t>(config.samples));
      parallel_for(config.samples, config.workers, [&](int i) {
        const std::uint64_t seed =
            sample_seed(config.seed ^ kTradeoffTag, n, rank, static_cast<std::uint64_t>(i));
        const DensityMatrix rho = random_rank_r({n, rank, seed});
        for (std::size_t p = 0; p < 4; ++p) {
          const auto [c, m] = tradeoff_panel(kPanels[p]);
          values[static_cast<std::size_t>(i)][p] = tradeoff(rho, c, m);
        }
      });

      const bool extension = !(rank == 2 || rank == 3) || !(n == 3 || n == 4);
      for (std::size_t p = 0; p < 4; ++p) {
        const char panel = kPanels[p];
        const double upper = panel == 'c' ? 2.0 : 1.2;
        const double width = upper / config.bins;
        std::vector<long> counts(static_cast<std::size_t>(config.bins), 0);
        PanelSummary summary{panel, rank, n, 0.0, values[0][p], values[0][p], extension};
        long exceed = 0;
        for (const auto& v : values) {
          const double x = v[p];
          const int bin = std::clamp(static_cast<int>(std::floor(x / width)), 0, config.bins - 1);
          ++counts[static_cast<std::size_t>(bin)];
          if (x > 1.0) ++exceed;
          summary.min_value = std::min(summary.min_value, x);
          summary.max_value = std::max(summary.max_value, x);
        }
        summary.exceed_fraction = static_cast<double>(exceed) / config.samples;
        result.panels.push_back(summary);
        for (int b = 0; b < config.bins; ++b) {
          result.bins.push_back({panel, rank, n, b * width, (b + 1) * width,
                                 static_cast<double>(counts[static_cast<std::size_t>(b)]) /
                                     config.samples});
        }
      }
    }
  }
  result.wall_time_s = seconds_since(start);
  return result;
}

ExperimentResult run_additivity_table(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  result.experiment = Experiment::AdditivityTable;
  result.seed = config.seed;
  result.samples = config.samples;

  const std::size_t kinds = config.measures.size();
  for (int rank : config.ranks) {
    for (int n : config.n_qubits) {
      std::vector<std::vector<char>> satisfied(static_cast<std::size_t>(config.samples));
      parallel_for(config.samples, config.workers, [&](int i) {
        const std::uint64_t seed =
            sample_seed(config.seed ^ kTableTag, n, rank, static_cast<std::uint64_t>(i));
        const DensityMatrix rho = random_rank_r({n, rank, seed});
        const auto reports = additivity_scores(rho, config.pivot, config.measures);
        auto& row = satisfied[static_cast<std::size_t>(i)];
        row.resize(kinds);
        for (std::size_t k = 0; k < kinds; ++k) row[k] = reports[k].satisfied ? 1 : 0;
      });
      for (std::size_t k = 0; k < kinds; ++k) {
        long count = 0;
        for (const auto& row : satisfied) count += row[k];
        result.cells.push_back({rank, n, config.measures[k],
                                100.0 * static_cast<double>(count) / config.samples,
                                config.samples, config.seed});
      }
    }
  }
  result.wall_time_s = seconds_since(start);
  return result;
}

ExperimentResult run_dicke_curves(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  result.experiment = Experiment::DickeCurves;
  result.seed = config.seed;
  result.samples = 1;

  for (int n : config.n_qubits) {
    for (int r = 1; r <= n / 2; ++r) {
      const PureState psi = dicke(n, r);
      const auto reports = additivity_scores(psi, config.pivot, config.measures);
      for (std::size_t k = 0; k < config.measures.size(); ++k) {
        const CoherenceKind& kind = config.measures[k];
        result.dicke.push_back({n, r, kind.measure, kind.normalized,
                                dicke_delta_closed_form(n, r, kind.measure, kind.normalized),
                                reports[k].delta});
      }
    }
  }
  result.wall_time_s = seconds_since(start);
  return result;
}

SingleStateReport inspect_state(const DensityMatrix& rho, int pivot) {
  SingleStateReport report;
  auto add = [&](const std::string& name, double value) {
    report.quantities.emplace_back(name, value);
    report.lines.push_back(name + " = " + format("%.6f", value));
  };
  const int d = rho.dim();
  report.lines.push_back("dimension = " + std::to_string(d));
  add("purity", rho.purity());
  const RealVector spectrum = hermitian_eigenvalues(rho.matrix());
  std::string spectrum_line = "spectrum =";
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    spectrum_line += " " + format("%.6f", spectrum[i]);
    report.quantities.emplace_back("eigenvalue_" + std::to_string(i), spectrum[i]);
  }
  report.lines.push_back(spectrum_line);

  add("C_l1", c_l1(rho));
  add("C_l2", c_l2(rho));
  const double cr_nats = c_r(rho, Base::Nats);
  const double cr_bits = c_r(rho, Base::Bits);
  add("C_r_nats", cr_nats);
  add("C_r_bits", cr_bits);
  add("C_g", c_g(rho));
  add("S_nats", entropy_vn(rho, Base::Nats));
  add("S_bits", entropy_vn(rho, Base::Bits));
  add("M_g", m_g(rho));

  if (d >= 2) {
    const double ml = m_l(rho);
    add("M_l", ml);
    const double normalized_cr = cr_bits / std::log2(static_cast<double>(d));
    report.quantities.emplace_back("C_r/log2(d)", normalized_cr);
    report.quantities.emplace_back("C_r/log2(d)+M_l", normalized_cr + ml);
    report.lines.push_back("C_r/log2(d) + M_l = " + format("%.6f", normalized_cr) + " + " +
                           format("%.6f", ml) + " = " + format("%.6f", normalized_cr + ml));

    const std::pair<const char*, std::pair<CoherenceKind, MixednessKind>> relations[] = {
        {"tradeoff[l1^2+ml]", {{CoherenceMeasure::L1, true, 2}, {MixednessMeasure::LinearEntropy}}},
        {"tradeoff[l2^2+ml]", {{CoherenceMeasure::L2, true, 2}, {MixednessMeasure::LinearEntropy}}},
        {"tradeoff[cr+s]", {{CoherenceMeasure::RelativeEntropy, true, 1}, {MixednessMeasure::VonNeumann}}},
        {"tradeoff[cg+mg]", {{CoherenceMeasure::Geometric, true, 1}, {MixednessMeasure::Geometric}}},
        {"tradeoff[l1^2+s]", tradeoff_panel('a')},
        {"tradeoff[l1^2+mg]", tradeoff_panel('b')},
        {"tradeoff[cr+ml]", tradeoff_panel('c')},
        {"tradeoff[cr+mg]", tradeoff_panel('d')},
    };
    for (const auto& [name, kinds] : relations) add(name, tradeoff(rho, kinds.first, kinds.second));
  }

  const int n = qubit_count(d);
  if (n >= 3) {
    const std::vector<CoherenceKind> kinds = parse_measure_list("l1,cr,l1:raw,cr:raw");
    for (const AdditivityReport& a : additivity_scores(rho, pivot, kinds)) {
      add("delta[" + describe(a.kind) + "]", a.delta);
    }
    const TheoremOneQuantities t = theorem1_quantities(rho, pivot);
    add("Delta1", t.delta1);
    add("Delta2", t.delta2);
    add("Delta3", t.delta3);
    add("Delta4", t.delta4);
    add("C_r(pivot)_nats", t.c_r_pivot);
    add("Delta1-Delta2-C_r(pivot)", t.pair_delta_from_deltas());
  }
  return report;
}

ExperimentResult run_single_state(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const DensityMatrix rho =
      config.state.empty() ? read_state_file(config.state_file) : named_state(config.state);
  ExperimentResult result;
  result.experiment = Experiment::SingleState;
  result.seed = config.seed;
  result.samples = 1;
  result.single = inspect_state(rho, config.pivot);
  result.wall_time_s = seconds_since(start);
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  switch (config.experiment) {
    case Experiment::TradeoffHistograms:
      return run_tradeoff_histograms(config);
    case Experiment::AdditivityTable:
      return run_additivity_table(config);
    case Experiment::DickeCurves:
      return run_dicke_curves(config);
    case Experiment::SingleState:
      return run_single_state(config);
  }
  throw ConfigError("unknown experiment");
}

void write_csv(const ExperimentResult& result, std::ostream& out) {
  switch (result.experiment) {
    case Experiment::AdditivityTable:
      out << "rank,n_qubits,measure,power,percent_satisfied,samples,seed\n";
      for (const TableCell& c : result.cells) {
        out << c.rank << ',' << c.n_qubits << ','
            << to_string(c.kind.measure) << (c.kind.normalized ? "" : ":raw") << ','
            << c.kind.power << ',' << format("%.3f", c.percent_satisfied) << ',' << c.samples
            << ',' << c.seed << '\n';
      }
      break;
    case Experiment::TradeoffHistograms:
      out << "panel,rank,n_qubits,bin_lo,bin_hi,rel_freq\n";
      for (const HistogramBin& b : result.bins) {
        out << b.panel << ',' << b.rank << ',' << b.n_qubits << ',' << format("%.6g", b.lo) << ','
            << format("%.6g", b.hi) << ',' << format("%.10g", b.rel_freq) << '\n';
      }
      break;
    case Experiment::DickeCurves:
      out << "n,r,measure,normalized,delta_closed,delta_direct\n";
      for (const DickeRow& row : result.dicke) {
        out << row.n << ',' << row.r << ',' << to_string(row.measure) << ','
            << (row.normalized ? 1 : 0) << ',' << format("%.15g", row.delta_closed) << ','
            << format("%.15g", row.delta_direct) << '\n';
      }
      break;
    case Experiment::SingleState:
      out << "quantity,value\n";
      for (const auto& [name, value] : result.single.quantities) {
        out << name << ',' << format("%.15g", value) << '\n';
      }
      break;
  }
}

std::string metadata_json(const ExperimentResult& result) {
  const nlohmann::json meta = {
      {"experiment", to_string(result.experiment)},
      {"seed", result.seed},
      {"samples", result.samples},
      {"version", std::string(kVersion)},
      {"wall_time_s", result.wall_time_s},
  };
  return meta.dump(2);
}

void write_outputs(const ExperimentResult& result, const std::string& path) {
  std::ofstream csv(path, std::ios::binary);
  if (!csv) throw ConfigError("cannot write " + path);
  write_csv(result, csv);
  std::ofstream meta(path + ".meta.json", std::ios::binary);
  if (!meta) throw ConfigError("cannot write " + path + ".meta.json");
  meta << metadata_json(result) << '\n';
}

}  // namespace qcoh
