#include "qcoh/distribution.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "qcoh/errors.hpp"

namespace qcoh {

namespace {

template <typename State>
int checked_qubits(const State& rho, int pivot) {
  const int n = qubit_count(rho.dim());
  if (n < 0) {
    throw DimensionMismatch("additivity needs a qubit register, dim " + std::to_string(rho.dim()));
  }
  if (n < 3) throw TooFewParties("additivity needs at least 3 qubits, got " + std::to_string(n));
  if (pivot < 0 || pivot >= n) throw BadSubsystem("pivot " + std::to_string(pivot) + " out of range");
  return n;
}

std::vector<int> partners_of(int n, int pivot) {
  std::vector<int> partners;
  for (int q = 0; q < n; ++q) {
    if (q != pivot) partners.push_back(q);
  }
  return partners;
}

double integer_power(double x, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}

template <typename State>
double scaled_coherence(const State& rho, CoherenceMeasure measure, bool normalized) {
  const double raw = coherence(rho, measure, Base::Bits);
  return normalized ? raw / coherence_scale(measure, rho.dim(), Base::Bits) : raw;
}

template <typename State>
std::vector<AdditivityReport> score_all(const State& rho, int pivot,
                                        std::span<const CoherenceKind> kinds) {
  const int n = checked_qubits(rho, pivot);
  const std::vector<int> partners = partners_of(n, pivot);

  std::vector<DensityMatrix> pairs;
  pairs.reserve(partners.size());
  for (int b : partners) {
    const int keep[2] = {pivot, b};
    pairs.push_back(rho.reduce(keep));
  }

  // (measure, normalized) -> {whole, pairs...}
  std::map<std::pair<CoherenceMeasure, bool>, std::vector<double>> cache;
  std::vector<AdditivityReport> reports;
  reports.reserve(kinds.size());
  for (const CoherenceKind& kind : kinds) {
    if (kind.power < 1) throw UnknownCombination("power must be >= 1");
    auto key = std::make_pair(kind.measure, kind.normalized);
    auto it = cache.find(key);
    if (it == cache.end()) {
      std::vector<double> values;
      values.push_back(scaled_coherence(rho, kind.measure, kind.normalized));
      for (const DensityMatrix& pair : pairs) {
        values.push_back(scaled_coherence(pair, kind.measure, kind.normalized));
      }
      it = cache.emplace(key, std::move(values)).first;
    }
    const std::vector<double>& values = it->second;

    AdditivityReport report;
    report.n_parties = n;
    report.pivot = pivot;
    report.kind = kind;
    report.partners = partners;
    report.whole_value = values[0];
    report.pair_values.assign(values.begin() + 1, values.end());
    double delta = integer_power(report.whole_value, kind.power);
    for (double v : report.pair_values) delta -= integer_power(v, kind.power);
    report.delta = delta;
    report.satisfied = delta >= -kSatisfactionTolerance;
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace

std::vector<AdditivityReport> additivity_scores(const DensityMatrix& rho, int pivot,
                                                std::span<const CoherenceKind> kinds) {
  return score_all(rho, pivot, kinds);
}

std::vector<AdditivityReport> additivity_scores(const PureState& psi, int pivot,
                                                std::span<const CoherenceKind> kinds) {
  return score_all(psi, pivot, kinds);
}

AdditivityReport additivity_score(const DensityMatrix& rho, int pivot, const CoherenceKind& kind) {
  return additivity_scores(rho, pivot, std::span(&kind, 1)).front();
}

AdditivityReport additivity_score(const PureState& psi, int pivot, const CoherenceKind& kind) {
  return additivity_scores(psi, pivot, std::span(&kind, 1)).front();
}

double TheoremOneQuantities::normalized_pair_delta_from_deltas() const {
  const int n = partners;
  return (2.0 * (delta1 - delta2 - c_r_pivot) - (n - 1) * c_r_pairs_sum) /
         (2.0 * (n + 1) * std::numbers::ln2);
}

double TheoremOneQuantities::normalized_complement_delta_from_deltas() const {
  const int n = partners;
  return (n * (delta3 - delta4) - c_r_complements_sum - n * (n - 2) * c_r_whole) /
         (n * (n + 1) * std::numbers::ln2);
}

TheoremOneQuantities theorem1_quantities(const DensityMatrix& rho, int pivot) {
  const int qubits = checked_qubits(rho, pivot);
  const std::vector<int> partners = partners_of(qubits, pivot);
  const int n = static_cast<int>(partners.size());
  const DensityMatrix dephased = rho.dephased();

  auto entropies = [&](const DensityMatrix& state) {
    struct {
      double whole, pivot, pairs, complements;
    } s{};
    s.whole = entropy_vn(state);
    const int a[1] = {pivot};
    s.pivot = entropy_vn(state.reduce(a));
    for (int b : partners) {
      const int pair[2] = {pivot, b};
      s.pairs += entropy_vn(state.reduce(pair));
      std::vector<int> rest;
      for (int q = 0; q < qubits; ++q) {
        if (q != b) rest.push_back(q);
      }
      s.complements += entropy_vn(state.reduce(rest));
    }
    return s;
  };

  const auto quantum = entropies(rho);
  const auto classical = entropies(dephased);

  TheoremOneQuantities out;
  out.partners = n;
  out.delta1 = quantum.pairs - quantum.whole - quantum.pivot;
  out.delta2 = classical.pairs - classical.whole - classical.pivot;
  out.delta3 = quantum.complements - (n - 1) * quantum.whole;
  out.delta4 = classical.complements - (n - 1) * classical.whole;
  out.c_r_pivot = classical.pivot - quantum.pivot;
  out.c_r_whole = classical.whole - quantum.whole;
  out.c_r_pairs_sum = classical.pairs - quantum.pairs;
  out.c_r_complements_sum = classical.complements - quantum.complements;
  out.entropy_pivot = quantum.pivot;
  out.pair_entropy_excess = quantum.pairs - quantum.whole;
  return out;
}

double dicke_delta_closed_form(int n, int r, CoherenceMeasure measure, bool normalized) {
  if (n < 3 || r < 1 || r > n - 1) {
    throw OutOfRegime("closed form needs n >= 3 and 1 <= r <= n-1 (n=" + std::to_string(n) +
                      ", r=" + std::to_string(r) + ")");
  }
  const double binom = std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(r + 1.0) -
                                           std::lgamma(n - r + 1.0)));
  const double spread = static_cast<double>(r) * (n - r) / n;
  switch (measure) {
    case CoherenceMeasure::L1:
      return normalized ? (binom - 1.0) / (std::ldexp(1.0, n) - 1.0) - 2.0 * spread / 3.0
                        : binom - 1.0 - 2.0 * spread;
    case CoherenceMeasure::RelativeEntropy:
      return normalized ? std::log2(binom) / n - spread : std::log2(binom) - 2.0 * spread;
    default:
      throw OutOfRegime("closed forms exist for l1 and cr only");
  }
}

AdditivityReport xstate_additivity_check(int n, Complex alpha, Complex beta, double p,
                                         const CoherenceKind& kind) {
  return additivity_score(gghz_x_state(n, alpha, beta, p), 0, kind);
}

}  // namespace qcoh
