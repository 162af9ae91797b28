#pragma once

#include <span>
#include <vector>

#include "qcoh/measures.hpp"

namespace qcoh {

// delta >= -kSatisfactionTolerance counts as satisfying the additivity relation.
inline constexpr double kSatisfactionTolerance = 1e-10;

/// Coherence of a multiqubit state against its pivot/partner two-qubit
/// reductions: delta = C(whole)^k - sum_k C(rho_{A B_k})^k.
///
/// `whole_value` and `pair_values` hold the measure after normalization (when
/// the kind asks for it) but before the power is applied. Raw relative
/// entropy is in bits; normalized values are base-free.
struct AdditivityReport {
  int n_parties = 0;
  int pivot = 0;
  CoherenceKind kind;
  std::vector<int> partners;
  double whole_value = 0.0;
  std::vector<double> pair_values;
  double delta = 0.0;
  bool satisfied = false;
};

/// Throws TooFewParties below three qubits and BadSubsystem for a bad pivot.
AdditivityReport additivity_score(const DensityMatrix& rho, int pivot, const CoherenceKind& kind);

/// Same score for a pure state; the whole-state value uses the amplitude
/// shortcuts, so registers up to ~16 qubits stay cheap.
AdditivityReport additivity_score(const PureState& psi, int pivot, const CoherenceKind& kind);

/// Several kinds at once; each underlying measure is evaluated only once per
/// reduction.
std::vector<AdditivityReport> additivity_scores(const DensityMatrix& rho, int pivot,
                                                std::span<const CoherenceKind> kinds);
std::vector<AdditivityReport> additivity_scores(const PureState& psi, int pivot,
                                                std::span<const CoherenceKind> kinds);

/// Entropic bookkeeping behind the relative-entropy additivity relation, in
/// nats. Here n is the number of partners (qubits - 1), rho_AB the whole
/// state, rho_{AB_k} the pivot/partner reductions and rho_{A Bbar_k} the
/// state with partner k traced out.
struct TheoremOneQuantities {
  int partners = 0;
  double delta1 = 0.0;        // sum S(AB_k) - S(AB) - S(A)
  double delta2 = 0.0;        // delta1 on the dephased state
  double delta3 = 0.0;        // sum S(A Bbar_k) - (n-1) S(AB)
  double delta4 = 0.0;        // delta3 on the dephased state
  double c_r_pivot = 0.0;     // C_r(rho_A)
  double c_r_whole = 0.0;     // C_r(rho_AB)
  double c_r_pairs_sum = 0.0;       // sum_k C_r(rho_{AB_k})
  double c_r_complements_sum = 0.0; // sum_k C_r(rho_{A Bbar_k})
  double entropy_pivot = 0.0;       // S(rho_A)
  double pair_entropy_excess = 0.0; // sum S(AB_k) - S(AB), bounded below by (n-1) S(A)

  /// C_r(AB) - sum C_r(AB_k) rebuilt as delta1 - delta2 - C_r(A).
  double pair_delta_from_deltas() const { return delta1 - delta2 - c_r_pivot; }
  /// C_r(AB) - sum C_r(A Bbar_k) rebuilt as delta3 - delta4 - (n-2) C_r(AB).
  double complement_delta_from_deltas() const {
    return delta3 - delta4 - (partners - 2) * c_r_whole;
  }
  /// Normalized C_r(AB)/ln d^{n+1} - sum C_r(AB_k)/ln d^2 rebuilt from the
  /// deltas: (2(delta1 - delta2 - C_r(A)) - (n-1) sum C_r(AB_k)) / (2(n+1) ln 2).
  double normalized_pair_delta_from_deltas() const;
  /// Normalized C_r(AB)/ln d^{n+1} - sum C_r(A Bbar_k)/ln d^n rebuilt as
  /// (n(delta3 - delta4) - sum C_r(A Bbar_k) - n(n-2) C_r(AB)) / (n(n+1) ln 2).
  double normalized_complement_delta_from_deltas() const;
};

TheoremOneQuantities theorem1_quantities(const DensityMatrix& rho, int pivot = 0);

/// Closed-form Dicke additivity deltas for the n-qubit state |D_{n,r}> with
/// pivot plus n-1 partners. Supports L1 and RelativeEntropy (raw in bits).
/// Throws OutOfRegime unless n >= 3 and 1 <= r <= n-1.
double dicke_delta_closed_form(int n, int r, CoherenceMeasure measure, bool normalized);

/// Builds the n-qubit generalized GHZ X state and scores it with pivot 0.
AdditivityReport xstate_additivity_check(int n, Complex alpha, Complex beta, double p,
                                         const CoherenceKind& kind);

}  // namespace qcoh
