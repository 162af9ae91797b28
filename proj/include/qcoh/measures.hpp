#pragma once

#include <string>
#include <string_view>

#include "qcoh/states.hpp"

namespace qcoh {

enum class Base { Nats, Bits };

/// ln b for the requested base.
double log_of_base(Base base);

enum class CoherenceMeasure { L1, L2, RelativeEntropy, Geometric };

/// A coherence functional with an optional normalization and power.
/// L2 is not known to be monotone under incoherent operations; it is
/// accepted for the trade-off and additivity studies only.
struct CoherenceKind {
  CoherenceMeasure measure = CoherenceMeasure::L1;
  bool normalized = false;
  int power = 1;

  bool proven_monotone() const { return measure != CoherenceMeasure::L2; }
};

enum class MixednessMeasure { LinearEntropy, VonNeumann, Geometric };

struct MixednessKind {
  MixednessMeasure measure = MixednessMeasure::LinearEntropy;
  Base base = Base::Nats;
};

// Largest off-diagonal magnitude at which a state still counts as incoherent.
inline constexpr double kIncoherenceThreshold = 1e-12;

bool is_incoherent(const DensityMatrix& rho);

double c_l1(const DensityMatrix& rho);
double c_l2(const DensityMatrix& rho);

/// S(diag rho) - S(rho).
double c_r(const DensityMatrix& rho, Base base = Base::Nats);

/// Shannon entropy of a probability vector; entries within round-off of zero
/// (or slightly negative) contribute nothing.
double shannon_entropy(const RealVector& p, Base base = Base::Nats);

double entropy_vn(const DensityMatrix& rho, Base base = Base::Nats);

/// Normalized linear entropy. Throws DimensionOne for d = 1.
double m_l(const DensityMatrix& rho);

/// F(rho, I/d) = (Tr sqrt rho)^2 / d.
double m_g(const DensityMatrix& rho);

struct GeometricSearchOptions {
  double step = 1e-6;            // central-difference step
  double tolerance = 1e-10;      // stop once an accepted step improves less than this
  int max_iterations = 10'000;
};

struct GeometricSearchResult {
  double max_fidelity = 0.0;     // max over diagonal sigma of F(rho, sigma)
  RealVector weights;            // the maximizing diagonal
  int iterations = 0;
  double start_fidelity = 0.0;   // best of diag(rho), uniform, and the vertices
};

/// Maximizes F(rho, diag(q)) over the probability simplex by projected
/// gradient ascent. Throws OptimizerNotConverged if the iteration cap is hit.
GeometricSearchResult geometric_coherence_search(const DensityMatrix& rho,
                                                 const GeometricSearchOptions& options = {});

/// 1 - max_sigma F(rho, sigma) over incoherent sigma. Pure inputs use
/// 1 - max_i |<i|psi>|^2; mixed inputs run geometric_coherence_search.
double c_g(const DensityMatrix& rho);

/// F(rho, diag(q)) for a weight vector q on the simplex.
double fidelity_to_diagonal(const DensityMatrix& rho, const RealVector& q);

/// Projection onto {q : q_i >= 0, sum q_i = 1} in Euclidean norm.
RealVector project_to_simplex(const RealVector& v);

/// Raw value of the measure (relative entropy in `base`).
double coherence(const DensityMatrix& rho, CoherenceMeasure measure, Base base = Base::Nats);

// Pure-state shortcuts: C_l1 = (sum |c_i|)^2 - 1, C_l2^2 = 1 - sum |c_i|^4,
// C_r = H(|c_i|^2), C_g = 1 - max |c_i|^2.
double c_l1(const PureState& psi);
double c_l2(const PureState& psi);
double c_r(const PureState& psi, Base base = Base::Nats);
double c_g(const PureState& psi);
double coherence(const PureState& psi, CoherenceMeasure measure, Base base = Base::Nats);

/// Value a fully coherent d-level state reaches: d-1, sqrt(1-1/d), log d, 1-1/d.
double coherence_scale(CoherenceMeasure measure, int d, Base base = Base::Nats);

double mixedness(const DensityMatrix& rho, const MixednessKind& kind);

/// Left-hand side of a coherence/mixedness trade-off relation:
///   (L1^2, *)  C_l1^2 / (d-1)^2
///   (L2^2, M_l) C_l2^2 / (1 - 1/d)
///   (C_r, *)   C_r / ln d
///   (C_g, M_g) C_g
/// plus M_l, S / ln d, or M_g. L1 and L2 need power 2, the others power 1.
/// Throws UnknownCombination for pairs outside the studied set.
double tradeoff(const DensityMatrix& rho, const CoherenceKind& coherence,
                const MixednessKind& mixedness);

std::string to_string(CoherenceMeasure m);
std::string to_string(MixednessMeasure m);
/// Parses "l1", "l2", "cr", "cg".
CoherenceMeasure parse_coherence_measure(std::string_view s);
/// Parses "ml", "s", "mg".
MixednessMeasure parse_mixedness_measure(std::string_view s);

}  // namespace qcoh
