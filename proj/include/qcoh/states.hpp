#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "qcoh/linalg.hpp"
#include "qcoh/rng.hpp"

namespace qcoh {

inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-12;
// The literal two-qubit counterexample is printed to four decimals.
inline constexpr double kPrintedStateTolerance = 5e-4;

/// Outcome of checking the density-matrix invariants. `worst` names the
/// largest violation when the check fails.
struct ValidationReport {
  bool ok = false;
  double hermiticity_defect = 0.0;
  double trace_defect = 0.0;
  double min_eigenvalue = 0.0;
  double purity = 0.0;
  std::string worst;
};

ValidationReport validate(const ComplexMatrix& m, double tolerance = kStateTolerance);

class PureState;

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  /// Validates and throws ValidationError with the diagnostics on failure.
  static DensityMatrix from_matrix(ComplexMatrix m, double tolerance = kStateTolerance);

  /// Skips validation. For results of operations that preserve the invariants
  /// (partial traces, dephasing, convex mixtures of valid states).
  static DensityMatrix trusted(ComplexMatrix m) { return DensityMatrix(std::move(m)); }

  static DensityMatrix maximally_mixed(int d);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  /// Number of qubits; throws DimensionMismatch when dim is not a power of two.
  int num_qubits() const;
  const ComplexMatrix& matrix() const { return matrix_; }
  Complex operator()(int i, int j) const { return matrix_(i, j); }

  /// Diagonal part in the computational basis.
  DensityMatrix dephased() const;
  DensityMatrix reduce(std::span<const int> keep) const;
  double purity() const;

 private:
  explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

/// Normalized amplitude vector.
class PureState {
 public:
  /// Throws BadAmplitudes unless sum |c_i|^2 = 1 within kNormTolerance.
  static PureState from_amplitudes(ComplexVector amplitudes);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  DensityMatrix density() const;
  /// Reduced density matrix on `keep` without forming the full projector.
  DensityMatrix reduce(std::span<const int> keep) const;

 private:
  explicit PureState(ComplexVector a) : amplitudes_(std::move(a)) {}
  ComplexVector amplitudes_;
};

struct RandomStateSpec {
  int n_qubits = 1;
  int rank = 1;
  std::uint64_t seed = 0;
};

/// |psi_d> = d^{-1/2} sum_i |i>.
PureState maximally_coherent(int d);

/// Symmetric n-qubit state with r excitations.
PureState dicke(int n, int r);

/// p |gGHZ><gGHZ| + (1-p) I/d with |gGHZ> = alpha|0...0> + beta|1...1>.
DensityMatrix gghz_x_state(int n, Complex alpha, Complex beta, double p);

/// Literal two-qubit rank-2 state that breaks C_r/ln d + M_l <= 1.
DensityMatrix paper_violation_state();

/// rho = G G^dag / Tr(G G^dag) with G a 2^n x rank complex Gaussian matrix.
DensityMatrix random_rank_r(const RandomStateSpec& spec);

/// Same construction for an arbitrary dimension, drawing from `rng`.
DensityMatrix random_density(int dim, int rank, Rng& rng);

/// Haar-random pure state of dimension `dim`.
PureState random_pure(int dim, Rng& rng);

/// Text format: first line d, then d^2 lines "re im" in row-major order.
DensityMatrix read_state_text(std::istream& in);
DensityMatrix read_state_file(const std::string& path);
void write_state_text(std::ostream& out, const ComplexMatrix& m);

/// Named states: eq11, mcs:<d>, dicke:<n>,<r>, ghzx:<n>,<p>.
DensityMatrix named_state(std::string_view name);

}  // namespace qcoh
