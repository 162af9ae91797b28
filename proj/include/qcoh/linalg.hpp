#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qcoh {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Symmetry tolerance accepted by the Hermitian routines (max |A - A^dag| entry).
inline constexpr double kHermitianTolerance = 1e-10;
// Eigenvalues down to -kClipTolerance are treated as round-off and clipped to zero.
inline constexpr double kClipTolerance = 1e-10;

// Eigenvalues within kNoiseFloor * max(1, |lambda_max|) of zero are round-off
// and are zeroed before sqrt-like functions (sqrt(1e-16) would leak 1e-8).
inline constexpr double kNoiseFloor = 1e-14;

/// Eigendecomposition of a Hermitian matrix. Eigenvalues are sorted in
/// descending order and column k of `eigenvectors` belongs to eigenvalue k.
struct Spectrum {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Largest entry of |A - A^dag|. Throws NonSquare for rectangular input.
double hermiticity_defect(const ComplexMatrix& a);

Spectrum hermitian_eig(const ComplexMatrix& a);

/// Eigenvalues only, descending. Same checks as hermitian_eig.
RealVector hermitian_eigenvalues(const ComplexMatrix& a);

/// V f(Λ) V^dag for a PSD Hermitian matrix. Eigenvalues are clipped to
/// [0, inf) before f is applied; throws NotPSD below -kClipTolerance.
ComplexMatrix matrix_fn_psd(const ComplexMatrix& a, const std::function<double(double)>& f);

/// Clips a spectrum to [0, inf) and zeroes round-off. Throws NotPSD if an
/// eigenvalue is below -kClipTolerance.
RealVector clip_spectrum(const RealVector& eigenvalues);

/// sum_i sqrt(lambda_i) over the clipped spectrum, i.e. Tr sqrt(A).
double trace_sqrt(const RealVector& eigenvalues);

/// x ln x with the 0 ln 0 = 0 convention.
double xlogx(double x);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Number of qubits n with 2^n == dim, or -1 when dim is not a power of two.
int qubit_count(Eigen::Index dim);

/// Reduced operator on the qubits listed in `keep` (output factor order
/// follows `keep`). Qubit 0 is the most significant tensor factor.
ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const int> keep);

/// Uhlmann fidelity (Tr sqrt(sqrt(sigma) rho sqrt(sigma)))^2, clamped to [0, 1].
double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Generalized Gell-Mann generators of SU(d). Order: the (d^2-d)/2 symmetric
/// off-diagonal generators, then the antisymmetric ones, then the d-1
/// diagonal ones. Off-diagonal pairs (j<k) run lexicographically.
struct GeneratorBasis {
  int dimension = 0;
  std::vector<ComplexMatrix> generators;
};

GeneratorBasis gellmann_basis(int d);

/// Generalized Bloch vector x_i = Tr(rho G_i) in GeneratorBasis order.
struct BlochVector {
  int dimension = 0;
  RealVector coords;
};

/// Computed directly from matrix entries in O(d^2); agrees with Tr(rho G_i).
BlochVector bloch_coords(const ComplexMatrix& rho);

/// rho = I/d + (1/2) sum_i x_i G_i.
ComplexMatrix bloch_reconstruct(const BlochVector& x);

}  // namespace qcoh
