#include "qcoh/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcoh/errors.hpp"

namespace qcoh {

namespace {

void require_square(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw NonSquare("expected a square matrix, got " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()));
  }
}

void require_hermitian(const ComplexMatrix& a) {
  const double defect = hermiticity_defect(a);
  if (defect > kHermitianTolerance) {
    throw NonHermitian("matrix is not Hermitian (max |A - A^dag| = " + std::to_string(defect) +
                       ")");
  }
}

// Eigen returns ascending order; every caller here wants descending.
Spectrum solve(const ComplexMatrix& a, bool with_vectors) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      a, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  Spectrum s;
  s.eigenvalues = solver.eigenvalues().reverse();
  if (with_vectors) {
    s.eigenvectors = solver.eigenvectors().rowwise().reverse();
  }
  return s;
}

}  // namespace

double hermiticity_defect(const ComplexMatrix& a) {
  require_square(a);
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

Spectrum hermitian_eig(const ComplexMatrix& a) {
  require_hermitian(a);
  return solve(a, true);
}

RealVector hermitian_eigenvalues(const ComplexMatrix& a) {
  require_hermitian(a);
  return solve(a, false).eigenvalues;
}

RealVector clip_spectrum(const RealVector& eigenvalues) {
  if (eigenvalues.size() == 0) return eigenvalues;
  const double floor = kNoiseFloor * std::max(1.0, eigenvalues.cwiseAbs().maxCoeff());
  RealVector clipped(eigenvalues.size());
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double lambda = eigenvalues[i];
    if (lambda < -kClipTolerance) {
      throw NotPSD("eigenvalue " + std::to_string(lambda) + " below clipping tolerance");
    }
    clipped[i] = lambda > floor ? lambda : 0.0;
  }
  return clipped;
}

double trace_sqrt(const RealVector& eigenvalues) {
  return clip_spectrum(eigenvalues).cwiseSqrt().sum();
}

ComplexMatrix matrix_fn_psd(const ComplexMatrix& a, const std::function<double(double)>& f) {
  const Spectrum s = hermitian_eig(a);
  const RealVector clipped = clip_spectrum(s.eigenvalues);
  RealVector mapped(clipped.size());
  for (Eigen::Index i = 0; i < clipped.size(); ++i) mapped[i] = f(clipped[i]);
  return s.eigenvectors * mapped.asDiagonal() * s.eigenvectors.adjoint();
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

int qubit_count(Eigen::Index dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0) return -1;
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const int> keep) {
  require_square(rho);
  const int n = qubit_count(rho.rows());
  if (n < 0) throw BadSubsystem("dimension " + std::to_string(rho.rows()) + " is not 2^n");
  if (keep.empty()) throw BadSubsystem("keep set is empty");

  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int q : keep) {
    if (q < 0 || q >= n) throw BadSubsystem("qubit index " + std::to_string(q) + " out of range");
    if (kept[static_cast<std::size_t>(q)]) {
      throw BadSubsystem("qubit index " + std::to_string(q) + " listed twice");
    }
    kept[static_cast<std::size_t>(q)] = true;
  }

  const int k = static_cast<int>(keep.size());
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (!kept[static_cast<std::size_t>(q)]) traced.push_back(q);
  }

  // Scatter each reduced index onto the full register; qubit q sits at bit n-1-q.
  auto scatter = [n](std::span<const int> qubits, std::size_t index) {
    std::size_t full = 0;
    const std::size_t m = qubits.size();
    for (std::size_t pos = 0; pos < m; ++pos) {
      if ((index >> (m - 1 - pos)) & 1U) full |= std::size_t{1} << (n - 1 - qubits[pos]);
    }
    return full;
  };

  const std::size_t dk = std::size_t{1} << k;
  const std::size_t dt = std::size_t{1} << traced.size();
  std::vector<std::size_t> kept_offsets(dk);
  std::vector<std::size_t> traced_offsets(dt);
  for (std::size_t a = 0; a < dk; ++a) kept_offsets[a] = scatter(keep, a);
  for (std::size_t t = 0; t < dt; ++t) traced_offsets[t] = scatter(traced, t);

  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t a = 0; a < dk; ++a) {
    for (std::size_t b = 0; b < dk; ++b) {
      Complex sum = 0.0;
      for (std::size_t t = 0; t < dt; ++t) {
        sum += rho(static_cast<Eigen::Index>(kept_offsets[a] | traced_offsets[t]),
                   static_cast<Eigen::Index>(kept_offsets[b] | traced_offsets[t]));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = sum;
    }
  }
  return out;
}

double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  require_square(rho);
  require_square(sigma);
  if (rho.rows() != sigma.rows()) {
    throw DimensionMismatch("fidelity between dimensions " + std::to_string(rho.rows()) + " and " +
                            std::to_string(sigma.rows()));
  }
  const ComplexMatrix root = matrix_fn_psd(sigma, [](double x) { return std::sqrt(x); });
  ComplexMatrix inner = root * rho * root;
  inner = 0.5 * (inner + inner.adjoint()).eval();
  // `inner` is PSD up to round-off amplified by the products above.
  const RealVector lambda = hermitian_eigenvalues(inner).cwiseMax(0.0);
  const double trace_root = trace_sqrt(lambda);
  return std::clamp(trace_root * trace_root, 0.0, 1.0);
}

GeneratorBasis gellmann_basis(int d) {
  if (d < 2) throw std::invalid_argument("gellmann_basis: d must be >= 2");
  GeneratorBasis basis;
  basis.dimension = d;
  basis.generators.reserve(static_cast<std::size_t>(d * d - 1));

  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      g(j, k) = 1.0;
      g(k, j) = 1.0;
      basis.generators.push_back(std::move(g));
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      g(j, k) = Complex(0.0, -1.0);
      g(k, j) = Complex(0.0, 1.0);
      basis.generators.push_back(std::move(g));
    }
  }
  for (int l = 1; l < d; ++l) {
    const double c = std::sqrt(2.0 / (l * (l + 1.0)));
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < l; ++j) g(j, j) = c;
    g(l, l) = -c * l;
    basis.generators.push_back(std::move(g));
  }
  return basis;
}

BlochVector bloch_coords(const ComplexMatrix& rho) {
  require_square(rho);
  const int d = static_cast<int>(rho.rows());
  const int pairs = d * (d - 1) / 2;
  BlochVector x;
  x.dimension = d;
  x.coords = RealVector::Zero(d * d - 1);
  int p = 0;
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k, ++p) {
      x.coords[p] = 2.0 * rho(j, k).real();
      x.coords[pairs + p] = -2.0 * rho(j, k).imag();
    }
  }
  double prefix = 0.0;
  for (int l = 1; l < d; ++l) {
    prefix += rho(l - 1, l - 1).real();
    const double c = std::sqrt(2.0 / (l * (l + 1.0)));
    x.coords[2 * pairs + l - 1] = c * (prefix - l * rho(l, l).real());
  }
  return x;
}

ComplexMatrix bloch_reconstruct(const BlochVector& x) {
  const int d = x.dimension;
  if (d < 1 || x.coords.size() != d * d - 1) {
    throw DimensionMismatch("Bloch vector length does not match d^2 - 1");
  }
  const int pairs = d * (d - 1) / 2;
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  int p = 0;
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k, ++p) {
      rho(j, k) = 0.5 * Complex(x.coords[p], -x.coords[pairs + p]);
      rho(k, j) = std::conj(rho(j, k));
    }
  }
  for (int j = 0; j < d; ++j) rho(j, j) = 1.0 / d;
  for (int l = 1; l < d; ++l) {
    const double half = 0.5 * x.coords[2 * pairs + l - 1] * std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) rho(j, j) += half;
    rho(l, l) -= half * l;
  }
  return rho;
}

}  // namespace qcoh
