#pragma once

#include <random>

#include "qcoh/linalg.hpp"
#include "qcoh/states.hpp"

namespace qcoh::testing {

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Test-side generators use std::normal_distribution so they never share a
// code path with the library sampler.
inline ComplexMatrix gaussian_matrix(int rows, int cols, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(normal(gen), normal(gen));
  }
  return g;
}

inline ComplexMatrix random_hermitian(int d, std::mt19937_64& gen) {
  const ComplexMatrix g = gaussian_matrix(d, d, gen);
  return 0.5 * (g + g.adjoint());
}

inline DensityMatrix random_state(int d, int rank, std::mt19937_64& gen) {
  const ComplexMatrix g = gaussian_matrix(d, rank, gen);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::trusted(0.5 * (rho + rho.adjoint()));
}

inline ComplexMatrix ket_bra(int d, int i, int j) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

}  // namespace qcoh::testing
