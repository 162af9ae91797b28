#include <doctest.h>

#include <cmath>
#include <vector>

#include "qcoh/errors.hpp"
#include "qcoh/linalg.hpp"
#include "qcoh/states.hpp"
#include "test_support.hpp"

using namespace qcoh;
using qcoh::testing::gaussian_matrix;
using qcoh::testing::ket_bra;
using qcoh::testing::max_abs_diff;
using qcoh::testing::random_hermitian;
using qcoh::testing::random_state;

namespace {

// Independent partial trace: rho_keep = sum_t (I (x) <t|) rho (I (x) |t>) after
// permuting kept qubits to the front with explicit basis vectors.
ComplexMatrix partial_trace_oracle(const ComplexMatrix& rho, const std::vector<int>& keep) {
  const int n = qubit_count(rho.rows());
  std::vector<int> order = keep;
  for (int q = 0; q < n; ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) order.push_back(q);
  }
  const int d = static_cast<int>(rho.rows());
  // Permutation operator P |b_0 ... b_{n-1}> = |b_order[0] ... b_order[n-1]>.
  ComplexMatrix perm = ComplexMatrix::Zero(d, d);
  for (int in = 0; in < d; ++in) {
    int out = 0;
    for (int pos = 0; pos < n; ++pos) {
      const int bit = (in >> (n - 1 - order[pos])) & 1;
      out |= bit << (n - 1 - pos);
    }
    perm(out, in) = 1.0;
  }
  const ComplexMatrix moved = perm * rho * perm.adjoint();
  const int dk = 1 << keep.size();
  const int dt = d / dk;
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (int t = 0; t < dt; ++t) {
    ComplexMatrix bra = ComplexMatrix::Zero(1, dt);
    bra(0, t) = 1.0;
    const ComplexMatrix projector = kron(ComplexMatrix::Identity(dk, dk), bra);
    out += projector * moved * projector.adjoint();
  }
  return out;
}

}  // namespace

TEST_CASE("hermitian_eig on the documented examples") {
  const Spectrum id = hermitian_eig(ComplexMatrix::Identity(2, 2));
  CHECK(id.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(id.eigenvalues[1] == doctest::Approx(1.0));

  ComplexMatrix diag = ComplexMatrix::Zero(4, 4);
  diag.diagonal() << 0.664, 0.336, 0.0, 0.0;
  const RealVector lambda = hermitian_eig(diag).eigenvalues;
  CHECK(lambda[0] == doctest::Approx(0.664));
  CHECK(lambda[1] == doctest::Approx(0.336));
  CHECK(std::abs(lambda[2]) < 1e-15);
  CHECK(std::abs(lambda[3]) < 1e-15);

  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const RealVector px = hermitian_eig(x).eigenvalues;
  CHECK(px[0] == doctest::Approx(1.0));
  CHECK(px[1] == doctest::Approx(-1.0));
}

TEST_CASE("hermitian_eig rejects bad input") {
  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix::Zero(2, 3)), NonSquare);
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eig(a), NonHermitian);
  a(1, 0) = 1.0 + 5e-11;
  CHECK_NOTHROW(hermitian_eig(a));
}

TEST_CASE("Spectrum reconstructs random Hermitian matrices") {
  std::mt19937_64 gen(11);
  for (int d : {2, 3, 5, 8, 16, 32}) {
    const ComplexMatrix a = random_hermitian(d, gen);
    const Spectrum s = hermitian_eig(a);
    const ComplexMatrix& v = s.eigenvectors;
    CHECK(max_abs_diff(v * s.eigenvalues.asDiagonal() * v.adjoint(), a) <= 1e-10);
    CHECK(max_abs_diff(v.adjoint() * v, ComplexMatrix::Identity(d, d)) <= 1e-10);
    for (int i = 1; i < d; ++i) CHECK(s.eigenvalues[i - 1] >= s.eigenvalues[i]);
  }
}

TEST_CASE("matrix_fn_psd examples") {
  const ComplexMatrix half = ComplexMatrix::Identity(2, 2) / 2.0;
  const auto sqrt_fn = [](double x) { return std::sqrt(x); };
  CHECK(max_abs_diff(matrix_fn_psd(half, sqrt_fn), ComplexMatrix::Identity(2, 2) / std::sqrt(2.0)) <
        1e-14);

  ComplexVector psi(3);
  psi << Complex(0.6, 0.0), Complex(0.0, 0.8), 0.0;
  const ComplexMatrix projector = psi * psi.adjoint();
  CHECK(max_abs_diff(matrix_fn_psd(projector, sqrt_fn), projector) < 1e-12);

  const ComplexMatrix entropy_density = matrix_fn_psd(half, xlogx);
  CHECK(entropy_density(0, 0).real() == doctest::Approx(0.5 * std::log(0.5)));
  CHECK(entropy_density(1, 1).real() == doctest::Approx(0.5 * std::log(0.5)));
  CHECK(std::abs(entropy_density(0, 1)) < 1e-15);
  CHECK(xlogx(0.0) == 0.0);
}

TEST_CASE("matrix_fn_psd: sqrt squared reproduces A; negatives are rejected") {
  std::mt19937_64 gen(12);
  for (int d : {2, 4, 8}) {
    const ComplexMatrix a = random_state(d, d, gen).matrix();
    const ComplexMatrix root = matrix_fn_psd(a, [](double x) { return std::sqrt(x); });
    CHECK(max_abs_diff(root * root, a) <= 1e-8);
  }
  ComplexMatrix neg = ComplexMatrix::Identity(2, 2);
  neg(1, 1) = -1e-6;
  CHECK_THROWS_AS(matrix_fn_psd(neg, [](double x) { return x; }), NotPSD);
  neg(1, 1) = -1e-11;
  CHECK_NOTHROW(matrix_fn_psd(neg, [](double x) { return x; }));
}

TEST_CASE("kron") {
  CHECK(max_abs_diff(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)),
                     ComplexMatrix::Identity(4, 4)) == 0.0);
  CHECK(max_abs_diff(kron(ket_bra(2, 0, 0), ket_bra(2, 1, 1)), ket_bra(4, 1, 1)) == 0.0);

  std::mt19937_64 gen(13);
  const ComplexMatrix a = gaussian_matrix(2, 2, gen);
  const ComplexMatrix b = gaussian_matrix(2, 2, gen);
  const ComplexMatrix c = gaussian_matrix(2, 2, gen);
  CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-13);
}

TEST_CASE("partial_trace examples") {
  const int keep0[] = {0};
  const ComplexMatrix reduced = partial_trace(ket_bra(4, 0, 0), keep0);
  CHECK(max_abs_diff(reduced, ket_bra(2, 0, 0)) == 0.0);

  const double a = 1.0 / std::sqrt(2.0);
  const ComplexMatrix ghz = gghz_x_state(3, a, a, 1.0).matrix();
  const int keep01[] = {0, 1};
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  CHECK(max_abs_diff(partial_trace(ghz, keep01), expected) < 1e-15);
  CHECK(max_abs_diff(partial_trace_oracle(ghz, {0, 1}), expected) < 1e-15);

  // |D_{3,1}> on qubits {0,1}: (|00><00| + |01><01| + |10><10| + (|01>+|10>)(<01|+<10|) ... )/3
  const ComplexMatrix d31 = dicke(3, 1).density().matrix();
  const ComplexMatrix pair = partial_trace(d31, keep01);
  CHECK(pair(0, 0).real() == doctest::Approx(1.0 / 3));
  CHECK(pair(1, 1).real() == doctest::Approx(1.0 / 3));
  CHECK(pair(2, 2).real() == doctest::Approx(1.0 / 3));
  CHECK(std::abs(pair(3, 3)) < 1e-15);
  CHECK(pair(1, 2).real() == doctest::Approx(1.0 / 3));
  CHECK(pair(2, 1).real() == doctest::Approx(1.0 / 3));
  CHECK(std::abs(pair(0, 3)) < 1e-15);
}

TEST_CASE("partial_trace agrees with the projector oracle, preserves trace and PSD") {
  std::mt19937_64 gen(14);
  const std::vector<std::vector<int>> keeps = {{0}, {2}, {0, 2}, {2, 0}, {1, 3}, {3, 1, 0}, {0, 1, 2, 3}};
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix rho = random_state(16, 1 + trial % 4, gen).matrix();
    for (const auto& keep : keeps) {
      const ComplexMatrix fast = partial_trace(rho, keep);
      CHECK(max_abs_diff(fast, partial_trace_oracle(rho, keep)) < 1e-14);
      CHECK(std::abs(fast.trace() - Complex(1.0)) < 1e-12);
      CHECK(hermitian_eigenvalues(fast).minCoeff() >= -1e-10);
    }
  }
  const std::vector<int> all = {0, 1, 2, 3};
  const ComplexMatrix rho = random_state(16, 3, gen).matrix();
  CHECK(max_abs_diff(partial_trace(rho, all), rho) == 0.0);
}

TEST_CASE("partial_trace rejects bad subsystems") {
  const ComplexMatrix rho = ComplexMatrix::Identity(8, 8) / 8.0;
  const int out_of_range[] = {3};
  const int duplicate[] = {1, 1};
  const int negative[] = {-1};
  CHECK_THROWS_AS(partial_trace(rho, out_of_range), BadSubsystem);
  CHECK_THROWS_AS(partial_trace(rho, duplicate), BadSubsystem);
  CHECK_THROWS_AS(partial_trace(rho, negative), BadSubsystem);
  CHECK_THROWS_AS(partial_trace(rho, std::span<const int>{}), BadSubsystem);
  const int keep0[] = {0};
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(3, 3) / 3.0, keep0), BadSubsystem);
}

TEST_CASE("fidelity examples and properties") {
  std::mt19937_64 gen(15);
  const ComplexMatrix rho = random_state(4, 2, gen).matrix();
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fidelity(ket_bra(2, 0, 0), ket_bra(2, 1, 1)) == doctest::Approx(0.0));
  CHECK_THROWS_AS(fidelity(ket_bra(2, 0, 0), ket_bra(4, 0, 0)), DimensionMismatch);

  for (int d : {2, 3, 5, 8}) {
    const ComplexMatrix pure = random_state(d, 1, gen).matrix();
    const ComplexMatrix mixed = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    CHECK(fidelity(pure, mixed) == doctest::Approx(1.0 / d).epsilon(1e-10));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 7;
    const ComplexMatrix a = random_state(d, 1 + trial % d, gen).matrix();
    const ComplexMatrix b = random_state(d, 1 + (trial / 2) % d, gen).matrix();
    const double fab = fidelity(a, b);
    CHECK(fab >= 0.0);
    CHECK(fab <= 1.0 + 1e-10);
    CHECK(std::abs(fab - fidelity(b, a)) <= 1e-8);

    double trace_root = 0.0;
    for (double l : hermitian_eigenvalues(a)) trace_root += l > 1e-14 ? std::sqrt(l) : 0.0;
    const ComplexMatrix mixed = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    CHECK(std::abs(fidelity(a, mixed) - trace_root * trace_root / d) <= 1e-8);
  }
}

TEST_CASE("gellmann_basis: d = 2 gives the Pauli matrices") {
  const GeneratorBasis b = gellmann_basis(2);
  REQUIRE(b.generators.size() == 3);
  ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  CHECK(max_abs_diff(b.generators[0], sx) == 0.0);
  CHECK(max_abs_diff(b.generators[1], sy) == 0.0);
  CHECK(max_abs_diff(b.generators[2], sz) == 0.0);
}

TEST_CASE("gellmann_basis invariants") {
  for (int d = 2; d <= 6; ++d) {
    const GeneratorBasis b = gellmann_basis(d);
    REQUIRE(static_cast<int>(b.generators.size()) == d * d - 1);
    for (std::size_t i = 0; i < b.generators.size(); ++i) {
      const ComplexMatrix& g = b.generators[i];
      CHECK(max_abs_diff(g, g.adjoint()) <= 1e-12);
      CHECK(std::abs(g.trace()) <= 1e-12);
      for (std::size_t j = 0; j < b.generators.size(); ++j) {
        const Complex overlap = (g * b.generators[j]).trace();
        CHECK(std::abs(overlap - Complex(i == j ? 2.0 : 0.0)) <= 1e-12);
      }
    }
  }
  CHECK_THROWS(gellmann_basis(1));
}

TEST_CASE("qutrit layout follows the symmetric / antisymmetric / diagonal ordering") {
  // rho = I/3 + (1/2) sum x_i G_i puts (x1 - i x4)/2 at (0,1), (x2 - i x5)/2 at
  // (0,2), (x3 - i x6)/2 at (1,2) and 1/3 + (x7 + x8/sqrt3)/2 at (0,0).
  BlochVector x{3, RealVector(8)};
  x.coords << 0.11, -0.07, 0.05, 0.03, 0.09, -0.02, 0.04, -0.06;
  const ComplexMatrix rho = bloch_reconstruct(x);
  const auto& v = x.coords;
  const double s3 = std::sqrt(3.0);
  CHECK(std::abs(rho(0, 1) - 0.5 * Complex(v[0], -v[3])) < 1e-15);
  CHECK(std::abs(rho(0, 2) - 0.5 * Complex(v[1], -v[4])) < 1e-15);
  CHECK(std::abs(rho(1, 2) - 0.5 * Complex(v[2], -v[5])) < 1e-15);
  CHECK(std::abs(rho(1, 0) - 0.5 * Complex(v[0], v[3])) < 1e-15);
  CHECK(rho(0, 0).real() == doctest::Approx(1.0 / 3 + 0.5 * (v[6] + v[7] / s3)));
  CHECK(rho(1, 1).real() == doctest::Approx(1.0 / 3 + 0.5 * (-v[6] + v[7] / s3)));
  CHECK(rho(2, 2).real() == doctest::Approx(1.0 / 3 - v[7] / s3));
  const RealVector back = bloch_coords(rho).coords;
  CHECK((back - v).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("bloch_coords matches Tr(rho G_i) and round-trips") {
  std::mt19937_64 gen(16);
  const ComplexMatrix mixed = ComplexMatrix::Identity(5, 5) / 5.0;
  CHECK(bloch_coords(mixed).coords.cwiseAbs().maxCoeff() == 0.0);

  for (int d : {2, 3, 4, 8}) {
    const GeneratorBasis basis = gellmann_basis(d);
    for (int trial = 0; trial < 100; ++trial) {
      const ComplexMatrix rho = random_state(d, 1 + trial % d, gen).matrix();
      const BlochVector x = bloch_coords(rho);
      if (trial < 10) {
        for (std::size_t i = 0; i < basis.generators.size(); ++i) {
          const double direct = (rho * basis.generators[i]).trace().real();
          CHECK(std::abs(direct - x.coords[static_cast<Eigen::Index>(i)]) < 1e-13);
        }
      }
      CHECK(max_abs_diff(bloch_reconstruct(x), rho) <= 1e-10);
    }
  }
}

TEST_CASE("l1 coherence and mixedness from Bloch coordinates") {
  std::mt19937_64 gen(17);
  const int d = 8;
  const int pairs = d * (d - 1) / 2;
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix rho = random_state(d, 1 + trial % d, gen).matrix();
    const RealVector x = bloch_coords(rho).coords;
    double from_bloch = 0.0;
    for (int i = 0; i < pairs; ++i) from_bloch += std::hypot(x[i], x[i + pairs]);
    const double direct = rho.cwiseAbs().sum() - rho.diagonal().cwiseAbs().sum();
    CHECK(std::abs(from_bloch - direct) <= 1e-10);

    const double ml_bloch = 1.0 - d / (2.0 * (d - 1)) * x.squaredNorm();
    const double ml_direct = d / (d - 1.0) * (1.0 - (rho * rho).trace().real());
    CHECK(std::abs(ml_bloch - ml_direct) <= 1e-10);
  }
}
