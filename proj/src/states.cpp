#include "qcoh/states.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "qcoh/errors.hpp"

namespace qcoh {

ValidationReport validate(const ComplexMatrix& m, double tolerance) {
  ValidationReport report;
  if (m.rows() != m.cols() || m.rows() == 0) {
    report.worst = "matrix is not square";
    return report;
  }
  report.hermiticity_defect = hermiticity_defect(m);
  report.trace_defect = std::abs(m.trace() - Complex(1.0, 0.0));
  const ComplexMatrix hermitian_part = 0.5 * (m + m.adjoint());
  report.min_eigenvalue = hermitian_eigenvalues(hermitian_part).minCoeff();
  report.purity = (m * m).trace().real();

  struct Violation {
    double excess;
    std::string what;
  };
  std::vector<Violation> violations;
  auto fmt = [](double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
  };
  if (report.hermiticity_defect > tolerance) {
    violations.push_back({report.hermiticity_defect, "not Hermitian: max |A - A^dag| = " +
                                                         fmt(report.hermiticity_defect)});
  }
  if (report.trace_defect > tolerance) {
    violations.push_back({report.trace_defect, "trace " + fmt(m.trace().real())});
  }
  if (report.min_eigenvalue < -tolerance) {
    violations.push_back(
        {-report.min_eigenvalue, "negative eigenvalue " + fmt(report.min_eigenvalue)});
  }
  // For unit-trace Hermitian input purity > 1 already implies a negative
  // eigenvalue, so it only surfaces on its own.
  if (violations.empty() && report.purity > 1.0 + tolerance) {
    violations.push_back({report.purity - 1.0, "purity " + fmt(report.purity) + " exceeds 1"});
  }
  if (violations.empty()) {
    report.ok = true;
    return report;
  }
  report.worst = std::max_element(violations.begin(), violations.end(),
                                  [](const Violation& a, const Violation& b) {
                                    return a.excess < b.excess;
                                  })
                     ->what;
  return report;
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, double tolerance) {
  const ValidationReport report = validate(m, tolerance);
  if (!report.ok) throw ValidationError("invalid density matrix: " + report.worst);
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int d) {
  if (d < 1) throw DimensionMismatch("dimension must be positive");
  return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

int DensityMatrix::num_qubits() const {
  const int n = qubit_count(matrix_.rows());
  if (n < 0) throw DimensionMismatch("dimension " + std::to_string(dim()) + " is not 2^n");
  return n;
}

DensityMatrix DensityMatrix::dephased() const {
  return DensityMatrix(ComplexMatrix(matrix_.diagonal().asDiagonal()));
}

DensityMatrix DensityMatrix::reduce(std::span<const int> keep) const {
  return DensityMatrix(partial_trace(matrix_, keep));
}

double DensityMatrix::purity() const { return matrix_.cwiseAbs2().sum(); }

PureState PureState::from_amplitudes(ComplexVector amplitudes) {
  const double norm = amplitudes.squaredNorm();
  if (amplitudes.size() == 0 || std::abs(norm - 1.0) > kNormTolerance) {
    throw BadAmplitudes("amplitudes have squared norm " + std::to_string(norm));
  }
  return PureState(std::move(amplitudes));
}

DensityMatrix PureState::density() const {
  return DensityMatrix::trusted(amplitudes_ * amplitudes_.adjoint());
}

DensityMatrix PureState::reduce(std::span<const int> keep) const {
  // rho_keep = B B^dag with B(a, t) = c[a | t].
  const int n = qubit_count(amplitudes_.size());
  if (n < 0) throw BadSubsystem("dimension " + std::to_string(dim()) + " is not 2^n");
  if (keep.empty()) throw BadSubsystem("keep set is empty");
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int q : keep) {
    if (q < 0 || q >= n) throw BadSubsystem("qubit index " + std::to_string(q) + " out of range");
    if (kept[static_cast<std::size_t>(q)]) {
      throw BadSubsystem("qubit index " + std::to_string(q) + " listed twice");
    }
    kept[static_cast<std::size_t>(q)] = true;
  }
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (!kept[static_cast<std::size_t>(q)]) traced.push_back(q);
  }
  auto scatter = [n](std::span<const int> qubits, std::size_t index) {
    std::size_t full = 0;
    const std::size_t m = qubits.size();
    for (std::size_t pos = 0; pos < m; ++pos) {
      if ((index >> (m - 1 - pos)) & 1U) full |= std::size_t{1} << (n - 1 - qubits[pos]);
    }
    return full;
  };
  const std::size_t dk = std::size_t{1} << keep.size();
  const std::size_t dt = std::size_t{1} << traced.size();
  ComplexMatrix blocks(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dt));
  for (std::size_t a = 0; a < dk; ++a) {
    const std::size_t ka = scatter(keep, a);
    for (std::size_t t = 0; t < dt; ++t) {
      blocks(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(t)) =
          amplitudes_[static_cast<Eigen::Index>(ka | scatter(traced, t))];
    }
  }
  return DensityMatrix::trusted(blocks * blocks.adjoint());
}

PureState maximally_coherent(int d) {
  if (d < 1) throw DimensionMismatch("dimension must be positive");
  return PureState::from_amplitudes(
      ComplexVector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0)));
}

PureState dicke(int n, int r) {
  if (n < 1 || n > 20) throw BadExcitation("dicke: n must be in [1, 20]");
  if (r < 0 || r > n) {
    throw BadExcitation("dicke: r = " + std::to_string(r) + " outside [0, " + std::to_string(n) +
                        "]");
  }
  const std::size_t d = std::size_t{1} << n;
  double count = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    if (std::popcount(i) == r) count += 1.0;
  }
  const double amp = 1.0 / std::sqrt(count);
  ComplexVector c = ComplexVector::Zero(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    if (std::popcount(i) == r) c[static_cast<Eigen::Index>(i)] = amp;
  }
  // Re-normalize so the 1e-12 norm check is immune to summation error at large binom(n, r).
  c /= c.norm();
  return PureState::from_amplitudes(std::move(c));
}

DensityMatrix gghz_x_state(int n, Complex alpha, Complex beta, double p) {
  if (n < 1 || n > 10) throw DimensionMismatch("gghz_x_state: n must be in [1, 10]");
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kNormTolerance) {
    throw BadAmplitudes("|alpha|^2 + |beta|^2 must equal 1");
  }
  if (!(p >= 0.0 && p <= 1.0)) throw BadMixingWeight("p must lie in [0, 1]");
  const Eigen::Index d = Eigen::Index{1} << n;
  ComplexVector ghz = ComplexVector::Zero(d);
  ghz[0] = alpha;
  ghz[d - 1] = beta;
  ComplexMatrix m = p * (ghz * ghz.adjoint()) +
                    ((1.0 - p) / static_cast<double>(d)) * ComplexMatrix::Identity(d, d);
  return DensityMatrix::trusted(std::move(m));
}

DensityMatrix paper_violation_state() {
  using C = Complex;
  ComplexMatrix m(4, 4);
  // clang-format off
  m << C(0.2501, 0.0),     C(0.0490, -0.0090), C(-0.1392, -0.1148), C(-0.2141, -0.0515),
       C(0.0490, 0.0090),  C(0.2064, 0.0),     C(0.1588, -0.0438),  C(0.0137, 0.0650),
       C(-0.1392, 0.1148), C(0.1588, 0.0438),  C(0.3001, 0.0),      C(0.1858, 0.0115),
       C(-0.2141, 0.0515), C(0.0137, -0.0650), C(0.1858, -0.0115),  C(0.2434, 0.0);
  // clang-format on
  return DensityMatrix::from_matrix(std::move(m), kPrintedStateTolerance);
}

DensityMatrix random_density(int dim, int rank, Rng& rng) {
  if (dim < 1) throw DimensionMismatch("dimension must be positive");
  if (rank < 1 || rank > dim) {
    throw DimensionMismatch("rank " + std::to_string(rank) + " outside [1, " +
                            std::to_string(dim) + "]");
  }
  // Column-major fill order is part of the replay contract.
  ComplexMatrix g(dim, rank);
  for (int col = 0; col < rank; ++col) {
    for (int row = 0; row < dim; ++row) g(row, col) = rng.complex_gaussian();
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix::trusted(std::move(rho));
}

DensityMatrix random_rank_r(const RandomStateSpec& spec) {
  if (spec.n_qubits < 1 || spec.n_qubits > 10) {
    throw DimensionMismatch("n_qubits must be in [1, 10]");
  }
  Rng rng(spec.seed);
  return random_density(1 << spec.n_qubits, spec.rank, rng);
}

PureState random_pure(int dim, Rng& rng) {
  ComplexVector c(dim);
  for (int i = 0; i < dim; ++i) c[i] = rng.complex_gaussian();
  c /= c.norm();
  return PureState::from_amplitudes(std::move(c));
}

DensityMatrix read_state_text(std::istream& in) {
  long long d = 0;
  if (!(in >> d) || d < 1 || d > 1024) throw ParseError("expected a dimension d in [1, 1024]");
  ComplexMatrix m(d, d);
  for (long long k = 0; k < d * d; ++k) {
    double re = 0.0;
    double im = 0.0;
    if (!(in >> re >> im)) {
      throw ParseError("expected " + std::to_string(d * d) + " 're im' entries, got " +
                       std::to_string(k));
    }
    m(k / d, k % d) = Complex(re, im);
  }
  std::string trailing;
  if (in >> trailing) throw ParseError("unexpected trailing data: " + trailing);
  return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_state_text(in);
}

void write_state_text(std::ostream& out, const ComplexMatrix& m) {
  const auto old_precision = out.precision(17);
  out << m.rows() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out << m(i, j).real() << ' ' << m(i, j).imag() << '\n';
    }
  }
  out.precision(old_precision);
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view text, std::string_view context) {
  T value{};
  if constexpr (std::is_integral_v<T>) {
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw ParseError("bad number '" + std::string(text) + "' in " + std::string(context));
    }
  } else {
    // std::from_chars for double is missing on some toolchains.
    std::string buf(text);
    std::size_t used = 0;
    try {
      value = std::stod(buf, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != buf.size()) {
      throw ParseError("bad number '" + buf + "' in " + std::string(context));
    }
  }
  return value;
}

}  // namespace

DensityMatrix named_state(std::string_view name) {
  if (name == "eq11") return paper_violation_state();
  const std::size_t colon = name.find(':');
  if (colon == std::string_view::npos) throw ParseError("unknown state '" + std::string(name) + "'");
  const std::string_view family = name.substr(0, colon);
  const auto args = split(name.substr(colon + 1), ',');
  if (family == "mcs" && args.size() == 1) {
    return maximally_coherent(parse_number<int>(args[0], name)).density();
  }
  if (family == "dicke" && args.size() == 2) {
    return dicke(parse_number<int>(args[0], name), parse_number<int>(args[1], name)).density();
  }
  if (family == "ghzx" && args.size() == 2) {
    const double amp = 1.0 / std::sqrt(2.0);
    return gghz_x_state(parse_number<int>(args[0], name), amp, amp,
                        parse_number<double>(args[1], name));
  }
  throw ParseError("unknown state '" + std::string(name) + "'");
}

}  // namespace qcoh
