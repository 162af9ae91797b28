#include "qcoh/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qcoh/errors.hpp"

namespace qcoh {

double log_of_base(Base base) { return base == Base::Bits ? std::numbers::ln2 : 1.0; }

bool is_incoherent(const DensityMatrix& rho) {
  const ComplexMatrix& m = rho.matrix();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j && std::abs(m(i, j)) > kIncoherenceThreshold) return false;
    }
  }
  return true;
}

double c_l1(const DensityMatrix& rho) {
  const ComplexMatrix& m = rho.matrix();
  return m.cwiseAbs().sum() - m.diagonal().cwiseAbs().sum();
}

double c_l2(const DensityMatrix& rho) {
  const ComplexMatrix& m = rho.matrix();
  const double off = m.cwiseAbs2().sum() - m.diagonal().cwiseAbs2().sum();
  return std::sqrt(std::max(off, 0.0));
}

double shannon_entropy(const RealVector& p, Base base) {
  double h = 0.0;
  for (double x : p) h -= xlogx(x);
  return h / log_of_base(base);
}

double entropy_vn(const DensityMatrix& rho, Base base) {
  return shannon_entropy(hermitian_eigenvalues(rho.matrix()), base);
}

double c_r(const DensityMatrix& rho, Base base) {
  const RealVector diagonal = rho.matrix().diagonal().real();
  return std::max(shannon_entropy(diagonal, base) - entropy_vn(rho, base), 0.0);
}

double m_l(const DensityMatrix& rho) {
  const int d = rho.dim();
  if (d < 2) throw DimensionOne("mixedness M_l is undefined for d = 1");
  return (static_cast<double>(d) / (d - 1)) * (1.0 - rho.purity());
}

double m_g(const DensityMatrix& rho) {
  const double trace_root = trace_sqrt(hermitian_eigenvalues(rho.matrix()).cwiseMax(0.0));
  return trace_root * trace_root / rho.dim();
}

RealVector project_to_simplex(const RealVector& v) {
  const Eigen::Index n = v.size();
  std::vector<double> sorted(v.data(), v.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumulative += sorted[static_cast<std::size_t>(k)];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[static_cast<std::size_t>(k)] - candidate > 0.0) shift = candidate;
  }
  return (v.array() - shift).max(0.0).matrix();
}

namespace {

// rho = W W^dag with W = V_+ sqrt(Lambda_+), so that
// F(rho, diag q) = (sum sqrt eig(W^dag diag(q) W))^2 on an r x r problem.
class DiagonalFidelity {
 public:
  explicit DiagonalFidelity(const DensityMatrix& rho) {
    const Spectrum s = hermitian_eig(rho.matrix());
    const double cutoff = 1e-14 * std::max(s.eigenvalues[0], 1.0);
    Eigen::Index rank = 0;
    while (rank < s.eigenvalues.size() && s.eigenvalues[rank] > cutoff) ++rank;
    factor_ = s.eigenvectors.leftCols(rank) *
              s.eigenvalues.head(rank).cwiseSqrt().asDiagonal();
  }

  double operator()(const RealVector& q) const {
    const RealVector w = q.cwiseMax(0.0);
    ComplexMatrix inner = factor_.adjoint() * w.asDiagonal() * factor_;
    double trace_root = 0.0;
    if (inner.rows() == 1) {
      trace_root = std::sqrt(std::max(inner(0, 0).real(), 0.0));
    } else {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(inner, Eigen::EigenvaluesOnly);
      trace_root = trace_sqrt(solver.eigenvalues().cwiseMax(0.0));
    }
    return std::min(trace_root * trace_root, 1.0);
  }

 private:
  ComplexMatrix factor_;
};

}  // namespace

double fidelity_to_diagonal(const DensityMatrix& rho, const RealVector& q) {
  if (q.size() != rho.dim()) throw DimensionMismatch("weight vector length differs from dim");
  return DiagonalFidelity(rho)(q);
}

GeometricSearchResult geometric_coherence_search(const DensityMatrix& rho,
                                                 const GeometricSearchOptions& options) {
  const int d = rho.dim();
  const DiagonalFidelity f(rho);

  GeometricSearchResult result;
  RealVector q = project_to_simplex(rho.matrix().diagonal().real());
  double value = f(q);
  auto consider = [&](const RealVector& candidate) {
    const double v = f(candidate);
    if (v > value) {
      value = v;
      q = candidate;
    }
  };
  consider(RealVector::Constant(d, 1.0 / d));
  for (int i = 0; i < d; ++i) consider(RealVector::Unit(d, i));
  result.start_fidelity = value;

  RealVector grad(d);
  double step_size = 1.0;
  bool converged = d == 1;
  int iteration = 0;
  while (!converged && iteration < options.max_iterations) {
    ++iteration;
    for (int i = 0; i < d; ++i) {
      RealVector plus = q;
      RealVector minus = q;
      plus[i] += options.step;
      minus[i] -= options.step;
      grad[i] = (f(plus) - f(minus)) / (2.0 * options.step);
    }
    // Backtracking along the projected-gradient arc.
    bool accepted = false;
    for (int attempt = 0; attempt < 60; ++attempt) {
      const RealVector trial = project_to_simplex(q + step_size * grad);
      const double trial_value = f(trial);
      if (trial_value > value) {
        const double improvement = trial_value - value;
        q = trial;
        value = trial_value;
        accepted = true;
        step_size = std::min(step_size * 2.0, 1e6);
        if (improvement < options.tolerance) converged = true;
        break;
      }
      step_size *= 0.5;
      if ((project_to_simplex(q + step_size * grad) - q).lpNorm<Eigen::Infinity>() < 1e-15) break;
    }
    if (!accepted) {
      converged = true;
      step_size = 1.0;
    }
  }
  if (!converged) {
    throw OptimizerNotConverged("geometric coherence search did not converge in " +
                                std::to_string(options.max_iterations) + " iterations");
  }
  result.max_fidelity = value;
  result.weights = q;
  result.iterations = iteration;
  return result;
}

double c_g(const DensityMatrix& rho) {
  const RealVector lambda = hermitian_eigenvalues(rho.matrix());
  if (lambda.size() == 1 || lambda[1] <= kClipTolerance) {
    return std::max(1.0 - rho.matrix().diagonal().real().maxCoeff(), 0.0);
  }
  return std::max(1.0 - geometric_coherence_search(rho).max_fidelity, 0.0);
}

double coherence(const DensityMatrix& rho, CoherenceMeasure measure, Base base) {
  switch (measure) {
    case CoherenceMeasure::L1:
      return c_l1(rho);
    case CoherenceMeasure::L2:
      return c_l2(rho);
    case CoherenceMeasure::RelativeEntropy:
      return c_r(rho, base);
    case CoherenceMeasure::Geometric:
      return c_g(rho);
  }
  throw UnknownCombination("unknown coherence measure");
}

double c_l1(const PureState& psi) {
  const double s = psi.amplitudes().cwiseAbs().sum();
  return std::max(s * s - 1.0, 0.0);
}

double c_l2(const PureState& psi) {
  return std::sqrt(std::max(1.0 - psi.amplitudes().cwiseAbs2().cwiseAbs2().sum(), 0.0));
}

double c_r(const PureState& psi, Base base) {
  return shannon_entropy(psi.amplitudes().cwiseAbs2(), base);
}

double c_g(const PureState& psi) {
  return std::max(1.0 - psi.amplitudes().cwiseAbs2().maxCoeff(), 0.0);
}

double coherence(const PureState& psi, CoherenceMeasure measure, Base base) {
  switch (measure) {
    case CoherenceMeasure::L1:
      return c_l1(psi);
    case CoherenceMeasure::L2:
      return c_l2(psi);
    case CoherenceMeasure::RelativeEntropy:
      return c_r(psi, base);
    case CoherenceMeasure::Geometric:
      return c_g(psi);
  }
  throw UnknownCombination("unknown coherence measure");
}

double coherence_scale(CoherenceMeasure measure, int d, Base base) {
  switch (measure) {
    case CoherenceMeasure::L1:
      return d - 1.0;
    case CoherenceMeasure::L2:
      return std::sqrt(1.0 - 1.0 / d);
    case CoherenceMeasure::RelativeEntropy:
      return std::log(static_cast<double>(d)) / log_of_base(base);
    case CoherenceMeasure::Geometric:
      return 1.0 - 1.0 / d;
  }
  throw UnknownCombination("unknown coherence measure");
}

double mixedness(const DensityMatrix& rho, const MixednessKind& kind) {
  switch (kind.measure) {
    case MixednessMeasure::LinearEntropy:
      return m_l(rho);
    case MixednessMeasure::VonNeumann:
      return entropy_vn(rho, kind.base);
    case MixednessMeasure::Geometric:
      return m_g(rho);
  }
  throw UnknownCombination("unknown mixedness measure");
}

double tradeoff(const DensityMatrix& rho, const CoherenceKind& coherence_kind,
                const MixednessKind& mixedness_kind) {
  using CM = CoherenceMeasure;
  using MM = MixednessMeasure;
  const CM c = coherence_kind.measure;
  const MM m = mixedness_kind.measure;
  const int k = coherence_kind.power;
  const bool known = (c == CM::L1 && k == 2) || (c == CM::L2 && k == 2 && m == MM::LinearEntropy) ||
                     (c == CM::RelativeEntropy && k == 1) ||
                     (c == CM::Geometric && k == 1 && m == MM::Geometric);
  if (!known) {
    throw UnknownCombination("no trade-off relation for (" + to_string(c) + "^" +
                             std::to_string(k) + ", " + to_string(m) + ")");
  }
  const int d = rho.dim();
  if (d < 2) throw DimensionOne("trade-off relations need d >= 2");
  const double log_d = std::log(static_cast<double>(d));

  double coherence_term = 0.0;
  switch (c) {
    case CM::L1: {
      const double v = c_l1(rho) / (d - 1.0);
      coherence_term = v * v;
      break;
    }
    case CM::L2: {
      const double v = c_l2(rho);
      coherence_term = v * v / (1.0 - 1.0 / d);
      break;
    }
    case CM::RelativeEntropy:
      coherence_term = c_r(rho, Base::Nats) / log_d;
      break;
    case CM::Geometric:
      coherence_term = c_g(rho);
      break;
  }

  double mixedness_term = 0.0;
  switch (m) {
    case MM::LinearEntropy:
      mixedness_term = m_l(rho);
      break;
    case MM::VonNeumann:
      mixedness_term = entropy_vn(rho, Base::Nats) / log_d;
      break;
    case MM::Geometric:
      mixedness_term = m_g(rho);
      break;
  }
  return coherence_term + mixedness_term;
}

std::string to_string(CoherenceMeasure m) {
  switch (m) {
    case CoherenceMeasure::L1:
      return "l1";
    case CoherenceMeasure::L2:
      return "l2";
    case CoherenceMeasure::RelativeEntropy:
      return "cr";
    case CoherenceMeasure::Geometric:
      return "cg";
  }
  return "?";
}

std::string to_string(MixednessMeasure m) {
  switch (m) {
    case MixednessMeasure::LinearEntropy:
      return "ml";
    case MixednessMeasure::VonNeumann:
      return "s";
    case MixednessMeasure::Geometric:
      return "mg";
  }
  return "?";
}

CoherenceMeasure parse_coherence_measure(std::string_view s) {
  if (s == "l1") return CoherenceMeasure::L1;
  if (s == "l2") return CoherenceMeasure::L2;
  if (s == "cr") return CoherenceMeasure::RelativeEntropy;
  if (s == "cg") return CoherenceMeasure::Geometric;
  throw ParseError("unknown coherence measure '" + std::string(s) + "'");
}

MixednessMeasure parse_mixedness_measure(std::string_view s) {
  if (s == "ml") return MixednessMeasure::LinearEntropy;
  if (s == "s") return MixednessMeasure::VonNeumann;
  if (s == "mg") return MixednessMeasure::Geometric;
  throw ParseError("unknown mixedness measure '" + std::string(s) + "'");
}

}  // namespace qcoh
