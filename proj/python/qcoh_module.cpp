#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcoh/distribution.hpp"
#include "qcoh/errors.hpp"
#include "qcoh/experiments.hpp"

namespace py = pybind11;

namespace {

qcoh::DensityMatrix as_state(const qcoh::ComplexMatrix& m, double tolerance) {
  return qcoh::DensityMatrix::from_matrix(m, tolerance);
}

qcoh::Base parse_base(const std::string& base) {
  if (base == "nats") return qcoh::Base::Nats;
  if (base == "bits") return qcoh::Base::Bits;
  throw qcoh::ParseError("base must be 'nats' or 'bits'");
}

qcoh::CoherenceKind parse_kind(const std::string& descriptor) {
  const auto kinds = qcoh::parse_measure_list(descriptor);
  if (kinds.size() != 1) throw qcoh::ParseError("expected one measure descriptor");
  return kinds.front();
}

py::dict report_dict(const qcoh::AdditivityReport& r) {
  py::dict d;
  d["n_parties"] = r.n_parties;
  d["pivot"] = r.pivot;
  d["kind"] = qcoh::describe(r.kind);
  d["partners"] = r.partners;
  d["whole_value"] = r.whole_value;
  d["pair_values"] = r.pair_values;
  d["delta"] = r.delta;
  d["satisfied"] = r.satisfied;
  return d;
}

}  // namespace

PYBIND11_MODULE(_qcoh, m) {
  m.doc() = "Coherence and mixedness measures, additivity scores and Monte Carlo runs";

  // Every qcoh::Error subclass surfaces as QcohError (a ValueError).
  py::register_exception<qcoh::Error>(m, "QcohError", PyExc_ValueError);

  m.attr("__version__") = std::string(qcoh::kVersion);

  // linalg
  m.def("hermitian_eig", [](const qcoh::ComplexMatrix& a) {
    const auto s = qcoh::hermitian_eig(a);
    return py::make_tuple(s.eigenvalues, s.eigenvectors);
  });
  m.def("kron", &qcoh::kron);
  m.def("partial_trace", [](const qcoh::ComplexMatrix& rho, const std::vector<int>& keep) {
    return qcoh::partial_trace(rho, keep);
  });
  m.def("fidelity", &qcoh::fidelity);
  m.def("gellmann_basis", [](int d) { return qcoh::gellmann_basis(d).generators; });
  m.def("bloch_coords", [](const qcoh::ComplexMatrix& rho) { return qcoh::bloch_coords(rho).coords; });
  m.def("bloch_reconstruct", [](const qcoh::RealVector& x, int d) {
    return qcoh::bloch_reconstruct({d, x});
  });

  // states
  m.def("maximally_coherent", [](int d) { return qcoh::maximally_coherent(d).amplitudes(); });
  m.def("dicke", [](int n, int r) { return qcoh::dicke(n, r).amplitudes(); });
  m.def("gghz_x_state", [](int n, qcoh::Complex alpha, qcoh::Complex beta, double p) {
    return qcoh::gghz_x_state(n, alpha, beta, p).matrix();
  });
  m.def("paper_violation_state", [] { return qcoh::paper_violation_state().matrix(); });
  m.def("random_rank_r", [](int n_qubits, int rank, std::uint64_t seed) {
    return qcoh::random_rank_r({n_qubits, rank, seed}).matrix();
  }, py::arg("n_qubits"), py::arg("rank"), py::arg("seed"));
  m.def("named_state", [](const std::string& name) { return qcoh::named_state(name).matrix(); });
  m.def("validate", [](const qcoh::ComplexMatrix& a, double tolerance) {
    const auto r = qcoh::validate(a, tolerance);
    py::dict d;
    d["ok"] = r.ok;
    d["hermiticity_defect"] = r.hermiticity_defect;
    d["trace_defect"] = r.trace_defect;
    d["min_eigenvalue"] = r.min_eigenvalue;
    d["purity"] = r.purity;
    d["worst"] = r.worst;
    return d;
  }, py::arg("matrix"), py::arg("tolerance") = qcoh::kStateTolerance);

  // measures
  m.def("c_l1", [](const qcoh::ComplexMatrix& a, double tolerance) {
    return qcoh::c_l1(as_state(a, tolerance));
  }, py::arg("rho"), py::arg("tolerance") = qcoh::kStateTolerance);
  m.def("c_l2", [](const qcoh::ComplexMatrix& a, double tolerance) {
    return qcoh::c_l2(as_state(a, tolerance));
  }, py::arg("rho"), py::arg("tolerance") = qcoh::kStateTolerance);
  m.def("c_r", [](const qcoh::ComplexMatrix& a, const std::string& base, double tolerance) {
    return qcoh::c_r(as_state(a, tolerance), parse_base(base));
  }, py::arg("rho"), py::arg("base") = "nats", py::arg("tolerance") = qcoh::kStateTolerance);
  m.def("c_g", [](const qcoh::ComplexMatrix& a, double tolerance) {
    return qcoh::c_g(as_state(a, tolerance));
  }, py::arg("rho"), py::arg("tolerance") = qcoh::kStateTolerance);
  m.def("m_l", [](const qcoh::ComplexMatrix& a, double tolerance) {
    return qcoh::m_l(as_state(a, tolerance));
  }, py::arg("rho"), py::arg("tolerance") = qcoh::kStateTolerance);
  m.def("m_g", [](const qcoh::ComplexMatrix& a, double tolerance) {
    return qcoh::m_g(as_state(a, tolerance));
  }, py::arg("rho"), py::arg("tolerance") = qcoh::kStateTolerance);
  m.def("entropy_vn", [](const qcoh::ComplexMatrix& a, const std::string& base, double tolerance) {
    return qcoh::entropy_vn(as_state(a, tolerance), parse_base(base));
  }, py::arg("rho"), py::arg("base") = "nats", py::arg("tolerance") = qcoh::kStateTolerance);
  m.def("tradeoff", [](const qcoh::ComplexMatrix& a, const std::string& coherence,
                       const std::string& mixedness, double tolerance) {
    return qcoh::tradeoff(as_state(a, tolerance), parse_kind(coherence),
                          {qcoh::parse_mixedness_measure(mixedness)});
  }, py::arg("rho"), py::arg("coherence"), py::arg("mixedness"),
     py::arg("tolerance") = qcoh::kStateTolerance,
     "coherence like 'l1^2', 'l2^2', 'cr', 'cg'; mixedness 'ml', 's' or 'mg'");

  // distribution
  m.def("additivity_score", [](const qcoh::ComplexMatrix& a, int pivot, const std::string& kind, double tolerance) {
    return report_dict(qcoh::additivity_score(as_state(a, tolerance), pivot, parse_kind(kind)));
  }, py::arg("rho"), py::arg("pivot") = 0, py::arg("kind") = "l1",
     py::arg("tolerance") = qcoh::kStateTolerance);
  m.def("theorem1_quantities", [](const qcoh::ComplexMatrix& a, int pivot, double tolerance) {
    const auto t = qcoh::theorem1_quantities(as_state(a, tolerance), pivot);
    py::dict d;
    d["delta1"] = t.delta1;
    d["delta2"] = t.delta2;
    d["delta3"] = t.delta3;
    d["delta4"] = t.delta4;
    d["c_r_pivot"] = t.c_r_pivot;
    d["c_r_whole"] = t.c_r_whole;
    d["c_r_pairs_sum"] = t.c_r_pairs_sum;
    return d;
  }, py::arg("rho"), py::arg("pivot") = 0, py::arg("tolerance") = qcoh::kStateTolerance);
  m.def("dicke_delta_closed_form", [](int n, int r, const std::string& measure, bool normalized) {
    return qcoh::dicke_delta_closed_form(n, r, qcoh::parse_coherence_measure(measure), normalized);
  }, py::arg("n"), py::arg("r"), py::arg("measure"), py::arg("normalized") = true);
  m.def("xstate_additivity_check", [](int n, qcoh::Complex alpha, qcoh::Complex beta, double p,
                                      const std::string& kind) {
    return report_dict(qcoh::xstate_additivity_check(n, alpha, beta, p, parse_kind(kind)));
  });

  // experiments
  m.def("run_experiment", [](const std::string& experiment, std::optional<std::string> qubits,
                             std::optional<std::string> ranks, std::optional<int> samples,
                             std::uint64_t seed, std::optional<std::string> measures, int bins,
                             int pivot, const std::string& preset, int workers) {
    auto config = qcoh::ExperimentConfig::defaults(qcoh::parse_experiment(experiment),
                                                   qcoh::parse_preset(preset));
    if (qubits) config.n_qubits = qcoh::parse_int_list(*qubits);
    if (ranks) config.ranks = qcoh::parse_int_list(*ranks);
    if (samples) config.samples = *samples;
    if (measures) config.measures = qcoh::parse_measure_list(*measures);
    config.seed = seed;
    config.bins = bins;
    config.pivot = pivot;
    config.workers = workers;
    std::ostringstream csv;
    {
      py::gil_scoped_release release;
      qcoh::write_csv(qcoh::run_experiment(config), csv);
    }
    return csv.str();
  }, py::arg("experiment"), py::arg("qubits") = py::none(), py::arg("ranks") = py::none(),
     py::arg("samples") = py::none(), py::arg("seed") = 7, py::arg("measures") = py::none(),
     py::arg("bins") = 50, py::arg("pivot") = 0, py::arg("preset") = "ci", py::arg("workers") = 1,
     "Runs an experiment and returns its CSV text.");
}
