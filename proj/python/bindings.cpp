#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "phasekit/mub.hpp"
#include "phasekit/potentials.hpp"
#include "phasekit/serialize.hpp"
#include "phasekit/verify.hpp"

namespace py = pybind11;
using namespace phasekit;

namespace {

KappaParam to_kappa(const py::object& obj) {
  if (py::isinstance<KappaParam>(obj)) return obj.cast<KappaParam>();
  if (py::isinstance<py::str>(obj)) return KappaParam::parse(obj.cast<std::string>());
  if (py::isinstance<py::int_>(obj)) return KappaParam(obj.cast<std::int64_t>());
  if (py::isinstance<py::tuple>(obj)) {
    const auto t = obj.cast<std::pair<std::int64_t, std::int64_t>>();
    return KappaParam(t.first, t.second);
  }
  throw py::type_error("kappa must be a Kappa, 'p/q' string, int or (p, q) tuple");
}

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

std::vector<double> structure_doubles(const KappaParam& kappa, int n_max) {
  const auto f = structure_function(kappa, n_max);
  std::vector<double> out;
  for (std::size_t n = 0; n < f.size(); ++n) out.push_back(f.at(n));
  return out;
}

}  // namespace

PYBIND11_MODULE(_phasekit, m) {
  m.doc() = "Generalized oscillator algebras, phase states and mutually unbiased bases";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<KappaParam>(m, "Kappa")
      .def(py::init<std::int64_t, std::int64_t>(), py::arg("numerator"), py::arg("denominator") = 1)
      .def_static("parse", &KappaParam::parse)
      .def_static("for_dimension", &KappaParam::for_dimension)
      .def_property_readonly("numerator", &KappaParam::numerator)
      .def_property_readonly("denominator", &KappaParam::denominator)
      .def("__float__", &KappaParam::to_double)
      .def("__eq__", [](const KappaParam& a, const KappaParam& b) { return a == b; })
      .def("__str__", &KappaParam::to_string)
      .def("__repr__", [](const KappaParam& k) { return "Kappa(" + k.to_string() + ")"; });

  m.def("dimension", [](const py::object& kappa) { return dimension_of(to_kappa(kappa)).finite; },
        "d for kappa = -1/(d-1), None for an infinite representation.");
  m.def("structure_function", [](const py::object& kappa, int n_max) {
    return structure_doubles(to_kappa(kappa), n_max);
  });

  py::class_<Representation>(m, "Representation")
      .def_readonly("dim", &Representation::dim)
      .def_readonly("phi", &Representation::phi)
      .def_readonly("a_plus", &Representation::a_plus)
      .def_readonly("a_minus", &Representation::a_minus)
      .def_readonly("number_op", &Representation::number_op)
      .def_readonly("hamiltonian", &Representation::hamiltonian)
      .def_property_readonly("kappa", [](const Representation& r) { return r.kappa; })
      .def_property_readonly("kind", [](const Representation& r) { return to_string(r.kind); })
      .def("to_json", [](const Representation& r) { return to_python(to_json(r)); });

  m.def(
      "representation",
      [](const py::object& kappa, double phi, int size, const std::string& kind) {
        return build_representation(to_kappa(kappa), phi, size, representation_kind_from_string(kind));
      },
      py::arg("kappa"), py::arg("phi"), py::arg("size"), py::arg("kind") = "finite");

  m.def("commutator_residual", [](const Representation& rep) {
    const auto r = commutator_residual(rep);
    return py::make_tuple(r.residual, r.trace);
  });
  m.def("phase_operator", [](const Representation& rep) { return phase_operator(rep).matrix; });
  m.def("phase_operator_infinite_cutoff", [](const py::object& kappa, double phi, int n_max) {
    return phase_operator_infinite_cutoff(to_kappa(kappa), phi, n_max).matrix;
  });

  py::class_<PhaseState>(m, "PhaseState")
      .def_readonly("amplitudes", &PhaseState::amplitudes)
      .def_readonly("normalized", &PhaseState::normalized)
      .def_property_readonly("index", [](const PhaseState& s) { return s.label.index; })
      .def_property_readonly("phi", [](const PhaseState& s) { return s.label.phi; })
      .def_property_readonly("p", [](const PhaseState& s) { return s.label.p; })
      .def("to_json", [](const PhaseState& s) { return to_python(to_json(s)); });

  m.def("phase_states", [](int dim, const py::object& kappa, double phi) {
    return phase_states(dim, to_kappa(kappa), phi);
  });
  m.def("theta_phase_state", [](double theta, double phi, const py::object& kappa, int n_max) {
    return theta_phase_state(theta, phi, to_kappa(kappa), n_max);
  });
  m.def("vs_phase_states", [](const Representation& rep) {
    return vs_phase_states(rep, build_weights(rep.kappa, rep.dim));
  });
  m.def("evolve", &evolve, py::arg("state"), py::arg("t"));
  m.def("overlap", &overlap);

  m.def(
      "gauss_sum", [](long long u, long long v, long long w) { return gauss_sum({u, v, w}); }, py::arg("u"),
      py::arg("v"), py::arg("w"));
  m.def("mub_state_finite", &mub_state_finite, py::arg("d"), py::arg("p"), py::arg("m"));
  m.def("mub_state_truncated", [](const py::object& kappa, int s, int p, int mm) {
    return mub_state_truncated(to_kappa(kappa), s, p, mm);
  });
  m.def(
      "mub_set",
      [](int dim, const std::string& route, const py::object& kappa) {
        MubRoute r = FiniteRoute{dim};
        if (route == "truncated") {
          r = TruncatedRoute{to_kappa(kappa), dim};
        } else if (route != "finite") {
          throw DomainError("unknown route '" + route + "'");
        }
        return to_python(to_json(build_mub_set(r)));
      },
      py::arg("dim"), py::arg("route") = "finite", py::arg("kappa") = py::none());

  m.def("energies", [](const std::string& potential, int count) {
    return energies(to_spectrum_params(PotentialSpec::parse(potential)), count);
  });
  m.def("truncation_order", [](const std::string& potential) {
    return truncation_order(to_spectrum_params(PotentialSpec::parse(potential))).order;
  });
  m.def(
      "potential_report",
      [](const std::string& potential, std::optional<int> s) {
        const auto spec = PotentialSpec::parse(potential);
        const int size = s.value_or(truncation_order(to_spectrum_params(spec)).effective());
        return to_python(potential_report(spec, size));
      },
      py::arg("potential"), py::arg("s") = py::none());

  m.def("verify", []() {
    const auto report = run_verification(Tolerances::from_env());
    py::list rows;
    for (const auto& r : report.rows) {
      py::dict row;
      row["invariant"] = r.invariant;
      row["passed"] = r.passed;
      row["max_residual"] = r.max_residual;
      row["cells"] = r.cells;
      rows.append(row);
    }
    return rows;
  });
}
