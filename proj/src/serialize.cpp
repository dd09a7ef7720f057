#include "phasekit/serialize.hpp"

#include <sstream>

namespace phasekit {

// Entries as [re, im] pairs, row-major. Adding 0.0 turns -0.0 into 0.0.
Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back({m(r, c).real() + 0.0, m(r, c).imag() + 0.0});
  }
  return out;
}

Matrix matrix_from_json(const Json& j, int dim) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
    throw DomainError("matrix JSON: expected " + std::to_string(dim * dim) + " [re,im] entries");
  }
  Matrix m(dim, dim);
  std::size_t k = 0;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c, ++k) {
      const Json& e = j.at(k);
      m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real() + 0.0, v(i).imag() + 0.0});
  return out;
}

Json kappa_to_json(const KappaParam& kappa) {
  return Json{{"num", kappa.numerator()}, {"den", kappa.denominator()}};
}

KappaParam kappa_from_json(const Json& j) {
  return KappaParam(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

Json to_json(const Representation& rep) {
  Json out;
  out["dim"] = rep.dim;
  out["phi"] = rep.phi;
  out["kappa"] = kappa_to_json(rep.kappa);
  out["kind"] = to_string(rep.kind);
  out["truncated"] = rep.truncated();
  out["a_plus"] = matrix_to_json(rep.a_plus);
  out["a_minus"] = matrix_to_json(rep.a_minus);
  out["number_op"] = matrix_to_json(rep.number_op);
  out["hamiltonian"] = matrix_to_json(rep.hamiltonian);
  return out;
}

Representation representation_from_json(const Json& j) {
  Representation rep;
  try {
    rep.dim = j.at("dim").get<int>();
    rep.phi = j.at("phi").get<double>();
    rep.kappa = kappa_from_json(j.at("kappa"));
    rep.kind = representation_kind_from_string(j.at("kind").get<std::string>());
    if (rep.dim < 1) throw DomainError("representation JSON: dim must be >= 1");
    rep.a_plus = matrix_from_json(j.at("a_plus"), rep.dim);
    rep.a_minus = matrix_from_json(j.at("a_minus"), rep.dim);
    rep.number_op = matrix_from_json(j.at("number_op"), rep.dim);
    rep.hamiltonian = matrix_from_json(j.at("hamiltonian"), rep.dim);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("representation JSON: ") + e.what());
  }
  for (int n = 0; n <= rep.dim; ++n) rep.structure.push_back(structure_value(rep.kappa, n));
  return rep;
}

Json to_json(const PhaseState& state) {
  Json label;
  label["type"] = to_string(state.label.type);
  switch (state.label.type) {
    case LabelType::m_phi: label["m"] = state.label.index; break;
    case LabelType::mu_phi: label["mu"] = state.label.index; break;
    case LabelType::theta_phi: label["theta"] = state.label.theta; break;
  }
  label["phi"] = state.label.phi;
  if (state.label.p) label["p"] = *state.label.p;
  Json out;
  out["label"] = std::move(label);
  out["amplitudes"] = vector_to_json(state.amplitudes);
  out["dim"] = state.dim();
  out["kappa"] = state.kappa ? kappa_to_json(*state.kappa) : Json(nullptr);
  out["normalized"] = state.normalized;
  return out;
}

Json to_json(const MubSet& set) {
  Json out;
  out["dim"] = set.dim;
  Json route{{"type", route_name(set.route)}};
  if (const auto* t = std::get_if<TruncatedRoute>(&set.route)) route["kappa"] = kappa_to_json(t->kappa);
  out["route"] = std::move(route);
  out["prime"] = set.prime;
  out["complete"] = set.complete;
  Json bases = Json::array();
  for (const auto& basis : set.bases) {
    Json vectors = Json::array();
    for (const auto& v : basis.vectors) vectors.push_back(to_json(v));
    bases.push_back(Json{{"p", basis.p}, {"vectors", std::move(vectors)}});
  }
  out["bases"] = std::move(bases);
  Json pairs = Json::array();
  for (const auto& pair : set.overlap_report) {
    pairs.push_back(Json{{"p", pair.a}, {"p_prime", pair.b}, {"min", pair.min_abs}, {"max", pair.max_abs}});
  }
  out["overlap_report"] = Json{{"pairs", std::move(pairs)},
                               {"max_deviation", set.max_deviation},
                               {"max_orthonormality_residual", set.max_orthonormality_residual}};
  return out;
}

std::string overlap_csv(const MubSet& set) {
  std::ostringstream os;
  os.precision(17);
  os << "p,p_prime,min_abs,max_abs\n";
  for (const auto& pair : set.overlap_report) {
    os << pair.a << ',' << pair.b << ',' << pair.min_abs << ',' << pair.max_abs << '\n';
  }
  return os.str();
}

Json potential_report(const PotentialSpec& spec, int s) {
  const SpectrumParams params = to_spectrum_params(spec);
  const auto report = weight_table(spec, s - 1);
  Json out;
  out["variant"] = spec.to_string();
  out["description"] = spec.description();
  out["a"] = params.a;
  out["b"] = params.b;
  if (params.kappa_exact) {
    out["kappa"] = kappa_to_json(*params.kappa_exact);
  } else {
    out["kappa"] = params.kappa_equiv;
  }
  out["s"] = s;
  const auto order = truncation_order(params);
  out["truncation_order"] = order.order ? Json(*order.order) : Json("infinite");
  out["energies"] = energies(params, s);
  Json weights = Json::array();
  for (int n = 0; n < report.table.size(); ++n) weights.push_back(report.table.at(n));
  out["weights"] = std::move(weights);
  out["gamma_check"] = Json{{"max_rel_err", report.max_rel_err}};
  return out;
}

}  // namespace phasekit
