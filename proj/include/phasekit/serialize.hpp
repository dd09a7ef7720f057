#pragma once

// JSON and CSV artifacts emitted by the command-line front end. Complex
// matrices are flat row-major lists of [re, im] pairs.

#include <string>

#include <json.hpp>

#include "phasekit/mub.hpp"
#include "phasekit/potentials.hpp"

namespace phasekit {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, int dim);
Json vector_to_json(const Vector& v);

Json kappa_to_json(const KappaParam& kappa);
KappaParam kappa_from_json(const Json& j);

/// {dim, phi, kappa:{num,den}, kind, truncated, a_plus, a_minus, number_op, hamiltonian}
Json to_json(const Representation& rep);
/// Rebuilds the representation from stored matrices; F values are recomputed from kappa.
Representation representation_from_json(const Json& j);

/// {label:{type, m|theta|mu, phi[, p]}, amplitudes, dim, kappa}
Json to_json(const PhaseState& state);

/// {dim, route, prime, complete, bases:[{p, vectors}], overlap_report:{pairs, max_deviation}}
Json to_json(const MubSet& set);

/// Header "p,p_prime,min_abs,max_abs", one row per basis pair.
std::string overlap_csv(const MubSet& set);

/// {variant, a, b, kappa, s, energies, weights, gamma_check:{max_rel_err}}
Json potential_report(const PotentialSpec& spec, int s);

}  // namespace phasekit
