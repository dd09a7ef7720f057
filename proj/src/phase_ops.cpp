#include "phasekit/phase_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace phasekit {

namespace {

Complex phase(double angle) { return std::polar(1.0, angle); }

void require_same_dim(const PhaseState& a, const PhaseState& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("phase states of dimension " + std::to_string(a.dim()) + " and " +
                      std::to_string(b.dim()) + " cannot be compared");
  }
}

// Checks that a representation of size `dim` exists for kappa.
void require_valid_dim(int dim, const KappaParam& kappa) {
  if (dim < 1) throw DomainError("dimension must be >= 1");
  const Dimension d = dimension_of(kappa);
  if (d.finite && dim > d.value()) {
    throw DomainError("dimension " + std::to_string(dim) + " is inconsistent with kappa = " +
                      kappa.to_string() + " (d = " + std::to_string(d.value()) + ")");
  }
}

}  // namespace

Complex root_of_unity(long long k, long long n) {
  return phase(2.0 * kPi * static_cast<double>(mod(k, n)) / static_cast<double>(n));
}

std::string to_string(PhaseOperatorKind kind) {
  switch (kind) {
    case PhaseOperatorKind::finite_Ed: return "finite_Ed";
    case PhaseOperatorKind::truncated_Es: return "truncated_Es";
    case PhaseOperatorKind::infinite_cutoff_Einf: return "infinite_cutoff_Einf";
  }
  return "unknown";
}

std::string to_string(LabelType type) {
  switch (type) {
    case LabelType::m_phi: return "m_phi";
    case LabelType::theta_phi: return "theta_phi";
    case LabelType::mu_phi: return "mu_phi";
  }
  return "unknown";
}

std::vector<double> structure_levels(const KappaParam& kappa, int dim) {
  std::vector<double> levels(static_cast<std::size_t>(dim));
  for (int n = 0; n < dim; ++n) levels[static_cast<std::size_t>(n)] = to_double(structure_value(kappa, n));
  return levels;
}

PhaseOperator phase_operator(const Representation& rep) {
  if (rep.kind == RepresentationKind::open_top) {
    throw DomainError("phase_operator: open_top representation has no unitary phase operator; "
                      "use phase_operator_infinite_cutoff");
  }
  const int dim = rep.dim;
  PhaseOperator op;
  op.kind = rep.kind == RepresentationKind::finite ? PhaseOperatorKind::finite_Ed
                                                   : PhaseOperatorKind::truncated_Es;
  op.phi = rep.phi;
  op.matrix = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) op.matrix(n - 1, n) = phase((rep.F(n) - rep.F(n - 1)) * rep.phi);
  op.matrix(dim - 1, 0) = phase((rep.F(0) - rep.F(dim - 1)) * rep.phi);
  return op;
}

PhaseOperator phase_operator_infinite_cutoff(const KappaParam& kappa, double phi, int n_max) {
  if (kappa.is_negative()) {
    throw DomainError("phase_operator_infinite_cutoff requires kappa >= 0, got " + kappa.to_string());
  }
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  const int dim = n_max + 1;
  PhaseOperator op;
  op.kind = PhaseOperatorKind::infinite_cutoff_Einf;
  op.phi = phi;
  op.matrix = Matrix::Zero(dim, dim);
  for (int n = 0; n < n_max; ++n) {
    const double gap = to_double(structure_value(kappa, n + 1) - structure_value(kappa, n));
    op.matrix(n, n + 1) = phase(gap * phi);
  }
  return op;
}

PhaseOperatorResiduals phase_operator_residuals(const PhaseOperator& op, const Representation& rep) {
  const int dim = op.dim();
  const Matrix id = Matrix::Identity(dim, dim);
  PhaseOperatorResiduals r;
  r.unitarity = std::max(max_abs(op.matrix.adjoint() * op.matrix - id),
                         max_abs(op.matrix * op.matrix.adjoint() - id));
  r.cyclic = max_abs(matrix_power(op.matrix, dim) - id);
  Matrix sqrt_f = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) sqrt_f(n, n) = std::sqrt(rep.F(n));
  r.polar = max_abs(rep.a_minus - op.matrix * sqrt_f);
  return r;
}

CutoffIdentityReport cutoff_identity_report(const PhaseOperator& op) {
  const int dim = op.dim();
  Matrix left_target = Matrix::Identity(dim, dim);
  left_target(0, 0) = 0.0;
  Matrix right = op.matrix * op.matrix.adjoint();
  CutoffIdentityReport r;
  r.left_residual = max_abs(op.matrix.adjoint() * op.matrix - left_target);
  r.top_entry = std::abs(right(dim - 1, dim - 1));
  right -= Matrix::Identity(dim, dim);
  right(dim - 1, dim - 1) = 0.0;
  r.right_residual = max_abs(right);
  return r;
}

PhaseState fourier_phase_state(std::span<const double> levels, int m, double phi) {
  const int dim = static_cast<int>(levels.size());
  if (dim < 1) throw DomainError("fourier_phase_state: empty level list");
  PhaseState state;
  state.label = {LabelType::m_phi, mod(m, dim), 0.0, phi, std::nullopt};
  state.levels.assign(levels.begin(), levels.end());
  state.amplitudes.resize(dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int n = 0; n < dim; ++n) {
    state.amplitudes(n) = norm * phase(-levels[static_cast<std::size_t>(n)] * phi) *
                          root_of_unity(static_cast<long long>(state.label.index) * n, dim);
  }
  return state;
}

PhaseState phase_state(int dim, const KappaParam& kappa, int m, double phi) {
  require_valid_dim(dim, kappa);
  const auto levels = structure_levels(kappa, dim);
  PhaseState state = fourier_phase_state(levels, m, phi);
  state.kappa = kappa;
  return state;
}

std::vector<PhaseState> phase_states(int dim, const KappaParam& kappa, double phi) {
  require_valid_dim(dim, kappa);
  const auto levels = structure_levels(kappa, dim);
  std::vector<PhaseState> out;
  out.reserve(static_cast<std::size_t>(dim));
  for (int m = 0; m < dim; ++m) {
    out.push_back(fourier_phase_state(levels, m, phi));
    out.back().kappa = kappa;
  }
  return out;
}

PhaseState theta_phase_state(double theta, double phi, const KappaParam& kappa, int n_max) {
  if (kappa.is_negative()) {
    throw DomainError("theta phase states require kappa >= 0, got " + kappa.to_string());
  }
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  if (theta < -kPi || theta > kPi) throw DomainError("theta must lie in [-pi, pi]");
  PhaseState state;
  state.label = {LabelType::theta_phi, 0, theta, phi, std::nullopt};
  state.normalized = false;
  state.kappa = kappa;
  state.levels = structure_levels(kappa, n_max + 1);
  state.amplitudes.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    state.amplitudes(n) = phase(n * theta) * phase(-state.levels[static_cast<std::size_t>(n)] * phi);
  }
  return state;
}

Matrix theta_closure(const KappaParam& kappa, double phi, int n_max, int grid_size) {
  const int grid = grid_size > 0 ? grid_size : 4 * (n_max + 1);
  Matrix sum = Matrix::Zero(n_max + 1, n_max + 1);
  for (int j = 0; j < grid; ++j) {
    const double theta = -kPi + 2.0 * kPi * j / grid;
    const Vector v = theta_phase_state(theta, phi, kappa, n_max).amplitudes;
    sum += v * v.adjoint();
  }
  return sum / static_cast<double>(grid);
}

PhaseState evolve(const PhaseState& state, double t) {
  if (state.levels.size() != static_cast<std::size_t>(state.dim())) {
    throw DomainError("evolve: state carries no generator spectrum");
  }
  PhaseState out = state;
  for (int n = 0; n < out.dim(); ++n) {
    out.amplitudes(n) *= phase(-state.levels[static_cast<std::size_t>(n)] * t);
  }
  out.label.phi += t;
  out.label.p.reset();
  return out;
}

Complex overlap(const PhaseState& a, const PhaseState& b) {
  require_same_dim(a, b);
  return a.amplitudes.dot(b.amplitudes);  // conjugates the first argument
}

Complex overlap_rho_sum(int dim, const KappaParam& kappa, int m, double phi, int m_prime,
                        double phi_prime) {
  require_valid_dim(dim, kappa);
  const auto levels = structure_levels(kappa, dim);
  Complex sum{};
  for (int n = 0; n < dim; ++n) {
    const double rho = -static_cast<double>(m - m_prime) * n +
                       dim / (2.0 * kPi) * (phi - phi_prime) * levels[static_cast<std::size_t>(n)];
    sum += phase(2.0 * kPi * rho / dim);
  }
  return sum / static_cast<double>(dim);
}

double closure_residual(std::span<const PhaseState> states) {
  if (states.empty()) return 0.0;
  const int dim = states.front().dim();
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& s : states) sum += s.amplitudes * s.amplitudes.adjoint();
  return max_abs(sum - Matrix::Identity(dim, dim));
}

double orthonormality_residual(std::span<const PhaseState> states) {
  double worst = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      const Complex target = i == j ? Complex{1.0, 0.0} : Complex{};
      worst = std::max(worst, std::abs(overlap(states[i], states[j]) - target));
    }
  }
  return worst;
}

bool equal_up_to_phase(const PhaseState& a, const PhaseState& b, double tol) {
  if (a.dim() != b.dim()) return false;
  return std::abs(std::abs(overlap(a, b)) - 1.0) < tol;
}

double WeightTable::at(int n) const {
  if (!log_domain) return values.at(static_cast<std::size_t>(n));
  return std::exp(log_at(n));
}

WeightTable weights_from_levels(std::span<const double> levels) {
  if (levels.empty()) throw DomainError("weights need at least one level");
  WeightTable table;
  const std::size_t s = levels.size();
  table.log_domain = s > static_cast<std::size_t>(kLinearWeightLimit);
  table.log_values.assign(s, 0.0);
  if (!table.log_domain) table.values.assign(s, 1.0);
  for (std::size_t n = 1; n < s; ++n) {
    if (!(levels[n] > 0.0)) {
      throw DomainError("weights: level " + std::to_string(n) + " vanishes or is negative");
    }
    table.log_values[n] = table.log_values[n - 1] + std::log(levels[n]);
    if (!table.log_domain) table.values[n] = table.values[n - 1] * levels[n];
  }
  return table;
}

WeightTable build_weights(const KappaParam& kappa, int s) {
  if (s < 1) throw DomainError("build_weights: s must be >= 1");
  require_valid_dim(s, kappa);
  const auto levels = structure_levels(kappa, s);
  return weights_from_levels(levels);
}

WeylCandidatePair build_vs_us(const Representation& rep) {
  const int s = rep.dim;
  if (s < 2) throw DomainError("build_vs_us: s must be >= 2");
  if (rep.kind == RepresentationKind::open_top) {
    throw DomainError("build_vs_us: needs a truncated (or finite) representation");
  }
  const WeightTable weights = build_weights(rep.kappa, s);

  WeylCandidatePair pair;
  pair.s = s;
  pair.q = root_of_unity(1, s);
  pair.U = Matrix::Zero(s, s);
  for (int n = 0; n < s; ++n) pair.U(n, n) = root_of_unity(n, s);

  pair.V = rep.a_minus;
  if (!weights.log_domain) {
    pair.V += matrix_power(rep.a_plus, s - 1) / weights.at(s - 1);
  } else {
    // (b+)^{s-1}|0> = sqrt(E(s-1)) exp(-i F(s-1) phi) |s-1>
    pair.V(s - 1, 0) += std::exp(-0.5 * weights.log_at(s - 1)) * phase(-rep.F(s - 1) * rep.phi);
  }
  pair.nonunitarity_witness = max_abs(pair.V.adjoint() * pair.V - Matrix::Identity(s, s));
  return pair;
}

WeylResiduals weyl_residuals(const WeylCandidatePair& pair) {
  const Matrix id = Matrix::Identity(pair.s, pair.s);
  WeylResiduals r;
  r.v_power = max_abs(matrix_power(pair.V, pair.s) - id);
  r.u_power = max_abs(matrix_power(pair.U, pair.s) - id);
  r.s_commutation = max_abs(pair.V * pair.U - pair.q * pair.U * pair.V);
  r.nonunitarity = pair.nonunitarity_witness;
  return r;
}

double vs_normalization(const WeightTable& weights) {
  double inv_sum = 0.0;
  for (int n = 0; n < weights.size(); ++n) inv_sum += std::exp(-weights.log_at(n));
  return 1.0 / std::sqrt(inv_sum);
}

PhaseState vs_phase_state(std::span<const double> levels, const WeightTable& weights, int mu,
                          double phi) {
  const int s = static_cast<int>(levels.size());
  if (weights.size() != s) {
    throw DomainError("vs_phase_state: weight table has " + std::to_string(weights.size()) +
                      " entries for " + std::to_string(s) + " levels");
  }
  const double c0 = vs_normalization(weights);
  PhaseState state;
  state.label = {LabelType::mu_phi, mod(mu, s), 0.0, phi, std::nullopt};
  state.levels.assign(levels.begin(), levels.end());
  state.amplitudes.resize(s);
  for (int n = 0; n < s; ++n) {
    state.amplitudes(n) = c0 * std::exp(-0.5 * weights.log_at(n)) *
                          root_of_unity(static_cast<long long>(n) * state.label.index, s) *
                          phase(-levels[static_cast<std::size_t>(n)] * phi);
  }
  return state;
}

std::vector<PhaseState> vs_phase_states(const Representation& rep, const WeightTable& weights) {
  const auto levels = structure_levels(rep.kappa, rep.dim);
  std::vector<PhaseState> out;
  out.reserve(static_cast<std::size_t>(rep.dim));
  for (int mu = 0; mu < rep.dim; ++mu) {
    out.push_back(vs_phase_state(levels, weights, mu, rep.phi));
    out.back().kappa = rep.kappa;
  }
  return out;
}

Complex vs_overlap_formula(std::span<const double> levels, const WeightTable& weights, int mu,
                           double phi, int mu_prime, double phi_prime) {
  const int s = static_cast<int>(levels.size());
  const double c0 = vs_normalization(weights);
  Complex sum{};
  for (int n = 0; n < s; ++n) {
    sum += std::exp(-weights.log_at(n)) *
           root_of_unity(static_cast<long long>(n) * (mu_prime - mu), s) *
           phase(-levels[static_cast<std::size_t>(n)] * (phi_prime - phi));
  }
  return c0 * c0 * sum;
}

double vs_weighted_closure_residual(std::span<const PhaseState> states, const WeightTable& weights) {
  if (states.empty()) return 0.0;
  const int s = states.front().dim();
  Matrix sum = Matrix::Zero(s, s);
  for (const auto& st : states) sum += st.amplitudes * st.amplitudes.adjoint();
  sum /= static_cast<double>(s);
  const double c0 = vs_normalization(weights);
  Matrix target = Matrix::Zero(s, s);
  for (int n = 0; n < s; ++n) target(n, n) = c0 * c0 * std::exp(-weights.log_at(n));
  return max_abs(sum - target);
}

}  // namespace phasekit
