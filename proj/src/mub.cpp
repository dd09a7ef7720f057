#include "phasekit/mub.hpp"

#include <algorithm>
#include <cmath>

namespace phasekit {

namespace {

// exp(i pi k / n) with k reduced modulo 2n.
Complex half_root_of_unity(long long k, long long n) {
  const long long period = 2 * n;
  const long long r = ((k % period) + period) % period;
  return std::polar(1.0, kPi * static_cast<double>(r) / static_cast<double>(n));
}

void require_label(int value, int dim, const char* name) {
  if (value < 0 || value >= dim) {
    throw DomainError(std::string(name) + " = " + std::to_string(value) + " outside 0.." +
                      std::to_string(dim - 1));
  }
}

long long truncated_delta(const KappaParam& kappa) {
  if (kappa.is_zero() || !kappa.has_integer_inverse()) {
    throw DomainError("truncated MUB route needs 1/kappa to be a nonzero integer, got kappa = " +
                      kappa.to_string());
  }
  // delta = 1 - 1/kappa; numerator is +-1 so 1/kappa = numerator * denominator.
  return 1 - kappa.numerator() * kappa.denominator();
}

}  // namespace

double quantize_phi_finite(int d, int p) {
  return -kPi * static_cast<double>(d - 1) * static_cast<double>(p) / static_cast<double>(d);
}

double quantize_phi_truncated(const KappaParam& kappa, int s, int p) {
  if (kappa.is_zero()) throw DomainError("phi quantization 2 pi p/(s kappa) is undefined for kappa = 0");
  return 2.0 * kPi * static_cast<double>(p) / (static_cast<double>(s) * kappa.to_double());
}

PhaseState mub_state_finite(int d, int p, int m) {
  if (d < 2) throw DomainError("mub_state_finite: d must be >= 2");
  require_label(p, d, "p");
  require_label(m, d, "m");
  const KappaParam kappa = KappaParam::for_dimension(d);
  PhaseState state;
  state.label = {LabelType::m_phi, m, 0.0, quantize_phi_finite(d, p), p};
  state.kappa = kappa;
  state.levels = structure_levels(kappa, d);
  state.amplitudes.resize(d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (long long n = 0; n < d; ++n) {
    // q^{x} with 2x = n(d-n)p + 2nm, i.e. exp(i pi (2x) / d)
    const long long twice_exponent = n * (d - n) * p + 2 * n * m;
    state.amplitudes(n) = norm * half_root_of_unity(twice_exponent, d);
  }
  return state;
}

PhaseState mub_state_finite_relabeled(int d, int p, int m) {
  PhaseState state = mub_state_finite(d, p, m);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (long long k = 0; k < d; ++k) {
    const long long twice_exponent = (k + 1) * (d - k - 1) * p - 2 * (k + 1) * m;
    state.amplitudes(k) = norm * half_root_of_unity(twice_exponent, d);
  }
  // The relabeled vector lives in the reversed basis; its generator is reversed too.
  std::reverse(state.levels.begin(), state.levels.end());
  return state;
}

PhaseState mub_state_truncated(const KappaParam& kappa, int s, int p, int m) {
  const long long delta = truncated_delta(kappa);
  if (s < 2) throw DomainError("mub_state_truncated: s must be >= 2");
  const Dimension d = dimension_of(kappa);
  if (d.finite && s > d.value()) {
    throw DomainError("mub_state_truncated: s = " + std::to_string(s) + " exceeds d = " +
                      std::to_string(d.value()) + " for kappa = " + kappa.to_string());
  }
  require_label(p, s, "p");
  require_label(m, s, "m");
  PhaseState state;
  state.label = {LabelType::m_phi, m, 0.0, quantize_phi_truncated(kappa, s, p), p};
  state.kappa = kappa;
  state.levels = structure_levels(kappa, s);
  state.amplitudes.resize(s);
  const double norm = 1.0 / std::sqrt(static_cast<double>(s));
  for (long long n = 0; n < s; ++n) {
    state.amplitudes(n) = norm * root_of_unity(n * (delta - n) * p + n * m, s);
  }
  return state;
}

Complex gauss_sum(const GaussSumParams& params) {
  if (params.w == 0) throw DomainError("gauss_sum: w must be nonzero");
  const long long w_abs = params.w < 0 ? -params.w : params.w;
  const long long sign = params.w < 0 ? -1 : 1;
  Complex sum{};
  for (long long k = 0; k < w_abs; ++k) {
    // exp(i pi x / w) = exp(i pi (sign * x) / |w|)
    const long long x = (params.u * k % (2 * w_abs)) * k + params.v * k;
    sum += half_root_of_unity(sign * x, w_abs);
  }
  return sum;
}

Complex overlap_via_gauss_finite(int d, int p, int m, int p_prime, int m_prime) {
  const GaussSumParams params{p - p_prime,
                              -static_cast<long long>(p - p_prime) * d + 2LL * (m_prime - m), d};
  return gauss_sum(params) / static_cast<double>(d);
}

Complex overlap_via_gauss_truncated(const KappaParam& kappa, int s, int p, int m, int p_prime,
                                    int m_prime) {
  const long long delta = truncated_delta(kappa);
  const GaussSumParams params{2LL * (p - p_prime), 2 * delta * (p_prime - p) + 2LL * (m_prime - m), s};
  return gauss_sum(params) / static_cast<double>(s);
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

std::string route_name(const MubRoute& route) {
  return std::holds_alternative<FiniteRoute>(route) ? "finite" : "truncated";
}

MubBasis computational_basis(int dim) {
  MubBasis basis;
  basis.p = dim;
  basis.dim = dim;
  for (int n = 0; n < dim; ++n) {
    PhaseState e;
    e.label = {LabelType::m_phi, n, 0.0, 0.0, dim};
    e.amplitudes = Vector::Zero(dim);
    e.amplitudes(n) = 1.0;
    basis.vectors.push_back(std::move(e));
  }
  return basis;
}

std::vector<BasisPairOverlap> MubSet::violating_pairs(double tol) const {
  const double target = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<BasisPairOverlap> out;
  for (const auto& pair : overlap_report) {
    if (std::abs(pair.min_abs - target) > tol || std::abs(pair.max_abs - target) > tol) {
      out.push_back(pair);
    }
  }
  return out;
}

MubSet build_mub_set(const MubRoute& route, double tol) {
  MubSet set;
  set.route = route;
  if (const auto* finite = std::get_if<FiniteRoute>(&route)) {
    set.dim = finite->d;
    if (set.dim < 2) throw DomainError("build_mub_set: d must be >= 2");
    for (int p = 0; p < set.dim; ++p) {
      MubBasis basis{p, set.dim, {}};
      for (int m = 0; m < set.dim; ++m) basis.vectors.push_back(mub_state_finite(set.dim, p, m));
      set.bases.push_back(std::move(basis));
    }
  } else {
    const auto& truncated = std::get<TruncatedRoute>(route);
    set.dim = truncated.s;
    for (int p = 0; p < set.dim; ++p) {
      MubBasis basis{p, set.dim, {}};
      for (int m = 0; m < set.dim; ++m) {
        basis.vectors.push_back(mub_state_truncated(truncated.kappa, set.dim, p, m));
      }
      set.bases.push_back(std::move(basis));
    }
  }
  set.bases.push_back(computational_basis(set.dim));
  set.prime = is_prime(set.dim);

  const double target = 1.0 / std::sqrt(static_cast<double>(set.dim));
  for (const auto& basis : set.bases) {
    set.max_orthonormality_residual =
        std::max(set.max_orthonormality_residual, orthonormality_residual(basis.vectors));
  }
  for (std::size_t i = 0; i < set.bases.size(); ++i) {
    for (std::size_t j = i + 1; j < set.bases.size(); ++j) {
      BasisPairOverlap pair{set.bases[i].p, set.bases[j].p, 1e300, 0.0};
      for (const auto& x : set.bases[i].vectors) {
        for (const auto& y : set.bases[j].vectors) {
          const double mag = std::abs(overlap(x, y));
          pair.min_abs = std::min(pair.min_abs, mag);
          pair.max_abs = std::max(pair.max_abs, mag);
        }
      }
      set.max_deviation = std::max({set.max_deviation, std::abs(pair.min_abs - target),
                                    std::abs(pair.max_abs - target)});
      set.overlap_report.push_back(pair);
    }
  }
  set.complete = set.max_deviation <= tol;
  return set;
}

double PseudoCommutationReport::max() const {
  return std::max({decomposition, pseudo_commutation, quantized_commutation, v_power, u_power});
}

PseudoCommutationReport pseudo_commutation_check(int d, int p) {
  if (d < 2) throw DomainError("pseudo_commutation_check: d must be >= 2");
  require_label(p, d, "p");
  const KappaParam kappa = KappaParam::for_dimension(d);
  const double phi = quantize_phi_finite(d, p);
  const Representation rep = build_representation(kappa, phi, d, RepresentationKind::finite);
  const PhaseOperator e = phase_operator(rep);

  Matrix u = Matrix::Zero(d, d);
  Matrix v = Matrix::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    const double gap = to_double(structure_value(kappa, n + 1) - structure_value(kappa, n));
    u(n, n) = std::polar(1.0, gap * phi);
    v(mod(n - 1, d), n) = 1.0;
  }
  const Matrix id = Matrix::Identity(d, d);
  const Complex factor = std::polar(1.0, 2.0 * phi / (d - 1));
  const Complex q_p = root_of_unity(p, d);

  PseudoCommutationReport r;
  r.decomposition = max_abs(e.matrix - u * v);
  r.pseudo_commutation = max_abs(u * v - factor * v * u);
  r.quantized_commutation = max_abs(v * u - q_p * u * v);
  r.v_power = max_abs(matrix_power(v, d) - id);
  r.u_power = max_abs(matrix_power(u, d) - half_root_of_unity(static_cast<long long>(d - 1) * p, 1) * id);
  return r;
}

}  // namespace phasekit
