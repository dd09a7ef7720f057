#pragma once

// Mutually unbiased bases from phase states at quantized phi, generalized
// quadratic Gauss sums, and the U_phi V decomposition of E_d.

#include <string>
#include <variant>
#include <vector>

#include "phasekit/phase_ops.hpp"

namespace phasekit {

/// phi = -pi (d-1) p / d.
double quantize_phi_finite(int d, int p);

/// phi = 2 pi p / (s kappa). Rejects kappa = 0.
double quantize_phi_truncated(const KappaParam& kappa, int s, int p);

/// |m,p> = (1/sqrt d) sum_n q^{n(d-n)p/2 + n m} |n>, q = exp(2 pi i / d).
/// The half-integral exponent is kept exact by working modulo 2d.
PhaseState mub_state_finite(int d, int p, int m);

/// Relabeled form sum_k q^{(k+1)(d-k-1)p/2 - (k+1)m} |k>.
PhaseState mub_state_finite_relabeled(int d, int p, int m);

/// |m,p> = (1/sqrt s) sum_n (q_s)^{n(delta-n)p + n m} |n>, delta = 1 - 1/kappa.
/// Requires 1/kappa to be a nonzero integer.
PhaseState mub_state_truncated(const KappaParam& kappa, int s, int p, int m);

struct GaussSumParams {
  long long u = 0;
  long long v = 0;
  long long w = 1;

  /// u w + v even: necessary for S(u, v, w) != 0. Reported, not enforced.
  bool parity_even() const { return ((u * w + v) % 2 + 2) % 2 == 0; }
};

/// S(u, v, w) = sum_{k=0}^{|w|-1} exp(i pi (u k^2 + v k) / w), by direct summation.
Complex gauss_sum(const GaussSumParams& params);

/// <m,p|m',p'> = (1/d) S(p-p', -(p-p')d + 2(m'-m), d).
Complex overlap_via_gauss_finite(int d, int p, int m, int p_prime, int m_prime);

/// <m,p|m',p'> = (1/s) S(2(p-p'), 2 delta (p'-p) + 2(m'-m), s).
Complex overlap_via_gauss_truncated(const KappaParam& kappa, int s, int p, int m, int p_prime,
                                    int m_prime);

/// Deterministic trial division.
bool is_prime(long long n);

struct FiniteRoute {
  int d = 2;
};

struct TruncatedRoute {
  KappaParam kappa;
  int s = 2;
};

using MubRoute = std::variant<FiniteRoute, TruncatedRoute>;

std::string route_name(const MubRoute& route);

struct MubBasis {
  /// 0..dim-1 for B_p; dim for the computational basis.
  int p = 0;
  int dim = 0;
  std::vector<PhaseState> vectors;
};

struct BasisPairOverlap {
  int a = 0;
  int b = 0;
  double min_abs = 0.0;
  double max_abs = 0.0;
};

struct MubSet {
  int dim = 0;
  MubRoute route;
  bool prime = false;
  /// Every cross-basis overlap modulus is within tolerance of 1/sqrt(dim).
  bool complete = false;
  std::vector<MubBasis> bases;  // B_0..B_{dim-1}, then the computational basis
  std::vector<BasisPairOverlap> overlap_report;
  /// Largest | |<x|y>| - 1/sqrt(dim) | over all cross-basis pairs.
  double max_deviation = 0.0;
  /// Largest in-basis orthonormality residual.
  double max_orthonormality_residual = 0.0;

  std::vector<BasisPairOverlap> violating_pairs(double tol) const;
};

MubSet build_mub_set(const MubRoute& route, double tol = 1e-10);

/// The computational basis as phase states labeled p = dim.
MubBasis computational_basis(int dim);

struct PseudoCommutationReport {
  double decomposition = 0.0;      // ||E_d - U_phi V||
  double pseudo_commutation = 0.0; // ||U_phi V - exp(2 i phi/(d-1)) V U_phi||
  double quantized_commutation = 0.0; // ||V U_phi - q^p U_phi V||
  double v_power = 0.0;            // ||V^d - I||
  double u_power = 0.0;            // ||U_phi^d - exp(i pi (d-1) p) I||

  double max() const;
};

/// Builds U_phi = diag(exp(i [F(n+1)-F(n)] phi)) and the cyclic shift V at
/// phi = quantize_phi_finite(d, p) and checks the decomposition identities.
PseudoCommutationReport pseudo_commutation_check(int d, int p);

}  // namespace phasekit
