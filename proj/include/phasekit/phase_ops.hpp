#pragma once

// Phase operators E_d (finite regime), E_s (truncation) and the cutoff
// surrogate of E_inf (kappa >= 0), their eigenstates, the V_s/U_s pair and
// the temporal-stability and overlap machinery shared by all state families.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phasekit/core_algebra.hpp"

namespace phasekit {

enum class PhaseOperatorKind { finite_Ed, truncated_Es, infinite_cutoff_Einf };

std::string to_string(PhaseOperatorKind kind);

struct PhaseOperator {
  Matrix matrix;
  PhaseOperatorKind kind = PhaseOperatorKind::finite_Ed;
  double phi = 0.0;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Cyclic phase operator: <n-1|E|n> = exp(i [F(n)-F(n-1)] phi) for n >= 1 and
/// <dim-1|E|0> = exp(i [F(0)-F(dim-1)] phi). Rejects open_top representations.
PhaseOperator phase_operator(const Representation& rep);

/// Strict upper shift on levels 0..n_max with phases exp(i [F(n+1)-F(n)] phi).
PhaseOperator phase_operator_infinite_cutoff(const KappaParam& kappa, double phi, int n_max);

struct PhaseOperatorResiduals {
  double unitarity = 0.0;  // max(||E^dag E - I||, ||E E^dag - I||)
  double cyclic = 0.0;     // ||E^dim - I||
  double polar = 0.0;      // ||a- - E sqrt(F(N))||
};

PhaseOperatorResiduals phase_operator_residuals(const PhaseOperator& op, const Representation& rep);

/// Identities of the cutoff E_inf. E^dag E = I - |0><0| holds exactly; E E^dag = I
/// holds on every diagonal entry but the last, which the cutoff removes.
struct CutoffIdentityReport {
  double left_residual = 0.0;   // ||E^dag E - (I - |0><0|)||
  double right_residual = 0.0;  // ||E E^dag - I|| with the top diagonal entry excluded
  double top_entry = 0.0;       // |(E E^dag)_{top,top}|, 0 on the cutoff space
};

CutoffIdentityReport cutoff_identity_report(const PhaseOperator& op);

enum class LabelType { m_phi, theta_phi, mu_phi };

std::string to_string(LabelType type);

struct PhaseLabel {
  LabelType type = LabelType::m_phi;
  int index = 0;       // m or mu, reduced modulo dim
  double theta = 0.0;  // theta_phi states only
  double phi = 0.0;
  std::optional<int> p;  // quantized-phi label for MUB vectors
};

struct PhaseState {
  PhaseLabel label;
  Vector amplitudes;
  bool normalized = true;
  /// Spectrum of the time-evolution generator: F(n), or physical energies e_n.
  std::vector<double> levels;
  std::optional<KappaParam> kappa;

  int dim() const { return static_cast<int>(amplitudes.size()); }
};

/// (1/sqrt(dim)) sum_n exp(-i levels[n] phi) q^{m n}, q = exp(2 pi i / dim).
PhaseState fourier_phase_state(std::span<const double> levels, int m, double phi);

/// |m,phi> for m = 0..dim-1. dim must equal d in the finite regime or be a
/// valid truncation order.
std::vector<PhaseState> phase_states(int dim, const KappaParam& kappa, double phi);
PhaseState phase_state(int dim, const KappaParam& kappa, int m, double phi);

/// Non-normalized |theta,phi> = sum_n exp(i n theta) exp(-i F(n) phi) |n>, n = 0..n_max.
PhaseState theta_phase_state(double theta, double phi, const KappaParam& kappa, int n_max);

/// Riemann sum (1/M) sum_j |theta_j,phi><theta_j,phi| on the uniform grid
/// theta_j = -pi + 2 pi j / M. grid_size 0 selects 4 (n_max+1).
Matrix theta_closure(const KappaParam& kappa, double phi, int n_max, int grid_size = 0);

/// exp(-i H t) with H = diag(levels); the label's phi becomes phi + t.
PhaseState evolve(const PhaseState& state, double t);

/// <a|b>. Throws on dimension mismatch.
Complex overlap(const PhaseState& a, const PhaseState& b);

/// (1/d) sum_n q^{rho(n)}, rho = -(m-m') n + (d / 2 pi)(phi-phi') F(n).
Complex overlap_rho_sum(int dim, const KappaParam& kappa, int m, double phi, int m_prime,
                        double phi_prime);

/// Max deviation of sum_m |m,phi><m,phi| from the identity.
double closure_residual(std::span<const PhaseState> states);

/// Inner products <a|b> for all pairs; returns max |<a|b> - delta_ab|.
double orthonormality_residual(std::span<const PhaseState> states);

/// Phase-insensitive equality: ||<a|b>| - 1| < tol for normalized states.
bool equal_up_to_phase(const PhaseState& a, const PhaseState& b, double tol = 1e-12);

/// E(0) = 1, E(n) = E(n-1) * level(n). Stored in the log domain for all
/// sizes; linear values are materialized only when size <= 30.
struct WeightTable {
  std::vector<double> log_values;
  std::vector<double> values;  // empty when log_domain
  bool log_domain = false;

  int size() const { return static_cast<int>(log_values.size()); }
  double log_at(int n) const { return log_values.at(static_cast<std::size_t>(n)); }
  double at(int n) const;
};

inline constexpr int kLinearWeightLimit = 30;

/// E(n) = product of levels[1..n]; every such level must be > 0.
WeightTable weights_from_levels(std::span<const double> levels);

/// E(n) = F(1) ... F(n), n = 0..s-1.
WeightTable build_weights(const KappaParam& kappa, int s);

/// U_s = (q_s)^N and V_s = b- + (b+)^{s-1} / E(s-1).
struct WeylCandidatePair {
  Matrix U;
  Matrix V;
  int s = 0;
  Complex q{};
  double nonunitarity_witness = 0.0;  // ||V^dag V - I||_max
};

WeylCandidatePair build_vs_us(const Representation& rep);

struct WeylResiduals {
  double v_power = 0.0;       // ||V^s - I||
  double u_power = 0.0;       // ||U^s - I||
  double s_commutation = 0.0; // ||V U - q U V||
  double nonunitarity = 0.0;  // ||V^dag V - I||
};

WeylResiduals weyl_residuals(const WeylCandidatePair& pair);

/// C_0 = (sum_n 1/E(n))^{-1/2}, chosen real positive.
double vs_normalization(const WeightTable& weights);

/// C_0 sum_n E(n)^{-1/2} (q_s)^{n mu} exp(-i levels[n] phi) |n>.
PhaseState vs_phase_state(std::span<const double> levels, const WeightTable& weights, int mu,
                          double phi);

/// |mu,phi> for mu = 0..s-1, at the representation's phi.
std::vector<PhaseState> vs_phase_states(const Representation& rep, const WeightTable& weights);

/// C_0^2 sum_n E(n)^{-1} (q_s)^{n(mu'-mu)} exp(-i levels[n] (phi'-phi)).
Complex vs_overlap_formula(std::span<const double> levels, const WeightTable& weights, int mu,
                           double phi, int mu_prime, double phi_prime);

/// Max deviation of (1/s) sum_mu |mu,phi><mu,phi| from C_0^2 sum_n E(n)^{-1} |n><n|.
double vs_weighted_closure_residual(std::span<const PhaseState> states, const WeightTable& weights);

/// Levels F(0..dim-1) as doubles.
std::vector<double> structure_levels(const KappaParam& kappa, int dim);

/// Non-negative remainder of a modulo n.
inline int mod(long long a, long long n) { return static_cast<int>(((a % n) + n) % n); }

/// exp(2 pi i k / n) with k reduced modulo n first.
Complex root_of_unity(long long k, long long n);

}  // namespace phasekit
