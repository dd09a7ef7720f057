#pragma once

// Exactly solvable one-dimensional systems whose spectra have linear gaps,
// e_{n+1} - e_n = a n + b, mapped onto kappa = a / (2b).

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "phasekit/phase_ops.hpp"

namespace phasekit {

struct HarmonicOscillator {};

struct PoschlTeller {
  double u = 2.0;
  double v = 2.0;
};

struct Morse {
  int l = 1;
};

class PotentialSpec {
 public:
  using Variant = std::variant<HarmonicOscillator, PoschlTeller, Morse>;

  PotentialSpec() = default;
  PotentialSpec(Variant variant);  // validates parameter ranges

  /// "ho", "pt:u=2,v=3", "morse:l=4".
  static PotentialSpec parse(std::string_view text);

  const Variant& variant() const { return variant_; }
  std::string name() const;            // "ho" | "pt" | "morse"
  std::string to_string() const;       // canonical text form
  std::string description() const;    // potential and superpotential, for reports

 private:
  Variant variant_{HarmonicOscillator{}};
};

struct SpectrumParams {
  double a = 0.0;
  double b = 1.0;
  double kappa_equiv = 0.0;              // a / (2b)
  std::optional<KappaParam> kappa_exact; // set when a / (2b) is an exact small rational
  std::optional<int> level_count;        // finite spectrum size, if any

  /// General (a, b) pair; b must be > 0.
  static SpectrumParams from_ab(double a, double b);
};

SpectrumParams to_spectrum_params(const PotentialSpec& spec);

inline constexpr int kDefaultCutoff = 32;

struct TruncationOrder {
  std::optional<int> order;  // empty for an infinite spectrum
  int recommended_cutoff = kDefaultCutoff;

  bool is_infinite() const { return !order.has_value(); }
  /// The finite order, or the recommended cutoff for infinite spectra.
  int effective() const { return order.value_or(recommended_cutoff); }
};

/// a < 0: s = -b/a + 3/2 when -2b/a is odd, s = -b/a + 1 when even.
/// a >= 0: infinite. a < 0 with -2b/a not an integer is unsupported.
TruncationOrder truncation_order(const SpectrumParams& params);

/// e_n = a n (n-1) / 2 + b n. Throws when n is outside the admitted range.
double energy(const SpectrumParams& params, int n);

/// e_0..e_{count-1}.
std::vector<double> energies(const SpectrumParams& params, int count);

struct WeightReport {
  WeightTable table;                // E(n) = e_1 ... e_n, n = 0..n_max
  std::vector<double> gamma_values; // closed form in terms of Gamma
  double max_rel_err = 0.0;
};

/// Product route against the Gamma closed forms:
///   HO:    Gamma(n+1)
///   PT:    Gamma(n+1) Gamma(n+u+v+1) / (2^n Gamma(u+v+1))
///   Morse: Gamma(n+1) Gamma(2l) / (2^n Gamma(2l-n))
WeightReport weight_table(const PotentialSpec& spec, int n_max);

/// Log of the Gamma closed form for E(n).
double gamma_log_weight(const PotentialSpec& spec, int n);

struct PhysicalPhaseStates {
  std::vector<PhaseState> fourier;   // (1/sqrt s) sum exp(-i e_n phi) q_s^{nm} |Psi_n>
  std::vector<PhaseState> discrete;  // C_0 sum E(n)^{-1/2} exp(-i e_n phi) q_s^{n mu} |Psi_n>
};

PhysicalPhaseStates physical_phase_states(const PotentialSpec& spec, int s, double phi);

/// Physical phase matching the truncated-route quantization: the algebra phase
/// 2 pi p / (s kappa) divided by b, since e_n = b F(n). Needs 1/kappa integral.
double physical_mub_phi(const PotentialSpec& spec, int s, int p);

}  // namespace phasekit
