#pragma once

// Structure function, regime logic and explicit matrix representations of the
// generalized oscillator algebra
//
//   [a-, a+] = I + 2 kappa N,  [N, a+-] = +-a+-,  (a-)^dagger = a+,
//
// and of its truncation of order s, where the commutator picks up the extra
// term -F(s)|s-1><s-1|.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phasekit/types.hpp"

namespace phasekit {

/// Exact reduced rational deformation parameter kappa = numerator/denominator.
///
/// Any rational can be held; operations that need a Hilbertian representation
/// reject kappa < 0 unless -1/kappa is a positive integer (numerator == -1 in
/// reduced form).
class KappaParam {
 public:
  KappaParam() = default;
  KappaParam(std::int64_t numerator, std::int64_t denominator = 1);
  explicit KappaParam(const Rational& value);

  /// Accepts "p/q", "p" or "-p/q".
  static KappaParam parse(std::string_view text);
  /// kappa = -1/(d-1), the unique value whose representation has dimension d.
  static KappaParam for_dimension(int d);

  std::int64_t numerator() const { return value_.numerator(); }
  std::int64_t denominator() const { return value_.denominator(); }
  const Rational& value() const { return value_; }
  double to_double() const { return phasekit::to_double(value_); }

  bool is_negative() const { return value_.numerator() < 0; }
  bool is_zero() const { return value_.numerator() == 0; }
  /// kappa < 0 with -1/kappa a positive integer.
  bool is_representable() const { return !is_negative() || numerator() == -1; }
  /// 1/kappa is a nonzero integer (numerator is +-1).
  bool has_integer_inverse() const { return numerator() == 1 || numerator() == -1; }

  std::string to_string() const;

  friend bool operator==(const KappaParam& a, const KappaParam& b) { return a.value_ == b.value_; }

 private:
  Rational value_{0};
};

/// d(kappa): finite for kappa = -1/(d-1), infinite for kappa >= 0.
struct Dimension {
  std::optional<int> finite;

  bool is_infinite() const { return !finite.has_value(); }
  int value() const { return finite.value(); }
};

/// F(n) = n [1 + kappa (n-1)] without any positivity check.
Rational structure_value(const KappaParam& kappa, std::int64_t n);

struct StructureFunction {
  KappaParam kappa;
  std::vector<Rational> values;  // F(0..n_max)

  double at(std::size_t n) const { return to_double(values.at(n)); }
  std::size_t size() const { return values.size(); }
};

Dimension dimension_of(const KappaParam& kappa);

/// F(0..n_max). Rejects non-representable kappa and any n_max beyond the
/// positivity bound (n_max <= d-1 in the finite regime).
StructureFunction structure_function(const KappaParam& kappa, int n_max);

enum class RepresentationKind {
  finite,     // untruncated A_kappa, size == d, kappa < 0
  truncated,  // A_{kappa,s}: b+|s-1> = 0 by definition
  open_top,   // numerical cutoff of the infinite-dimensional A_kappa
};

std::string to_string(RepresentationKind kind);
RepresentationKind representation_kind_from_string(std::string_view name);

struct Representation {
  KappaParam kappa;
  double phi = 0.0;
  int dim = 0;
  RepresentationKind kind = RepresentationKind::truncated;
  Matrix a_plus;
  Matrix a_minus;
  Matrix number_op;
  Matrix hamiltonian;
  /// F(0..dim); the extra F(dim) enters the truncated commutator.
  std::vector<Rational> structure;

  bool truncated() const { return kind == RepresentationKind::truncated; }
  double F(int n) const { return to_double(structure.at(static_cast<std::size_t>(n))); }
};

/// Matrix representation with
///   <n+1|a+|n> = sqrt(F(n+1)) exp(-i [F(n+1)-F(n)] phi),
///   <n-1|a-|n> = sqrt(F(n))   exp(+i [F(n)-F(n-1)] phi).
///
/// finite:    kappa = -1/(d-1) and size == d.
/// truncated: any representable kappa with F(1..size-1) > 0.
/// open_top:  kappa >= 0; same matrices as the truncation, but the missing
///            top row of a+ is treated as a cutoff artifact by the checks.
Representation build_representation(const KappaParam& kappa, double phi, int size,
                                    RepresentationKind kind);

/// Convenience overload: truncated=false means the finite regime.
Representation build_representation(const KappaParam& kappa, double phi, int size, bool truncated);

/// Right-hand side the commutator is compared against.
enum class CommutatorRhs {
  automatic,  // finite: I+2kN; truncated: I+2kN-F(s)|s-1><s-1|; open_top: I+2kN
  algebra,    // I + 2 kappa N
  truncated,  // I + 2 kappa N - F(s)|s-1><s-1|
};

Matrix commutator(const Representation& rep);
Matrix commutator_rhs(const Representation& rep, CommutatorRhs rhs);

struct CommutatorReport {
  double residual = 0.0;   // max-entry norm of [a-,a+] - RHS
  Complex trace{};         // trace of [a-,a+]
  /// open_top only: the top diagonal entry is excluded from `residual` and
  /// its deviation (which equals F(dim)) reported here.
  std::optional<double> cutoff_deviation;
};

CommutatorReport commutator_residual(const Representation& rep,
                                     CommutatorRhs rhs = CommutatorRhs::automatic);

struct DegeneracyClass {
  Rational energy;
  std::vector<int> levels;
};

struct DegeneracyReport {
  int dim = 0;
  std::vector<DegeneracyClass> classes;  // ordered by lowest level index
};

/// Groups the finite-regime levels by equal F(n). Rejects kappa >= 0.
DegeneracyReport degeneracy_report(const KappaParam& kappa);

struct NilpotencyReport {
  bool nilpotent = false;
  double minus_power_norm = 0.0;  // ||(a-)^dim||_max
  double plus_power_norm = 0.0;   // ||(a+)^dim||_max
  /// Set for open_top surrogates: the vanishing powers come from the cutoff,
  /// not from the algebra, so `nilpotent` is reported false.
  bool cutoff_limited = false;
};

NilpotencyReport nilpotency_report(const Representation& rep, double tol = 1e-12);
bool nilpotency_check(const Representation& rep, double tol = 1e-12);

/// Integer matrix power by repeated squaring.
Matrix matrix_power(const Matrix& m, int exponent);

}  // namespace phasekit
