#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <boost/rational.hpp>

namespace phasekit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Rational = boost::rational<std::int64_t>;

inline constexpr double kPi = 3.14159265358979323846;

/// Raised for parameter combinations outside the domain of a construction
/// (non-representable kappa, positivity violations, out-of-range labels).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Tolerance pair used by every verification routine: `matrix` for exact
/// matrix identities, `composite` for overlaps, closures and unbiasedness.
struct Tolerances {
  double matrix = 1e-12;
  double composite = 1e-10;

  /// Reads PHASEKIT_TOLERANCE ("1e-12" or "1e-12,1e-10"). A single value sets
  /// the matrix tolerance and scales the composite one by 100.
  static Tolerances from_env();
  static Tolerances parse(const std::string& text);
};

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Largest entry modulus.
/// Largest entry modulus of a matrix or vector expression; 0 when empty.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace phasekit
