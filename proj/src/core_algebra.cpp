#include "phasekit/core_algebra.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace phasekit {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw DomainError("kappa: cannot parse '" + std::string(whole) + "' as p/q");
  }
  return value;
}

Complex phase(double angle) { return std::polar(1.0, angle); }

}  // namespace

KappaParam::KappaParam(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw DomainError("kappa: zero denominator");
  value_ = Rational(numerator, denominator);
}

KappaParam::KappaParam(const Rational& value) : value_(value) {}

KappaParam KappaParam::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return KappaParam(parse_int(text, text), 1);
  return KappaParam(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
}

KappaParam KappaParam::for_dimension(int d) {
  if (d < 2) throw DomainError("finite regime needs d >= 2, got " + std::to_string(d));
  return KappaParam(-1, d - 1);
}

std::string KappaParam::to_string() const {
  std::ostringstream os;
  os << numerator();
  if (denominator() != 1) os << '/' << denominator();
  return os.str();
}

Rational structure_value(const KappaParam& kappa, std::int64_t n) {
  return Rational(n) * (Rational(1) + kappa.value() * Rational(n - 1));
}

Dimension dimension_of(const KappaParam& kappa) {
  if (!kappa.is_negative()) return Dimension{};
  if (!kappa.is_representable()) {
    throw DomainError("kappa = " + kappa.to_string() +
                      " < 0 but -1/kappa is not a positive integer; no finite representation exists");
  }
  // d = 1 - 1/kappa = 1 + denominator
  return Dimension{static_cast<int>(1 + kappa.denominator())};
}

StructureFunction structure_function(const KappaParam& kappa, int n_max) {
  if (n_max < 0) throw DomainError("structure_function: n_max must be >= 0");
  const Dimension dim = dimension_of(kappa);
  if (dim.finite && n_max > *dim.finite - 1) {
    throw DomainError("structure_function: n_max = " + std::to_string(n_max) +
                      " violates positivity, finite regime allows n <= " +
                      std::to_string(*dim.finite - 1));
  }
  StructureFunction out{kappa, {}};
  out.values.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) out.values.push_back(structure_value(kappa, n));
  return out;
}

std::string to_string(RepresentationKind kind) {
  switch (kind) {
    case RepresentationKind::finite: return "finite";
    case RepresentationKind::truncated: return "truncated";
    case RepresentationKind::open_top: return "open_top";
  }
  return "unknown";
}

RepresentationKind representation_kind_from_string(std::string_view name) {
  if (name == "finite") return RepresentationKind::finite;
  if (name == "truncated") return RepresentationKind::truncated;
  if (name == "open_top") return RepresentationKind::open_top;
  throw DomainError("unknown representation kind '" + std::string(name) + "'");
}

Representation build_representation(const KappaParam& kappa, double phi, int size,
                                    RepresentationKind kind) {
  if (size < 1) throw DomainError("build_representation: size must be >= 1");
  const Dimension dim = dimension_of(kappa);

  switch (kind) {
    case RepresentationKind::finite:
      if (dim.is_infinite()) {
        throw DomainError("kappa = " + kappa.to_string() +
                          " >= 0 has no finite representation; use truncated or open_top");
      }
      if (size != dim.value()) {
        throw DomainError("finite regime with kappa = " + kappa.to_string() + " requires size " +
                          std::to_string(dim.value()) + ", got " + std::to_string(size));
      }
      break;
    case RepresentationKind::truncated:
      if (dim.finite && size > dim.value()) {
        throw DomainError("truncation order " + std::to_string(size) +
                          " exceeds positivity bound d = " + std::to_string(dim.value()));
      }
      break;
    case RepresentationKind::open_top:
      if (dim.finite) throw DomainError("open_top surrogate is only meaningful for kappa >= 0");
      break;
  }

  Representation rep;
  rep.kappa = kappa;
  rep.phi = phi;
  rep.dim = size;
  rep.kind = kind;
  rep.structure.reserve(static_cast<std::size_t>(size) + 1);
  for (int n = 0; n <= size; ++n) rep.structure.push_back(structure_value(kappa, n));
  for (int n = 1; n < size; ++n) {
    if (rep.structure[static_cast<std::size_t>(n)] <= 0) {
      throw DomainError("F(" + std::to_string(n) + ") <= 0 for kappa = " + kappa.to_string());
    }
  }

  rep.a_minus = Matrix::Zero(size, size);
  rep.number_op = Matrix::Zero(size, size);
  rep.hamiltonian = Matrix::Zero(size, size);
  for (int n = 0; n < size; ++n) {
    rep.number_op(n, n) = static_cast<double>(n);
    rep.hamiltonian(n, n) = rep.F(n);
  }
  for (int n = 1; n < size; ++n) {
    const double gap = rep.F(n) - rep.F(n - 1);
    rep.a_minus(n - 1, n) = std::sqrt(rep.F(n)) * phase(gap * phi);
  }
  rep.a_plus = rep.a_minus.adjoint();
  return rep;
}

Representation build_representation(const KappaParam& kappa, double phi, int size, bool truncated) {
  return build_representation(kappa, phi, size,
                              truncated ? RepresentationKind::truncated : RepresentationKind::finite);
}

Matrix commutator(const Representation& rep) {
  return rep.a_minus * rep.a_plus - rep.a_plus * rep.a_minus;
}

Matrix commutator_rhs(const Representation& rep, CommutatorRhs rhs) {
  if (rhs == CommutatorRhs::automatic) {
    rhs = rep.truncated() ? CommutatorRhs::truncated : CommutatorRhs::algebra;
  }
  const double two_kappa = 2.0 * rep.kappa.to_double();
  Matrix out = Matrix::Identity(rep.dim, rep.dim) + two_kappa * rep.number_op;
  if (rhs == CommutatorRhs::truncated) out(rep.dim - 1, rep.dim - 1) -= rep.F(rep.dim);
  return out;
}

CommutatorReport commutator_residual(const Representation& rep, CommutatorRhs rhs) {
  const Matrix comm = commutator(rep);
  Matrix deviation = comm - commutator_rhs(rep, rhs);
  CommutatorReport report;
  report.trace = comm.trace();
  if (rep.kind == RepresentationKind::open_top && rhs == CommutatorRhs::automatic) {
    const int top = rep.dim - 1;
    report.cutoff_deviation = std::abs(deviation(top, top));
    deviation(top, top) = 0.0;
  }
  report.residual = max_abs(deviation);
  return report;
}

DegeneracyReport degeneracy_report(const KappaParam& kappa) {
  const Dimension dim = dimension_of(kappa);
  if (dim.is_infinite()) {
    throw DomainError("degeneracy_report: kappa = " + kappa.to_string() +
                      " >= 0 gives a nondegenerate infinite spectrum");
  }
  const auto F = structure_function(kappa, dim.value() - 1);
  DegeneracyReport report;
  report.dim = dim.value();
  for (int n = 0; n < report.dim; ++n) {
    const Rational& e = F.values[static_cast<std::size_t>(n)];
    auto it = std::find_if(report.classes.begin(), report.classes.end(),
                           [&](const DegeneracyClass& c) { return c.energy == e; });
    if (it == report.classes.end()) {
      report.classes.push_back({e, {n}});
    } else {
      it->levels.push_back(n);
    }
  }
  return report;
}

Matrix matrix_power(const Matrix& m, int exponent) {
  if (exponent < 0) throw DomainError("matrix_power: negative exponent");
  Matrix result = Matrix::Identity(m.rows(), m.cols());
  Matrix base = m;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

NilpotencyReport nilpotency_report(const Representation& rep, double tol) {
  NilpotencyReport report;
  report.minus_power_norm = max_abs(matrix_power(rep.a_minus, rep.dim));
  report.plus_power_norm = max_abs(matrix_power(rep.a_plus, rep.dim));
  report.cutoff_limited = rep.kind == RepresentationKind::open_top;
  report.nilpotent = !report.cutoff_limited && report.minus_power_norm < tol &&
                     report.plus_power_norm < tol;
  return report;
}

bool nilpotency_check(const Representation& rep, double tol) {
  return nilpotency_report(rep, tol).nilpotent;
}

}  // namespace phasekit
